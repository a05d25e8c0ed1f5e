"""Exception types shared across the package."""


class DslabError(Exception):
    """Base class for simulator errors."""


class FieldError(DslabError):
    """Bad field/grid construction or an operation on a degenerate field."""


class StabilityError(DslabError):
    """A solver's stability bound would be violated by the requested step."""


class DispersionError(DslabError):
    """Reference-wave parameters inconsistent with the dispersion relation."""


class NoRootError(DslabError):
    """Root bracketing failed (light-cone or hyperplane search)."""


class FarFieldProximityError(DslabError):
    """Query point too close to the worldline for the far-field formulas;
    the near-field soliton profile module must be used instead."""


class MaskedNodeError(DslabError):
    """Evaluation requested at a point below the amplitude floor."""


class ConfigError(DslabError):
    """Malformed or incomplete run configuration."""
