"""dslab: time-symmetric double-solution simulator and verification suite."""

__version__ = "0.1.0"
