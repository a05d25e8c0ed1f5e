"""Binary field container (magic "DSLAB1").

Layout, all little-endian (documented in FORMATS.md and consumed bit-exactly
by the figure frontend):

    bytes 0..5   magic b"DSLAB1"
    uint8        complex flag (1 = interleaved re,im float64 pairs)
    uint8        number of axes (1..3 spatial, or 2 for (t,x) maps)
    float64      dt
    float64      time_label
    per axis     float64 min, float64 max, uint64 n
    uint32       metadata length M
    M bytes      UTF-8 JSON metadata (config_hash, tool_version, axis names, ...)
    payload      row-major float64 values (pairs when complex)
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

import numpy as np

from .errors import FieldError

MAGIC = b"DSLAB1"


@dataclass
class FieldContainer:
    axes: tuple[tuple[float, float, int], ...]
    values: np.ndarray
    dt: float = 0.0
    time_label: float = 0.0
    meta: dict | None = None

    def axis(self, i: int) -> np.ndarray:
        lo, hi, n = self.axes[i]
        return np.linspace(lo, hi, n)


def write_field(path, container: FieldContainer) -> None:
    values = np.asarray(container.values)
    shape = tuple(int(n) for _, _, n in container.axes)
    if values.shape != shape:
        raise FieldError(f"payload shape {values.shape} does not match axes {shape}")
    is_complex = np.iscomplexobj(values)
    meta = dict(container.meta or {})
    blob = json.dumps(meta, sort_keys=True, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<BB", 1 if is_complex else 0, len(container.axes)))
        fh.write(struct.pack("<dd", float(container.dt), float(container.time_label)))
        for lo, hi, n in container.axes:
            fh.write(struct.pack("<ddQ", float(lo), float(hi), int(n)))
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        if is_complex:
            flat = np.empty(values.size * 2, dtype="<f8")
            flat[0::2] = values.real.ravel(order="C")
            flat[1::2] = values.imag.ravel(order="C")
        else:
            flat = np.ascontiguousarray(values.ravel(order="C"), dtype="<f8")
        fh.write(flat.tobytes())


def read_field(path) -> FieldContainer:
    with open(path, "rb") as fh:
        magic = fh.read(6)
        if magic != MAGIC:
            raise FieldError(f"bad magic {magic!r}: not a DSLAB1 container")
        cflag, ndim = struct.unpack("<BB", fh.read(2))
        dt, time_label = struct.unpack("<dd", fh.read(16))
        axes = []
        for _ in range(ndim):
            lo, hi, n = struct.unpack("<ddQ", fh.read(24))
            axes.append((lo, hi, int(n)))
        (mlen,) = struct.unpack("<I", fh.read(4))
        meta = json.loads(fh.read(mlen).decode("utf-8")) if mlen else {}
        shape = tuple(n for _, _, n in axes)
        count = int(np.prod(shape)) * (2 if cflag else 1)
        flat = np.frombuffer(fh.read(count * 8), dtype="<f8")
        if flat.size != count:
            raise FieldError("container payload truncated")
    if cflag:
        values = (flat[0::2] + 1j * flat[1::2]).reshape(shape)
    else:
        values = flat.reshape(shape).copy()
    return FieldContainer(axes=tuple(axes), values=values, dt=dt, time_label=time_label, meta=meta)
