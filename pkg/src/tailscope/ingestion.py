"""Discretization of real-valued observations and tabular file I/O."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import EmptySample, InvalidDelta, ParseError
from .estimator import TailProfile
from .frequencies import FrequencyTable

NEG = "NEG"
POS = "POS"


class TailSide(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class DiscretizationSpec:
    delta: float = 1e-4
    tail_side: TailSide = TailSide.RIGHT

    def __post_init__(self):
        if not (isinstance(self.delta, (int, float)) and math.isfinite(self.delta) and self.delta > 0):
            raise InvalidDelta(f"bin width must be a positive finite number, got {self.delta!r}")
        object.__setattr__(self, "tail_side", TailSide(self.tail_side))


def discretize(values: Iterable[float], spec: DiscretizationSpec) -> FrequencyTable:
    """Bin ``values`` for one tail.

    Right tail: negatives pool into one ``"NEG"`` class and ``x >= 0`` goes to
    bin ``floor(x / delta)``, i.e. ``[k delta, (k+1) delta)``. Left tail:
    ``x >= 0`` pools into ``"POS"`` and ``x < 0`` goes to bin
    ``floor(-x / delta)``.
    """
    x = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                   dtype=np.float64)
    if x.size == 0:
        raise EmptySample("no values to discretize")
    if not np.all(np.isfinite(x)):
        raise ParseError("values must be finite")
    if spec.tail_side is TailSide.RIGHT:
        pooled = x < 0
        bins = np.floor(x[~pooled] / spec.delta).astype(np.int64)
        label = NEG
    else:
        pooled = x >= 0
        bins = np.floor(-x[~pooled] / spec.delta).astype(np.int64)
        label = POS
    keys, counts = np.unique(bins, return_counts=True)
    table = dict(zip(keys.tolist(), counts.tolist()))
    n_pooled = int(pooled.sum())
    if n_pooled:
        table[label] = n_pooled
    return FrequencyTable(table)


def _lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def load_values(path) -> list[float]:
    """One decimal per line; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in _lines(path):
        try:
            val = float(line)
        except ValueError:
            raise ParseError(f"not a number: {line!r}", line=lineno, path=path) from None
        if not math.isfinite(val):
            raise ParseError(f"non-finite value {line!r}", line=lineno, path=path)
        out.append(val)
    if not out:
        raise EmptySample(f"{path}: no values")
    return out


def load_counts(path) -> FrequencyTable:
    """``symbol,count`` rows with an optional header line."""
    counts = {}
    first = True
    for lineno, line in _lines(path):
        row = next(csv.reader([line]))
        if len(row) != 2:
            raise ParseError(f"expected 'symbol,count', got {line!r}", line=lineno, path=path)
        sym, raw = row[0].strip(), row[1].strip()
        try:
            c = int(raw)
        except ValueError:
            if first:
                first = False
                continue  # header
            raise ParseError(f"count is not an integer: {raw!r}", line=lineno, path=path) from None
        first = False
        if c < 1:
            raise ParseError(f"count must be positive, got {c}", line=lineno, path=path)
        if sym in counts:
            raise ParseError(f"duplicate symbol {sym!r}", line=lineno, path=path)
        counts[sym] = c
    if not counts:
        raise EmptySample(f"{path}: no counts")
    return FrequencyTable(counts)


def write_profile_csv(profile: TailProfile, fh) -> None:
    fh.write("v,T_v\n")
    for v, t in profile.entries():
        fh.write(f"{v},{t:.15g}\n")


def load_profile(path) -> TailProfile:
    """Read a ``v,T_v`` CSV as written by :func:`write_profile_csv`."""
    vs, ts = [], []
    for lineno, line in _lines(path):
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 'v,T_v', got {line!r}", line=lineno, path=path)
        if not vs and parts[0].strip() == "v":
            continue
        try:
            vs.append(int(parts[0]))
            ts.append(float(parts[1]))
        except ValueError:
            raise ParseError(f"bad profile row {line!r}", line=lineno, path=path) from None
    if not vs:
        raise EmptySample(f"{path}: empty profile")
    return TailProfile(np.array(vs), np.array(ts))
