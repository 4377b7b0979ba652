"""Unbiased entropic-moment estimator ``Z_v`` and the observed tail profile.

``Z_v`` is the U-statistic with Turing's formula as kernel; ``E[Z_v]`` equals
``zeta_v = sum_k p_k (1 - p_k)^v`` for every ``1 <= v <= n - 1``. The tail
index estimate is ``T_v = v * Z_v``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import IndexOutOfRange, InvalidRange
from .frequencies import FrequencyTable


@dataclass(frozen=True)
class TailProfile:
    """Tail index estimates ``T_v`` for consecutive ``v`` in ``[v_min, v_max]``."""

    v: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=np.int64)
        t = np.asarray(self.t, dtype=np.float64)
        if v.ndim != 1 or v.shape != t.shape or v.size == 0:
            raise InvalidRange("profile needs matching, non-empty v and T_v arrays")
        if np.any(np.diff(v) != 1):
            raise InvalidRange("profile v values must be consecutive integers")
        if v[0] < 1:
            raise InvalidRange("profile v values must be positive")
        if np.any(~np.isfinite(t)) or np.any(t < 0):
            raise InvalidRange("profile T_v values must be finite and non-negative")
        v.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "t", t)

    @property
    def v_min(self) -> int:
        return int(self.v[0])

    @property
    def v_max(self) -> int:
        return int(self.v[-1])

    def __len__(self):
        return self.v.size

    def entries(self) -> list[tuple[int, float]]:
        return [(int(a), float(b)) for a, b in zip(self.v, self.t)]

    def restrict(self, v1: int, v2: int) -> "TailProfile":
        if v1 < self.v_min or v2 > self.v_max or v1 > v2:
            raise InvalidRange(
                f"[{v1}, {v2}] is not inside the profile range [{self.v_min}, {self.v_max}]"
            )
        lo = v1 - self.v_min
        return TailProfile(self.v[lo:lo + v2 - v1 + 1], self.t[lo:lo + v2 - v1 + 1])

    def scaled(self, factor: float) -> "TailProfile":
        return TailProfile(self.v, self.t * factor)


def _z_values(ft: FrequencyTable, vmax: int) -> np.ndarray:
    ys, mult = ft.count_of_counts()
    return _backend.z_profile(
        np.ascontiguousarray(ys, dtype=np.int64),
        np.ascontiguousarray(mult, dtype=np.int64),
        ft.n,
        vmax,
    )


def _check_v(ft: FrequencyTable, v: int) -> None:
    if v < 1 or v > ft.n - 1:
        raise IndexOutOfRange(f"v must satisfy 1 <= v <= n-1 = {ft.n - 1}, got {v}")


def z_statistic(ft: FrequencyTable, v: int) -> float:
    _check_v(ft, v)
    return float(_z_values(ft, v)[v - 1])


def tail_index_estimate(ft: FrequencyTable, v: int) -> float:
    _check_v(ft, v)
    return v * float(_z_values(ft, v)[v - 1])


def tail_profile(ft: FrequencyTable, v1: int, v2: int) -> TailProfile:
    """Observed profile ``{T_v : v1 <= v <= v2}``.

    One running product per distinct count value, so the cost is
    O(#distinct counts * v2).
    """
    if not 1 <= v1 < v2 or v2 > ft.n - 1:
        raise InvalidRange(f"need 1 <= v1 < v2 <= n-1 = {ft.n - 1}, got v1={v1}, v2={v2}")
    z = _z_values(ft, v2)
    v = np.arange(v1, v2 + 1, dtype=np.int64)
    return TailProfile(v, v * z[v1 - 1:])
