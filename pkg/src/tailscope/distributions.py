"""Tonic tail families: exact pmf, normalizing constants, exact tail indices,
seeded samplers and asymptotic divergence rates.

Kernels (``p_k = c * kernel(k)`` for ``k >= k0``):

=========  =====================================  ==========================
family     kernel                                 parameters
=========  =====================================  ==========================
power      ``k^-lambda``                          ``lambda > 1``
subexp     ``exp(-lambda k^alpha)``               ``lambda > 0, 0 < alpha < 1``
nearexp    ``exp(-lambda y / (ln y)^beta)``,      ``lambda > 0, beta > 0``
           ``y = k + 1``
exp        ``exp(-lambda k)``                     ``lambda > 0``
=========  =====================================  ==========================

The near-exponential kernel is evaluated at ``k + 1`` so that ``k = 1`` is
well defined.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .errors import (
    InvalidParameter,
    NoBracket,
    NonConvergent,
    OutOfSupport,
    Unsupported,
)


class Family(str, enum.Enum):
    POWER = "power"
    SUBEXP = "subexp"
    NEAREXP = "nearexp"
    EXP = "exp"


_K_CAP = 1 << 24
_POWER_TABLE_CAP = 10**6
_SAMPLER_TAIL_MASS = 1e-10


@dataclass(frozen=True)
class TonicDistribution:
    family: Family
    lam: float
    alpha: float | None = None
    beta: float | None = None
    k0: int = 1
    c: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if self.k0 < 1:
            raise InvalidParameter("k0 must be >= 1")
        if not self.lam > 0:
            raise InvalidParameter("lambda must be positive")
        if fam is Family.POWER and self.lam <= 1:
            raise NonConvergent(f"power kernel k^-{self.lam} is not summable (need lambda > 1)")
        if fam is Family.SUBEXP and not (self.alpha is not None and 0 < self.alpha < 1):
            raise InvalidParameter("sub-exponential family needs 0 < alpha < 1")
        if fam is Family.NEAREXP and not (self.beta is not None and self.beta > 0):
            raise InvalidParameter("near-exponential family needs beta > 0")
        object.__setattr__(self, "c", normalizing_constant(self))

    @property
    def spec(self) -> str:
        lam = _fmt(self.lam)
        extra = ""
        if self.family is Family.SUBEXP:
            extra = f",alpha={_fmt(self.alpha)}"
        elif self.family is Family.NEAREXP:
            extra = f",beta={_fmt(self.beta)}"
        if self.k0 != 1:
            extra += f",k0={self.k0}"
        return f"{self.family.value}:lambda={lam}{extra}"

    def __str__(self):
        return self.spec

    # kernel pieces, all vectorized over float k
    def log_kernel(self, k):
        k = np.asarray(k, dtype=np.float64)
        if self.family is Family.POWER:
            return -self.lam * np.log(k)
        if self.family is Family.SUBEXP:
            return -self.lam * k**self.alpha
        if self.family is Family.NEAREXP:
            y = k + 1.0
            return -self.lam * y / np.log(y) ** self.beta
        return -self.lam * k

    def dlog_kernel(self, k):
        """Derivative of ``log_kernel`` in ``k``."""
        k = np.asarray(k, dtype=np.float64)
        if self.family is Family.POWER:
            return -self.lam / k
        if self.family is Family.SUBEXP:
            return -self.lam * self.alpha * k ** (self.alpha - 1.0)
        if self.family is Family.NEAREXP:
            ly = np.log(k + 1.0)
            return -self.lam * (ly - self.beta) / ly ** (self.beta + 1.0)
        return np.full_like(k, -self.lam)

    def kernel(self, k):
        return np.exp(self.log_kernel(k))

    @property
    def monotone_from(self) -> int:
        """First support point from which the kernel is non-increasing."""
        if self.family is Family.NEAREXP:
            # lambda y / (ln y)^beta is increasing once ln y >= beta
            return max(self.k0, math.ceil(math.exp(self.beta)) - 1)
        return self.k0

    def kernel_tail_integral(self, a: float) -> float:
        """``integral_a^inf kernel(x) dx`` for ``a >= monotone_from``."""
        lam = self.lam
        if self.family is Family.POWER:
            return a ** (1.0 - lam) / (lam - 1.0)
        if self.family is Family.EXP:
            return math.exp(-lam * a) / lam
        if self.family is Family.SUBEXP:
            s = 1.0 / self.alpha
            return (special.gamma(s) * special.gammaincc(s, lam * a**self.alpha)
                    / (self.alpha * lam**s))
        val, _ = integrate.quad(lambda x: math.exp(float(self.log_kernel(x))), a, np.inf,
                                epsabs=0.0, epsrel=1e-12, limit=200)
        return val


def _fmt(x: float) -> str:
    return repr(float(x)).rstrip("0").rstrip(".") if float(x) != int(x) else str(int(x))


def power(lam: float = 2.0, k0: int = 1) -> TonicDistribution:
    return TonicDistribution(Family.POWER, lam, k0=k0)


def subexponential(lam: float = 1.0, alpha: float = 0.5, k0: int = 1) -> TonicDistribution:
    return TonicDistribution(Family.SUBEXP, lam, alpha=alpha, k0=k0)


def nearexponential(lam: float = 1.0, beta: float = 2.0, k0: int = 1) -> TonicDistribution:
    return TonicDistribution(Family.NEAREXP, lam, beta=beta, k0=k0)


def exponential(lam: float = 1.0, k0: int = 1) -> TonicDistribution:
    return TonicDistribution(Family.EXP, lam, k0=k0)


def reference_distributions() -> list[TonicDistribution]:
    """The four simulation distributions: power(2), subexp(1, 1/2),
    nearexp(1, 2) and exp(1), all supported on k >= 1."""
    return [power(2.0), subexponential(1.0, 0.5), nearexponential(1.0, 2.0), exponential(1.0)]


def parse_spec(text: str) -> TonicDistribution:
    """Parse ``family:key=value,...``, e.g. ``subexp:lambda=1,alpha=0.5``."""
    name, _, rest = text.strip().partition(":")
    try:
        fam = Family(name.strip().lower())
    except ValueError:
        raise InvalidParameter(f"unknown family {name!r} in {text!r}") from None
    params = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise InvalidParameter(f"expected key=value, got {item!r} in {text!r}")
        key = key.strip().lower()
        if key not in ("lambda", "alpha", "beta", "k0"):
            raise InvalidParameter(f"unknown parameter {key!r} in {text!r}")
        try:
            params[key] = int(val) if key == "k0" else float(val)
        except ValueError:
            raise InvalidParameter(f"bad value for {key}: {val!r}") from None
    if "lambda" not in params:
        raise InvalidParameter(f"missing lambda in {text!r}")
    return TonicDistribution(fam, params["lambda"], alpha=params.get("alpha"),
                             beta=params.get("beta"), k0=params.get("k0", 1))


# ---------------------------------------------------------------------------
# normalization and exact entropic moments
# ---------------------------------------------------------------------------

def _kernel_sum(dist: TonicDistribution, tol: float) -> float:
    """``sum_{k >= k0} kernel(k)`` by direct summation plus an Euler-Maclaurin tail.

    The tail beyond ``K`` is ``I(K) - f(K)/2 - f'(K)/12``; ``K`` is doubled
    until the dropped correction ``|f'(K)|/12`` is below ``tol * S^2``, which
    keeps the error on ``c = 1/S`` under ``tol``.
    """
    k_start = dist.k0
    K = max(64, dist.monotone_from + 1)
    while True:
        ks = np.arange(k_start, K + 1, dtype=np.float64)
        head = math.fsum(dist.kernel(ks))
        fK = float(dist.kernel(K))
        dfK = fK * float(dist.dlog_kernel(K))
        tail = dist.kernel_tail_integral(K) - fK / 2.0 - dfK / 12.0
        total = head + tail
        if abs(dfK) / 12.0 < tol * total * total:
            return total
        if K >= _K_CAP:
            raise NonConvergent(f"kernel sum for {dist.spec} did not reach tol={tol}")
        K *= 2


def normalizing_constant(dist: TonicDistribution, tol: float = 1e-13) -> float:
    if not tol > 0:
        raise InvalidParameter("tol must be positive")
    if dist.family is Family.POWER and dist.lam <= 1:
        raise NonConvergent("power kernel is not summable for lambda <= 1")
    if dist.family is Family.EXP:
        # geometric series
        return -math.expm1(-dist.lam) * math.exp(dist.lam * dist.k0)
    return 1.0 / _kernel_sum(dist, tol)


def pmf(dist: TonicDistribution, k):
    """``c * kernel(k)``; scalar in, float out, arrays vectorized."""
    arr = np.asarray(k)
    if np.any(arr < dist.k0) or np.any(arr != np.floor(arr)):
        raise OutOfSupport(f"support of {dist.spec} is the integers >= {dist.k0}")
    out = dist.c * dist.kernel(arr)
    return float(out) if out.ndim == 0 else out


def tail_mass_bound(dist: TonicDistribution, K: int) -> float:
    """Upper bound on ``P(X > K)`` for ``K >= monotone_from``."""
    return dist.c * dist.kernel_tail_integral(K)


def _power_tail_moment(dist: TonicDistribution, v: int, K: int) -> float:
    """``sum_{k > K} p_k (1 - p_k)^v`` for a power law, ``K`` past the peak.

    Integral by the substitution ``p = c x^-lambda``, which gives a regularized
    incomplete beta function, then the Euler-Maclaurin end corrections.
    """
    lam, c = dist.lam, dist.c
    a = 1.0 - 1.0 / lam
    pK = c * K ** (-lam)
    integral = (c ** (1.0 / lam) / lam) * math.exp(special.betaln(a, v + 1.0)) \
        * special.betainc(a, v + 1.0, pK)
    g = pK * (1.0 - pK) ** v
    dp = -lam * pK / K
    dg = dp * (1.0 - pK) ** (v - 1) * (1.0 - (v + 1) * pK)
    return integral - g / 2.0 - dg / 12.0


def moment_terms(dist: TonicDistribution, v: int, K: int, power: int = 1) -> np.ndarray:
    """Terms ``p_k^power (1 - p_k)^v`` for ``k0 <= k <= K``."""
    ks = np.arange(dist.k0, K + 1, dtype=np.float64)
    p = dist.c * dist.kernel(ks)
    return p**power * np.exp(v * np.log1p(-p))


def exact_zeta(dist: TonicDistribution, v: int, tol: float = 1e-12) -> float:
    """``zeta_v = sum_k p_k (1 - p_k)^v`` with absolute truncation error below ``tol``."""
    if v < 1:
        raise InvalidParameter("v must be >= 1")
    if dist.family is Family.POWER:
        # past x_v = (c v)^(1/lambda) the summand is smooth and decreasing
        x_v = (dist.c * v) ** (1.0 / dist.lam)
        K = int(max(4096, 64 * x_v, dist.k0 + 1))
        return math.fsum(moment_terms(dist, v, K)) + _power_tail_moment(dist, v, K)
    K = max(256, dist.monotone_from + 1)
    while tail_mass_bound(dist, K) >= tol:
        if K >= _K_CAP:
            raise NonConvergent(f"zeta_{v} truncation for {dist.spec} did not reach tol={tol}")
        K *= 2
    return math.fsum(moment_terms(dist, v, K))


def exact_tau(dist: TonicDistribution, v: int, tol: float = 1e-9) -> float:
    """Tail index ``tau_v = v * zeta_v`` with absolute error below ``tol``."""
    return v * exact_zeta(dist, v, tol / v)


def exact_profile(dist: TonicDistribution, v1: int, v2: int, tol: float = 1e-9):
    """Noiseless tail profile ``tau_v`` for ``v1 <= v <= v2``."""
    from .estimator import TailProfile

    v = np.arange(v1, v2 + 1)
    return TailProfile(v, np.array([exact_tau(dist, int(x), tol) for x in v]))


# ---------------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------------

def ne_root(beta: float, v: float, rtol: float = 1e-12) -> float:
    """Root ``x > e^beta`` of ``x^(1/beta) / ln x = (ln v)^(1/beta)``, by bisection.

    Solved in ``u = ln x``: ``u/beta - ln u - (ln ln v)/beta`` is increasing
    for ``u > beta``.
    """
    if not beta > 0:
        raise InvalidParameter("beta must be positive")
    if not v > math.e:
        raise InvalidParameter("v must exceed e")
    llv = math.log(math.log(v))

    def g(u):
        return u / beta - math.log(u) - llv / beta

    lo = beta
    hi_x = math.log(v) * (2.0 * max(llv, 1e-300)) ** beta * 4.0
    if hi_x <= math.exp(beta):
        raise NoBracket(f"upper bracket {hi_x} is below e^beta for beta={beta}, v={v}")
    hi = math.log(hi_x)
    if not (g(lo) < 0 < g(hi)):
        raise NoBracket(f"[e^{beta}, {hi_x}] does not straddle a root for v={v}")
    # bisect on u; relative tolerance on x = e^u is an absolute one on u
    while hi - lo > rtol:
        mid = 0.5 * (lo + hi)
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))


def asymptotic_rate(dist: TonicDistribution, v: float) -> float:
    """``p(x_v) / |p'(x_v)|`` where ``v p(x_v) = 1``; same order as ``tau_v``."""
    c, lam = dist.c, dist.lam
    if dist.family is Family.POWER:
        return c ** (1.0 / lam) / lam * v ** (1.0 / lam)
    if dist.family is Family.SUBEXP:
        a = dist.alpha
        return lam ** (-1.0 / a) / a * (math.log(c) + math.log(v)) ** (1.0 / a - 1.0)
    if dist.family is Family.NEAREXP:
        b = dist.beta
        x = ne_root(b, (c * v) ** (1.0 / lam))
        lx = math.log(x)
        return lx ** (b + 1.0) / (lx - b)
    raise Unsupported("exponential tails have no divergent rate; tau_v stays bounded")


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _cdf_table(dist: TonicDistribution) -> np.ndarray:
    if dist.family is Family.POWER:
        K = dist.k0 + _POWER_TABLE_CAP - 1
    else:
        K = max(64, dist.monotone_from + 1)
        while tail_mass_bound(dist, K) >= _SAMPLER_TAIL_MASS and K < _K_CAP:
            K *= 2
    ks = np.arange(dist.k0, K + 1, dtype=np.float64)
    cdf = np.cumsum(dist.c * dist.kernel(ks))
    cdf.setflags(write=False)
    return cdf


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox stream; identical across platforms for a given seed."""
    return np.random.Generator(np.random.Philox(int(seed) & 0xFFFFFFFFFFFFFFFF))


def sample(dist: TonicDistribution, n: int, seed: int) -> np.ndarray:
    """``n`` i.i.d. draws by inverse CDF. Returns an int64 array of support points.

    Power laws use a table over the first 10^6 support points; uniforms
    beyond it invert the tail approximation
    ``P(X > k) ~ c / ((lambda - 1) k^(lambda - 1))``.
    """
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    u = make_rng(seed).random(n)
    cdf = _cdf_table(dist)
    idx = np.searchsorted(cdf, u, side="right")
    out = dist.k0 + idx.astype(np.int64)
    beyond = idx >= cdf.size
    if np.any(beyond):
        out[beyond] = _draw_beyond_table(dist, u[beyond], cdf)
    return out


def _draw_beyond_table(dist, u, cdf):
    K = dist.k0 + cdf.size - 1
    if dist.family is Family.POWER:
        lam = dist.lam
        s = 1.0 - u  # exact for doubles from random()
        k = np.rint((dist.c / ((lam - 1.0) * s)) ** (1.0 / (lam - 1.0)))
        return np.maximum(k, K + 1).astype(np.int64)
    res = np.empty(u.size, dtype=np.int64)
    for i, ui in enumerate(u):
        acc, k = float(cdf[-1]), K
        while acc <= ui and k < K + _K_CAP:
            k += 1
            acc += float(pmf(dist, k))
        res[i] = k
    return res
