"""Independent reference computations used to freeze expected values.

Nothing here imports the code under test.
"""

import itertools
import math
from fractions import Fraction


def literal_z(counts, v):
    """Z_v evaluated literally in exact rationals, factorial prefactor and all."""
    n = sum(counts)
    pre = Fraction(n ** (v + 1) * math.factorial(n - (v + 1)), math.factorial(n))
    total = Fraction(0)
    for y in counts:
        p = Fraction(y, n)
        prod = Fraction(1)
        for j in range(v):
            prod *= 1 - p - Fraction(j, n)
        total += p * prod
    return pre * total


def compositions(n, k):
    """All k-tuples of non-negative integers summing to n."""
    for cut in itertools.combinations(range(n + k - 1), k - 1):
        parts, prev = [], -1
        for c in cut + (n + k - 1,):
            parts.append(c - prev - 1)
            prev = c
        yield tuple(parts)


def multinomial_pmf(counts, probs):
    n = sum(counts)
    coef = math.factorial(n)
    for c in counts:
        coef //= math.factorial(c)
    out = float(coef)
    for c, p in zip(counts, probs):
        out *= p ** c
    return out


def zeta(probs, v):
    return sum(p * (1 - p) ** v for p in probs)


def kendall_brute(x, y):
    m = len(x)
    s = 0
    for i in range(m):
        for j in range(i + 1, m):
            prod = (x[j] - x[i]) * (y[j] - y[i])
            s += (prod > 0) - (prod < 0)
    return s / (m * (m - 1) / 2)


def all_count_tables(n_max):
    """Every multiset of positive counts (integer partition) with total <= n_max."""
    def parts(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in parts(n - first, first):
                yield (first,) + rest

    for n in range(2, n_max + 1):
        yield from parts(n, n)
