"""Monte Carlo harness for classification-accuracy tables.

Every trial draws its own seed from ``(master_seed, dist_index, n, trial)``
through a splitmix64 chain, so results do not depend on execution order or on
how many worker processes run them.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .classifier import ClassifierConfig, TailClassification, TailFamily, classify, default_range
from .distributions import Family, TonicDistribution, reference_distributions, sample
from .errors import InvalidParameter
from .estimator import tail_profile
from .frequencies import FrequencyTable

_MASK64 = 0xFFFFFFFFFFFFFFFF

PREDICTED = (
    TailFamily.POWER,
    TailFamily.SUBEXPONENTIAL,
    TailFamily.NEAREXPONENTIAL,
    TailFamily.EXPONENTIAL_OR_THINNER,
)

TRUE_FAMILY = {
    Family.POWER: TailFamily.POWER,
    Family.SUBEXP: TailFamily.SUBEXPONENTIAL,
    Family.NEAREXP: TailFamily.NEAREXPONENTIAL,
    Family.EXP: TailFamily.EXPONENTIAL_OR_THINNER,
}

STUDY_SAMPLE_SIZES = (100, 500, 1000, 2000, 5000, 10000)


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def trial_seed(master_seed: int, dist_index: int, n: int, trial: int) -> int:
    h = splitmix64(master_seed & _MASK64)
    for part in (dist_index, n, trial):
        h = splitmix64(h ^ (part & _MASK64))
    return h


def study_range(n: int) -> tuple[int, int]:
    """v1 = 6 and v2 = 99 below n = 2000, else n / 20 (capped at 500)."""
    return default_range(n)


def run_trial(dist: TonicDistribution, n: int, config: ClassifierConfig | None,
              seed: int) -> TailClassification:
    config = config or ClassifierConfig()
    d1, d2 = study_range(n)
    v1 = d1 if config.v1 is None else config.v1
    v2 = d2 if config.v2 is None else config.v2
    if n <= v2:
        raise InvalidParameter(f"n={n} must exceed v2={v2}")
    x = sample(dist, n, seed)
    _, counts = np.unique(x, return_counts=True)
    ft = FrequencyTable(dict(enumerate(counts.tolist())))
    return classify(tail_profile(ft, v1, v2), config.with_range(v1, v2))


@dataclass
class StudyConfig:
    distributions: Sequence[TonicDistribution] = field(
        default_factory=lambda: reference_distributions()[:3])
    sample_sizes: Sequence[int] = STUDY_SAMPLE_SIZES
    reps: int = 10000
    master_seed: int = 20200101
    classifier: ClassifierConfig = field(default_factory=ClassifierConfig)

    def __post_init__(self):
        if self.reps < 1:
            raise InvalidParameter("reps must be >= 1")
        if not self.distributions or not self.sample_sizes:
            raise InvalidParameter("need at least one distribution and one sample size")
        for n in self.sample_sizes:
            v2 = self.classifier.v2 or study_range(n)[1]
            if n < v2 + 1:
                raise InvalidParameter(f"n={n} must be at least v2+1={v2 + 1}")


@dataclass
class ConfusionRow:
    dist: TonicDistribution
    true_family: TailFamily
    n: int
    counts: dict

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def rate(self, family: TailFamily) -> float:
        return self.counts[family] / self.total


@dataclass
class ConfusionMatrix:
    rows: list[ConfusionRow] = field(default_factory=list)

    def cell(self, dist_or_family, n: int) -> ConfusionRow:
        for row in self.rows:
            if row.n == n and (row.dist == dist_or_family or row.true_family == dist_or_family):
                return row
        raise KeyError((dist_or_family, n))

    def sample_sizes(self) -> list[int]:
        return sorted({r.n for r in self.rows})

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["true_family", "n"] + [f"pred_{f.short}" for f in PREDICTED])
            for r in self.rows:
                w.writerow([r.true_family.short, r.n] + [r.counts[f] for f in PREDICTED])

    @classmethod
    def from_table(cls, n: int, table: dict) -> "ConfusionMatrix":
        """Build from ``{true_family: {pred_family: count}}``; missing cells are zero."""
        rows = []
        for true, preds in table.items():
            true = TailFamily(true)
            counts = {f: int(preds.get(f, preds.get(f.value, 0))) for f in PREDICTED}
            rows.append(ConfusionRow(None, true, n, counts))
        return cls(rows)


def _run_cell(args):
    dist, n, config, seeds = args
    out = []
    for s in seeds:
        out.append(run_trial(dist, n, config, s).family)
    return out


def _workers(requested: int | None) -> int:
    cap = os.environ.get("TAILSCOPE_THREADS")
    w = requested if requested is not None else (os.cpu_count() or 1)
    if cap:
        w = min(w, max(1, int(cap)))
    return max(1, w)


def run_study(config: StudyConfig, workers: int | None = None) -> ConfusionMatrix:
    jobs = []
    for di, dist in enumerate(config.distributions):
        for n in config.sample_sizes:
            seeds = [trial_seed(config.master_seed, di, n, t) for t in range(config.reps)]
            jobs.append((dist, n, config.classifier, seeds))
    nw = _workers(workers)
    if nw == 1:
        results = [_run_cell(j) for j in jobs]
    else:
        # split cells into chunks so workers stay busy; order is restored by index
        chunked, owner = [], []
        for ji, (dist, n, cfg, seeds) in enumerate(jobs):
            step = max(1, len(seeds) // (4 * nw))
            for lo in range(0, len(seeds), step):
                chunked.append((dist, n, cfg, seeds[lo:lo + step]))
                owner.append(ji)
        results = [[] for _ in jobs]
        with ProcessPoolExecutor(max_workers=nw) as pool:
            for ji, part in zip(owner, pool.map(_run_cell, chunked)):
                results[ji].extend(part)
    rows = []
    for (dist, n, _, _), fams in zip(jobs, results):
        counts = {f: 0 for f in PREDICTED}
        for f in fams:
            counts[f] += 1
        rows.append(ConfusionRow(dist, TRUE_FAMILY[dist.family], n, counts))
    return ConfusionMatrix(rows)


@dataclass
class PrecisionRow:
    n: int
    precision: dict  # TailFamily -> float | None


def precision_summary(cm: ConfusionMatrix, n: int | None = None) -> PrecisionRow:
    """``P(i | classified as i)`` for every predicted family at one sample size.

    ``None`` marks a family that was never predicted.
    """
    sizes = cm.sample_sizes()
    if n is None:
        if len(sizes) != 1:
            raise InvalidParameter(f"matrix holds several sample sizes {sizes}; pass n")
        n = sizes[0]
    rows = [r for r in cm.rows if r.n == n]
    if not rows:
        raise InvalidParameter(f"no rows for n={n}")
    prec = {}
    for f in PREDICTED:
        col = sum(r.counts[f] for r in rows)
        hit = sum(r.counts[f] for r in rows if r.true_family == f)
        prec[f] = hit / col if col else None
    return PrecisionRow(n, prec)


def write_precision_csv(cm: ConfusionMatrix, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        header = ["n"]
        for f in PREDICTED:
            header += [f"P({f.short}|->{f.short})", f"P(not_{f.short}|->{f.short})"]
        w.writerow(header)
        for n in cm.sample_sizes():
            row = [n]
            summary = precision_summary(cm, n)
            for f in PREDICTED:
                p = summary.precision[f]
                row += ["NA", "NA"] if p is None else [f"{p:.6f}", f"{1 - p:.6f}"]
            w.writerow(row)


def write_study(cm: ConfusionMatrix, out_dir) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    conf, prec = out_dir / "confusion.csv", out_dir / "precision.csv"
    cm.to_csv(conf)
    write_precision_csv(cm, prec)
    return conf, prec
