"""Value-set sampling on strips and lines, and finite-cloud comparison.

Two routes produce the same regions for equivalent series: route A evaluates
the series directly at sampled points; route B samples the equivalence class,
twisting by random phase vectors drawn from the period box [0, 2pi d)^k with
d the lcm of expansion-matrix denominators (for an integral matrix this is
the plain torus box).  Cloud proximity is measured by the two-sided Hausdorff
distance between finite point sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .basis import compute_basis, denominator_lcm
from .core import SeriesSpec
from .equivalence import TWO_PI, PhaseVector
from .errors import BadRange, EmptyCloud


@dataclass(frozen=True)
class ValueCloud:
    """Finite multiset of sampled complex values plus sampling provenance."""

    points: np.ndarray
    route: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=complex))

    def __len__(self) -> int:
        return len(self.points)


def _eval_many(spec: SeriesSpec, s: np.ndarray) -> np.ndarray:
    out = np.zeros(s.shape, dtype=complex)
    for lam, term in zip(spec.numeric_exponents(), spec.terms):
        out += term.coeff * np.exp(-lam * s)
    return out


def _modulus_cap(spec: SeriesSpec, sigma_lo: float, sigma_hi: float) -> float:
    """Triangle-inequality bound on |f| over the closed sigma band."""
    return math.fsum(
        abs(term.coeff) * max(math.exp(-lam * sigma_lo), math.exp(-lam * sigma_hi))
        for lam, term in zip(spec.numeric_exponents(), spec.terms)
    )


def _check_modulus(values: np.ndarray, cap: float) -> None:
    worst = float(np.max(np.abs(values))) if len(values) else 0.0
    if worst > cap * (1.0 + 1e-9) + 1e-12:
        raise ArithmeticError(
            f"sampled modulus {worst:.6g} exceeds triangle bound {cap:.6g}"
        )


def sample_strip_direct(
    spec: SeriesSpec,
    sigma1: float,
    sigma2: float,
    t_max: float,
    count: int,
    seed: int,
) -> ValueCloud:
    """Route A for a strip: evaluate at seeded uniform points of the strip."""
    if not sigma1 < sigma2:
        raise BadRange(f"need sigma1 < sigma2, got {sigma1}, {sigma2}")
    if not t_max > 0:
        raise BadRange(f"need t_max > 0, got {t_max}")
    if not count > 0:
        raise BadRange(f"need count > 0, got {count}")
    rng = np.random.default_rng(seed)
    sig = rng.uniform(sigma1, sigma2, count)
    t = rng.uniform(-t_max, t_max, count)
    values = _eval_many(spec, sig + 1j * t)
    _check_modulus(values, _modulus_cap(spec, sigma1, sigma2))
    meta = {
        "sigma1": sigma1,
        "sigma2": sigma2,
        "t_max": t_max,
        "count": count,
        "seed": seed,
    }
    return ValueCloud(values, "direct-strip", meta)


def sample_strip_via_equivalence(
    spec: SeriesSpec,
    sigma1: float,
    sigma2: float,
    count: int,
    seed: int,
) -> ValueCloud:
    """Route B for a strip: random twists of the series evaluated on the real axis.

    Each sample draws a phase vector uniformly from [0, 2pi d)^k (d the lcm of
    expansion denominators over all rows), twists the coefficients, and
    evaluates at a uniform sigma in the strip with t = 0.
    """
    if not sigma1 < sigma2:
        raise BadRange(f"need sigma1 < sigma2, got {sigma1}, {sigma2}")
    if not count > 0:
        raise BadRange(f"need count > 0, got {count}")
    _, expansion, _ = compute_basis([term.exponent for term in spec.terms])
    d = denominator_lcm(expansion, expansion.nrows) if expansion.nrows else 1
    k = expansion.ncols
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, TWO_PI * d, size=(k, count))
    sig = rng.uniform(sigma1, sigma2, count)
    rows = np.array(expansion.float_rows(), dtype=float).reshape(len(spec.terms), k)
    term_phases = rows @ phases if k else np.zeros((len(spec.terms), count))
    values = np.zeros(count, dtype=complex)
    for i, (lam, term) in enumerate(zip(spec.numeric_exponents(), spec.terms)):
        values += term.coeff * np.exp(1j * term_phases[i]) * np.exp(-lam * sig)
    _check_modulus(values, _modulus_cap(spec, sigma1, sigma2))
    meta = {
        "sigma1": sigma1,
        "sigma2": sigma2,
        "count": count,
        "seed": seed,
        "denominator_lcm": d,
    }
    return ValueCloud(values, "equivalence-class", meta)


def sample_line(
    spec: SeriesSpec, sigma0: float, t_max: float, count: int, seed: int
) -> ValueCloud:
    """Values on the vertical line sigma = sigma0, t stratified over [-t_max, t_max]."""
    if not t_max > 0:
        raise BadRange(f"need t_max > 0, got {t_max}")
    if not count > 0:
        raise BadRange(f"need count > 0, got {count}")
    rng = np.random.default_rng(seed)
    # one jittered sample per equal subinterval: quasi-uniform coverage of the line
    t = -t_max + (np.arange(count) + rng.uniform(size=count)) * (2.0 * t_max / count)
    values = _eval_many(spec, sigma0 + 1j * t)
    _check_modulus(values, _modulus_cap(spec, sigma0, sigma0))
    meta = {"sigma0": sigma0, "t_max": t_max, "count": count, "seed": seed}
    return ValueCloud(values, "direct-line", meta)


def hausdorff(a: ValueCloud, b: ValueCloud) -> float:
    """Two-sided Hausdorff distance between finite clouds in the plane."""
    if len(a) == 0 or len(b) == 0:
        raise EmptyCloud("hausdorff distance needs nonempty clouds")
    pa = np.column_stack([a.points.real, a.points.imag])
    pb = np.column_stack([b.points.real, b.points.imag])
    d_ab = np.max(cKDTree(pb).query(pa, k=1)[0])
    d_ba = np.max(cKDTree(pa).query(pb, k=1)[0])
    return float(max(d_ab, d_ba))


class KroneckerResult(NamedTuple):
    found: bool
    t: float | None
    residual: float | None


def _kronecker_residuals(
    ts: np.ndarray, beta: np.ndarray, target: np.ndarray
) -> np.ndarray:
    phases = -np.outer(ts, beta) - target[None, :]
    return np.max(np.abs((phases + math.pi) % TWO_PI - math.pi), axis=1)


def kronecker_find_t(
    basis_values: Sequence[float],
    target: PhaseVector,
    tol: float,
    t_max_search: float,
    max_grid_points: int = 5_000_000,
) -> KroneckerResult:
    """Search for a shift time realizing target phases on all basis frequencies.

    Finds t in [0, t_max_search] with max_j |(-t beta_j - y_j) mod 2pi| <= tol
    by a coarse grid (step tied to tol and the largest frequency, capped at
    max_grid_points samples) followed by iterative local refinement.  Any
    returned hit is re-verified; notFound is a value, not an error.
    """
    if not tol > 0:
        raise BadRange(f"need tol > 0, got {tol}")
    if not t_max_search > 0:
        raise BadRange(f"need t_max_search > 0, got {t_max_search}")
    beta = np.asarray(list(basis_values), dtype=float)
    y = np.asarray(list(target), dtype=float)
    if beta.shape != y.shape:
        raise BadRange("target length must match basis length")
    if len(beta) == 0:
        return KroneckerResult(True, 0.0, 0.0)
    lipschitz = float(np.max(np.abs(beta)))
    if lipschitz == 0.0:
        residual = float(np.max(np.abs((y + math.pi) % TWO_PI - math.pi)))
        return KroneckerResult(residual <= tol, 0.0 if residual <= tol else None,
                               residual if residual <= tol else None)
    step = min(0.45 * tol / lipschitz, 0.05 / lipschitz)
    step = max(step, t_max_search / max_grid_points)
    accept = tol + 0.55 * lipschitz * step

    def refine(lo: float, hi: float) -> tuple[float, float]:
        for _ in range(6):
            ts = np.linspace(lo, hi, 81)
            res = _kronecker_residuals(ts, beta, y)
            i = int(np.argmin(res))
            lo = ts[max(i - 1, 0)]
            hi = ts[min(i + 1, len(ts) - 1)]
        ts = np.linspace(lo, hi, 81)
        res = _kronecker_residuals(ts, beta, y)
        i = int(np.argmin(res))
        return float(ts[i]), float(res[i])

    chunk = 1_000_000
    n_total = int(math.floor(t_max_search / step)) + 1
    start = 0
    while start < n_total:
        stop = min(start + chunk, n_total)
        ts = (np.arange(start, stop) * step).clip(max=t_max_search)
        res = _kronecker_residuals(ts, beta, y)
        hits = np.flatnonzero(res <= accept)
        # one refinement per contiguous run of near-threshold samples
        for run in np.split(hits, np.flatnonzero(np.diff(hits) > 1) + 1):
            if len(run) == 0:
                continue
            i = run[int(np.argmin(res[run]))]
            t_best, _ = refine(max(ts[i] - step, 0.0), min(ts[i] + step, t_max_search))
            # re-verify against the exact residual before reporting
            check = float(_kronecker_residuals(np.array([t_best]), beta, y)[0])
            if check <= tol:
                return KroneckerResult(True, t_best, check)
        start = stop
    return KroneckerResult(False, None, None)
