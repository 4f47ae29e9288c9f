"""Equivalence of series sharing an exponent sequence.

Two series with coefficients a(n), b(n) over the same exponents are equivalent
when b(n) = a(n) exp(i (R Y)_n) for one real phase vector Y over the basis.
Deciding this for a finite truncation is a simultaneous congruence problem
R Y = theta (mod 2pi): it is feasible exactly when every integer relation m
among the rows of R annihilates the targets, m . theta = 0 (mod 2pi), and a
witness relation that fails certifies non-equivalence.

When the relations pass, a solution is constructed through integer lifts:
theta + 2 pi z must land in the row space of R, which pins z to an exact
integer system over the kernel lattice; a size-reduced lift then leaves a
well-conditioned linear solve.  Feasible verdicts always come with an
explicit Y passing the residual check, infeasible ones with an exact witness.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .basis import Basis, BohrMatrix, compute_basis, denominator_lcm
from .core import SeriesSpec
from .errors import DimensionMismatch, ModulusMismatch, SupportMismatch
from .lattice import (
    clear_denominators,
    diagonalize,
    integer_left_kernel,
    integer_right_kernel,
    size_reduce,
    solve_integer_rows,
)

TWO_PI = 2.0 * math.pi

#: A phase vector is just a sequence of radians indexed like the basis elements.
PhaseVector = Sequence[float]


def principal_angle(x: float) -> float:
    """Representative of x modulo 2pi in [-pi, pi)."""
    return (x + math.pi) % TWO_PI - math.pi


def circle_distance(x: float) -> float:
    """Distance from x to the nearest multiple of 2pi."""
    return abs(principal_angle(x))


@dataclass(frozen=True)
class PhaseTargets:
    """Per-term phase requirements theta(n) = arg(b(n)/a(n)) in [0, 2pi).

    `entries` holds (term index, theta) for the constrained terms; `skipped`
    lists terms where both coefficients vanish and no constraint arises.
    Indices are 0-based.
    """

    entries: tuple[tuple[int, float], ...]
    skipped: tuple[int, ...] = ()

    def indices(self) -> list[int]:
        return [i for i, _ in self.entries]

    def thetas(self) -> list[float]:
        return [th for _, th in self.entries]


@dataclass(frozen=True)
class CongruenceSystem:
    """Verdict on the truncated system R Y = theta (mod 2pi).

    Every kernel vector annihilates the constrained rows exactly (rational
    arithmetic).  Feasible verdicts carry a phase vector whose worst residual
    is at most `tol`; infeasible ones carry an integer witness whose target
    defect exceeds `tol` times its l1 norm.
    """

    row_indices: tuple[int, ...]
    targets: PhaseTargets
    kernel: tuple[tuple[int, ...], ...]
    feasible: bool
    tol: float
    phase: tuple[float, ...] | None = None
    residual: float | None = None
    witness: tuple[int, ...] | None = None
    defect: float | None = None

    def __post_init__(self):
        if self.feasible:
            if self.phase is None or self.residual is None:
                raise ValueError("feasible verdict requires a phase vector and residual")
            if self.residual > self.tol:
                raise ValueError(
                    f"feasible verdict with residual {self.residual:.3e} > tol {self.tol:.3e}"
                )
        else:
            if self.witness is None or self.defect is None:
                raise ValueError("infeasible verdict requires a witness and defect")
            scale = sum(abs(m) for m in self.witness)
            if self.defect <= self.tol * scale:
                raise ValueError(
                    f"witness defect {self.defect:.3e} does not exceed tolerance"
                )


def twist(
    spec: SeriesSpec, basis: Basis, expansion: BohrMatrix, phases: PhaseVector
) -> SeriesSpec:
    """Multiply coefficient n by exp(i (R Y)_n); exponents are untouched."""
    if expansion.nrows != len(spec.terms):
        raise DimensionMismatch(
            f"matrix has {expansion.nrows} rows for {len(spec.terms)} terms"
        )
    if len(basis) != expansion.ncols or len(phases) != expansion.ncols:
        raise DimensionMismatch(
            f"basis size {len(basis)}, matrix columns {expansion.ncols}, "
            f"phase length {len(phases)} must agree"
        )
    coeffs = []
    for i, term in enumerate(spec.terms):
        phi = math.fsum(float(q) * phases[j] for j, q in expansion.row_items(i))
        coeffs.append(term.coeff * cmath.exp(1j * phi))
    return spec.with_coeffs(coeffs)


def extract_phase_targets(a: SeriesSpec, b: SeriesSpec, tol: float = 1e-9) -> PhaseTargets:
    """Phase targets theta(n) making b a twist of a, or a proof none exist.

    Both specs must carry the identical exponent list (align first by taking
    the union of exponent sets with zero coefficients where a series is
    missing a term).  Raises ModulusMismatch or SupportMismatch, with 1-based
    term positions, when the series cannot be equivalent at all.
    """
    if len(a.terms) != len(b.terms):
        raise DimensionMismatch(
            f"term counts differ: {len(a.terms)} vs {len(b.terms)}"
        )
    for i, (ta, tb) in enumerate(zip(a.terms, b.terms)):
        if ta.exponent != tb.exponent:
            raise DimensionMismatch(f"exponent vectors differ at term {i + 1}")
    entries: list[tuple[int, float]] = []
    skipped: list[int] = []
    for i, (ta, tb) in enumerate(zip(a.terms, b.terms)):
        ma, mb = abs(ta.coeff), abs(tb.coeff)
        if ma == 0.0:
            if mb == 0.0:
                skipped.append(i)
                continue
            raise SupportMismatch(i + 1)
        if abs(ma - mb) > tol * max(1.0, ma):
            raise ModulusMismatch(i + 1, ta.coeff, tb.coeff)
        theta = cmath.phase(tb.coeff / ta.coeff) % TWO_PI
        entries.append((i, theta))
    return PhaseTargets(tuple(entries), tuple(skipped))


def integer_kernel(expansion: BohrMatrix, rows: Sequence[int]) -> list[tuple[int, ...]]:
    """Generators of {m integer : sum_n m_n R[n] = 0} for the selected rows.

    Exact: rational elimination, denominators cleared, Hermite-reduced.  The
    empty list certifies that the rows are rationally independent.  Vector
    entries align with the order of `rows`.
    """
    idx = list(rows)
    if not idx:
        raise DimensionMismatch("row selection must be nonempty")
    if any(not 0 <= i < expansion.nrows for i in idx):
        raise DimensionMismatch(f"row selection outside 0..{expansion.nrows - 1}")
    dense = expansion.dense_rows(idx)
    return [tuple(m) for m in integer_left_kernel(dense)]


def _diagonalized_system(dense: list[list[Fraction]]):
    """Clear denominators and diagonalize the scaled system (closure scan)."""
    a_int, scale = clear_denominators(dense)
    u, diag, v, rank = diagonalize(a_int)
    return a_int, scale, u, diag, v, rank


def _polish_phases(dense_float: np.ndarray, thetas: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Newton refinements of R y = theta (mod 2pi) on signed residuals.

    The true solution set is an affine space, so once y is within the linear
    regime a least-squares correction restores full double precision.
    """
    for _ in range(2):
        res = dense_float @ y - thetas
        res = (res + math.pi) % TWO_PI - math.pi
        if np.max(np.abs(res)) < 1e-13:
            break
        delta, *_ = np.linalg.lstsq(dense_float, -res, rcond=None)
        y = y + delta
    return y


def solve_phase_system(
    expansion: BohrMatrix, targets: PhaseTargets, tol: float = 1e-9
) -> CongruenceSystem:
    """Decide R Y = theta (mod 2pi) on the constrained rows.

    Feasibility is the kernel criterion: every integer relation among the rows
    must annihilate theta modulo 2pi, each within tol scaled by the relation's
    l1 norm.  When all relations pass, an integer lift z with theta + 2 pi z
    in the row space is solved for exactly and Y recovered by least squares,
    then polished to double precision.
    """
    idx = targets.indices()
    thetas = targets.thetas()
    if not idx:
        return CongruenceSystem(
            row_indices=(),
            targets=targets,
            kernel=(),
            feasible=True,
            tol=tol,
            phase=(0.0,) * expansion.ncols,
            residual=0.0,
        )
    kernel = integer_kernel(expansion, idx)
    for m in kernel:
        s = math.fsum(mi * th for mi, th in zip(m, thetas))
        defect = circle_distance(s)
        if defect > tol * sum(abs(mi) for mi in m):
            return CongruenceSystem(
                row_indices=tuple(idx),
                targets=targets,
                kernel=tuple(kernel),
                feasible=False,
                tol=tol,
                witness=m,
                defect=defect,
            )

    k = expansion.ncols
    if k == 0:
        # only empty rows: the kernel check above already forced theta = 0 (mod 2pi)
        residual = max(circle_distance(th) for th in thetas)
        return CongruenceSystem(
            row_indices=tuple(idx),
            targets=targets,
            kernel=tuple(kernel),
            feasible=True,
            tol=tol,
            phase=(),
            residual=residual,
        )

    # Construction.  theta + 2pi z must land in the row space of R, which the
    # saturated kernel lattice cuts out: K z = b with b_m = -m.theta / 2pi
    # (integers, certified by the kernel check above).  Solving that small
    # integer system and size-reducing z keeps every quantity near the scale
    # of the data, after which Y drops out of a well-conditioned least-squares
    # solve of R Y = theta + 2pi z.
    if kernel:
        b = [
            -round(math.fsum(mi * th for mi, th in zip(m, thetas)) / TWO_PI)
            for m in kernel
        ]
        z = solve_integer_rows([list(m) for m in kernel], b)
        if z is None:
            raise ArithmeticError(
                "integer lifts are inconsistent: the system sits beyond what "
                "double-precision targets can certify"
            )
        z = size_reduce(z, integer_right_kernel([list(m) for m in kernel]))
    else:
        z = [0] * len(idx)

    dense = expansion.dense_rows(idx)
    dense_float = np.array([[float(q) for q in row] for row in dense], dtype=float)
    theta_arr = np.array(thetas, dtype=float)
    rhs = theta_arr + TWO_PI * np.array(z, dtype=float)
    y, *_ = np.linalg.lstsq(dense_float, rhs, rcond=None)
    y = _polish_phases(dense_float, theta_arr, y)
    res = dense_float @ y - theta_arr
    residual = float(np.max(np.abs((res + math.pi) % TWO_PI - math.pi)))
    if residual > tol:
        raise ArithmeticError(
            f"congruence solution lost precision: residual {residual:.3e} > tol {tol:.3e}"
        )
    return CongruenceSystem(
        row_indices=tuple(idx),
        targets=targets,
        kernel=tuple(kernel),
        feasible=True,
        tol=tol,
        phase=tuple(float(x) for x in y),
        residual=residual,
    )


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    phase: tuple[float, ...] | None = None
    reason: str | None = None
    system: CongruenceSystem | None = None


def is_equivalent_truncated(
    a: SeriesSpec, b: SeriesSpec, tol: float = 1e-9
) -> EquivalenceResult:
    """Decide equivalence of two aligned truncations.

    Equivalent iff coefficient moduli and supports match and the phase
    congruence system over the computed basis is feasible.
    """
    try:
        targets = extract_phase_targets(a, b, tol)
    except (ModulusMismatch, SupportMismatch) as err:
        return EquivalenceResult(equivalent=False, reason=str(err))
    _, expansion, _ = compute_basis([t.exponent for t in a.terms])
    system = solve_phase_system(expansion, targets, tol)
    if system.feasible:
        return EquivalenceResult(equivalent=True, phase=system.phase, system=system)
    return EquivalenceResult(
        equivalent=False,
        reason=(
            f"kernel witness {system.witness} has target defect "
            f"{system.defect:.6g} rad"
        ),
        system=system,
    )


class ClosurePoint(NamedTuple):
    n: int
    feasible: bool
    min_norm: float | None


def _min_norm_one_dim(
    dense: list[list[Fraction]], solution: float, search_bound: int
) -> float:
    """Smallest |y| solving a feasible one-basis-element system.

    The solution set is an arithmetic progression of spacing 2 pi d / g (g the
    gcd of the scaled column); reduction is exact, searching at most
    `search_bound` lattice translates away.
    """
    a_int, scale = clear_denominators(dense)
    g = math.gcd(*(abs(row[0]) for row in a_int)) if a_int else 0
    if g == 0:
        return 0.0
    period = TWO_PI * scale / g
    j = round(solution / period)
    if abs(j) > search_bound:
        j = int(math.copysign(search_bound, j))
    best = min(abs(solution - (j + dj) * period) for dj in (-1, 0, 1))
    return best


def _min_norm_bounded(
    dense: list[list[Fraction]], phase: Sequence[float], search_bound: int
) -> float:
    """Bounded enumeration of solution-lattice translates for k >= 2 bases.

    Returns an upper estimate of the minimum Euclidean norm: lattice shifts of
    the found solution are scanned in a small box (free directions projected
    out exactly).
    """
    k = len(phase)
    _, scale, _, diag, v, rank = _diagonalized_system(dense)
    modulus = TWO_PI * scale
    varr = np.array(v, dtype=float)
    y0 = np.array(phase, dtype=float)
    free = varr[:, rank:]
    if free.size:
        # remove the affine-free component: min over it is a projection
        proj, *_ = np.linalg.lstsq(free, y0, rcond=None)
        y0 = y0 - free @ proj
    gens = [varr[:, i] * (modulus / diag[i]) for i in range(rank)]
    if not gens:
        return float(np.linalg.norm(y0))
    bound = min(search_bound, 4)
    best = float("inf")
    grids = np.meshgrid(*[np.arange(-bound, bound + 1) for _ in gens], indexing="ij")
    coords = np.stack([g.ravel() for g in grids], axis=-1)
    for combo in coords:
        cand = y0 + sum(c * g for c, g in zip(combo, gens))
        if free.size:
            proj, *_ = np.linalg.lstsq(free, cand, rcond=None)
            cand = cand - free @ proj
        best = min(best, float(np.linalg.norm(cand)))
    return best


def closure_demo(
    a: SeriesSpec, b: SeriesSpec, n_max: int, search_bound: int = 10**6
) -> list[ClosurePoint]:
    """Per-truncation feasibility scan of the first-N phase systems.

    For each N <= n_max the first N terms are aligned and the congruence
    system is decided; when feasible over a one-dimensional basis the exact
    minimum |y| is reported.  Feasibility at every N with min norms diverging
    is the finite signature of a series lying in the closure of an
    equivalence class without belonging to it.
    """
    if not 1 <= n_max <= min(len(a.terms), len(b.terms)):
        raise DimensionMismatch(
            f"n_max {n_max} outside 1..{min(len(a.terms), len(b.terms))}"
        )
    out: list[ClosurePoint] = []
    for n in range(1, n_max + 1):
        head_a = a.take_terms(n)
        head_b = b.take_terms(n)
        try:
            targets = extract_phase_targets(head_a, head_b)
        except (ModulusMismatch, SupportMismatch):
            out.append(ClosurePoint(n, False, None))
            continue
        _, expansion, _ = compute_basis([t.exponent for t in head_a.terms])
        system = solve_phase_system(expansion, targets)
        if not system.feasible:
            out.append(ClosurePoint(n, False, None))
            continue
        min_norm: float | None = None
        if targets.entries and expansion.ncols == 1:
            dense = expansion.dense_rows(targets.indices())
            min_norm = _min_norm_one_dim(dense, system.phase[0], search_bound)
        elif targets.entries and expansion.ncols >= 2:
            dense = expansion.dense_rows(targets.indices())
            min_norm = _min_norm_bounded(dense, system.phase, search_bound)
        elif not targets.entries:
            min_norm = 0.0
        out.append(ClosurePoint(n, True, min_norm))
    return out
