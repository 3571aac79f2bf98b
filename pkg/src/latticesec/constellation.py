"""Finite codebooks and truncated inverse norm power sums.

Codewords are lattice points x = z M with integer coefficient vectors z
ranging over the box {-m..m}^n, optionally intersected with the energy
ball ||x||^2 <= p_lim or carved down to the lowest-energy subset of a
target size. The eavesdropper-confusion metric is

    S = sum over included nonzero x of prod_i |x_i|^(-exponent)

(the inverse norm power sum; exponent 3 corresponds to the fast-fading
correct-decision probability). The sums span many orders of magnitude,
so terms are accumulated with error-free math.fsum per coefficient
slice and the per-slice partials are combined in fixed ascending order
of the leading coefficient. That also makes multi-worker runs
bit-identical to single-worker runs: workers own whole slices and the
combination order never depends on scheduling.

Reported statistics: size counts every included codeword (the zero word
too, matching the catalogued codebook sizes); p_max is the maximum
squared norm over nonzero codewords; p_ave averages squared norms over
all included codewords including zero, which reproduces the catalogued
orthogonal-box values n*m*(m+1)/3 exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DiversityError, DomainError
from .numfields import GeneratorMatrix, LatticeSpec

DIVERSITY_EPS = 1e-12


@dataclass(frozen=True)
class SumReport:
    """One (m, p_lim | target_size) configuration's sum and energy stats."""

    lattice_name: str
    n: int
    m: int
    p_lim: float
    size: int
    p_max: float
    p_ave: float
    s_value: float
    exponent: int = 3
    target_size: int | None = None

    def __post_init__(self):
        if math.isfinite(self.p_lim) and self.p_max > self.p_lim + 1e-9:
            raise DomainError("p_max exceeds the configured p_lim")
        if self.size > 1 and not self.s_value > 0:
            raise DomainError("s_value must be positive for nontrivial codebooks")


@dataclass(frozen=True)
class TableRow:
    """Sweep configuration: a box bound plus energy cap or target size."""

    m: int
    p_lim: float = math.inf
    target_size: int | None = None


def _rest_box(n: int, m: int) -> np.ndarray:
    """Lexicographically ordered {-m..m}^(n-1) block shared by all slices."""
    rng = np.arange(-m, m + 1)
    grids = np.meshgrid(*([rng] * (n - 1)), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _check_box_args(m: int, p_lim: float, exponent: int) -> None:
    if not (isinstance(m, int) and m >= 1):
        raise DomainError("box bound m must be a positive integer")
    if not (p_lim > 0):
        raise DomainError("p_lim must be positive")
    if not (isinstance(exponent, int) and exponent >= 1):
        raise DomainError("exponent must be a positive integer")


def _as_matrix(gen: GeneratorMatrix | np.ndarray) -> np.ndarray:
    """Accept a GeneratorMatrix or any square array-like."""
    entries = np.asarray(getattr(gen, "entries", gen), dtype=float)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise DomainError("generator must be a square matrix")
    return entries


def enumerate_codebook(
    gen: GeneratorMatrix | np.ndarray, m: int, p_lim: float = math.inf
) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    """Yield (z, zM) for every z in {-m..m}^n with ||zM||^2 <= p_lim.

    Lexicographic coefficient order; the zero vector is included.
    """
    _check_box_args(m, p_lim, 1)
    M = _as_matrix(gen)
    n = M.shape[0]
    rest = _rest_box(n, m) if n > 1 else None
    for z1 in range(-m, m + 1):
        if rest is None:
            x = z1 * M[0]
            if float(x @ x) <= p_lim:
                yield (z1,), x
            continue
        block = z1 * M[0] + rest @ M[1:]
        norms = np.einsum("ij,ij->i", block, block)
        for keep in np.flatnonzero(norms <= p_lim):
            yield (z1, *map(int, rest[keep])), block[keep]


def _slice_stats(args):
    """Sum/energy statistics of one leading-coefficient slice.

    Returns (count, s_partial, p_max, energy_partial, bad) where bad
    describes the first (lex order) diversity violation as a tuple
    (coefficient vector, coordinate index, coordinate value), or is
    None. All reductions are deterministic functions of the slice.
    """
    M, m, z1, p_lim, exponent = args
    n = M.shape[0]
    if n == 1:
        rest = None
        block = (z1 * M[0])[None, :]
        zmat = np.array([[z1]])
    else:
        rest = _rest_box(n, m)
        block = z1 * M[0] + rest @ M[1:]
        zmat = np.concatenate(
            [np.full((rest.shape[0], 1), z1, dtype=rest.dtype), rest], axis=1)
    norms = np.einsum("ij,ij->i", block, block)
    keep = norms <= p_lim
    zero_row = np.all(zmat == 0, axis=1)
    nonzero = keep & ~zero_row

    count = int(np.count_nonzero(keep))
    energy = math.fsum(norms[keep])
    if not np.any(nonzero):
        return count, 0.0, 0.0, energy, None

    absx = np.abs(block[nonzero])
    row_min = absx.min(axis=1)
    if float(row_min.min()) < DIVERSITY_EPS:
        first = int(np.argmax(row_min < DIVERSITY_EPS))
        coord = int(np.argmin(absx[first]))
        bad = (tuple(int(c) for c in zmat[nonzero][first]), coord,
               float(absx[first][coord]))
        return count, 0.0, 0.0, energy, bad

    terms = np.prod(absx, axis=1) ** float(-exponent)
    s_partial = math.fsum(terms)
    p_max = float(norms[nonzero].max())
    return count, s_partial, p_max, energy, None


def _combine(parts, lattice_name, n, m, p_lim, exponent, target_size=None,
             size_override=None):
    """Fold per-slice statistics in ascending-z1 order."""
    for count, s, pmax, energy, bad in parts:
        if bad is not None:
            raise DiversityError(*bad)
    size = sum(p[0] for p in parts)
    s_value = math.fsum(p[1] for p in parts)
    p_max = max((p[2] for p in parts if p[0]), default=0.0)
    energy = math.fsum(p[3] for p in parts)
    p_ave = energy / size if size else 0.0
    return SumReport(
        lattice_name=lattice_name, n=n, m=m, p_lim=p_lim,
        size=size_override if size_override is not None else size,
        p_max=p_max, p_ave=p_ave, s_value=s_value, exponent=exponent,
        target_size=target_size)


def inverse_norm_power_sum(
    gen: GeneratorMatrix,
    m: int,
    p_lim: float = math.inf,
    exponent: int = 3,
    jobs: int = 1,
    lattice_name: str = "",
) -> SumReport:
    """S over the box-and-ball codebook, with energy statistics.

    Work is partitioned by the leading coefficient z1; each slice is
    reduced with math.fsum and partials are combined in ascending z1
    order, so the result is bit-identical for any worker count.
    """
    _check_box_args(m, p_lim, exponent)
    if jobs < 1:
        raise DomainError("jobs must be >= 1")
    M = _as_matrix(gen)
    slices = [(M, m, z1, p_lim, exponent) for z1 in range(-m, m + 1)]
    if jobs == 1:
        parts = [_slice_stats(s) for s in slices]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_slice_stats, slices))
    return _combine(parts, lattice_name, M.shape[0], m, p_lim, exponent)


def carve_lowest_energy(
    gen: GeneratorMatrix | np.ndarray,
    m: int,
    target_size: int,
    exponent: int = 3,
    lattice_name: str = "",
) -> SumReport:
    """The target_size lowest-energy codewords of the m-box.

    Ties at the energy boundary are broken by lexicographic coefficient
    order. The zero word has energy 0 and is always selected.
    """
    _check_box_args(m, math.inf, exponent)
    M = _as_matrix(gen)
    n = M.shape[0]
    box_size = (2 * m + 1) ** n
    if not (isinstance(target_size, int) and 1 <= target_size):
        raise DomainError("target_size must be a positive integer")
    if target_size > box_size:
        raise DomainError(
            "target_size %d exceeds box size %d" % (target_size, box_size))

    rng = np.arange(-m, m + 1)
    grids = np.meshgrid(*([rng] * n), indexing="ij")
    z = np.stack([g.ravel() for g in grids], axis=1)
    x = z @ M
    norms = np.einsum("ij,ij->i", x, x)
    # Primary key: energy; then the coefficient columns, lexicographic.
    order = np.lexsort(tuple(z[:, j] for j in reversed(range(n))) + (norms,))
    sel = order[:target_size]

    zs, xs, ns = z[sel], x[sel], norms[sel]
    zero_row = np.all(zs == 0, axis=1)
    absx = np.abs(xs[~zero_row])
    if absx.size:
        row_min = absx.min(axis=1)
        if float(row_min.min()) < DIVERSITY_EPS:
            first = int(np.argmax(row_min < DIVERSITY_EPS))
            coord = int(np.argmin(absx[first]))
            raise DiversityError(tuple(map(int, zs[~zero_row][first])), coord,
                                 float(absx[first][coord]))

    # Deterministic accumulation: selected rows in (energy, lex) order.
    s_value = math.fsum(np.prod(absx, axis=1) ** float(-exponent)) if absx.size else 0.0
    p_max = float(ns[~zero_row].max()) if absx.size else 0.0
    p_ave = math.fsum(ns) / target_size
    return SumReport(
        lattice_name=lattice_name, n=n, m=m, p_lim=math.inf,
        size=target_size, p_max=p_max, p_ave=p_ave, s_value=s_value,
        exponent=exponent, target_size=target_size)


def table_sweep(
    lattice: LatticeSpec,
    rows,
    exponent: int = 3,
    jobs: int = 1,
) -> list[SumReport]:
    """One SumReport per TableRow, computed independently, in row order."""
    out = []
    for row in rows:
        if row.target_size is not None:
            out.append(carve_lowest_energy(
                lattice.generator, row.m, row.target_size,
                exponent=exponent, lattice_name=lattice.name))
        else:
            out.append(inverse_norm_power_sum(
                lattice.generator, row.m, row.p_lim,
                exponent=exponent, jobs=jobs, lattice_name=lattice.name))
    return out


# Catalogued sweep configurations. table1: the two unitary lattices
# over plain boxes m = 1..10 without an energy cap. table2: the skewed
# lattice over energy-capped boxes; the (m=12, 2401) row carves by
# target size (its catalogued codebook is smaller than the m=7 ball).
TABLE1_ROWS: tuple[TableRow, ...] = tuple(TableRow(m) for m in range(1, 11))

TABLE2_ROWS: tuple[TableRow, ...] = (
    TableRow(8, 4.0),
    TableRow(5, 16.0),
    TableRow(6, 16.0),
    TableRow(7, 36.0),
    TableRow(12, target_size=2401),
    TableRow(9, 64.0),
    TableRow(10, 100.0),
    TableRow(11, 100.0),
    TableRow(14, 196.0),
    TableRow(18, 324.0),
    TableRow(20, 400.0),
)

TABLE1_LATTICES = ("lambda1", "lambda2")
TABLE2_LATTICE = "lambda3"


def _fmt_plim(p_lim: float, target_size) -> str:
    if target_size is not None:
        return ""
    if math.isinf(p_lim):
        return "inf"
    return "%g" % p_lim


def reports_to_csv(reports, full_precision: bool = False) -> str:
    """CSV rows per report; s_value at 6 significant digits by default."""
    lines = ["lattice,m,p_lim,size,p_max,p_ave,s_value"]
    for r in reports:
        if full_precision:
            pmax, pave, s = repr(r.p_max), repr(r.p_ave), repr(r.s_value)
        else:
            pmax, pave, s = "%.2f" % r.p_max, "%.2f" % r.p_ave, "%.5e" % r.s_value
        lines.append(",".join([
            r.lattice_name, str(r.m), _fmt_plim(r.p_lim, r.target_size),
            str(r.size), pmax, pave, s]))
    return "\n".join(lines) + "\n"
