"""Number-field lattice constructions and minimum product distances.

A totally real degree-n field K with ring of integers O embeds into R^n
by listing all real embeddings: x -> (sigma_1(x), ..., sigma_n(x)).
Scaling the trace form by a totally positive alpha twists the embedding
to x -> (sqrt(sigma_j(alpha)) * sigma_j(x))_j, which can turn O (or an
ideal) into a rotation of Z^n. Such rotations keep the minimum product
distance d_p,min = min_x prod_i |x_i| strictly positive (full
diversity), the property that drives fading performance.

Three catalogued rank-4 unit-volume lattices are constructed here:

  lambda1  twisted embedding of the ring of integers of the totally
           real quartic field of discriminant 725 (x^4-x^3-3x^2+x+1),
           rotated onto an orthonormal basis; unitary generator,
           d_p,min = 1/sqrt(725).
  lambda2  Kronecker product of two quadratic rotations: Z[sqrt(2)]
           twisted by 1/(4+2*sqrt(2)) and Z[(1+sqrt(5))/2] twisted by
           3-(1+sqrt(5))/2 (trace form 5*I, rescaled); unitary,
           d_p,min = 1/40.
  lambda3  plain canonical embedding of the ring of integers of the
           maximal real subfield of the 15th cyclotomic field
           (x^4-x^3-4x^2+4x+1), volume-normalized; a skewed basis,
           d_p,min = 1/sqrt(1125).

Exact rational arithmetic (via ratpoly) backs every structural step:
trace forms, unit searches, norm-one vectors, integrality and
unimodularity checks. Floats appear only in the final embedding values,
with roots isolated to 1e-15 by Sturm bisection.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import ratpoly
from .errors import ConstructionError, DiversityError, DomainError

ROOT_PRECISION = Fraction(1, 10 ** 15)
UNITARITY_TOL = 1e-9
DET_TOL = 1e-12
DPMIN_RTOL = 1e-6
DEFAULT_COEFF_BOUND = 5

LATTICE_NAMES = ("lambda1", "lambda2", "lambda3")


# ---------------------------------------------------------------------------
# exact arithmetic in Q[x]/(f)

def _nf_reduce(a, f: ratpoly.Poly) -> ratpoly.Poly:
    return ratpoly.divmod_poly(ratpoly.make_poly(a), f)[1]

def _nf_mul(a, b, f: ratpoly.Poly) -> ratpoly.Poly:
    return ratpoly.divmod_poly(ratpoly.mul(ratpoly.make_poly(a),
                                           ratpoly.make_poly(b)), f)[1]

def _nf_inv(a, f: ratpoly.Poly) -> ratpoly.Poly:
    g, u, _ = ratpoly.extended_gcd(ratpoly.make_poly(a), f)
    if ratpoly.degree(g) != 0:
        raise DomainError("element is not invertible modulo the minimal polynomial")
    return _nf_reduce(ratpoly.scale(u, 1 / g[0]), f)

def _mult_matrix(a, f: ratpoly.Poly) -> list[list[Fraction]]:
    """Matrix of multiplication by a on the power basis of Q[x]/(f)."""
    n = ratpoly.degree(f)
    rows = []
    for i in range(n):
        col = _nf_mul(a, [0] * i + [1], f)
        rows.append([col[j] if j < len(col) else Fraction(0) for j in range(n)])
    return rows

def _nf_trace(a, f: ratpoly.Poly) -> Fraction:
    m = _mult_matrix(a, f)
    return sum(m[i][i] for i in range(len(m)))

def _nf_norm(a, f: ratpoly.Poly) -> Fraction:
    return _frac_det(_mult_matrix(a, f))


def _frac_det(mat: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    a = [row[:] for row in mat]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def _frac_inv(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact matrix inverse by Gauss-Jordan elimination."""
    n = len(mat)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DomainError("singular matrix has no inverse")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


# ---------------------------------------------------------------------------
# domain types

@dataclass(frozen=True)
class NumberFieldSpec:
    """A totally real field given by a monic integer minimal polynomial.

    roots holds all real roots in ascending order, isolated by Sturm
    bisection to 1e-15; a totally real field of degree n has exactly n.
    """

    degree: int
    min_poly: tuple[int, ...]
    roots: tuple[float, ...]

    def __post_init__(self):
        if len(self.roots) != self.degree:
            raise DomainError("number of real roots must equal the degree")
        if list(self.roots) != sorted(set(self.roots)):
            raise DomainError("roots must be distinct and ascending")


def number_field(min_poly) -> NumberFieldSpec:
    """Build a NumberFieldSpec, verifying the field is totally real."""
    coeffs = tuple(int(c) for c in min_poly)
    poly = ratpoly.make_poly(coeffs)
    deg = ratpoly.degree(poly)
    if deg < 1:
        raise DomainError("minimal polynomial must be nonconstant")
    if poly[-1] != 1:
        raise DomainError("minimal polynomial must be monic")
    roots = [float(r) for r in ratpoly.real_roots(poly, ROOT_PRECISION)]
    if len(roots) != deg:
        raise DomainError(
            "field is not totally real: %d real roots for degree %d"
            % (len(roots), deg))
    return NumberFieldSpec(degree=deg, min_poly=coeffs, roots=tuple(roots))


@dataclass(frozen=True)
class GeneratorMatrix:
    """Full-rank square generator; rows are the basis vectors."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("generator matrix must be square")
        if abs(np.linalg.det(m)) == 0.0:
            raise DomainError("generator matrix must have nonzero determinant")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.entries))

    def unitarity_defect(self) -> float:
        gram = self.entries @ self.entries.T
        return float(np.max(np.abs(gram - np.eye(self.n))))


@dataclass(frozen=True)
class LatticeSpec:
    """A named unit-volume lattice with its reference product distance."""

    name: str
    generator: GeneratorMatrix
    reference_dpmin: float
    provenance: str
    coeff_bound: int = field(default=DEFAULT_COEFF_BOUND)

    def __post_init__(self):
        dp = min_product_distance(self.generator, self.coeff_bound)
        ref = float(self.reference_dpmin)
        if abs(dp - ref) > DPMIN_RTOL * ref:
            raise ConstructionError(
                "%s: computed d_p,min %.12g deviates from reference %.12g "
                "beyond 1e-6 relative" % (self.name, dp, ref))


# ---------------------------------------------------------------------------
# operations

def canonical_embedding(field_spec: NumberFieldSpec, basis) -> GeneratorMatrix:
    """Rows (sigma_1(b_i), ..., sigma_n(b_i)) for basis elements b_i.

    Basis elements are polynomial coefficient sequences in the field
    generator (low degree first); sigma_j evaluates at the j-th real
    root in ascending order.
    """
    rows = []
    for b in basis:
        coeffs = [float(c) for c in b]
        rows.append([_horner(coeffs, r) for r in field_spec.roots])
    m = np.array(rows, dtype=float)
    if m.shape[0] != field_spec.degree:
        raise DomainError("need exactly n basis elements")
    if abs(np.linalg.det(m)) < 1e-12:
        raise DomainError(
            "basis elements are linearly dependent over the rationals")
    return GeneratorMatrix(m)


def _horner(coeffs: list[float], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def normalize_unit_volume(m: GeneratorMatrix) -> GeneratorMatrix:
    """Scale so |det| = 1 (within 1e-12)."""
    d = abs(m.det)
    if d == 0.0:
        raise DomainError("cannot normalize a singular matrix")
    out = GeneratorMatrix(m.entries / d ** (1.0 / m.n))
    if abs(abs(out.det) - 1.0) > DET_TOL:
        raise ConstructionError("normalization failed to reach unit volume")
    return out


def _coefficient_box(n: int, bound: int) -> np.ndarray:
    """All integer vectors in {-bound..bound}^n, lexicographic order."""
    rng = np.arange(-bound, bound + 1)
    grids = np.meshgrid(*([rng] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def min_product_distance(m: GeneratorMatrix, coeff_bound: int = DEFAULT_COEFF_BOUND) -> float:
    """min over nonzero z in {-b..b}^n of prod_i |(zM)_i|.

    This is a truncated search: for the catalogued lattices the minimum
    is attained by units / short algebraic integers well inside
    coeff_bound = 5. An exact zero product on a nonzero vector means
    the lattice is not fully diverse and raises DiversityError.
    """
    if coeff_bound < 1:
        raise DomainError("coeff_bound must be >= 1")
    z = _coefficient_box(m.n, coeff_bound)
    z = z[np.any(z != 0, axis=1)]
    prods = np.abs(np.prod(z @ m.entries, axis=1))
    idx = int(np.argmin(prods))
    if prods[idx] == 0.0:
        raise DiversityError(z[idx], int(np.argmin(np.abs(z[idx] @ m.entries))),
                             0.0)
    return float(prods[idx])


def embedding_norm_product(field_spec: NumberFieldSpec, element) -> float:
    """prod_j sigma_j(x) for a field element (floating point)."""
    coeffs = [float(c) for c in element]
    return float(np.prod([_horner(coeffs, r) for r in field_spec.roots]))


def algebraic_norm(field_spec: NumberFieldSpec, element) -> Fraction:
    """Exact field norm of an element with rational coefficients."""
    f = ratpoly.make_poly(field_spec.min_poly)
    return _nf_norm([Fraction(c) for c in element], f)


# ---------------------------------------------------------------------------
# lambda1: quartic field of discriminant 725, rotated onto Z^4

_L1_MIN_POLY = (1, 1, -3, -1, 1)  # 1 + x - 3x^2 - x^3 + x^4
_L1_DISC = 725


def _lambda1_alpha(f: ratpoly.Poly) -> ratpoly.Poly:
    """First totally positive unit multiple of 1/f'(delta).

    1/f'(delta) generates the codifferent of Z[delta], so Tr(alpha*x*y)
    is an integral unimodular form for alpha = u/f'(delta) with u a
    unit. Units are scanned over coefficient vectors in {-2..2}^4 in
    lexicographic order; the first u making alpha totally positive is
    taken (the choice only permutes/reflects the resulting lattice).
    """
    gamma = _nf_inv(ratpoly.derivative(f), f)
    roots = [float(r) for r in ratpoly.real_roots(f, ROOT_PRECISION)]
    for u in itertools.product(range(-2, 3), repeat=4):
        # Float norm prefilter, then exact unit confirmation.
        approx = np.prod([_horner([float(c) for c in u], r) for r in roots])
        if abs(abs(approx) - 1.0) > 1e-6:
            continue
        if abs(_nf_norm([Fraction(c) for c in u], f)) != 1:
            continue
        alpha = _nf_mul([Fraction(c) for c in u], gamma, f)
        embeds = [_horner([float(c) for c in alpha], r) for r in roots]
        if all(e > 1e-9 for e in embeds):
            return alpha
    raise ConstructionError("no totally positive codifferent generator found")


def _trace_gram(basis: list[ratpoly.Poly], alpha: ratpoly.Poly,
                f: ratpoly.Poly) -> list[list[Fraction]]:
    n = len(basis)
    return [[_nf_trace(_nf_mul(_nf_mul(basis[i], basis[j], f), alpha, f), f)
             for j in range(n)] for i in range(n)]


def _norm_one_vectors(gram: list[list[Fraction]]) -> list[tuple[int, ...]]:
    """All integer v with v G v^T = 1, G exact positive definite."""
    n = len(gram)
    ginv = _frac_inv(gram)
    # |v_i| <= sqrt((G^-1)_ii) for v G v^T = 1 (dual-basis Cauchy-Schwarz)
    bounds = [math.isqrt(math.floor(ginv[i][i])) for i in range(n)]
    out = []
    for v in itertools.product(*[range(-b, b + 1) for b in bounds]):
        q = sum(gram[i][j] * v[i] * v[j] for i in range(n) for j in range(n))
        if q == 1:
            out.append(v)
    return out


def build_lambda1() -> LatticeSpec:
    """Unitary rotation of Z^4 from the discriminant-725 quartic field.

    Pipeline (exact until the final embedding): take the codifferent
    twist alpha, whose trace form on Z[delta] is integral of
    determinant 1; enumerate the norm-one vectors of that form; they
    contain an orthonormal basis, which re-expresses the twisted
    embedding as a unitary generator matrix.
    """
    f = ratpoly.make_poly(_L1_MIN_POLY)
    field_spec = number_field(_L1_MIN_POLY)
    alpha = _lambda1_alpha(f)

    power_basis = [ratpoly.make_poly([0] * i + [1]) for i in range(4)]
    gram = _trace_gram(power_basis, alpha, f)
    for row in gram:
        for x in row:
            if x.denominator != 1:
                raise ConstructionError("trace form is not integral")
    if _frac_det(gram) != 1:
        raise ConstructionError("trace form is not unimodular")

    ones = _norm_one_vectors(gram)
    # Keep one representative per +-pair (first nonzero coefficient
    # positive), lexicographically sorted: a deterministic basis.
    reps = sorted(v for v in ones
                  if next(c for c in v if c != 0) > 0)
    if len(reps) != 4:
        raise ConstructionError(
            "expected 4 norm-one vector pairs, found %d" % len(reps))
    for i in range(4):
        for j in range(i):
            inner = sum(gram[a][b] * reps[i][a] * reps[j][b]
                        for a in range(4) for b in range(4))
            if inner != 0:
                raise ConstructionError("norm-one vectors are not orthogonal")

    sqrt_alpha = [math.sqrt(_horner([float(c) for c in alpha], r))
                  for r in field_spec.roots]
    rows = []
    for v in reps:
        coeffs = [float(c) for c in v]
        rows.append([s * _horner(coeffs, r)
                     for s, r in zip(sqrt_alpha, field_spec.roots)])
    m = GeneratorMatrix(np.array(rows))
    return _validated("lambda1", m, 1.0 / math.sqrt(_L1_DISC),
                      "twisted canonical embedding of the ring of integers "
                      "of the totally real quartic field x^4-x^3-3x^2+x+1 "
                      "(discriminant 725), rotated onto an orthonormal basis",
                      unitary=True)


# ---------------------------------------------------------------------------
# lambda2: Kronecker product of two quadratic rotations

def _rotated_z2(min_poly, basis, alpha, expect_gram_scale: int) -> GeneratorMatrix:
    """Twisted embedding of a quadratic ring, checked exactly.

    The trace form Tr(alpha * b_i * b_j) must equal expect_gram_scale
    times the identity; the embedding is then rescaled to a unitary
    2x2 generator.
    """
    f = ratpoly.make_poly(min_poly)
    field_spec = number_field(min_poly)
    basis = [ratpoly.make_poly([Fraction(c) for c in b]) for b in basis]
    alpha = ratpoly.make_poly([Fraction(c) for c in alpha])

    gram = _trace_gram(basis, alpha, f)
    expected = [[Fraction(expect_gram_scale * int(i == j)) for j in range(2)]
                for i in range(2)]
    if gram != expected:
        raise ConstructionError(
            "quadratic block trace form is %s, expected %s * I"
            % (gram, expect_gram_scale))

    embeds = [_horner([float(c) for c in alpha], r) for r in field_spec.roots]
    if min(embeds) <= 0:
        raise ConstructionError("twist element is not totally positive")
    rows = []
    for b in basis:
        coeffs = [float(c) for c in b]
        rows.append([
            math.sqrt(e) * _horner(coeffs, r)
            for e, r in zip(embeds, field_spec.roots)
        ])
    return GeneratorMatrix(np.array(rows) / math.sqrt(expect_gram_scale))


def build_lambda2() -> LatticeSpec:
    """Kronecker product of the two catalogued quadratic rotations.

    Block A: Z[sqrt(2)] with basis {1, 1+sqrt(2)} twisted by
    alpha1 = 1/(4+2*sqrt(2)) (trace form exactly I). Block B: the
    golden ring Z[theta], theta = (1+sqrt(5))/2, basis {1, theta},
    twisted by alpha2 = 3-theta (trace form exactly 5*I, rescaled by
    1/sqrt(5)). Both blocks are unitary, so their Kronecker product is
    a unitary rank-4 generator.
    """
    # alpha1 = 1/(4+2*sqrt(2)) = 1/2 - sqrt(2)/4 as an element of Q(sqrt(2))
    block_a = _rotated_z2(
        min_poly=(-2, 0, 1),
        basis=((1,), (1, 1)),
        alpha=(Fraction(1, 2), Fraction(-1, 4)),
        expect_gram_scale=1,
    )
    # theta has minimal polynomial x^2 - x - 1; alpha2 = 3 - theta
    block_b = _rotated_z2(
        min_poly=(-1, -1, 1),
        basis=((1,), (0, 1)),
        alpha=(3, -1),
        expect_gram_scale=5,
    )
    m = GeneratorMatrix(np.kron(block_a.entries, block_b.entries))
    return _validated("lambda2", m, 1.0 / 40.0,
                      "Kronecker product of the twisted embeddings of "
                      "Z[sqrt(2)] (twist 1/(4+2*sqrt(2))) and of the golden "
                      "ring Z[(1+sqrt(5))/2] (twist 3-(1+sqrt(5))/2)",
                      unitary=True)


# ---------------------------------------------------------------------------
# lambda3: maximal real subfield of the 15th cyclotomic field

_L3_MIN_POLY = (1, 4, -4, -1, 1)  # 1 + 4x - 4x^2 - x^3 + x^4
_L3_DISC = 1125


def build_lambda3() -> LatticeSpec:
    """Unit-volume canonical embedding of Z[2cos(2pi/15)] (skewed)."""
    field_spec = number_field(_L3_MIN_POLY)
    power_basis = [[0] * i + [1] for i in range(4)]
    raw = canonical_embedding(field_spec, power_basis)
    if abs(abs(raw.det) - math.sqrt(_L3_DISC)) > 1e-9 * math.sqrt(_L3_DISC):
        raise ConstructionError(
            "raw embedding determinant %.12g deviates from sqrt(%d)"
            % (raw.det, _L3_DISC))
    m = normalize_unit_volume(raw)
    return _validated("lambda3", m, 1.0 / math.sqrt(_L3_DISC),
                      "canonical embedding of the ring of integers of the "
                      "maximal real subfield of the 15th cyclotomic field "
                      "(x^4-x^3-4x^2+4x+1, discriminant 1125), volume "
                      "normalized; intentionally skewed",
                      unitary=False)


def _validated(name: str, m: GeneratorMatrix, dpmin_ref: float,
               provenance: str, unitary: bool) -> LatticeSpec:
    if abs(abs(m.det) - 1.0) > DET_TOL:
        raise ConstructionError(
            "%s: |det| = %.17g is not 1 within 1e-12" % (name, abs(m.det)))
    if unitary and m.unitarity_defect() > UNITARITY_TOL:
        raise ConstructionError(
            "%s: unitarity defect %.3e exceeds 1e-9"
            % (name, m.unitarity_defect()))
    # LatticeSpec's constructor enforces the d_p,min invariant.
    return LatticeSpec(name=name, generator=m, reference_dpmin=dpmin_ref,
                       provenance=provenance)


_BUILDERS = {
    "lambda1": build_lambda1,
    "lambda2": build_lambda2,
    "lambda3": build_lambda3,
}


def build_lattice(name: str) -> LatticeSpec:
    if name not in _BUILDERS:
        raise DomainError("unknown lattice %r; choose from %s"
                          % (name, "/".join(LATTICE_NAMES)))
    return _BUILDERS[name]()


# ---------------------------------------------------------------------------
# versioned data files

_FIELD_POLYS = {
    "lambda1": _L1_MIN_POLY,
    # minimal polynomial of sqrt(2) + (1+sqrt(5))/2, a primitive
    # element of the compositum the Kronecker construction lives in
    "lambda2": (-1, 6, -5, -2, 1),
    "lambda3": _L3_MIN_POLY,
}


def default_data_dir() -> Path:
    env = os.environ.get("LATTICESEC_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def _f17(x) -> str:
    # 17 significant digits: enough to reproduce any double exactly.
    return "%.17g" % float(x)


def save_lattice(spec: LatticeSpec, data_dir=None) -> Path:
    """Write <data_dir>/<name>.json; matrix entries carry 17 significant
    digits so the stored generator is bit-identical on reload."""
    base = Path(data_dir) if data_dir is not None else default_data_dir()
    base.mkdir(parents=True, exist_ok=True)
    path = base / ("%s.json" % spec.name)
    rows = ",\n".join(
        "  [%s]" % ", ".join(_f17(x) for x in row)
        for row in spec.generator.entries)
    text = "\n".join([
        "{",
        ' "dpmin_ref": %s,' % _f17(spec.reference_dpmin),
        ' "generator": [',
        rows,
        " ],",
        ' "min_poly": %s,' % json.dumps(list(_FIELD_POLYS[spec.name])),
        ' "n": %d,' % spec.generator.n,
        ' "name": %s,' % json.dumps(spec.name),
        ' "provenance": %s' % json.dumps(spec.provenance),
        "}",
        "",
    ])
    path.write_text(text)
    return path


def load_lattice(name: str, data_dir=None) -> LatticeSpec:
    """Load a shipped lattice; LATTICESEC_DATA overrides the data dir.

    The LatticeSpec invariants (unit volume, d_p,min agreement) are
    re-validated on load, so a corrupted data file cannot propagate.
    """
    if name not in LATTICE_NAMES:
        raise DomainError("unknown lattice %r; choose from %s"
                          % (name, "/".join(LATTICE_NAMES)))
    base = Path(data_dir) if data_dir is not None else default_data_dir()
    path = base / ("%s.json" % name)
    if not path.exists():
        raise DomainError("lattice data file missing: %s" % path)
    with open(path) as fh:
        doc = json.load(fh)
    m = GeneratorMatrix(np.array(doc["generator"], dtype=float))
    spec = LatticeSpec(name=doc["name"], generator=m,
                       reference_dpmin=float(doc["dpmin_ref"]),
                       provenance=doc.get("provenance", "data file"))
    if spec.name != name:
        raise DomainError("data file name mismatch: %s holds %r" % (path, spec.name))
    if name in ("lambda1", "lambda2") and m.unitarity_defect() > UNITARITY_TOL:
        raise ConstructionError("%s data file lost unitarity" % name)
    if abs(abs(m.det) - 1.0) > DET_TOL:
        raise ConstructionError("%s data file lost unit volume" % name)
    return spec
