"""Exact polynomial arithmetic over the rationals.

Polynomials are tuples of fractions.Fraction, index = power, with no
trailing zero coefficients (the zero polynomial is the empty tuple).
Everything here is exact; no floating point enters any computation.
The module provides the Sturm-sequence machinery used both for
certifying polynomial minima and for isolating the real roots of
number-field minimal polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError

Poly = tuple[Fraction, ...]


def make_poly(coeffs: Iterable) -> Poly:
    """Build a polynomial from low-to-high coefficients, trimming zeros."""
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    """Degree of p; the zero polynomial has degree -1 by convention."""
    return len(p) - 1


def evaluate(p: Poly, x: Fraction) -> Fraction:
    """Horner evaluation at an exact rational point."""
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return make_poly(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return make_poly(
        (p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)
    )


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return make_poly(out)


def scale(p: Poly, k) -> Poly:
    k = Fraction(k)
    return make_poly(c * k for c in p)


def power(p: Poly, e: int) -> Poly:
    if e < 0:
        raise DomainError("negative polynomial power")
    out = make_poly([1])
    for _ in range(e):
        out = mul(out, p)
    return out


def derivative(p: Poly) -> Poly:
    return make_poly(i * c for i, c in enumerate(p) if i > 0)


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division a = q*b + r with deg r < deg b."""
    if not b:
        raise DomainError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    db, lead = degree(b), b[-1]
    while len(r) >= len(b) and any(c != 0 for c in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        s = r[-1] / lead
        e = len(r) - len(b)
        q[e] += s
        for i, c in enumerate(b):
            r[e + i] -= s * c
        r.pop()
    return make_poly(q), make_poly(r)


def monic(p: Poly) -> Poly:
    if not p:
        return p
    return scale(p, 1 / p[-1])


def extended_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, u, v) with u*a + v*b = g = monic gcd(a, b)."""
    r0, r1 = a, b
    u0, u1 = make_poly([1]), ()
    v0, v1 = (), make_poly([1])
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub(u0, mul(q, u1))
        v0, v1 = v1, sub(v0, mul(q, v1))
    if r0:
        lead = r0[-1]
        r0, u0, v0 = monic(r0), scale(u0, 1 / lead), scale(v0, 1 / lead)
    return r0, u0, v0


def gcd_poly(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm."""
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def squarefree_part(p: Poly) -> Poly:
    """p divided by gcd(p, p'): same roots, all simple."""
    if degree(p) <= 0:
        return p
    g = gcd_poly(p, derivative(p))
    if degree(g) <= 0:
        return p
    return divmod_poly(p, g)[0]


def sturm_chain(p: Poly) -> list[Poly]:
    """Standard Sturm sequence p, p', and negated remainders."""
    chain = [p, derivative(p)]
    while chain[-1] and degree(chain[-1]) > 0:
        rem = divmod_poly(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(scale(rem, -1))
    return [c for c in chain if c]


def sign_variations(chain: Sequence[Poly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = evaluate(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_open(p: Poly, a: Fraction, b: Fraction, chain=None) -> int:
    """Number of distinct real roots of p in the open interval (a, b).

    Requires p(a) != 0 and p(b) != 0 so that Sturm's theorem applies
    without boundary qualifications.
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise DomainError("empty interval for root counting")
    if evaluate(p, a) == 0 or evaluate(p, b) == 0:
        raise DomainError("root counting requires nonroot endpoints")
    if chain is None:
        chain = sturm_chain(p)
    return sign_variations(chain, a) - sign_variations(chain, b)


# Deterministic fallback split points used when the midpoint of an
# interval happens to be a root; a polynomial has finitely many roots
# so one of these always works.
_SPLIT_OFFSETS = (
    Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(2, 5),
    Fraction(3, 5), Fraction(1, 7), Fraction(6, 7), Fraction(1, 11),
)


def _split_point(p: Poly, a: Fraction, b: Fraction) -> Fraction:
    for t in _SPLIT_OFFSETS:
        m = a + t * (b - a)
        if evaluate(p, m) != 0:
            return m
    raise DomainError("could not find a nonroot split point")


def isolate_roots_open(p: Poly, a, b) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open rational intervals, each containing exactly one
    distinct real root of p in (a, b).

    Endpoints a, b must not be roots. Intervals are returned in
    ascending order and their endpoints are never roots of p.
    """
    a, b = Fraction(a), Fraction(b)
    sp = squarefree_part(p)
    if evaluate(sp, a) == 0 or evaluate(sp, b) == 0:
        raise DomainError("isolation interval endpoints must not be roots")
    chain = sturm_chain(sp)
    out: list[tuple[Fraction, Fraction]] = []

    def rec(lo: Fraction, hi: Fraction) -> None:
        n = sign_variations(chain, lo) - sign_variations(chain, hi)
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        m = _split_point(sp, lo, hi)
        rec(lo, m)
        rec(m, hi)

    rec(a, b)
    return out


def refine_isolating_interval(
    p: Poly, lo: Fraction, hi: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of a simple root below `width`.

    p must have exactly one root in (lo, hi), which must be simple, and
    the endpoints must not be roots; then p changes sign across the root
    and plain bisection applies. If a bisection point hits the root
    exactly, the degenerate interval (r, r) is returned.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    flo = evaluate(p, lo)
    if flo == 0 or evaluate(p, hi) == 0:
        raise DomainError("refinement endpoints must not be roots")
    s_lo = 1 if flo > 0 else -1
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = evaluate(p, mid)
        if fm == 0:
            return mid, mid
        if (1 if fm > 0 else -1) == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def cauchy_root_bound(p: Poly) -> Fraction:
    """All real roots of p lie strictly inside (-B, B) for this B."""
    if degree(p) < 1:
        raise DomainError("root bound needs degree >= 1")
    lead = abs(p[-1])
    return 1 + max(abs(c) for c in p[:-1]) / lead


def real_roots(p: Poly, precision: Fraction = Fraction(1, 10**15)) -> list[Fraction]:
    """All distinct real roots of p as rational approximations.

    Each returned value lies within `precision` of the true root;
    exact rational roots are returned exactly. Ascending order.
    """
    if degree(p) < 1:
        return []
    sp = squarefree_part(p)
    bound = cauchy_root_bound(sp)
    roots = []
    for lo, hi in isolate_roots_open(sp, -bound, bound):
        rlo, rhi = refine_isolating_interval(sp, lo, hi, precision)
        roots.append((rlo + rhi) / 2)
    return roots
