"""Polycyclic codes as ideals of R[x]/<f>: standard forms and annihilators.

A nonzero ideal of the quotient ring (square-free reduction assumed) has a
generating set {p^j0*g0, ..., p^jt*gt} with strictly increasing exponents,
strictly decreasing degrees and a divisibility chain gt | ... | g0 | f.  The
exponents, the degrees and the cardinality derived from them are invariants
of the ideal; we emit one canonical representative, obtained from the Howell
triangular form of the ideal's coefficient-row module, with each basis
polynomial recovered as the unique monic divisor of f matching the pivot
row's residue-field reduction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .chain_ring import RingSpec
from .errors import BudgetExceededError, InternalConsistencyError, PreconditionError
from .howell import HowellForm, howell_form
from .poly_ring import (
    Poly,
    QuotientRing,
    divides,
    hensel_lift_divisor,
    monic_divrem,
)

ENUMERATION_EXPONENT_LIMIT = 24


@dataclass(frozen=True)
class StandardFormBasis:
    """Generating set {p^j_i * g_i} in standard form; empty for the zero code."""

    quotient: QuotientRing
    entries: tuple[tuple[int, Poly], ...]

    def __post_init__(self):
        ring = self.quotient.ring
        m = self.quotient.m
        f = self.quotient.modulus
        prev_j, prev_deg = -1, m
        chain = [f]
        for j, g in self.entries:
            if not 0 <= j <= ring.s - 1:
                raise InternalConsistencyError(f"exponent {j} outside [0, {ring.s - 1}]")
            if j <= prev_j:
                raise InternalConsistencyError("exponents not strictly increasing")
            if not g.is_monic():
                raise InternalConsistencyError("basis polynomial not monic")
            if not g.degree < prev_deg:
                raise InternalConsistencyError("degrees not strictly decreasing")
            prev_j, prev_deg = j, g.degree
            chain.append(g)
        for big, small in zip(chain, chain[1:]):
            if not divides(small, big):
                raise InternalConsistencyError(
                    "divisibility chain g_t | ... | g_0 | f violated"
                )

    @property
    def ring(self) -> RingSpec:
        return self.quotient.ring

    def is_zero_code(self) -> bool:
        return not self.entries

    def generator_polys(self) -> list[Poly]:
        """The scaled generators p^j_i * g_i."""
        p = self.ring.p
        return [g.scale(p**j) for j, g in self.entries]


@dataclass(frozen=True)
class PolycyclicCode:
    basis: StandardFormBasis

    @property
    def quotient(self) -> QuotientRing:
        return self.basis.quotient


def _shift_rows(gens: list[Poly], quotient: QuotientRing) -> list[list[int]]:
    """Coefficient rows of x^k * g mod f, columns in decreasing degree order."""
    m = quotient.m
    rows = []
    for g in gens:
        g = quotient.reduce(g)
        if g.is_zero():
            continue
        cur = g
        for _ in range(m):
            rows.append(list(reversed(cur.vector(m))))
            cur = quotient.mul(cur, Poly.x_power(quotient.ring, 1))
    return rows


@lru_cache(maxsize=4096)
def ideal_form(basis: StandardFormBasis) -> HowellForm:
    """Howell form of the ideal's row module (columns: decreasing degree)."""
    return howell_form(
        _shift_rows(basis.generator_polys(), basis.quotient),
        basis.ring,
        basis.quotient.m,
    )


def standard_form_from_generators(
    gens: list[Poly], quotient: QuotientRing
) -> StandardFormBasis:
    """Standard-form basis of the ideal generated by the given polynomials."""
    ring = quotient.ring
    m = quotient.m
    f = quotient.modulus
    rows = _shift_rows(list(gens), quotient)
    if not rows:
        return StandardFormBasis(quotient, ())
    form = howell_form(rows, ring, m)

    degrees = [m - 1 - col for col, _ in form.pivots]
    vals = [v for _, v in form.pivots]
    if degrees and degrees[0] != m - 1:
        raise InternalConsistencyError("ideal row module misses the top degree")
    if any(a - 1 != b for a, b in zip(degrees, degrees[1:])):
        raise InternalConsistencyError("pivot degrees of an ideal must be contiguous")
    if any(a > b for a, b in zip(vals, vals[1:])):
        raise InternalConsistencyError("pivot valuations must grow as degree drops")

    entries = []
    for idx, ((col, v), row) in enumerate(zip(form.pivots, form.rows)):
        is_run_bottom = idx == len(form.pivots) - 1 or vals[idx + 1] > v
        if not is_run_bottom:
            continue
        step = ring.p**v
        if any(c % step for c in row):
            raise InternalConsistencyError("pivot row not divisible by its valuation")
        scaled = [c // step for c in row]
        dbar = [c % ring.p for c in reversed(scaled)]
        while dbar and dbar[-1] == 0:
            dbar.pop()
        g = hensel_lift_divisor(f, dbar)
        if g.degree != m - 1 - col:
            raise InternalConsistencyError("lifted divisor has the wrong degree")
        entries.append((v, g))

    basis = StandardFormBasis(quotient, tuple(entries))
    check = ideal_form(basis)
    if check.rows != form.rows:
        raise InternalConsistencyError("standard form does not span the input ideal")
    return basis


def single_generator(basis: StandardFormBasis) -> Poly:
    """The principal generator p^j0*g0 + ... + p^jt*gt of the ideal."""
    total = Poly.zero(basis.ring)
    for scaled in basis.generator_polys():
        total = total + scaled
    return basis.quotient.reduce(total)


def cardinality_exponent(basis: StandardFormBasis) -> int:
    """Delta with p^Delta codewords: sum (s - j_i)(deg g_{i-1} - deg g_i)."""
    s = basis.ring.s
    m = basis.quotient.m
    delta = 0
    prev_deg = m
    for j, g in basis.entries:
        delta += (s - j) * (prev_deg - g.degree)
        prev_deg = g.degree
    return delta


def annihilator(basis: StandardFormBasis) -> StandardFormBasis:
    """Standard-form basis of Ann(C) = {a : a*c = 0 for all c in C}.

    From the basis {p^j_i g_i} the annihilator is generated by the entries
    (s - j_{t+1-i}, f/g_{t-i}) with the conventions j_{t+1} = s, g_{-1} = f;
    degenerate entries (exponent s, or polynomial f itself, both of which
    vanish in R_m) are dropped.
    """
    quotient = basis.quotient
    ring = basis.ring
    f = quotient.modulus
    js = [j for j, _ in basis.entries] + [ring.s]
    gs = [f] + [g for _, g in basis.entries]
    t = len(basis.entries) - 1
    entries = []
    for i in range(t + 2):
        b = ring.s - js[t + 1 - i]
        h = monic_divrem(f, gs[t - i + 1])[0]
        if b >= ring.s or h.degree == quotient.m:
            continue
        entries.append((b, h))
    return StandardFormBasis(quotient, tuple(entries))


def enumerate_codewords(basis: StandardFormBasis):
    """Yield all p^Delta codewords of the ideal, each exactly once.

    Runs over the triangular basis {p^j_i x^k g_i : 0 <= k < deg g_{i-1} -
    deg g_i} with coefficients mod p^(s-j_i); uniqueness of that
    representation makes the stream duplicate-free.
    """
    ring = basis.ring
    delta = cardinality_exponent(basis)
    if delta > ENUMERATION_EXPONENT_LIMIT:
        raise BudgetExceededError(
            f"ideal has p^{delta} codewords, beyond the enumeration guard"
        )
    vectors: list[Poly] = []
    ranges: list[range] = []
    prev_deg = basis.quotient.m
    for j, g in basis.entries:
        for k in range(prev_deg - g.degree):
            vectors.append(g.shift(k).scale(ring.p**j))
            ranges.append(range(ring.p ** (ring.s - j)))
        prev_deg = g.degree
    for coeffs in itertools.product(*ranges):
        word = Poly.zero(ring)
        for c, vec in zip(coeffs, vectors):
            if c:
                word = word + vec.scale(c)
        yield word


def shorten_cyclic(
    basis: StandardFormBasis, n: int
) -> tuple[Poly, PolycyclicCode]:
    """Shorten a cyclic code of length N to a polycyclic code of length n.

    Writes x^n = g_0*q + r and moves the generators into R[x]/<x^n - r>; the
    new modulus must still have a square-free reduction, otherwise a
    NotSquareFreeError is raised.
    """
    ring = basis.ring
    quotient = basis.quotient
    big_n = quotient.m
    cyclic_modulus = Poly.x_power(ring, big_n) - Poly.one(ring)
    if quotient.modulus != cyclic_modulus:
        raise PreconditionError("shortening expects a cyclic code, modulus x^N - 1")
    if basis.is_zero_code():
        raise PreconditionError("cannot shorten the zero code")
    g0 = basis.entries[0][1]
    if not g0.degree <= n < big_n:
        raise PreconditionError(
            f"shortened length must satisfy deg(g_0) = {g0.degree} <= n < {big_n}"
        )
    _, r = monic_divrem(Poly.x_power(ring, n), g0)
    f_new = Poly.x_power(ring, n) - r
    new_quotient = QuotientRing(ring, f_new)
    for _, g in basis.entries:
        if not divides(g, f_new):
            raise InternalConsistencyError("generator does not divide the new modulus")
    code = standard_form_from_generators(basis.generator_polys(), new_quotient)
    return f_new, PolycyclicCode(code)
