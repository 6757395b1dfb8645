"""1-generator quasi-polycyclic codes: {(g*F_1, ..., g*F_l) : g in R_m}.

The key invariants of such a code are read off a digit decomposition of the
generator components: each F_i is split as sum_j p^j f_{i,j}, a tower of
monic divisors h^(0), h^(1), ... of f is built from gcds with f, and the
degrees r_j of that tower give both a minimal generating set and the code
size p^(sum (s-j) r_j).  Which decomposition is used matters: the plain
base-p digits of F_i generally break the size formula, so the generating-set
construction glues per-factor digits through the CRT idempotents of R_m,
which makes digit j of F_i divisible by every basic irreducible factor where
the component valuation of F_i exceeds j.  Distances are computed by exact
exhaustive enumeration over a mixed-radix Gray code, one generator increment
per step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chain_ring import RingSpec
from .errors import BudgetExceededError, InternalConsistencyError, PreconditionError
from .howell import HowellForm, howell_form
from .poly_ring import (
    Factorization,
    Poly,
    QuotientRing,
    common_divisor_with_f,
    gamma_adic_digits,
    inverse_mod_factor,
    monic_divrem,
)
from .polycyclic import PolycyclicCode, StandardFormBasis, annihilator, standard_form_from_generators

DEFAULT_BUDGET = 4**10


@dataclass(frozen=True)
class QPGenerator:
    """The generator tuple (F_1, ..., F_l), components reduced to degree < m."""

    quotient: QuotientRing
    components: tuple[Poly, ...]

    def __post_init__(self):
        reduced = tuple(self.quotient.reduce(c) for c in self.components)
        object.__setattr__(self, "components", reduced)
        if not reduced:
            raise PreconditionError("a generator needs at least one component")
        if all(c.is_zero() for c in reduced):
            raise PreconditionError("all generator components are zero")

    @property
    def index(self) -> int:
        return len(self.components)

    @property
    def ring(self) -> RingSpec:
        return self.quotient.ring

    def shift(self) -> "QPGenerator":
        """x * G, componentwise multiplication by x mod f."""
        x = Poly.x_power(self.ring, 1)
        return QPGenerator(
            self.quotient, tuple(self.quotient.mul(c, x) for c in self.components)
        )

    def vector(self) -> tuple[int, ...]:
        """Flattened coefficient vector in R^(m*l)."""
        m = self.quotient.m
        out: list[int] = []
        for c in self.components:
            out.extend(c.vector(m))
        return tuple(out)


@dataclass(frozen=True)
class DigitDecomposition:
    """Digits f_{i,j} with sum_j p^j f_{i,j} = F_i (mod f), one row per component."""

    generator: QPGenerator
    digits: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        quotient = self.generator.quotient
        ring = self.generator.ring
        if len(self.digits) != self.generator.index:
            raise PreconditionError("one digit row per component required")
        for row, comp in zip(self.digits, self.generator.components):
            if len(row) != ring.s:
                raise PreconditionError(f"each digit row needs s = {ring.s} entries")
            total = Poly.zero(ring)
            for j, d in enumerate(row):
                total = total + d.scale(ring.p**j)
            if quotient.reduce(total) != comp:
                raise PreconditionError("digits do not reassemble the component")

    @classmethod
    def base_p(cls, generator: QPGenerator) -> "DigitDecomposition":
        """Plain base-p digits of each reduced component."""
        return cls(
            generator,
            tuple(tuple(gamma_adic_digits(c)) for c in generator.components),
        )

    @classmethod
    def aligned(cls, generator: QPGenerator) -> "DigitDecomposition":
        """Digits glued from per-factor digits through the CRT idempotents.

        Digit j of F_i is then exactly divisible by every basic irreducible
        factor of f at which the component valuation of F_i exceeds j, which
        is what the generating-set machinery needs.
        """
        quotient = generator.quotient
        ring = generator.ring
        factors = quotient.factorization
        idems = _idempotents(quotient)
        rows = []
        for comp in generator.components:
            residues = [monic_divrem(comp, pi)[1] for pi in factors]
            row = []
            for j in range(ring.s):
                glued = Poly.zero(ring)
                for res, idem in zip(residues, idems):
                    digit = Poly(ring, tuple((c // ring.p**j) % ring.p for c in res.coeffs))
                    if not digit.is_zero():
                        glued = glued + quotient.mul(digit, idem)
                row.append(glued)
            rows.append(tuple(row))
        return cls(generator, tuple(rows))


@lru_cache(maxsize=512)
def _idempotents(quotient: QuotientRing) -> tuple[Poly, ...]:
    """CRT idempotents e_k of R_m, one per basic irreducible factor."""
    f = quotient.modulus
    out = []
    total = Poly.zero(quotient.ring)
    for pi in quotient.factorization:
        cof = monic_divrem(f, pi)[0]
        e = quotient.mul(cof, inverse_mod_factor(cof, pi))
        out.append(e)
        total = total + e
    if quotient.reduce(total) != Poly.one(quotient.ring):
        raise InternalConsistencyError("CRT idempotents do not sum to 1")
    return tuple(out)


@lru_cache(maxsize=4096)
def component_valuations(generator: QPGenerator) -> tuple[int, ...]:
    """Per-factor valuation of the generator: min_i val(F_i mod pi_k)."""
    quotient = generator.quotient
    ring = generator.ring
    vals = []
    for pi in quotient.factorization:
        best = ring.s
        for comp in generator.components:
            res = monic_divrem(comp, pi)[1]
            if res.is_zero():
                continue
            best = min(best, min(ring.valuation(c) for c in res.coeffs if c))
        vals.append(best)
    return tuple(vals)


@dataclass(frozen=True)
class HSequence:
    """The divisor tower h^(0), ..., h^(s-1) of f and its degrees r_j."""

    h: tuple[Poly, ...]
    r: tuple[int, ...]


def h_sequence(decomposition: DigitDecomposition, factorization: Factorization) -> HSequence:
    """Build the tower h^(j) = f / gcd({f_{i,j} * prod_{e<j} h^(e)}, f).

    The gcd is the product of the basic irreducible factors of f dividing
    every argument exactly in R[x]; an all-zero digit column therefore gives
    gcd f and h^(j) = 1.
    """
    quotient = decomposition.generator.quotient
    f = factorization.modulus
    if quotient.modulus != f:
        raise PreconditionError("factorization does not belong to the ambient modulus")
    hs: list[Poly] = []
    rs: list[int] = []
    running = Poly.one(quotient.ring)
    for j in range(quotient.ring.s):
        if j == 0:
            args = [row[0] for row in decomposition.digits]
        else:
            args = [quotient.reduce(row[j] * running) for row in decomposition.digits]
        g = common_divisor_with_f(args, factorization)
        h = monic_divrem(f, g)[0]
        hs.append(h)
        rs.append(h.degree)
        running = quotient.reduce(running * h) if h.degree < quotient.m else Poly.zero(quotient.ring)
    return HSequence(tuple(hs), tuple(rs))


@dataclass(frozen=True)
class MinimalGeneratingSet:
    """G_0 plus the torsion blocks S_1, ..., S_{s-1} spanning the code.

    Coefficients of block 0 range over all of R, those of block i over
    representatives of R mod p^(s-i); with those radices every codeword is
    hit exactly once.
    """

    generator: QPGenerator
    tower: HSequence
    blocks: tuple[tuple[tuple[Poly, ...], ...], ...]

    @property
    def ring(self) -> RingSpec:
        return self.generator.ring

    def size_exponent(self) -> int:
        s = self.ring.s
        return sum((s - i) * r for i, r in enumerate(self.tower.r))

    def coefficient_modulus(self, block: int) -> int:
        return self.ring.p ** (self.ring.s - block)

    def elements(self) -> list[tuple[Poly, ...]]:
        return [vec for block in self.blocks for vec in block]

    def rows_and_radices(self) -> tuple[list[tuple[int, ...]], list[int]]:
        m = self.generator.quotient.m
        rows, radices = [], []
        for i, block in enumerate(self.blocks):
            radix = self.coefficient_modulus(i)
            for vec in block:
                flat: list[int] = []
                for c in vec:
                    flat.extend(c.vector(m))
                rows.append(tuple(flat))
                radices.append(radix)
        return rows, radices


def minimal_generating_set(generator: QPGenerator) -> MinimalGeneratingSet:
    """Minimal R-module generating set of the code, per the divisor tower.

    Requires every component, viewed in R[x], to be a non zero divisor,
    i.e. F_i != 0 mod p; otherwise the construction's independence argument
    breaks down and a PreconditionError is raised.
    """
    quotient = generator.quotient
    ring = generator.ring
    for idx, comp in enumerate(generator.components):
        if not comp.reduction():
            raise PreconditionError(
                f"theorem hypothesis not met: component {idx + 1} is a zero divisor in R[x]"
            )
    decomposition = DigitDecomposition.aligned(generator)
    tower = h_sequence(decomposition, quotient.factorization)

    blocks: list[tuple[tuple[Poly, ...], ...]] = []
    block0: list[tuple[Poly, ...]] = []
    cur = generator
    for _ in range(tower.r[0]):
        block0.append(cur.components)
        cur = cur.shift()
    blocks.append(tuple(block0))

    x = Poly.x_power(ring, 1)
    prefix = Poly.one(ring)
    for i in range(1, ring.s):
        prefix = quotient.reduce(prefix * tower.h[i - 1])
        vec = []
        for row in decomposition.digits:
            acc = Poly.zero(ring)
            for e in range(i, ring.s):
                acc = acc + row[e].scale(ring.p**e)
            vec.append(quotient.mul(acc, prefix))
        block = []
        cur_vec = tuple(vec)
        for _ in range(tower.r[i]):
            block.append(cur_vec)
            cur_vec = tuple(quotient.mul(c, x) for c in cur_vec)
        blocks.append(tuple(block))

    return MinimalGeneratingSet(generator, tower, tuple(blocks))


def project(generator: QPGenerator, i: int) -> PolycyclicCode:
    """The i-th projection, a polycyclic code containing F_i (1-indexed)."""
    if not 1 <= i <= generator.index:
        raise PreconditionError(f"component index {i} outside 1..{generator.index}")
    return PolycyclicCode(
        standard_form_from_generators([generator.components[i - 1]], generator.quotient)
    )


def parity_check(generator: QPGenerator) -> StandardFormBasis:
    """Standard-form basis of Ann(C) = Ann(<F_1, ..., F_l>)."""
    combined = standard_form_from_generators(
        list(generator.components), generator.quotient
    )
    return annihilator(combined)


def is_free(generator: QPGenerator) -> tuple[bool, int | None]:
    """Whether the code is a free R-module, and its rank if so.

    Over a square-free modulus this is read off the component valuations:
    free exactly when no basic irreducible factor sees the generator at an
    intermediate valuation, i.e. every valuation is 0 or s.  The rank is
    then the total degree of the valuation-0 factors, which matches
    deg(f / gcd(F_1, ..., F_l, f)) for the generators the search tables
    use.  Without square-freeness the answer comes from the module sizes
    |C| and |pC| of the expanded triangular form instead.
    """
    if not generator.quotient.is_squarefree:
        return expanded_form(generator).module_is_free()
    vals = component_valuations(generator)
    s = generator.ring.s
    if all(v in (0, s) for v in vals):
        rank = sum(
            pi.degree
            for pi, v in zip(generator.quotient.factorization, vals)
            if v == 0
        )
        return True, rank
    return False, None


@dataclass(frozen=True)
class CodeParams:
    """Length, size exponent (base |F| = p) and exact minimum distances."""

    n: int
    size_exponent: int
    lee_distance: int
    hamming_distance: int


def expanded_form(generator: QPGenerator) -> HowellForm:
    """Howell form of the x-shift rows of the generator in R^(m*l)."""
    m = generator.quotient.m
    rows = []
    cur = generator
    for _ in range(m):
        rows.append(cur.vector())
        cur = cur.shift()
    return howell_form(rows, generator.ring, m * generator.index)


def _gray_min_weights(rows, radices, q: int) -> tuple[int, int]:
    """Exact min Lee/Hamming weight over all nonzero coefficient tuples.

    Mixed-radix reflected Gray enumeration: each step changes one coefficient
    by +-1, so the running codeword is updated by a single row addition.
    Assumes distinct tuples give distinct codewords, which the callers verify
    beforehand; every visited word after the initial all-zero tuple is then a
    distinct nonzero codeword.
    """
    k = len(rows)
    width = len(rows[0])
    arrays = [np.array(r, dtype=np.int64) for r in rows]
    neg_arrays = [(q - a) % q for a in arrays]
    lee_table = np.minimum(np.arange(q), q - np.arange(q))
    word = np.zeros(width, dtype=np.int64)
    digit = [0] * k
    direction = [1] * k
    focus = list(range(k + 1))
    best_lee = None
    best_ham = None
    while True:
        j = focus[0]
        focus[0] = 0
        if j == k:
            break
        word += arrays[j] if direction[j] == 1 else neg_arrays[j]
        word %= q
        digit[j] += direction[j]
        if digit[j] == 0 or digit[j] == radices[j] - 1:
            direction[j] = -direction[j]
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1
        lee = int(lee_table[word].sum())
        ham = int(np.count_nonzero(word))
        if best_lee is None or lee < best_lee:
            best_lee = lee
        if best_ham is None or ham < best_ham:
            best_ham = ham
    if best_lee is None:
        raise InternalConsistencyError("enumeration visited no nonzero codeword")
    return best_lee, best_ham


def _definitional_span(generator: QPGenerator) -> set[tuple[int, ...]]:
    """All codewords g*G for g in R_m, as flattened coefficient tuples."""
    quotient = generator.quotient
    ring = generator.ring
    m = quotient.m
    words = set()
    for coeffs in itertools.product(range(ring.q), repeat=m):
        g = Poly(ring, coeffs)
        flat: list[int] = []
        for comp in generator.components:
            flat.extend(quotient.mul(g, comp).vector(m))
        words.add(tuple(flat))
    return words


def code_params(generator: QPGenerator, budget: int = DEFAULT_BUDGET) -> CodeParams:
    """Length, size and exact minimum Lee/Hamming distances of the code.

    The enumeration runs over the minimal generating set when the modulus
    is square-free and the non-zero-divisor hypothesis holds (after
    verifying, via the canonical triangular form, that the set really is a
    basis of the right size); with a square-free modulus but a violated
    hypothesis it falls back to the definitional span {g*G : g in R_m};
    without square-freeness it enumerates over the triangular basis
    itself, which is exact for any monic modulus.
    """
    ring = generator.ring
    quotient = generator.quotient
    n = quotient.m * generator.index
    form = expanded_form(generator)
    size_exponent = form.size_exponent()
    if ring.p**size_exponent > budget:
        raise BudgetExceededError(
            f"code has {ring.p}^{size_exponent} codewords, budget is {budget}"
        )

    if not quotient.is_squarefree:
        radices = [ring.p ** (ring.s - v) for _, v in form.pivots]
        lee, ham = _gray_min_weights(list(form.rows), radices, ring.q)
        return CodeParams(n, size_exponent, lee, ham)

    hypothesis_ok = all(c.reduction() for c in generator.components)
    if hypothesis_ok:
        mgs = minimal_generating_set(generator)
        if mgs.size_exponent() != size_exponent:
            raise InternalConsistencyError(
                "generating-set size formula disagrees with the triangular form"
            )
        rows, radices = mgs.rows_and_radices()
        span_check = howell_form(rows, ring, n)
        if span_check.rows != form.rows:
            raise InternalConsistencyError(
                "minimal generating set does not span the code"
            )
        lee, ham = _gray_min_weights(rows, radices, ring.q)
        return CodeParams(n, size_exponent, lee, ham)

    if ring.q**quotient.m > budget:
        raise BudgetExceededError(
            f"definitional span needs {ring.q}^{quotient.m} products, budget is {budget}"
        )
    words = _definitional_span(generator)
    if len(words) != ring.p**size_exponent:
        raise InternalConsistencyError("definitional span size mismatch")
    lee_table = [min(a, ring.q - a) for a in range(ring.q)]
    best_lee = None
    best_ham = None
    for w in words:
        if not any(w):
            continue
        lee = sum(lee_table[a] for a in w)
        ham = sum(1 for a in w if a)
        if best_lee is None or lee < best_lee:
            best_lee = lee
        if best_ham is None or ham < best_ham:
            best_ham = ham
    if best_lee is None:
        raise InternalConsistencyError("code has no nonzero codeword")
    return CodeParams(n, size_exponent, best_lee, best_ham)
