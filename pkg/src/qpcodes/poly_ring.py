"""Polynomials over Z_{p^s}, the quotient ring R[x]/<f> and its factor theory.

Polynomials are dense coefficient tuples indexed by degree, with no trailing
zeros (the zero polynomial has an empty tuple).  The modulus of a quotient
ring must be monic with square-free reduction mod p; under that standing
assumption the modulus factors uniquely into monic, pairwise coprime basic
irreducibles, which this module computes by factoring the reduction over F_p
(trial division against a sieve of monic irreducibles) and Hensel-lifting the
coprime factorisation back to Z_{p^s}.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .chain_ring import RingSpec, is_unit, unit_inverse
from .errors import (
    InternalConsistencyError,
    NotSquareFreeError,
    NotationError,
    PreconditionError,
)

# ---------------------------------------------------------------------------
# F_p helpers.  Polynomials over the residue field are plain lists of ints in
# [0, p), ascending degree, trimmed.


def _gf_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _gf_trim(out)


def _gf_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial over F_p")
    r = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(r) - db, 0)
    for i in range(len(r) - db - 1, -1, -1):
        c = (r[i + db] * inv) % p
        if c:
            quot[i] = c
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - c * y) % p
    return _gf_trim(quot), _gf_trim(r)


def _gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _gf_bezout(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Return (u, v) with u*a + v*b = 1 for coprime a, b over F_p."""
    r0, r1 = list(a), list(b)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, _gf_sub(u0, _gf_mul(q, u1, p), p)
        v0, v1 = v1, _gf_sub(v0, _gf_mul(q, v1, p), p)
    if len(r0) != 1:
        raise InternalConsistencyError("bezout of non-coprime polynomials")
    inv = pow(r0[0], -1, p)
    u0 = [(c * inv) % p for c in u0]
    v0 = [(c * inv) % p for c in v0]
    return u0, v0


def _gf_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = (x - y) % p
    return _gf_trim(out)


def _gf_deriv(a: list[int], p: int) -> list[int]:
    return _gf_trim([(i * c) % p for i, c in enumerate(a)][1:])


@lru_cache(maxsize=None)
def _gf_monic_irreducibles(p: int, max_degree: int) -> tuple[tuple[int, ...], ...]:
    """All monic irreducibles over F_p of degree 1..max_degree, sieve order."""
    found: list[list[int]] = []
    for d in range(1, max_degree + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = list(tail) + [1]
            if any(
                len(g) - 1 <= d // 2 and not _gf_divmod(cand, list(g), p)[1]
                for g in found
            ):
                continue
            found.append(cand)
    return tuple(tuple(g) for g in found)


def _gf_factor_squarefree(a: list[int], p: int) -> list[list[int]]:
    """Factor a monic square-free polynomial over F_p by trial division."""
    factors = []
    rem = list(a)
    for g in _gf_monic_irreducibles(p, (len(a) - 1) // 2):
        q, r = _gf_divmod(rem, list(g), p)
        if not r:
            factors.append(list(g))
            rem = q
            if len(rem) == 1:
                break
    if len(rem) > 1:
        factors.append(rem)
    return factors


# ---------------------------------------------------------------------------
# Polynomials over Z_{p^s}.


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over Z_{p^s}; coefficient i is the degree-i term."""

    ring: RingSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        q = self.ring.q
        coeffs = tuple(c % q for c in self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors

    @classmethod
    def zero(cls, ring: RingSpec) -> "Poly":
        return cls(ring, ())

    @classmethod
    def one(cls, ring: RingSpec) -> "Poly":
        return cls(ring, (1,))

    @classmethod
    def constant(cls, ring: RingSpec, c: int) -> "Poly":
        return cls(ring, (c,))

    @classmethod
    def x_power(cls, ring: RingSpec, k: int, scale: int = 1) -> "Poly":
        return cls(ring, (0,) * k + (scale,))

    # -- basic queries

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def constant_term(self) -> int:
        return self.coeff(0)

    def reduction(self) -> list[int]:
        """Image in F_p[x] as a trimmed coefficient list."""
        return _gf_trim([c % self.ring.p for c in self.coeffs])

    # -- arithmetic in R[x]

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, tuple(self.coeff(i) - other.coeff(i) for i in range(n)))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ring)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        q = self.ring.q
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + x * y) % q
        return Poly(self.ring, tuple(out))

    def __neg__(self) -> "Poly":
        return Poly(self.ring, tuple(-c for c in self.coeffs))

    def scale(self, c: int) -> "Poly":
        return Poly(self.ring, tuple(c * v for v in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return Poly(self.ring, (0,) * k + self.coeffs)

    def vector(self, length: int) -> tuple[int, ...]:
        """Coefficients padded with zeros up to the given length."""
        if len(self.coeffs) > length:
            raise PreconditionError(
                f"polynomial of degree {self.degree} does not fit in length {length}"
            )
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def __str__(self) -> str:
        return render_poly(self)


def _from_gf(ring: RingSpec, a: list[int]) -> Poly:
    return Poly(ring, tuple(a))


# ---------------------------------------------------------------------------
# String notation: coefficients in decreasing degree, digit^k for runs.

_TOKEN = re.compile(r"(\d)(?:\^(\d))?")


def parse_poly(notation: str, ring: RingSpec) -> Poly:
    """Parse digit-string notation, e.g. ``10^21^3321`` or a JSON array.

    Digit strings list coefficients in decreasing degree order; ``d^k`` is the
    digit d repeated k times, with k a single digit >= 2 (that is the only
    reading under which strings like ``10^21^3321`` are unambiguous).  A JSON
    array like ``[3, 1, 0, 1]`` lists coefficients in increasing degree order
    and is accepted for rings with q > 10.
    """
    text = notation.strip()
    if not text:
        raise NotationError("empty polynomial notation")
    if text.startswith("["):
        try:
            arr = json.loads(text)
        except json.JSONDecodeError as exc:
            raise NotationError(f"bad JSON coefficient array: {exc}") from None
        if not isinstance(arr, list) or not all(isinstance(v, int) for v in arr):
            raise NotationError("JSON form must be an array of integers")
        return Poly(ring, tuple(arr))
    pos = 0
    digits: list[int] = []
    for match in _TOKEN.finditer(text):
        if match.start() != pos:
            break
        d = int(match.group(1))
        if d >= ring.q:
            raise NotationError(f"digit {d} is not a residue mod {ring.q}")
        if match.group(2) is None:
            digits.append(d)
        else:
            k = int(match.group(2))
            if k < 2:
                raise NotationError(f"exponent in {match.group(0)!r} must be >= 2")
            digits.extend([d] * k)
        pos = match.end()
    if pos != len(text):
        raise NotationError(f"malformed polynomial notation {notation!r}")
    return Poly(ring, tuple(reversed(digits)))


def render_poly(poly: Poly) -> str:
    """Inverse of parse_poly for canonical digit strings."""
    if poly.is_zero():
        return "0"
    digits = list(reversed(poly.coeffs))
    if any(d > 9 for d in digits):
        return json.dumps(list(poly.coeffs))
    out = []
    i = 0
    while i < len(digits):
        j = i
        while j < len(digits) and digits[j] == digits[i]:
            j += 1
        run = j - i
        while run >= 2:
            chunk = min(run, 9)
            if chunk == 1:
                break
            out.append(f"{digits[i]}^{chunk}")
            run -= chunk
        if run == 1:
            out.append(str(digits[i]))
        i = j
    return "".join(out)


def format_terms(poly: Poly) -> str:
    """Human-readable sum of monomials, e.g. ``x^3+2x+1``."""
    if poly.is_zero():
        return "0"
    terms = []
    for i in range(poly.degree, -1, -1):
        c = poly.coeff(i)
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            x = "x" if i == 1 else f"x^{i}"
            terms.append(x if c == 1 else f"{c}{x}")
    return "+".join(terms)


# ---------------------------------------------------------------------------
# Division and quotient-ring arithmetic.


def monic_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Divide by a monic polynomial; exact over Z_{p^s} since b is monic."""
    if a.ring != b.ring:
        raise PreconditionError("operands live over different rings")
    if not b.is_monic():
        raise PreconditionError("divisor must be monic")
    q = a.ring.q
    r = list(a.coeffs)
    db = b.degree
    quot = [0] * max(len(r) - db, 0)
    for i in range(len(r) - db - 1, -1, -1):
        c = r[i + db]
        if c:
            quot[i] = c
            for j, y in enumerate(b.coeffs):
                r[i + j] = (r[i + j] - c * y) % q
    return Poly(a.ring, tuple(quot)), Poly(a.ring, tuple(r))


def divides(b: Poly, a: Poly) -> bool:
    """True iff monic b divides a exactly in R[x]."""
    return monic_divrem(a, b)[1].is_zero()


def is_squarefree_residue(f: Poly) -> bool:
    """True iff gcd(fbar, fbar') = 1 over F_p."""
    if not f.is_monic():
        raise PreconditionError("square-freeness check expects a monic polynomial")
    p = f.ring.p
    fbar = f.reduction()
    return len(_gf_gcd(fbar, _gf_deriv(fbar, p), p)) == 1


@dataclass(frozen=True)
class QuotientRing:
    """R_m = R[x]/<f> for a monic f, usually with square-free reduction.

    The square-free standing assumption is what powers the factor theory
    (standard forms, annihilators, generating sets); constructing with
    ``require_squarefree=False`` admits arbitrary monic moduli for the
    generic R-module machinery (triangular forms, distance enumeration,
    duals), and any factorization-dependent operation on such a quotient
    still fails with NotSquareFreeError.
    """

    ring: RingSpec
    modulus: Poly
    require_squarefree: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.modulus.ring != self.ring:
            raise PreconditionError("modulus ring mismatch")
        if self.modulus.degree < 1 or not self.modulus.is_monic():
            raise PreconditionError("modulus must be monic of degree >= 1")
        if self.require_squarefree and not self.is_squarefree:
            raise NotSquareFreeError(
                f"reduction of {render_poly(self.modulus)} mod {self.ring.p} is not square-free"
            )

    @cached_property
    def is_squarefree(self) -> bool:
        return is_squarefree_residue(self.modulus)

    @property
    def m(self) -> int:
        return self.modulus.degree

    def reduce(self, a: Poly) -> Poly:
        if a.degree < self.m:
            return a
        return monic_divrem(a, self.modulus)[1]

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.reduce(a * b)

    @cached_property
    def factorization(self) -> "Factorization":
        return factor_basic_irreducibles(self.modulus)


def mul_mod(a: Poly, b: Poly, quotient: QuotientRing) -> Poly:
    """Product in R_m, reduced to degree < m."""
    return quotient.mul(quotient.reduce(a), quotient.reduce(b))


# ---------------------------------------------------------------------------
# Hensel lifting and basic-irreducible factorization.


def _hensel_pair(f: Poly, gbar: list[int], hbar: list[int]) -> tuple[Poly, Poly]:
    """Lift the coprime monic factorisation fbar = gbar*hbar to R[x].

    Quadratic lifting: the Bezout cofactors over F_p and the factors are
    refined mod p^(2^t) until p^s is reached; all arithmetic happens in R[x],
    which is exact for the intermediate moduli since they divide p^s.
    """
    ring = f.ring
    p, s = ring.p, ring.s
    a_bar, b_bar = _gf_bezout(gbar, hbar, p)
    g = _from_gf(ring, gbar)
    h = _from_gf(ring, hbar)
    a = _from_gf(ring, a_bar)
    b = _from_gf(ring, b_bar)
    one = Poly.one(ring)
    precision = 1
    while precision < s:
        # f = g*h and a*g + b*h = 1 hold mod p^precision; double it.  The
        # correction b*e mod g keeps g monic of fixed degree; h is then the
        # exact quotient, which keeps it monic of the complementary degree.
        e = f - g * h
        g = g + monic_divrem(b * e, g)[1]
        h = monic_divrem(f, g)[0]
        err = a * g + b * h - one
        qq, r = monic_divrem(b * err, g)
        b = b - r
        a = a - a * err - qq * h
        precision *= 2
    if not (g.is_monic() and h.is_monic() and g * h == f):
        raise InternalConsistencyError("hensel lift failed to recover the modulus")
    return g, h


def hensel_lift_divisor(f: Poly, dbar: list[int]) -> Poly:
    """The unique monic divisor of f whose reduction mod p equals dbar.

    Requires dbar to be a monic divisor of the reduction of f; uniqueness
    comes from the square-freeness of that reduction.
    """
    p = f.ring.p
    fbar = f.reduction()
    if len(dbar) == 1:
        return Poly.one(f.ring)
    cof, rem = _gf_divmod(fbar, dbar, p)
    if rem:
        raise InternalConsistencyError(
            "requested lift of a polynomial that does not divide the modulus"
        )
    if not cof or len(cof) == 1:
        return f
    g, _ = _hensel_pair(f, dbar, cof)
    return g


@dataclass(frozen=True)
class Factorization:
    """The basic-irreducible factors of a monic square-free-reduction f."""

    modulus: Poly
    factors: tuple[Poly, ...]

    def __post_init__(self):
        prod = Poly.one(self.modulus.ring)
        for g in self.factors:
            if not g.is_monic():
                raise InternalConsistencyError("factor is not monic")
            prod = prod * g
        if prod != self.modulus:
            raise InternalConsistencyError("factors do not multiply back to the modulus")

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def factor_basic_irreducibles(f: Poly) -> Factorization:
    """Factor f into monic basic irreducibles, sorted by (degree, coeffs)."""
    if not f.is_monic():
        raise PreconditionError("factorization expects a monic polynomial")
    if not is_squarefree_residue(f):
        raise NotSquareFreeError(
            f"reduction of {render_poly(f)} mod {f.ring.p} is not square-free"
        )
    p = f.ring.p
    bar_factors = sorted(_gf_factor_squarefree(f.reduction(), p), key=lambda g: (len(g), g))

    def lift_tree(poly: Poly, bars: list[list[int]]) -> list[Poly]:
        if len(bars) == 1:
            return [poly]
        mid = len(bars) // 2
        left, right = bars[:mid], bars[mid:]
        gbar = [1]
        for b in left:
            gbar = _gf_mul(gbar, b, p)
        hbar = [1]
        for b in right:
            hbar = _gf_mul(hbar, b, p)
        g, h = _hensel_pair(poly, gbar, hbar)
        return lift_tree(g, left) + lift_tree(h, right)

    lifted = lift_tree(f, bar_factors)
    lifted.sort(key=lambda g: (g.degree, g.coeffs))
    return Factorization(f, tuple(lifted))


def gcd_with_f(g: Poly, factorization: Factorization) -> Poly:
    """Product of the basic irreducible factors of f dividing g in R[x].

    The zero polynomial is divisible by everything, so gcd(0, f) = f; a g not
    divisible by any factor yields 1.
    """
    if g.is_zero():
        return factorization.modulus
    out = Poly.one(g.ring)
    for pi in factorization:
        if divides(pi, g):
            out = out * pi
    return out


def common_divisor_with_f(polys: list[Poly], factorization: Factorization) -> Poly:
    """Product of the factors of f dividing every polynomial in the list."""
    out = Poly.one(factorization.modulus.ring)
    for pi in factorization:
        if all(p.is_zero() or divides(pi, p) for p in polys):
            out = out * pi
    return out


def inverse_mod_factor(u: Poly, pi: Poly) -> Poly:
    """Inverse of u in R[x]/<pi> for a basic irreducible pi, u a unit there.

    Computed by inverting the reduction over F_p and Newton-lifting the
    inverse to Z_{p^s}.
    """
    ring = u.ring
    p, s = ring.p, ring.s
    ubar = monic_divrem(u, pi)[1].reduction()
    pibar = pi.reduction()
    g = _gf_gcd(ubar, pibar, p)
    if len(g) != 1:
        raise PreconditionError("element is not a unit modulo the factor")
    inv_bar, _ = _gf_bezout(ubar, pibar, p)
    v = _from_gf(ring, inv_bar)
    two = Poly.constant(ring, 2)
    precision = 1
    while precision < s:
        v = monic_divrem(v * (two - u * v), pi)[1]
        precision *= 2
    return monic_divrem(v, pi)[1]


def gamma_adic_digits(g: Poly) -> list[Poly]:
    """Base-p digit polynomials [d_0, ..., d_{s-1}] with g = sum p^j d_j.

    Every digit has coefficients in [0, p); for p = 2 each nonzero digit is
    automatically monic.
    """
    ring = g.ring
    p, s = ring.p, ring.s
    digits = []
    for j in range(s):
        digits.append(Poly(ring, tuple((c // p**j) % p for c in g.coeffs)))
    return digits
