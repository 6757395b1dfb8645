"""Shift matrices, the f-inner product and the two duals of a linear code.

Codes here are generic R-linear codes of length m*l, carried by a canonical
triangular generator form, because the Euclidean dual of a quasi-polycyclic
code is generally not quasi-polycyclic.  The annihilator dual pairs blocks
through <g, h> = constant term of g*h mod f, a nondegenerate bilinear form;
its kernel computation and the Euclidean one both reduce to Howell kernels
over Z_{p^s}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain_ring import RingSpec, is_unit
from .errors import PreconditionError
from .howell import HowellForm, howell_form, right_kernel
from .poly_ring import Poly, QuotientRing, mul_mod
from .qp_code import QPGenerator, expanded_form


@dataclass(frozen=True)
class AssociateVector:
    """(c_0, ..., c_{m-1}) with c_0 a unit; the coefficients of x^m - f."""

    ring: RingSpec
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(v % self.ring.q for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise PreconditionError("associate vector must have positive length")
        if not is_unit(values[0], self.ring):
            raise PreconditionError("c_0 of an associate vector must be a unit")

    @classmethod
    def from_modulus(cls, quotient: QuotientRing) -> "AssociateVector":
        f = quotient.modulus
        return cls(
            quotient.ring,
            tuple(-f.coeff(j) % quotient.ring.q for j in range(quotient.m)),
        )

    @property
    def m(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ShiftMatrix:
    ring: RingSpec
    entries: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.entries)

    def apply(self, block: tuple[int, ...]) -> tuple[int, ...]:
        """Row vector times matrix."""
        q = self.ring.q
        m = self.m
        return tuple(
            sum(block[k] * self.entries[k][j] for k in range(m)) % q for j in range(m)
        )

    def transpose(self) -> "ShiftMatrix":
        m = self.m
        return ShiftMatrix(
            self.ring, tuple(tuple(self.entries[j][i] for j in range(m)) for i in range(m))
        )


def build_D(av: AssociateVector) -> ShiftMatrix:
    """Companion-style shift matrix: identity shifted up, last row = av."""
    m = av.m
    rows = []
    for k in range(m - 1):
        row = [0] * m
        row[k + 1] = 1
        rows.append(tuple(row))
    rows.append(av.values)
    return ShiftMatrix(av.ring, tuple(rows))


def build_M(av: AssociateVector) -> ShiftMatrix:
    """Sequential shift matrix: identity shifted right, last column = av."""
    m = av.m
    rows = []
    for k in range(m):
        row = [0] * m
        if k >= 1:
            row[k - 1] = 1
        row[m - 1] = (row[m - 1] + av.values[k]) % av.ring.q
        rows.append(tuple(row))
    return ShiftMatrix(av.ring, tuple(rows))


def inner_f(g: Poly, h: Poly, quotient: QuotientRing) -> int:
    """Constant term of g*h mod f; nondegenerate when c_0 is a unit."""
    return mul_mod(g, h, quotient).constant_term()


@dataclass(frozen=True)
class LinearCode:
    """R-linear code of length m*l in canonical triangular generator form."""

    quotient: QuotientRing
    index: int
    form: HowellForm

    @classmethod
    def from_rows(cls, quotient: QuotientRing, index: int, rows) -> "LinearCode":
        n = quotient.m * index
        return cls(quotient, index, howell_form(rows, quotient.ring, n))

    @classmethod
    def from_qp_generator(cls, generator: QPGenerator) -> "LinearCode":
        return cls(generator.quotient, generator.index, expanded_form(generator))

    @property
    def ring(self) -> RingSpec:
        return self.quotient.ring

    @property
    def n(self) -> int:
        return self.quotient.m * self.index

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self.form.rows

    def size_exponent(self) -> int:
        return self.form.size_exponent()

    def contains(self, vec) -> bool:
        return self.form.contains(vec)

    def same_code(self, other: "LinearCode") -> bool:
        return self.n == other.n and self.form.rows == other.form.rows

    def blocks(self, row) -> list[tuple[int, ...]]:
        m = self.quotient.m
        return [tuple(row[i * m : (i + 1) * m]) for i in range(self.index)]


def is_invariant(code: LinearCode, matrix: ShiftMatrix) -> bool:
    """True iff every generator row times diag(M, ..., M) stays in the code."""
    if matrix.m != code.quotient.m:
        raise PreconditionError(
            f"matrix size {matrix.m} does not match block length {code.quotient.m}"
        )
    for row in code.rows:
        image: list[int] = []
        for block in code.blocks(row):
            image.extend(matrix.apply(block))
        if not code.contains(image):
            return False
    return True


def qp_shift_matrix(quotient: QuotientRing) -> ShiftMatrix:
    return build_D(AssociateVector.from_modulus(quotient))


def is_quasi_polycyclic(code: LinearCode) -> bool:
    """Invariance under the block-diagonal polynomial shift of the modulus."""
    return is_invariant(code, qp_shift_matrix(code.quotient))


def is_quasi_sequential(code: LinearCode) -> bool:
    """Invariance under diag(D^T, ..., D^T) for the modulus' associate vector."""
    return is_invariant(code, qp_shift_matrix(code.quotient).transpose())


def annihilator_dual(code: LinearCode) -> LinearCode:
    """C0 = {g : sum_i <g_i, h_i>_f = 0 for all h in C}.

    Requires C to be an R[x]-submodule (x-invariance is pre-checked); the
    result is again one, and |C| * |C0| = |R|^(m*l) by nondegeneracy.
    """
    if not is_quasi_polycyclic(code):
        raise PreconditionError("annihilator dual needs an x-invariant code")
    quotient = code.quotient
    ring = code.ring
    m = quotient.m
    # ct_pow[d] = constant term of x^d mod f; the pairing of coefficient
    # vectors is then u[i*m+a] = sum_b ct_pow[a+b] h_i[b]
    ct_pow = []
    cur = Poly.one(ring)
    for _ in range(2 * m - 1):
        ct_pow.append(cur.constant_term())
        cur = quotient.mul(cur, Poly.x_power(ring, 1))
    constraint_rows = []
    for row in code.rows:
        u = []
        for block in code.blocks(row):
            for a in range(m):
                u.append(sum(ct_pow[a + b] * block[b] for b in range(m)) % ring.q)
        constraint_rows.append(u)
    kernel = right_kernel(constraint_rows, ring, code.n)
    return LinearCode(quotient, code.index, kernel)


def euclidean_dual(code: LinearCode) -> LinearCode:
    """Kernel of the generator matrix under the standard dot product."""
    kernel = right_kernel(list(code.rows), code.ring, code.n)
    return LinearCode(code.quotient, code.index, kernel)
