"""Exact arithmetic in the chain ring Z_{p^s}.

Ring elements are plain integers kept in canonical form, i.e. residues in
``[0, q)`` with ``q = p**s``.  The maximal ideal is generated by ``p`` and the
residue field is F_p.  Every nonzero element factors uniquely (up to the
stated normalisation) as ``unit * p**exponent``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotationError, PreconditionError

_MAX_Q = 2**32


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """The ring Z_{p^s} with p prime and nilpotency index s."""

    p: int
    s: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise PreconditionError(f"p = {self.p} is not prime")
        if self.s < 1:
            raise PreconditionError(f"nilpotency index s = {self.s} must be >= 1")
        if self.p**self.s >= _MAX_Q:
            raise PreconditionError(f"q = {self.p}^{self.s} exceeds the 2^32 limit")

    @property
    def q(self) -> int:
        return self.p**self.s

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse a ring given as ``p^s``, e.g. ``2^2`` for Z4."""
        parts = text.strip().split("^")
        if len(parts) != 2:
            raise NotationError(f"ring must be given as p^s, got {text!r}")
        try:
            p, s = int(parts[0]), int(parts[1])
        except ValueError:
            raise NotationError(f"ring must be given as p^s, got {text!r}") from None
        try:
            return cls(p, s)
        except PreconditionError as exc:
            raise NotationError(str(exc)) from None

    def __str__(self) -> str:
        return f"{self.p}^{self.s}"

    def reduce(self, value: int) -> int:
        return value % self.q

    def valuation(self, value: int) -> int:
        """p-adic valuation of a residue; the zero element gets valuation s."""
        value %= self.q
        if value == 0:
            return self.s
        v = 0
        while value % self.p == 0:
            value //= self.p
            v += 1
        return v


def is_unit(e: int, ring: RingSpec) -> bool:
    """True iff e is invertible, i.e. not divisible by p."""
    return e % ring.p != 0


def unit_inverse(e: int, ring: RingSpec) -> int:
    """Inverse of a unit modulo q, by extended Euclid."""
    e %= ring.q
    if not is_unit(e, ring):
        raise PreconditionError(f"{e} is not a unit in Z_{ring.q}")
    return pow(e, -1, ring.q)


def gamma_decompose(e: int, ring: RingSpec) -> tuple[int, int]:
    """Write a nonzero element as unit * p**exponent.

    The unit is normalised to the representative in ``[0, p**(s-exponent))``,
    which makes the decomposition deterministic even though the unit is only
    determined modulo ``p**(s-exponent)``.
    """
    e %= ring.q
    if e == 0:
        raise PreconditionError("gamma decomposition is undefined for 0")
    exponent = ring.valuation(e)
    unit = e // ring.p**exponent
    return unit, exponent


def annihilator_exponent(i: int, ring: RingSpec) -> int:
    """Exponent t with Ann(p**i) = <p**t>, i.e. t = s - i."""
    if not 0 <= i <= ring.s:
        raise PreconditionError(f"exponent {i} outside [0, {ring.s}]")
    return ring.s - i
