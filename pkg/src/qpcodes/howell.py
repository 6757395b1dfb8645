"""Canonical triangular row reduction over Z_{p^s}.

Gaussian elimination is not enough over a residue ring: a pivot whose leading
entry is a zero divisor p^v leaves behind a torsion submodule that plain
elimination cannot see.  The fix, due to Howell, is to normalise every pivot
to an exact power of p and, whenever v > 0, to append p^(s-v) times the pivot
row back into the working pool so later columns can pick up the torsion.  The
resulting reduced matrix is a canonical invariant of the row span: two row
sets generate the same submodule of Z_{p^s}^n iff their forms are identical.

Tracking the same row operations on an identity block yields a spanning set
of the left kernel: the combination rows whose matrix part reduces to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain_ring import RingSpec, unit_inverse
from .errors import PreconditionError

Row = tuple[int, ...]


def _valuation(e: int, p: int) -> int:
    v = 0
    while e % p == 0:
        e //= p
        v += 1
    return v


@dataclass(frozen=True)
class HowellForm:
    """Canonical basis of a submodule of Z_{p^s}^n.

    ``rows[i]`` has its leading nonzero entry p^(pivots[i][1]) in column
    ``pivots[i][0]``; pivot columns strictly increase and entries above a
    pivot are reduced below it.
    """

    ring: RingSpec
    ncols: int
    rows: tuple[Row, ...]
    pivots: tuple[tuple[int, int], ...]

    def size_exponent(self) -> int:
        """k such that the spanned module has p^k elements."""
        return sum(self.ring.s - v for _, v in self.pivots)

    def minimal_generator_count(self) -> int:
        """Smallest size of a generating set: dim over F_p of M/pM.

        Computed as log_p |M| - log_p |pM|; the pivot count alone is not
        enough because a pivot row can generate a larger cyclic module than
        its leading valuation suggests.
        """
        p = self.ring.p
        scaled = [[(p * c) % self.ring.q for c in row] for row in self.rows]
        sub = howell_form(scaled, self.ring, self.ncols)
        return self.size_exponent() - sub.size_exponent()

    def module_is_free(self) -> tuple[bool, int | None]:
        """Freeness and rank, read off the module sizes |M| and |pM|."""
        mu = self.minimal_generator_count()
        if self.size_exponent() == self.ring.s * mu:
            return True, mu
        return False, None

    def reduce(self, vec) -> Row:
        """Residual of vec after subtracting the reachable row combination."""
        q, p = self.ring.q, self.ring.p
        work = [c % q for c in vec]
        for (col, val), row in zip(self.pivots, self.rows):
            e = work[col]
            if e == 0:
                continue
            step = p**val
            if e % step:
                continue
            mult = e // step
            for j in range(col, self.ncols):
                work[j] = (work[j] - mult * row[j]) % q
        return tuple(work)

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains_all(self, vectors) -> bool:
        return all(self.contains(v) for v in vectors)


def _eliminate(work, ring: RingSpec, ncols: int, track: bool):
    """Shared reduction loop over a pool of (row, tail) pairs."""
    p, q = ring.p, ring.q
    pool = list(work)
    result: list[tuple[list[int], list[int], int, int]] = []
    for col in range(ncols):
        cand = [idx for idx, (row, _) in enumerate(pool) if row[col]]
        if not cand:
            continue
        best = min(cand, key=lambda idx: (_valuation(pool[idx][0][col], p), idx))
        row, tail = pool.pop(best)
        v = _valuation(row[col], p)
        step = p**v
        inv = unit_inverse(row[col] // step, ring)
        row = [(c * inv) % q for c in row]
        tail = [(c * inv) % q for c in tail]

        # clear this column in the remaining pool rows (their valuation at
        # this column is >= v by pivot choice, so the division is exact)
        for other_row, other_tail in pool:
            e = other_row[col]
            if e == 0:
                continue
            mult = e // step
            for j in range(col, ncols):
                other_row[j] = (other_row[j] - mult * row[j]) % q
            if track:
                for j in range(len(other_tail)):
                    other_tail[j] = (other_tail[j] - mult * tail[j]) % q

        # canonicalise this column in earlier pivot rows: reduce below p^v
        for done_row, done_tail, _, _ in result:
            e = done_row[col]
            if e < step:
                continue
            mult = e // step
            for j in range(col, ncols):
                done_row[j] = (done_row[j] - mult * row[j]) % q
            if track:
                for j in range(len(done_tail)):
                    done_tail[j] = (done_tail[j] - mult * tail[j]) % q

        # a zero-divisor pivot leaves torsion behind: keep its annihilator
        # multiple in play for later columns
        if v > 0:
            ann = p ** (ring.s - v)
            pool.append((
                [(ann * c) % q for c in row],
                [(ann * c) % q for c in tail],
            ))
        result.append((row, tail, col, v))

    leftover_tails = [tail for _, tail in pool if any(tail)]
    return result, leftover_tails


def howell_form(rows, ring: RingSpec, ncols: int | None = None) -> HowellForm:
    """Canonical triangular form of the module spanned by the given rows."""
    q = ring.q
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise PreconditionError("cannot infer width of an empty row set")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise PreconditionError("ragged rows")
    work = []
    for r in rows:
        r = [c % q for c in r]
        if any(r):
            work.append((r, []))
    result, _ = _eliminate(work, ring, ncols, track=False)
    return HowellForm(
        ring,
        ncols,
        tuple(tuple(row) for row, _, _, _ in result),
        tuple((col, v) for _, _, col, v in result),
    )


def left_kernel(rows, ring: RingSpec) -> HowellForm:
    """Canonical basis of {x : x M = 0} for the matrix M with the given rows."""
    q = ring.q
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    work = []
    for i, r in enumerate(rows):
        tail = [0] * nrows
        tail[i] = 1
        work.append(([c % q for c in r], tail))
    _, leftover = _eliminate(work, ring, ncols, track=True)
    if not leftover:
        return HowellForm(ring, nrows, (), ())
    return howell_form(leftover, ring, nrows)


def right_kernel(rows, ring: RingSpec, ncols: int) -> HowellForm:
    """Canonical basis of {x : M x = 0} via the left kernel of the transpose."""
    if not rows:
        identity = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
        return howell_form(identity, ring, ncols)
    transpose = [[row[j] for row in rows] for j in range(ncols)]
    return left_kernel(transpose, ring)
