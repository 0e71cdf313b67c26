"""Dense exact linear algebra over word-sized prime fields.

Every graded dimension in the package reduces to the rank of an integer
matrix.  Ranks are computed modulo primes ``2**30 < p < 2**31`` so that a
product of two residues fits in a signed 64-bit word; the elimination
kernels are compiled with numba.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numba
import numpy as np
import sympy

logger = logging.getLogger(__name__)

PRIME_LOW = 1 << 30
PRIME_HIGH = 1 << 31


class InputError(ValueError):
    """Raised for malformed user input (bad shapes, bad text, bad parameters)."""


class InternalError(RuntimeError):
    """Raised when a built-in cross-check fails."""


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime ``p`` with ``2**30 < p < 2**31``."""

    p: int

    def __post_init__(self):
        if not PRIME_LOW < self.p < PRIME_HIGH:
            raise InputError(f"modulus {self.p} outside ({PRIME_LOW}, {PRIME_HIGH})")
        if not sympy.isprime(self.p):
            raise InputError(f"modulus {self.p} is not prime")

    def reduce(self, values) -> np.ndarray:
        """Canonical residues in ``[0, p)`` of an integer array or scalar."""
        arr = np.asarray(values, dtype=object) if _has_big_ints(values) else np.asarray(values)
        if arr.dtype == object:
            return np.array([int(v) % self.p for v in arr.ravel()], dtype=np.int64).reshape(arr.shape)
        return np.mod(arr.astype(np.int64), self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)


def _has_big_ints(values) -> bool:
    if isinstance(values, int):
        return abs(values) >= 1 << 62
    if isinstance(values, np.ndarray):
        return values.dtype == object
    if isinstance(values, (list, tuple)):
        return any(_has_big_ints(v) for v in values)
    return False


def random_prime(rng: random.Random, exclude: Iterable[int] = ()) -> int:
    """Draw a prime uniformly-ish from ``(2**30, 2**31)`` avoiding ``exclude``."""
    excluded = set(exclude)
    while True:
        p = sympy.nextprime(rng.randrange(PRIME_LOW, PRIME_HIGH - 1000))
        if p < PRIME_HIGH and p not in excluded:
            return int(p)


def choose_primes(count: int, seed: int | None = None, exclude: Iterable[int] = ()) -> list[int]:
    rng = random.Random(seed)
    primes: list[int] = []
    excluded = set(exclude)
    while len(primes) < count:
        p = random_prime(rng, excluded)
        excluded.add(p)
        primes.append(p)
    return primes


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """A dense ``rows x cols`` matrix with entries in a prime field."""

    entries: np.ndarray
    field: PrimeField

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim != 2:
            raise InputError(f"expected a 2-d array, got shape {arr.shape}")
        arr = self.field.reduce(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: PrimeField) -> ExactMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, n: int, field: PrimeField) -> ExactMatrix:
        return cls(np.eye(n, dtype=np.int64), field)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.entries.T.copy(), self.field)

    def matvec(self, v) -> np.ndarray:
        return _matvec_mod(self.entries, self.field.reduce(v), self.field.p)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    __hash__ = None


def _matvec_mod(a: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(a.shape[0], dtype=np.int64)
    # accumulate column by column so no partial sum exceeds 2**63
    for j in np.nonzero(v)[0]:
        out = (out + a[:, j] * int(v[j])) % p
    return out


# ---------------------------------------------------------------------------
# compiled kernels


@numba.njit(cache=True)
def _inverse_mod(a, p):
    e = p - 2
    result = 1
    a = a % p
    while e > 0:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


@numba.njit(cache=True)
def _echelon_kernel(m, p, reduced):
    """Row-reduce ``m`` in place; returns the pivot columns.

    Pivots are normalised to 1.  With ``reduced`` the entries above each
    pivot are cleared as well (reduced row echelon form).  The first
    ``len(pivots)`` rows of ``m`` hold the echelon form afterwards.
    """
    rows, cols = m.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    nz = np.empty(cols, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        inv = _inverse_mod(m[r, c], p)
        count = 0
        for j in range(c, cols):
            if m[r, j] != 0:
                m[r, j] = m[r, j] * inv % p
                nz[count] = j
                count += 1
        start = 0 if reduced else r + 1
        for i in range(start, rows):
            if i == r:
                continue
            factor = m[i, c]
            if factor == 0:
                continue
            neg = p - factor
            for t in range(count):
                j = nz[t]
                m[i, j] = (m[i, j] + neg * m[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


def echelon(entries: np.ndarray, p: int, reduced: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Echelon form of a residue array; returns ``(echelon_rows, pivot_columns)``."""
    work = np.array(entries, dtype=np.int64, copy=True, order="C")
    if work.size == 0:
        return work[:0], np.empty(0, dtype=np.int64)
    pivots = _echelon_kernel(work, p, reduced)
    return work[: len(pivots)], pivots


# ---------------------------------------------------------------------------
# public operations


def rank(m: ExactMatrix) -> int:
    """Rank of ``m`` over its prime field."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    entries = m.entries if m.rows <= m.cols else m.entries.T
    _, pivots = echelon(entries, m.field.p)
    return len(pivots)


def kernel_basis(m: ExactMatrix) -> list[np.ndarray]:
    """A basis of the right kernel ``{v : m v = 0}`` as residue vectors."""
    p = m.field.p
    if m.rows == 0:
        return [np.eye(m.cols, dtype=np.int64)[i] for i in range(m.cols)]
    rref, pivots = echelon(m.entries, p, reduced=True)
    pivot_set = set(pivots.tolist())
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = np.zeros(m.cols, dtype=np.int64)
        v[free] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-rref[row, free]) % p
        basis.append(v)
    return basis


def kernel_matrix(m: ExactMatrix) -> np.ndarray:
    """Kernel basis stacked as the rows of an array of shape ``(nullity, cols)``."""
    basis = kernel_basis(m)
    if not basis:
        return np.zeros((0, m.cols), dtype=np.int64)
    return np.vstack(basis)


def row_space(entries: np.ndarray, p: int) -> np.ndarray:
    """Echelon basis of the row space of a residue array."""
    if entries.shape[0] == 0:
        return entries.copy()
    rows, _ = echelon(entries, p)
    return rows


def in_column_span(m: ExactMatrix, v: Sequence[int] | np.ndarray) -> bool:
    """True iff ``v`` lies in the column span of ``m``."""
    vec = m.field.reduce(np.asarray(v))
    if vec.ndim != 1 or vec.shape[0] != m.rows:
        raise InputError(f"vector of length {vec.shape} does not match {m.rows} rows")
    if not vec.any():
        return True
    augmented = ExactMatrix(np.column_stack([m.entries, vec]), m.field)
    return rank(augmented) == rank(m)


def multi_prime_rank(
    integer_matrix, primes: Sequence[int], seed: int | None = None
) -> tuple[int, list[int], int]:
    """Rank of an integer matrix agreed on by several primes.

    Returns ``(rank, primes_used, escalations)``.  When the first primes
    disagree, extra primes are drawn until the largest observed rank is
    seen at least twice; rank modulo ``p`` never exceeds the rational rank,
    so the maximum is the answer.
    """
    arr = np.asarray(integer_matrix, dtype=object if _has_big_ints(integer_matrix) else None)
    used = list(primes)
    ranks = [rank(ExactMatrix(arr, PrimeField(p))) for p in used]
    escalations = 0
    rng = random.Random(seed)
    while len(set(ranks)) > 1 and Counter(ranks)[max(ranks)] < 2:
        escalations += 1
        logger.warning("rank disagreement %s over primes %s; adding a prime", ranks, used)
        p = random_prime(rng, used)
        used.append(p)
        ranks.append(rank(ExactMatrix(arr, PrimeField(p))))
    return max(ranks), used, escalations
