"""Graded invariants of the Jacobian ring of a plane curve.

For a reduced curve ``C: f = 0`` of degree ``d`` this module computes the
syzygy dimensions ``ar(f)_k``, the minimal syzygy degree ``mdr(f)``, the
Hilbert function of the Milnor algebra ``M(f) = S/J_f``, the global Tjurina
number, and the dimensions ``n(f)_k`` of ``N(f) = I_f/J_f`` where ``I_f`` is
the saturation of the Jacobian ideal.  Both ``tau`` and ``n(f)`` have two
independent algorithms which :func:`analyze` checks against each other.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from . import linalg
from .graded import degree_cap, ideal_piece_matrix, jacobian_relation_map
from .linalg import ExactMatrix, InputError, InternalError, PrimeField
from .poly import (
    HomogPoly,
    euler_defect,
    graded_dim,
    monomial_index,
    monomials,
    reduce_mod,
    reduced_check,
)

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 2_147_483_647
LINES_THROUGH_POINT = "lines_through_point"
LOW_DEGREE = "low_degree"


def binom2(n: int) -> int:
    """``n (n - 1) / 2`` as a polynomial in ``n`` (nonzero for ``n < 0``)."""
    return n * (n - 1) // 2


def default_field() -> PrimeField:
    return PrimeField(DEFAULT_PRIME)


class Workspace:
    """Rank cache for one curve over one prime field.

    Relation-map ranks and ideal-piece ranks are cached separately even
    though the matrices coincide entrywise: they are assembled by different
    code paths and feed the two sides of each cross-check.
    """

    def __init__(self, f: HomogPoly, field: PrimeField | None = None):
        if f.degree < 1:
            raise InputError("the curve must have degree >= 1")
        self.f = f
        self.d = f.degree
        self.field = field or default_field()
        self._relation_ranks: dict[int, int] = {}
        self._ideal_ranks: dict[int, int] = {}

    def relation_rank(self, m: int) -> int:
        if m < 0:
            return 0
        if m not in self._relation_ranks:
            self._relation_ranks[m] = linalg.rank(jacobian_relation_map(self.f, m, self.field).matrix)
        return self._relation_ranks[m]

    def ar(self, k: int) -> int:
        if k < 0:
            return 0
        return 3 * graded_dim(k) - self.relation_rank(k)

    def ideal_rank(self, k: int) -> int:
        if k < self.d - 1:
            return 0
        if k not in self._ideal_ranks:
            self._ideal_ranks[k] = linalg.rank(ideal_piece_matrix(self.f, k, self.field).matrix)
        return self._ideal_ranks[k]

    def milnor(self, k: int) -> int:
        if k < 0:
            return 0
        return graded_dim(k) - self.ideal_rank(k)

    def mdr(self) -> int:
        for m in range(self.d):
            if self.ar(m) > 0:
                return m
        raise InternalError(f"no syzygy found below degree {self.d}; the Koszul relations are missing")

    def tjurina_chi(self) -> int:
        d = self.d
        if d < 2:
            raise InputError("tjurina_chi needs degree >= 2")
        return self.ar(2 * d - 4) - 3 * comb(2 * d - 2, 2) + comb(3 * d - 3, 2)

    def tjurina_stable(self) -> int:
        d = self.d
        if d < 2:
            raise InputError("tjurina_stable needs degree >= 2")
        cap = min((d - 1) ** 2 + 1, degree_cap(d))
        k = 3 * d - 5
        prev = self.milnor(k)
        while k < cap:
            k += 1
            cur = self.milnor(k)
            if cur == prev:
                return cur
            prev = cur
        raise InternalError(
            f"Milnor algebra dimensions did not stabilise by degree {cap} "
            "(bad prime or non-reduced curve)"
        )

    def saturation_codims(self) -> list[int]:
        """``dim (S/I_f)_k`` for ``k = 0 .. 3d - 5`` by descending colon ideals."""
        d = self.d
        p = self.field.p
        anchor = 3 * d - 5
        ideal = ideal_piece_matrix(self.f, anchor, self.field).matrix
        # rows of `ann` span the annihilator of (I_f)_k inside the dual of S_k
        ann = linalg.kernel_matrix(ideal.transpose())
        codims = [0] * (anchor + 1)
        codims[anchor] = ann.shape[0]
        for k in range(anchor - 1, -1, -1):
            mons = monomials(k)
            blocks = []
            for v in range(3):
                shifted = mons.copy()
                shifted[:, v] += 1
                blocks.append(ann[:, monomial_index(shifted)])
            ann = linalg.row_space(np.vstack(blocks), p)
            codims[k] = ann.shape[0]
        return codims

    def n_dims_saturation(self) -> list[int]:
        d = self.d
        if d < 3:
            return []
        T = 3 * d - 6
        codims = self.saturation_codims()
        out = []
        for k in range(T + 1):
            n = self.milnor(k) - codims[k]
            if n < 0:
                raise InternalError(f"negative dimension {n} for N(f) in degree {k}")
            out.append(n)
        return out

    def n_dims_chi(self, tau: int) -> list[int]:
        d = self.d
        if d < 3:
            return []
        T = 3 * d - 6
        out = []
        for j in range(T + 1):
            k = j - d
            euler = 3 * binom2(k + 3) - binom2(d + k + 2) + tau
            n = self.ar(k + 1) + self.ar(d - 5 - k) - euler
            if n < 0:
                raise InternalError(f"Euler characteristic gives n(f)_{j} = {n} < 0")
            out.append(n)
        return out


# ---------------------------------------------------------------------------
# single-operation entry points


def ar_dim(f: HomogPoly, k: int, field: PrimeField | None = None) -> int:
    """Dimension of the space of Jacobian syzygies of degree ``k``."""
    return Workspace(f, field).ar(k)


def mdr(f: HomogPoly, field: PrimeField | None = None) -> int:
    """Minimal degree of a nontrivial Jacobian syzygy."""
    return Workspace(f, field).mdr()


def milnor_hilbert(f: HomogPoly, k: int, field: PrimeField | None = None) -> int:
    """``dim M(f)_k``."""
    return Workspace(f, field).milnor(k)


def tjurina_chi(f: HomogPoly, field: PrimeField | None = None) -> int:
    """Global Tjurina number from one syzygy dimension in degree ``2d - 4``.

    At twist ``2d - 5`` both the first and second cohomology of the
    logarithmic bundle vanish, so the Euler characteristic equals
    ``ar(f)_{2d-4}`` and can be solved for ``tau``.
    """
    return Workspace(f, field).tjurina_chi()


def tjurina_stable(f: HomogPoly, field: PrimeField | None = None) -> int:
    """Global Tjurina number as the stable value of ``dim M(f)_k``."""
    return Workspace(f, field).tjurina_stable()


def n_dims_saturation(f: HomogPoly, field: PrimeField | None = None) -> list[int]:
    """``n(f)_k`` for ``k = 0..3d-6`` from the saturation of ``J_f``.

    ``(I_f)_k`` is obtained by descending from degree ``3d - 5``, where it
    equals ``(J_f)_k``, using ``(I_f)_k = {g : x g, y g, z g in (I_f)_{k+1}}``.
    """
    return Workspace(f, field).n_dims_saturation()


def n_dims_chi(f: HomogPoly, tau: int, field: PrimeField | None = None) -> list[int]:
    """``n(f)_k`` for ``k = 0..3d-6`` from the Euler characteristic formula."""
    return Workspace(f, field).n_dims_chi(tau)


def middle_degrees(d: int) -> tuple[int, ...]:
    """Degrees where ``n(f)`` attains its maximum."""
    m, odd = divmod(d, 2)
    return (3 * m - 2, 3 * m - 1) if odd else (3 * m - 3,)


def nu(n_dims, d: int) -> int:
    """Maximum of ``n(f)``, checked against the middle degree(s)."""
    if not n_dims:
        return 0
    top = max(n_dims)
    for k in middle_degrees(d):
        if n_dims[k] != top:
            raise InternalError(f"n(f)_{k} = {n_dims[k]} differs from the maximum {top}")
    return top


# ---------------------------------------------------------------------------
# full analysis


@dataclass(frozen=True)
class CurveAnalysis:
    """Invariants of one reduced plane curve.

    ``degenerate`` is ``None`` for curves covered by the classification
    theorems, ``"lines_through_point"`` when ``mdr == 0`` and ``"low_degree"``
    when ``d <= 2``.  ``validated`` is false only when a non-reduced curve was
    analysed under the override flag.
    """

    poly: str
    d: int
    r: int
    T: int
    tau: int
    ar_dims: tuple[int, ...]
    n_dims: tuple[int, ...]
    nu: int
    milnor_hilbert: tuple[int, ...]
    primes_used: tuple[int, ...]
    degenerate: str | None = None
    verified: bool = True
    validated: bool = True
    escalations: int = 0
    tau_stable: int | None = None
    n_dims_chi: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        for key, value in out.items():
            if isinstance(value, tuple):
                out[key] = list(value)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> CurveAnalysis:
        kwargs = dict(data)
        for key in ("ar_dims", "n_dims", "milnor_hilbert", "primes_used", "n_dims_chi"):
            if kwargs.get(key) is not None:
                kwargs[key] = tuple(kwargs[key])
        return cls(**kwargs)

    def check(self) -> None:
        """Raise :class:`InternalError` if a structural invariant fails."""
        check_structure(self.d, self.n_dims, self.nu)
        if self.milnor_hilbert and self.validated:
            stable = self.milnor_hilbert[3 * self.d - 5 :]
            if any(v != self.tau for v in stable):
                raise InternalError(f"Milnor dimensions {stable} do not settle at tau = {self.tau}")


def check_structure(d: int, n_dims, nu_value: int) -> None:
    n = list(n_dims)
    if not n:
        return
    T = 3 * d - 6
    if len(n) != T + 1:
        raise InternalError(f"n(f) has {len(n)} entries, expected {T + 1}")
    if min(n) < 0:
        raise InternalError(f"negative entry in n(f) = {n}")
    if n != n[::-1]:
        raise InternalError(f"n(f) = {n} is not self-dual about {T}/2")
    half = T // 2
    if any(n[i] > n[i + 1] for i in range(half)) or any(n[i] < n[i + 1] for i in range(half, T)):
        raise InternalError(f"n(f) = {n} is not unimodal")
    if nu_value != max(n):
        raise InternalError(f"nu = {nu_value} but max n(f) = {max(n)}")
    for k in middle_degrees(d):
        if n[k] != nu_value:
            raise InternalError(f"n(f)_{k} = {n[k]} differs from nu = {nu_value}")


def prime_is_good(f: HomogPoly, p: int) -> bool:
    """Reject primes dividing ``d`` or a coefficient of ``f``, or breaking Euler's relation."""
    if f.degree % p == 0:
        return False
    g = reduce_mod(f, p)
    if len(g) != len(f):
        return False
    return all(c % p == 0 for c in euler_defect(g).coeffs.values())


def _analyze_mod_p(f: HomogPoly, field: PrimeField, verify: bool, validated: bool) -> dict:
    ws = Workspace(f, field)
    d = f.degree
    r = ws.mdr()
    tau = ws.tjurina_chi()
    ar_dims = tuple(ws.ar(k) for k in range(2 * d - 3))
    milnor = tuple(ws.milnor(k) for k in range(3 * d - 3))
    n_sat = tuple(ws.n_dims_saturation())
    record = dict(r=r, tau=tau, ar_dims=ar_dims, milnor_hilbert=milnor, n_dims=n_sat)
    if not validated:
        return record
    stable = None
    chi = None
    if verify:
        stable = ws.tjurina_stable()
        if stable != tau:
            raise InternalError(f"tau mismatch: Euler characteristic {tau}, stable Hilbert function {stable}")
        chi = tuple(ws.n_dims_chi(tau))
        if chi != n_sat:
            raise InternalError(f"n(f) mismatch: saturation {list(n_sat)}, Euler characteristic {list(chi)}")
    record.update(tau_stable=stable, n_dims_chi=chi)
    return record


def analyze(
    f: HomogPoly,
    seed: int | None = None,
    *,
    n_primes: int = 2,
    verify: bool = True,
    allow_nonreduced: bool = False,
    max_primes: int = 6,
    primes: list[int] | None = None,
) -> CurveAnalysis:
    """Compute every invariant of ``f`` over several primes and cross-check.

    The records computed over different primes must agree; on disagreement
    further primes are drawn and the majority record wins.  A prime whose
    internal cross-checks fail is replaced by a fresh one.
    """
    d = f.degree
    if d < 2:
        raise InputError(f"analysis needs degree >= 2, got {d}")
    candidates = list(primes) if primes else []
    rng_seed = seed
    pool = iter(())

    def next_prime(exclude):
        nonlocal pool
        if candidates:
            return candidates.pop(0)
        for p in pool:
            if p not in exclude:
                return p
        pool = iter(linalg.choose_primes(max_primes * 2, seed=rng_seed, exclude=exclude))
        return next(pool)

    validated = True
    first = next_prime(set())
    while not prime_is_good(f, first):
        first = next_prime({first})
    if not reduced_check(f, p=first, seed=seed):
        if not allow_nonreduced:
            raise InputError("the curve is not reduced (a random line meets it with a repeated point)")
        validated = False

    records: list[tuple[int, dict]] = []
    tried: set[int] = set()
    failures: list[str] = []
    escalations = 0
    p = first
    while True:
        tried.add(p)
        if prime_is_good(f, p):
            try:
                records.append((p, _analyze_mod_p(f, PrimeField(p), verify, validated)))
            except InternalError as exc:
                failures.append(f"p={p}: {exc}")
                logger.warning("cross-check failed over p=%d: %s", p, exc)
        counts = Counter(_freeze(rec) for _, rec in records)
        if len(records) >= n_primes:
            (best, top), *rest = counts.most_common() or [(None, 0)]
            if len(counts) == 1 or (top >= 2 and all(c < top for _, c in rest)):
                break
            escalations += 1
            logger.warning("records disagree across primes %s; adding a prime", [q for q, _ in records])
        if len(tried) >= max_primes:
            raise InternalError(
                "no consistent analysis after primes "
                f"{sorted(tried)}; failures: {failures}; records: {[rec for _, rec in records]}"
            )
        p = next_prime(tried)

    winner = Counter(_freeze(rec) for _, rec in records).most_common(1)[0][0]
    rec = dict(winner)
    used = tuple(q for q, r in records)
    r = rec["r"]
    n_sat = rec["n_dims"]
    nu_value = max(n_sat) if n_sat else 0
    degenerate = LOW_DEGREE if d <= 2 else (LINES_THROUGH_POINT if r == 0 else None)
    analysis = CurveAnalysis(
        poly=str(f),
        d=d,
        r=r,
        T=3 * d - 6,
        tau=rec["tau"],
        ar_dims=rec["ar_dims"],
        n_dims=n_sat,
        nu=nu_value,
        milnor_hilbert=rec["milnor_hilbert"],
        primes_used=used,
        degenerate=degenerate,
        verified=verify and validated,
        validated=validated,
        escalations=escalations + len(failures),
        tau_stable=rec.get("tau_stable"),
        n_dims_chi=rec.get("n_dims_chi"),
    )
    if validated:
        analysis.check()
        nu(n_sat, d)
    return analysis


def _freeze(record: dict) -> tuple:
    return tuple(sorted(record.items()))
