"""Curve families, named examples, line arrangements and the nu-constancy harness."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from importlib import resources
from itertools import combinations
from math import gcd
from pathlib import Path
from typing import Sequence

from sympy import totient

from .classify import SplittingType, splitting_type
from .invariants import CurveAnalysis, analyze
from .linalg import InputError
from .poly import HomogPoly, parse_poly, product

# ---------------------------------------------------------------------------
# curve families


def admissible_k(d: int) -> list[int]:
    return [k for k in range(1, (d + 1) // 2) if 2 * k < d and gcd(k, d) == 1]


def binomial_curve(d: int, k: int) -> HomogPoly:
    """``y^d + x^k z^(d-k)`` for ``1 <= k < d/2`` coprime to ``d``."""
    if d < 3:
        raise InputError(f"binomial curves need d >= 3, got d={d}")
    if not (1 <= k and 2 * k < d):
        raise InputError(f"need 1 <= k < d/2, got k={k}, d={d}")
    if gcd(k, d) != 1:
        raise InputError(f"gcd({k},{d}) = {gcd(k, d)} != 1")
    return HomogPoly(d, {(0, d, 0): 1, (k, 0, d - k): 1})


def model_count(d: int) -> int:
    """Number of binomial models in degree ``d``, half of Euler's totient."""
    if d < 3:
        raise InputError("needs d >= 3")
    return int(totient(d)) // 2


def b_plus_curve(k: int) -> HomogPoly:
    """``x^2k + y^2k + z^2k - 2 (x^k y^k + x^k z^k + y^k z^k)`` for odd ``k >= 3``."""
    if k < 3 or k % 2 == 0:
        raise InputError(f"k must be odd and >= 3, got {k}")
    n = 2 * k
    return HomogPoly(
        n,
        {
            (n, 0, 0): 1,
            (0, n, 0): 1,
            (0, 0, n): 1,
            (k, k, 0): -2,
            (k, 0, k): -2,
            (0, k, k): -2,
        },
    )


NAMED_EXAMPLES = {
    "quartic_C": "y^4 - x*z^3",
    "quartic_Cprime": "y^4 - x*z^3 - y^3*z",
    "quintic_4cusp": "16*x^4*y + 128*x^2*y^2*z - 4*x^3*z^2 + 256*y^3*z^2 - 144*x*y*z^3 + 27*z^5",
}


def named_example(name: str) -> HomogPoly:
    try:
        return parse_poly(NAMED_EXAMPLES[name])
    except KeyError:
        raise InputError(f"unknown example {name!r}; choose from {sorted(NAMED_EXAMPLES)}") from None


# ---------------------------------------------------------------------------
# line arrangements


def cross(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def normalize_point(v: Sequence[int]) -> tuple[int, int, int]:
    """Primitive integer representative with first nonzero coordinate positive."""
    g = gcd(gcd(abs(v[0]), abs(v[1])), abs(v[2]))
    if g == 0:
        raise InputError("the zero vector is not a projective point")
    w = [c // g for c in v]
    lead = next(c for c in w if c)
    if lead < 0:
        w = [-c for c in w]
    return tuple(w)


@dataclass(frozen=True)
class Arrangement:
    """Lines ``a x + b y + c z = 0`` given by integer triples."""

    lines: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        lines = tuple(tuple(int(c) for c in line) for line in self.lines)
        for i, line in enumerate(lines):
            if len(line) != 3 or not any(line):
                raise InputError(f"line {i} must be a nonzero triple, got {line}")
        for i, j in combinations(range(len(lines)), 2):
            if not any(cross(lines[i], lines[j])):
                raise InputError(f"lines {i} and {j} are proportional: {lines[i]}, {lines[j]}")
        object.__setattr__(self, "lines", lines)

    def __len__(self) -> int:
        return len(self.lines)


def arrangement_poly(a: Arrangement) -> HomogPoly:
    return product(HomogPoly.linear(*line) for line in a.lines)


@dataclass(frozen=True)
class IntersectionLattice:
    """Intersection points of an arrangement with the lines through each."""

    n_lines: int
    points: tuple[tuple[tuple[int, int, int], frozenset[int]], ...]

    @property
    def multiplicities(self) -> Counter:
        return Counter(len(lines) for _, lines in self.points)

    def check(self) -> None:
        pairs = sum(len(s) * (len(s) - 1) // 2 for _, s in self.points)
        if pairs != self.n_lines * (self.n_lines - 1) // 2:
            raise InputError(f"pair count {pairs} does not match {self.n_lines} lines")


def intersection_lattice(a: Arrangement) -> IntersectionLattice:
    """All intersection points, computed exactly over the integers."""
    incident: dict[tuple[int, int, int], set[int]] = {}
    for i, j in combinations(range(len(a.lines)), 2):
        pt = normalize_point(cross(a.lines[i], a.lines[j]))
        incident.setdefault(pt, set()).update((i, j))
    points = tuple(sorted((pt, frozenset(s)) for pt, s in incident.items()))
    lattice = IntersectionLattice(len(a.lines), points)
    lattice.check()
    return lattice


def combinatorial_tau(lattice: IntersectionLattice) -> int:
    """Sum of ``(m - 1)^2`` over intersection points of multiplicity ``m``."""
    return sum((len(s) - 1) ** 2 for _, s in lattice.points)


def _pair_points(lattice: IntersectionLattice) -> list[list[int]]:
    n = lattice.n_lines
    table = [[-1] * n for _ in range(n)]
    for idx, (_, lines) in enumerate(lattice.points):
        for i, j in combinations(sorted(lines), 2):
            table[i][j] = table[j][i] = idx
    return table


def _line_signatures(lattice: IntersectionLattice) -> list[tuple[int, ...]]:
    sig: list[list[int]] = [[] for _ in range(lattice.n_lines)]
    for _, lines in lattice.points:
        for i in lines:
            sig[i].append(len(lines))
    return [tuple(sorted(s)) for s in sig]


def lattice_isomorphism(l1: IntersectionLattice, l2: IntersectionLattice) -> list[int] | None:
    """A relabelling of lines carrying ``l1`` onto ``l2``, or ``None``."""
    if l1.n_lines != l2.n_lines or l1.multiplicities != l2.multiplicities:
        return None
    sig1, sig2 = _line_signatures(l1), _line_signatures(l2)
    if sorted(sig1) != sorted(sig2):
        return None
    pts1, pts2 = _pair_points(l1), _pair_points(l2)
    mult1 = [len(s) for _, s in l1.points]
    mult2 = [len(s) for _, s in l2.points]
    n = l1.n_lines
    # most constrained lines first
    order = sorted(range(n), key=lambda i: (Counter(sig1)[sig1[i]], sig1[i]))
    image = [-1] * n
    used = [False] * n
    point_map: dict[int, int] = {}
    point_inv: dict[int, int] = {}

    def assign(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for cand in range(n):
            if used[cand] or sig2[cand] != sig1[i]:
                continue
            added = []
            ok = True
            for j in order[:pos]:
                p1, p2 = pts1[i][j], pts2[cand][image[j]]
                if mult1[p1] != mult2[p2]:
                    ok = False
                    break
                if p1 in point_map or p2 in point_inv:
                    if point_map.get(p1) != p2 or point_inv.get(p2) != p1:
                        ok = False
                        break
                else:
                    point_map[p1] = p2
                    point_inv[p2] = p1
                    added.append(p1)
            if ok:
                image[i] = cand
                used[cand] = True
                if assign(pos + 1):
                    return True
                used[cand] = False
                image[i] = -1
            for p1 in added:
                del point_inv[point_map.pop(p1)]
        return False

    return list(image) if assign(0) else None


def lattice_isomorphic(l1: IntersectionLattice, l2: IntersectionLattice) -> bool:
    return lattice_isomorphism(l1, l2) is not None


# ---------------------------------------------------------------------------
# file formats


def parse_arrangement(text: str) -> Arrangement:
    """One line per linear form: three integers; ``#`` starts a comment."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected three integers, got {body!r}")
        try:
            lines.append(tuple(int(v) for v in parts))
        except ValueError:
            raise InputError(f"line {lineno}: expected three integers, got {body!r}") from None
    return Arrangement(tuple(lines))


def format_arrangement(a: Arrangement) -> str:
    return "".join(f"{l[0]} {l[1]} {l[2]}\n" for l in a.lines)


def read_arrangement(path: str | Path) -> Arrangement:
    return parse_arrangement(Path(path).read_text(encoding="utf-8"))


def read_groups(path: str | Path) -> list[list[Arrangement]]:
    """Group file: a JSON array whose items are arrangement paths or arrays of paths.

    Relative paths are resolved against the group file's directory.
    """
    path = Path(path)
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, list):
        raise InputError("group file must hold a JSON array")
    if data and all(isinstance(item, str) for item in data):
        data = [data]
    groups = []
    for item in data:
        members = [item] if isinstance(item, str) else item
        groups.append([read_arrangement(path.parent / m) for m in members])
    return groups


def data_path(name: str) -> Path:
    return Path(str(resources.files("jacplane") / "data" / name))


def ziegler_pair() -> list[Arrangement]:
    return read_groups(data_path("ziegler_pair.json"))[0]


# ---------------------------------------------------------------------------
# conjecture harness


@dataclass(frozen=True)
class GroupReport:
    lattice_summary: dict[int, int]
    combinatorial_tau: int
    analyses: tuple[CurveAnalysis, ...]
    nu_values: tuple[int, ...]
    mdr_values: tuple[int, ...]
    splitting_types: tuple[SplittingType | None, ...]

    @property
    def nu_constant(self) -> bool:
        return len(set(self.nu_values)) == 1

    @property
    def splitting_constant(self) -> bool:
        return len(set(self.splitting_types)) == 1

    @property
    def mdr_constant(self) -> bool:
        return len(set(self.mdr_values)) == 1

    @property
    def counterexample(self) -> bool:
        return not self.nu_constant


@dataclass(frozen=True)
class HarnessReport:
    groups: tuple[GroupReport, ...] = field(default_factory=tuple)

    @property
    def counterexamples(self) -> list[int]:
        return [i for i, g in enumerate(self.groups) if g.counterexample]


def _analyze_poly(f: HomogPoly, seed: int | None) -> CurveAnalysis:
    return analyze(f, seed=seed)


def run_group(members: Sequence[Arrangement], seed: int | None = None, jobs: int = 1) -> GroupReport:
    if not members:
        raise InputError("empty group")
    lattices = [intersection_lattice(a) for a in members]
    for idx, lat in enumerate(lattices[1:], start=1):
        if not lattice_isomorphic(lattices[0], lat):
            raise InputError(f"member {idx} has a different intersection lattice from member 0")
    polys = [arrangement_poly(a) for a in members]
    worker = partial(_analyze_poly, seed=seed)
    if jobs > 1 and len(polys) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            analyses = tuple(pool.map(worker, polys))
    else:
        analyses = tuple(map(worker, polys))
    splits = tuple(splitting_type(a.d, a.r) if a.r >= 1 else None for a in analyses)
    return GroupReport(
        lattice_summary=dict(sorted(lattices[0].multiplicities.items())),
        combinatorial_tau=combinatorial_tau(lattices[0]),
        analyses=analyses,
        nu_values=tuple(a.nu for a in analyses),
        mdr_values=tuple(a.r for a in analyses),
        splitting_types=splits,
    )


def conjecture_harness(
    groups: Sequence[Sequence[Arrangement]], seed: int | None = None, jobs: int = 1
) -> HarnessReport:
    """Check that ``nu`` and the splitting type are constant within each lattice class.

    Each group must consist of arrangements with isomorphic intersection
    lattices.  A group with non-constant ``nu`` is reported as a
    counterexample; ``mdr`` is reported per member but is allowed to vary.
    """
    return HarnessReport(tuple(run_group(g, seed=seed, jobs=jobs) for g in groups))
