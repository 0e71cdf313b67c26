"""Matrices of degree-preserving linear maps between graded pieces of S."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ExactMatrix, InternalError, PrimeField
from .poly import HomogPoly, graded_dim, monomial_index, monomials, partials


@dataclass(frozen=True)
class GradedMap:
    """An exact matrix together with the degrees of its source and target.

    ``domain_degrees`` lists ``(degree, multiplicity)`` summands, so the map
    ``S_m^3 -> S_{m+d-1}`` has ``domain_degrees == ((m, 3),)``.
    """

    domain_degrees: tuple[tuple[int, int], ...]
    codomain_degree: int
    matrix: ExactMatrix

    def __post_init__(self):
        cols = sum(mult * graded_dim(deg) for deg, mult in self.domain_degrees)
        if self.matrix.shape != (graded_dim(self.codomain_degree), cols):
            raise InternalError(
                f"matrix shape {self.matrix.shape} does not match degrees "
                f"{self.domain_degrees} -> {self.codomain_degree}"
            )


def degree_cap(d: int) -> int:
    return 4 * max(d, 1)


def _check_cap(f_degree: int, target: int) -> None:
    if target > degree_cap(f_degree):
        raise InternalError(f"requested degree {target} exceeds cap {degree_cap(f_degree)}")


def _scatter(g: HomogPoly, j: int, p: int, out: np.ndarray, col_offset: int) -> None:
    # column t of the block is g * (t-th monomial of S_j)
    mons = monomials(j)
    cols = col_offset + np.arange(len(mons))
    for exp, c in g.coeffs.items():
        rows = monomial_index(mons + np.asarray(exp, dtype=np.int64))
        out[rows, cols] = c % p


def multiplication_map(g: HomogPoly, j: int, field: PrimeField, cap_degree: int | None = None) -> GradedMap:
    """Matrix of ``S_j -> S_{j + deg g}``, ``h -> g*h``."""
    target = j + g.degree
    _check_cap(cap_degree if cap_degree is not None else g.degree, target)
    out = np.zeros((graded_dim(target), graded_dim(j)), dtype=np.int64)
    if j >= 0:
        _scatter(g, j, field.p, out, 0)
    return GradedMap(((j, 1),), target, ExactMatrix(out, field))


def jacobian_relation_map(f: HomogPoly, m: int, field: PrimeField) -> GradedMap:
    """Matrix of ``(a, b, c) -> a f_x + b f_y + c f_z`` on ``S_m^3``.

    Its kernel is the space of Jacobian syzygies of degree ``m``.
    """
    d = f.degree
    target = m + d - 1
    _check_cap(d, target)
    n = graded_dim(m)
    out = np.zeros((graded_dim(target), 3 * n), dtype=np.int64)
    if m >= 0:
        for block, g in enumerate(partials(f)):
            _scatter(g, m, field.p, out, block * n)
    return GradedMap(((m, 3),), target, ExactMatrix(out, field))


def ideal_piece_matrix(f: HomogPoly, k: int, field: PrimeField) -> GradedMap:
    """Matrix whose columns span the degree-``k`` part of the Jacobian ideal."""
    d = f.degree
    j = k - d + 1
    _check_cap(d, k)
    blocks = [multiplication_map(g, j, field, cap_degree=d).matrix.entries for g in partials(f)]
    if j < 0:
        entries = np.zeros((graded_dim(k), 0), dtype=np.int64)
    else:
        entries = np.hstack(blocks)
    return GradedMap(((j, 3),), k, ExactMatrix(entries, field))
