"""Homogeneous polynomials in x, y, z with integer coefficients.

Monomials of degree ``k`` are exponent triples ``(a, b, c)`` ordered
lexicographically from ``x**k`` down to ``z**k``; the position of a monomial
in that list is its index in the basis of ``S_k``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_sqf_p, gf_strip

from .linalg import InputError

Exponent = tuple[int, int, int]
VARIABLES = ("x", "y", "z")


def graded_dim(k: int) -> int:
    """Dimension of the space of degree-``k`` forms in three variables."""
    return comb(k + 2, 2) if k >= 0 else 0


@lru_cache(maxsize=None)
def _monomials(k: int) -> np.ndarray:
    rows = [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]
    arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
    arr.setflags(write=False)
    return arr


def monomials(k: int) -> np.ndarray:
    """Exponent triples of ``S_k`` in basis order, shape ``(dim S_k, 3)``."""
    if k < 0:
        return np.zeros((0, 3), dtype=np.int64)
    return _monomials(k)


def monomial_index(exponents) -> np.ndarray | int:
    """Basis index of each exponent triple within its own graded piece.

    Accepts a single triple or an ``(n, 3)`` array.
    """
    e = np.asarray(exponents, dtype=np.int64)
    a, b = e[..., 0], e[..., 1]
    k = e.sum(axis=-1)
    s = k - a
    idx = s * (s + 1) // 2 + (s - b)
    return int(idx) if idx.ndim == 0 else idx


def monomial_from_index(i: int, k: int) -> Exponent:
    if not 0 <= i < graded_dim(k):
        raise IndexError(f"index {i} out of range for degree {k}")
    return tuple(int(v) for v in _monomials(k)[i])


@dataclass(frozen=True, eq=False)
class HomogPoly:
    """A homogeneous form of declared degree.

    ``coeffs`` maps exponent triples to nonzero integers; insertion order is
    kept for printing only, equality ignores it.
    """

    degree: int
    coeffs: Mapping[Exponent, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0:
            raise InputError(f"negative degree {self.degree}")
        clean: dict[Exponent, int] = {}
        for exp, c in self.coeffs.items():
            exp = tuple(int(v) for v in exp)
            if len(exp) != 3 or min(exp) < 0:
                raise InputError(f"bad exponent {exp}")
            if sum(exp) != self.degree:
                raise InputError(
                    f"term {exp} has degree {sum(exp)}, polynomial has degree {self.degree}"
                )
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        object.__setattr__(self, "coeffs", {e: c for e, c in clean.items() if c})

    @classmethod
    def zero(cls, degree: int) -> HomogPoly:
        return cls(degree, {})

    @classmethod
    def monomial(cls, exp: Exponent, coeff: int = 1) -> HomogPoly:
        return cls(sum(exp), {tuple(exp): coeff})

    @classmethod
    def linear(cls, a: int, b: int, c: int) -> HomogPoly:
        return cls(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.degree == other.degree and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __add__(self, other: HomogPoly) -> HomogPoly:
        return add(self, other)

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        return add(self, -other)

    def __neg__(self) -> HomogPoly:
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def scale(self, c: int) -> HomogPoly:
        return HomogPoly(self.degree, {e: c * v for e, v in self.coeffs.items()})

    def coefficient_vector(self) -> list[int]:
        """Integer coefficients in the basis order of ``S_degree``."""
        vec = [0] * graded_dim(self.degree)
        for exp, c in self.coeffs.items():
            vec[monomial_index(exp)] = c
        return vec

    @classmethod
    def from_vector(cls, degree: int, vec: Iterable[int]) -> HomogPoly:
        mons = monomials(degree)
        return cls(degree, {tuple(int(v) for v in mons[i]): int(c) for i, c in enumerate(vec) if c})

    def evaluate(self, point, modulus: int | None = None) -> int:
        total = 0
        for (a, b, c), coef in self.coeffs.items():
            if modulus is None:
                total += coef * point[0] ** a * point[1] ** b * point[2] ** c
            else:
                total += coef * pow(point[0], a, modulus) * pow(point[1], b, modulus) * pow(point[2], c, modulus)
        return total if modulus is None else total % modulus

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"HomogPoly({self.degree}, {format_poly(self)!r})"


def _format_monomial(exp: Exponent) -> str:
    parts = []
    for name, e in zip(VARIABLES, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: HomogPoly) -> str:
    """Text form accepted back by :func:`parse_poly`."""
    if f.is_zero():
        return "0"
    out = []
    for i, (exp, c) in enumerate(f.coeffs.items()):
        mono = _format_monomial(exp)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def add(g: HomogPoly, h: HomogPoly) -> HomogPoly:
    if g.degree != h.degree:
        raise InputError(f"cannot add forms of degrees {g.degree} and {h.degree}")
    coeffs = dict(g.coeffs)
    for exp, c in h.coeffs.items():
        coeffs[exp] = coeffs.get(exp, 0) + c
    return HomogPoly(g.degree, coeffs)


def multiply(g: HomogPoly, h: HomogPoly) -> HomogPoly:
    coeffs: dict[Exponent, int] = {}
    for e1, c1 in g.coeffs.items():
        for e2, c2 in h.coeffs.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            coeffs[e] = coeffs.get(e, 0) + c1 * c2
    return HomogPoly(g.degree + h.degree, coeffs)


def product(factors: Iterable[HomogPoly]) -> HomogPoly:
    result = HomogPoly(0, {(0, 0, 0): 1})
    for f in factors:
        result = multiply(result, f)
    return result


def power(g: HomogPoly, n: int) -> HomogPoly:
    return product([g] * n)


def partials(f: HomogPoly) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
    """The three first partial derivatives ``(f_x, f_y, f_z)``."""
    if f.degree < 1:
        raise InputError("partial derivatives need degree >= 1")
    out = []
    for v in range(3):
        coeffs = {}
        for exp, c in f.coeffs.items():
            if exp[v]:
                e = list(exp)
                e[v] -= 1
                coeffs[tuple(e)] = c * exp[v]
        out.append(HomogPoly(f.degree - 1, coeffs))
    return tuple(out)


def euler_defect(f: HomogPoly) -> HomogPoly:
    """``x f_x + y f_y + z f_z - d f``; identically zero for every form."""
    fx, fy, fz = partials(f)
    x, y, z = (HomogPoly.monomial(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    return x * fx + y * fy + z * fz - f.scale(f.degree)


def reduce_mod(f: HomogPoly, p: int) -> HomogPoly:
    return HomogPoly(f.degree, {e: c % p for e, c in f.coeffs.items()})


def restrict_to_line(f: HomogPoly, base, direction, p: int) -> list[int]:
    """Coefficients (constant term first) of ``t -> f(base + t*direction) mod p``."""
    d = f.degree
    # powers of each coordinate's linear polynomial base_i + t*direction_i
    lin_pows = []
    for i in range(3):
        pows = [[1]]
        for _ in range(d):
            prev = pows[-1]
            nxt = [0] * (len(prev) + 1)
            for j, c in enumerate(prev):
                nxt[j] = (nxt[j] + c * base[i]) % p
                nxt[j + 1] = (nxt[j + 1] + c * direction[i]) % p
            pows.append(nxt)
        lin_pows.append(pows)
    out = [0] * (d + 1)
    for (a, b, c), coef in f.coeffs.items():
        term = [coef % p]
        for i, e in enumerate((a, b, c)):
            term = _conv_mod(term, lin_pows[i][e], p)
        for j, v in enumerate(term):
            out[j] = (out[j] + v) % p
    return out


def _conv_mod(u: list[int], v: list[int], p: int) -> list[int]:
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % p
    return out


def reduced_check(
    f: HomogPoly, trials: int = 3, p: int = 2_147_483_647, seed: int | None = None
) -> bool:
    """Probabilistic test that ``f`` has no repeated factor.

    Restricts ``f`` to ``trials`` random lines; a reduced curve meets a
    generic line in ``d`` distinct points, so any full-degree restriction
    with a repeated root proves ``f`` is not reduced.
    """
    if f.degree < 1:
        raise InputError("reducedness needs degree >= 1")
    rng = random.Random(seed)
    for _ in range(trials):
        base = [rng.randrange(p) for _ in range(3)]
        direction = [rng.randrange(p) for _ in range(3)]
        coeffs = restrict_to_line(f, base, direction, p)
        if coeffs[-1] == 0:
            continue
        dense = gf_strip([ZZ(c) for c in reversed(coeffs)])
        if not gf_sqf_p(dense, p, ZZ):
            return False
    return True


# ---------------------------------------------------------------------------
# parser


class ParseError(InputError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class _Parser:
    # expressions are expanded into plain dicts; homogeneity is checked at the end

    def __init__(self, text: str):
        self.data = text.encode("utf-8")
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.data) and self.data[self.pos] in b" \t\r\n":
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return chr(self.data[self.pos]) if self.pos < len(self.data) else ""

    def _uint(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.data) and chr(self.data[self.pos]).isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an unsigned integer", start)
        return int(self.data[start : self.pos])

    def parse(self) -> dict[Exponent, int]:
        result = self.expr()
        self._skip()
        if self.pos != len(self.data):
            raise ParseError(f"unexpected character {chr(self.data[self.pos])!r}", self.pos)
        return result

    def expr(self) -> dict[Exponent, int]:
        sign = 1
        if self._peek() == "-":
            self.pos += 1
            sign = -1
        elif self._peek() == "+":
            self.pos += 1
        total = _scale(self.term(), sign)
        while self._peek() in ("+", "-"):
            sign = 1 if self._peek() == "+" else -1
            self.pos += 1
            total = _add(total, _scale(self.term(), sign))
        return total

    def term(self) -> dict[Exponent, int]:
        self._skip()
        start = self.pos
        value: dict[Exponent, int] = {(0, 0, 0): 1}
        seen = False
        if self._peek().isdigit():
            value = {(0, 0, 0): self._uint()}
            seen = True
        while True:
            ch = self._peek()
            if ch == "*":
                if not seen:
                    raise ParseError("'*' without a left operand", self.pos)
                self.pos += 1
                ch = self._peek()
                if ch not in ("x", "y", "z", "("):
                    raise ParseError("expected a variable or '(' after '*'", self.pos)
            if ch in ("x", "y", "z", "("):
                value = _mul(value, self.factor())
                seen = True
            else:
                break
        if not seen:
            raise ParseError("expected a term", start)
        return value

    def factor(self) -> dict[Exponent, int]:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            if self._peek() == "^":
                self.pos += 1
                return _pow(inner, self._uint())
            return inner
        self.pos += 1
        exp = 1
        if self._peek() == "^":
            self.pos += 1
            exp = self._uint()
        e = [0, 0, 0]
        e[VARIABLES.index(ch)] = exp
        return {tuple(e): 1}


def _scale(p: dict, c: int) -> dict:
    return {e: c * v for e, v in p.items()}


def _add(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, v in q.items():
        out[e] = out.get(e, 0) + v
    return {e: v for e, v in out.items() if v}


def _mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = out.get(e, 0) + c1 * c2
    return {e: v for e, v in out.items() if v}


def _pow(p: dict, n: int) -> dict:
    out: dict = {(0, 0, 0): 1}
    for _ in range(n):
        out = _mul(out, p)
    return out


def parse_poly(text: str) -> HomogPoly:
    """Parse a homogeneous polynomial such as ``"y^4 - x*z^3"``.

    Raises :class:`ParseError` on syntax errors and :class:`InputError` for
    non-homogeneous or zero input.
    """
    coeffs = _Parser(text).parse()
    coeffs = {e: c for e, c in coeffs.items() if c}
    if not coeffs:
        raise InputError("the zero polynomial does not define a curve")
    degrees: dict[int, Exponent] = {}
    for exp in coeffs:
        degrees.setdefault(sum(exp), exp)
    if len(degrees) > 1:
        (d1, e1), (d2, e2) = sorted(degrees.items())[:2]
        raise InputError(
            f"non-homogeneous input: term {_format_monomial(e1) or '1'} has degree {d1}, "
            f"term {_format_monomial(e2) or '1'} has degree {d2}"
        )
    return HomogPoly(next(iter(degrees)), coeffs)
