"""Exact integer linear algebra and dense integer polynomials.

Everything here works over Python ints (and ``fractions.Fraction`` for
interpolation), so results are exact regardless of size.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import count
from typing import Iterable, Sequence

from .errors import NonIntegerCoefficient, ZeroPolynomial


@dataclass(frozen=True)
class IntegerPolynomial:
    """Dense polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, c: int) -> IntegerPolynomial:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntegerPolynomial:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self), len(other))
        return IntegerPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntegerPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerPolynomial(other * c for c in self.coeffs)
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntegerPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = IntegerPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        return poly_eval(self, x)

    def compose(self, inner: IntegerPolynomial) -> IntegerPolynomial:
        """Return ``self(inner(w))``."""
        result = IntegerPolynomial()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def shift(self, k: int) -> IntegerPolynomial:
        """Multiply by ``w**k``."""
        if self.is_zero():
            return self
        return IntegerPolynomial([0] * k + list(self.coeffs))

    def reversed(self, degree: int | None = None) -> IntegerPolynomial:
        d = self.degree if degree is None else degree
        return IntegerPolynomial(self[d - k] for k in range(d + 1))

    def derivative(self) -> IntegerPolynomial:
        return IntegerPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def is_palindromic(self, degree: int | None = None) -> bool:
        d = self.degree if degree is None else degree
        return all(self[k] == self[d - k] for k in range(d + 1))

    def __repr__(self):
        return f"IntegerPolynomial({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self)


def _coerce(p) -> IntegerPolynomial:
    if isinstance(p, IntegerPolynomial):
        return p
    if isinstance(p, int):
        return IntegerPolynomial([p])
    raise TypeError(f"cannot use {type(p).__name__} as an integer polynomial")


def format_poly(p: IntegerPolynomial, var: str = "w") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            term = str(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            term = power if mag == 1 else f"{mag}*{power}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def poly_eval(p: IntegerPolynomial, x):
    """Horner evaluation; exact for int/Fraction input, otherwise numeric.

    Works for any type supporting ``*`` and ``+`` with ints (complex,
    mpmath numbers, numpy arrays).
    """
    acc = 0 * x
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def chebyshev_T(k: int) -> IntegerPolynomial:
    """Chebyshev polynomial of the first kind, T_k(w) = cos(k arccos w)."""
    if k < 0:
        raise ValueError("Chebyshev index must be non-negative")
    if k == 0:
        return IntegerPolynomial([1])
    if k == 1:
        return IntegerPolynomial([0, 1])
    prev, cur = chebyshev_T(k - 2), chebyshev_T(k - 1)
    return cur.shift(1) * 2 - prev


def det_exact(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination.

    Every division is exact, so intermediate entries stay integral and are
    bounded by minors of the input. Order 0 returns 1.
    """
    n = len(mat)
    a = [list(map(int, row)) for row in mat]
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            factor = row_i[k]
            if factor == 0:
                if pivot != prev:
                    for j in range(k + 1, n):
                        if row_i[j]:
                            row_i[j] = row_i[j] * pivot // prev
            else:
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def interpolation_nodes(count_: int) -> list[int]:
    """Symmetric integer nodes 0, 1, -1, 2, -2, ..."""
    nodes = [0]
    for k in count(1):
        if len(nodes) >= count_:
            break
        nodes.append(k)
        if len(nodes) >= count_:
            break
        nodes.append(-k)
    return nodes[:count_]


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Monomial coefficients (lowest first) of the interpolant through (xs, ys)."""
    n = len(xs)
    # Newton divided differences
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    # expand the Newton form from the innermost term outwards
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (w - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[i]
    return coeffs


def poly_matrix_det(
    mat: Sequence[Sequence[IntegerPolynomial]],
    degree_bound: int,
    nodes: Sequence[int] | None = None,
) -> IntegerPolynomial:
    """Determinant of a matrix of integer polynomials.

    Evaluates at ``degree_bound + 1`` integer nodes, takes exact integer
    determinants and interpolates over the rationals. One extra node checks
    the interpolant: an integer polynomial interpolated at integer nodes
    stays integral even when the degree bound is too small, so integrality
    alone does not detect a bad bound.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    if nodes is None:
        nodes = interpolation_nodes(degree_bound + 2)
        nodes, check = nodes[:-1], nodes[-1]
    else:
        nodes = list(nodes)
        check = max(nodes) + 1
    if len(nodes) != degree_bound + 1 or len(set(nodes)) != len(nodes):
        raise ValueError("need degree_bound + 1 distinct nodes")

    def det_at(x):
        return det_exact([[poly_eval(_coerce(e), x) for e in row] for row in mat])

    coeffs = interpolate(nodes, [det_at(x) for x in nodes])
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegerCoefficient("interpolated determinant has non-integer coefficients")
    result = IntegerPolynomial(int(c) for c in coeffs)
    if poly_eval(result, check) != det_at(check):
        raise NonIntegerCoefficient(
            f"determinant does not fit degree bound {degree_bound} (check node {check})"
        )
    return result


def sylvester_matrix(f: IntegerPolynomial, g: IntegerPolynomial) -> list[list[int]]:
    """Sylvester matrix with deg(g) shifted rows of f followed by deg(f) rows of g."""
    m, n = f.degree, g.degree
    size = m + n
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def resultant(f: IntegerPolynomial, g: IntegerPolynomial) -> int:
    """Res(f, g) = lc(f)**deg(g) * prod g(a) over the roots a of f."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    return det_exact(sylvester_matrix(f, g))
