"""Characteristic polynomials of a foliation and exact forest counts.

For a foliation over H, the Laurent polynomial P(z) is the determinant of
the generalized Laplacian of H with diagonal entries

    x_i(z) = 2 k_i + d_i + 1 - sum_j (z^{s_ij} + z^{-s_ij}),

and Q(w) is the same determinant written in w = (z + 1/z)/2, using
z^k + z^-k = 2 T_k(w). The number of rooted spanning forests of the
foliation on n layers is

    f(n) = prod_{j=0}^{n-1} P(e^{2 pi i j/n}) = |Res(z^n - 1, z^s P(z))|.

Q and F(z) = z^s P(z) are computed by two independent polynomial-matrix
determinants and cross-checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import IntegerPolynomial, chebyshev_T, det_exact, poly_eval, poly_matrix_det, resultant
from .errors import InvariantViolation, PrecisionInsufficient, StructureViolation
from .model import FoliationSpec, expand, laplacian

_SAMPLE_POINTS = (Fraction(2), Fraction(-3), Fraction(1, 3), Fraction(5, 7), Fraction(-7, 2))


@dataclass(frozen=True)
class CharPolyBundle:
    q: IntegerPolynomial
    f_z: IntegerPolynomial
    shift: int
    eta: int
    m: int
    m_prime: int

    @property
    def sign(self) -> int:
        """Sign of the leading coefficients of Q and F."""
        return -1 if (self.m - self.m_prime) % 2 else 1

    @property
    def base_count(self) -> int:
        return poly_eval(self.q, 1)


@dataclass(frozen=True)
class ForestCountReport:
    n: int
    f_n: int
    f_base: int
    method: str  # "resultant" | "oracle" | "chebyshev-float"
    formal: bool = False


def _generalized_laplacian(spec: FoliationSpec, diagonal) -> list[list]:
    m = spec.vertex_count
    return [
        [diagonal[i] if i == j else -spec.base[i, j] for j in range(m)]
        for i in range(m)
    ]


def q_matrix(spec: FoliationSpec) -> list[list[IntegerPolynomial]]:
    """The m x m matrix L(H, W) whose determinant is Q(w)."""
    diag = []
    for fiber, d in zip(spec.fibers, spec.base.degrees):
        jumps = fiber.effective_jumps()
        entry = IntegerPolynomial([2 * len(jumps) + d + 1])
        for s in jumps:
            entry = entry - chebyshev_T(s) * 2
        diag.append(entry)
    return _generalized_laplacian(spec, diag)


def f_matrix(spec: FoliationSpec) -> list[list[IntegerPolynomial]]:
    """L(H, X) with row i multiplied by z^{s_i}; its determinant is z^s P(z)."""
    m = spec.vertex_count
    degrees = spec.base.degrees
    rows = []
    for i, fiber in enumerate(spec.fibers):
        top = fiber.max_jump
        jumps = fiber.effective_jumps()
        diag = IntegerPolynomial.monomial(top, 2 * len(jumps) + degrees[i] + 1)
        for s in jumps:
            diag = diag - IntegerPolynomial.monomial(top + s) - IntegerPolynomial.monomial(top - s)
        rows.append([
            diag if i == j else IntegerPolynomial.monomial(top, -spec.base[i, j])
            for j in range(m)
        ])
    return rows


def eta(spec: FoliationSpec) -> int:
    """Absolute leading coefficient of P(z).

    Determinant of the generalized Laplacian of the subgraph induced on the
    empty-fiber vertices, with diagonal d_j + 1 taken from degrees in H.
    """
    empty = spec.empty_vertices
    if not empty:
        return 1
    degrees = spec.base.degrees
    sub = spec.base.induced(empty)
    mat = [
        [degrees[v] + 1 if a == b else -sub[a][b] for b in range(len(empty))]
        for a, v in enumerate(empty)
    ]
    return det_exact(mat)


def base_forest_count(spec: FoliationSpec) -> int:
    """f(H) = det(I + L(H))."""
    degrees = spec.base.degrees
    return det_exact(_generalized_laplacian(spec, [d + 1 for d in degrees]))


def q_at_minus_one(spec: FoliationSpec) -> int:
    """Q(-1) from the integer matrix with diagonal d_i + 4 t_i + 1.

    t_i counts odd jumps, since T_s(-1) = (-1)^s.
    """
    diag = [d + 4 * f.odd_count + 1 for f, d in zip(spec.fibers, spec.base.degrees)]
    return det_exact(_generalized_laplacian(spec, diag))


def _check(cond: bool, message: str):
    if not cond:
        raise InvariantViolation(message)


@lru_cache(maxsize=256)
def char_poly(spec: FoliationSpec) -> CharPolyBundle:
    s = spec.shift
    q = poly_matrix_det(q_matrix(spec), s)
    f_z = poly_matrix_det(f_matrix(spec), 2 * s)
    e = eta(spec)
    m = spec.vertex_count
    bundle = CharPolyBundle(q, f_z, s, e, m, len(spec.empty_vertices))

    sign = bundle.sign
    _check(q.degree == s, f"deg Q = {q.degree}, expected {s}")
    _check(q.leading == sign * 2**s * e, "leading coefficient of Q disagrees with 2^s * eta")
    _check(f_z.degree == 2 * s, f"deg F = {f_z.degree}, expected {2 * s}")
    _check(f_z.leading == sign * e, "leading coefficient of F disagrees with eta")
    _check(f_z.is_palindromic(2 * s), "F(z) is not palindromic")
    for z in _SAMPLE_POINTS:
        lhs = poly_eval(f_z, z)
        rhs = z**s * poly_eval(q, (z + 1 / z) / 2)
        _check(lhs == rhs, f"F(z) != z^s Q((z+1/z)/2) at z={z}")
    q1 = poly_eval(q, 1)
    _check(q1 == base_forest_count(spec), "Q(1) != det(I + L(H))")
    qm1 = poly_eval(q, -1)
    _check(qm1 == q_at_minus_one(spec), "Q(-1) disagrees with its integer-matrix form")
    _check(q1 > 0 and qm1 > 0, "Q(1) and Q(-1) must be positive")
    return bundle


def forest_count(spec: FoliationSpec, n: int) -> ForestCountReport:
    """Exact f(n) = |Res(z^n - 1, F(z))|.

    Defined for every n >= 1; the report is flagged ``formal`` when n is too
    small for the jumps to describe a simple circulant graph.
    """
    if n < 1:
        raise ValueError("n must be positive")
    bundle = char_poly(spec)
    f_n = abs(resultant(IntegerPolynomial.monomial(n) - 1, bundle.f_z))
    f_base = bundle.base_count
    if f_n < 1 or f_n % f_base:
        raise StructureViolation(f"f({n}) = {f_n} is not a positive multiple of f(H) = {f_base}")
    return ForestCountReport(n, f_n, f_base, "resultant", not spec.is_valid_n(n))


def forest_count_oracle(spec: FoliationSpec, n: int) -> ForestCountReport:
    """det(I + L) of the explicitly expanded graph."""
    lap = laplacian(expand(spec, n))
    for i, row in enumerate(lap):
        row[i] += 1
    return ForestCountReport(n, det_exact(lap), base_forest_count(spec), "oracle")


@dataclass(frozen=True)
class ChebyshevEstimate:
    n: int
    value: object  # mpmath.mpf
    error: object  # mpmath.mpf
    f_n: int
    precision: int

    def report(self, f_base: int) -> ForestCountReport:
        return ForestCountReport(self.n, self.f_n, f_base, "chebyshev-float")


def _chebyshev_product(bundle: CharPolyBundle, n: int, precision: int):
    import mpmath as mp

    from .asymptotics import outer_z, q_roots

    roots = q_roots(bundle, precision)
    with mp.workdps(precision + 10):
        value = mp.mpf(bundle.eta) ** n
        for w in roots.roots:
            z = outer_z(w)
            value *= abs(z**n + z**-n - 2)
        return +value


def forest_count_chebyshev(spec: FoliationSpec, n: int, precision: int = 30) -> ChebyshevEstimate:
    """Floating f(n) = eta^n prod_p |2 T_n(w_p) - 2| over the roots of Q.

    The error bound comes from repeating the whole computation (roots
    included) with 10 more digits. Raises PrecisionInsufficient unless the
    resulting interval isolates a single positive integer.
    """
    import mpmath as mp

    bundle = char_poly(spec)
    coarse = _chebyshev_product(bundle, n, precision)
    fine = _chebyshev_product(bundle, n, precision + 10)
    with mp.workdps(precision + 20):
        err = 2 * abs(fine - coarse) + abs(fine) * mp.mpf(10) ** (2 - precision)
        lo, hi = int(mp.ceil(fine - err)), int(mp.floor(fine + err))
    if lo <= 0 or hi != lo:
        raise PrecisionInsufficient(
            f"f({n}) ~ {mp.nstr(fine, 15)} +- {mp.nstr(err, 3)} does not isolate one positive "
            f"integer; raise the precision above {precision} digits"
        )
    return ChebyshevEstimate(n, fine, err, lo, precision)
