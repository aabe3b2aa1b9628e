from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from circforest.algebra import (
    IntegerPolynomial,
    chebyshev_T,
    det_exact,
    interpolation_nodes,
    poly_eval,
    poly_matrix_det,
    resultant,
)
from circforest.errors import NonIntegerCoefficient, ZeroPolynomial

from conftest import cofactor_det

P = IntegerPolynomial


class TestPolynomial:
    def test_trailing_zeros_dropped(self):
        assert P([1, 2, 0, 0]).coeffs == (1, 2)
        assert P([0, 0]).is_zero()
        assert P([0]).degree == -1

    def test_arithmetic(self):
        a, b = P([1, 1]), P([-1, 1])
        assert a * b == P([-1, 0, 1])
        assert a + b == P([0, 2])
        assert a - a == P()
        assert a**3 == P([1, 3, 3, 1])
        assert 3 - a == P([2, -1])

    def test_compose(self):
        # (w+1)^2 at w = 2w - 1
        assert (P([1, 1]) ** 2).compose(P([-1, 2])) == P([0, 0, 4])

    def test_format(self):
        assert str(P([208, -336, 180, -32])) == "208 - 336*w + 180*w^2 - 32*w^3"
        assert str(P([0, -1])) == "-w"


class TestDet:
    @pytest.mark.parametrize(
        "mat, expected",
        [
            ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1),
            ([[2, 1], [1, 2]], 3),
            ([[3, -1, -1], [-1, 3, -1], [-1, -1, 3]], 16),
            ([], 1),
            ([[0, 1], [1, 0]], -1),
            ([[1, 2], [2, 4]], 0),
        ],
    )
    def test_examples(self, mat, expected):
        assert det_exact(mat) == expected

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
    ))
    def test_matches_cofactor_expansion(self, mat):
        assert det_exact(mat) == cofactor_det(mat)

    def test_big_entries(self):
        mat = [[10**30 + i * j for j in range(6)] for i in range(6)]
        mat[0][0] += 7
        assert det_exact(mat) == sympy.Matrix(mat).det()


class TestChebyshev:
    def test_small(self):
        assert chebyshev_T(0) == P([1])
        assert chebyshev_T(1) == P([0, 1])
        assert chebyshev_T(3) == P([0, -3, 0, 4])

    @pytest.mark.parametrize("k", range(1, 12))
    def test_leading_coefficient(self, k):
        t = chebyshev_T(k)
        assert t.degree == k
        assert t.leading == 2 ** (k - 1)

    @pytest.mark.parametrize("a", range(6))
    @pytest.mark.parametrize("b", range(6))
    def test_composition(self, a, b):
        assert chebyshev_T(a).compose(chebyshev_T(b)) == chebyshev_T(a * b)

    @pytest.mark.parametrize("k", range(8))
    @pytest.mark.parametrize("z", [Fraction(2), Fraction(-3, 5), Fraction(7, 2), Fraction(1, 9)])
    def test_laurent_identity(self, k, z):
        assert 2 * poly_eval(chebyshev_T(k), (z + 1 / z) / 2) == z**k + z**-k

    def test_cosine_definition(self):
        for k in range(10):
            x = np.linspace(-1, 1, 7)
            assert np.allclose(poly_eval(chebyshev_T(k), x), np.cos(k * np.arccos(x)))


class TestPolyEval:
    def test_examples(self):
        assert poly_eval(P([3, -2]), 1) == 1
        assert poly_eval(P([208, -336, 180, -32]), -1) == 756
        assert poly_eval(chebyshev_T(4), Fraction(3, 2)) == Fraction(47, 2)

    def test_complex(self):
        assert poly_eval(P([1, 0, 1]), 1j) == 0


class TestPolyMatrixDet:
    def test_examples(self):
        x = P([3, -2])
        assert poly_matrix_det([[x]], 1) == x
        assert poly_matrix_det([[x, -1], [-1, x]], 2) == x * x - 1

    def test_y_graph_matrix(self):
        a = P([4]) - chebyshev_T(1) * 2
        mat = [[a, 0, 0, -1], [0, a, 0, -1], [0, 0, a, -1], [-1, -1, -1, P([4])]]
        assert poly_matrix_det(mat, 3) == P([208, -336, 180, -32])

    def test_node_independence(self):
        a, b = P([5, -1, 2]), P([1, 0, -3])
        mat = [[a, b, 1], [b, a * b, P([0, 1])], [1, 2, a]]
        default = poly_matrix_det(mat, 9)
        shifted = poly_matrix_det(mat, 9, nodes=range(100, 110))
        assert default == shifted
        w = sympy.symbols("w")
        sym = sympy.Matrix([[sympy.Poly(list(reversed(e.coeffs)) if isinstance(e, P) else [e], w).as_expr()
                             for e in row] for row in mat]).det()
        assert default == P(reversed(sympy.Poly(sympy.expand(sym), w).all_coeffs()))

    @pytest.mark.parametrize("nodes", [None, [1, 2, 4]])
    def test_degree_bound_violation(self, nodes):
        x = P([1, 1, 1]) * P([0, 0, 0, 1])
        with pytest.raises(NonIntegerCoefficient):
            poly_matrix_det([[x]], 2, nodes=nodes)

    def test_nodes(self):
        assert interpolation_nodes(5) == [0, 1, -1, 2, -2]


class TestResultant:
    def test_examples(self):
        assert resultant(P([-1, 0, 1]), P([-2, 1])) == 3
        assert resultant(P([1, 1]), P([0, 0, 0, 1])) == -1
        assert resultant(P([2, 1]), P([1, 0, 0, 1])) == -7
        assert resultant(P([-1, 0, 0, 1]), P([0, 1])) == 1
        # product of (e^2 - 3e + 1) over fifth roots of unity, computed numerically: -121
        assert resultant(P([-1, 0, 0, 0, 0, 1]), P([1, -3, 1])) == -121

    def test_zero(self):
        with pytest.raises(ZeroPolynomial):
            resultant(P(), P([1]))

    def test_constant(self):
        assert resultant(P([-1, 0, 0, 1]), P([5])) == 125

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.integers(-5, 5), min_size=2, max_size=6).filter(lambda c: c[-1] != 0),
        st.lists(st.integers(-5, 5), min_size=1, max_size=5).filter(lambda c: c[-1] != 0),
    )
    def test_antisymmetry_and_definition(self, f, g):
        f, g = P(f), P(g)
        swap = (-1) ** (f.degree * g.degree)
        assert resultant(f, g) == swap * resultant(g, f)
        # definition: lc(f)^deg(g) * prod g(a) over the roots a of f
        with mpmath.workdps(50):
            roots = mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=200, extraprec=100)
            value = f.leading ** g.degree * mpmath.fprod(poly_eval(g, a) for a in roots)
        assert abs(resultant(f, g) - value) < 1e-20
        # sympy 1.14 has sign slips for some odd degree pairs, so only magnitudes are compared
        x = sympy.symbols("x")
        fs = sympy.Poly(list(reversed(f.coeffs)), x)
        gs = sympy.Poly(list(reversed(g.coeffs)), x)
        if g.degree > 0:
            assert abs(resultant(f, g)) == abs(sympy.resultant(fs, gs))

    def test_root_product(self):
        f = P([-1, 0, 0, 0, 0, 0, 0, 1])
        g = P([2, -7, 3, 1])
        roots = np.exp(2j * np.pi * np.arange(7) / 7)
        expected = np.prod([poly_eval(g, r) for r in roots])
        assert resultant(f, g) == round(expected.real)
