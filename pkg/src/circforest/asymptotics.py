"""Growth constant of f(n): the Mahler measure of P(z).

Two independent routes:

* roots: A = eta * prod |z_j| over the roots w_j of Q, with z_j the
  solution of w = (z + 1/z)/2 outside the unit circle;
* quadrature: A = exp(int_0^1 log|Q(cos 2 pi t)| dt), by the periodic
  trapezoid rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .algebra import IntegerPolynomial
from .engine import CharPolyBundle, char_poly, forest_count
from .errors import (
    ConvergenceFailure,
    InvariantViolation,
    QuadratureNonconvergence,
    UnitCircleRoot,
)
from .model import FoliationSpec

DEFAULT_PRECISION = 30
UNIT_CIRCLE_GAP = 1e-6
MAX_ABERTH_ITERATIONS = 500
MAX_QUADRATURE_NODES = 2**16


@dataclass(frozen=True)
class RootSet:
    """Roots of Q with multiplicity, ordered by real then imaginary part."""

    roots: tuple
    certified_error: tuple
    multiplicities: tuple
    precision: int

    def __len__(self):
        return len(self.roots)


@dataclass(frozen=True)
class MahlerReport:
    a_roots: object
    a_quadrature: object
    discrepancy: object
    error_roots: object
    error_quadrature: object
    roots_used: RootSet

    @property
    def combined_error(self):
        return self.error_roots + self.error_quadrature


# -- exact square-free decomposition over Q -------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
    return _trim(q), _trim(a)


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return [c / a[-1] for c in a]


def _derivative(p):
    return [k * c for k, c in enumerate(p)][1:]


def _primitive(p) -> IntegerPolynomial:
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    return IntegerPolynomial([c // g for c in ints])


def squarefree_decomposition(q: IntegerPolynomial) -> list[tuple[IntegerPolynomial, int]]:
    """Yun's algorithm: q = c * prod g_i^i with square-free, coprime g_i."""
    f = [Fraction(c) for c in q.coeffs]
    out = []
    if len(f) <= 1:
        return out
    df = _derivative(f)
    a = _gcd(f, df)
    b = _divmod(f, a)[0]
    c = _divmod(df, a)[0]
    d = [x - y for x, y in zip(_pad(c, b), _pad(_derivative(b), c))]
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0]
        d = [x - y for x, y in zip(_pad(c, b), _pad(_derivative(b), c))]
        if len(a) > 1:
            out.append((_primitive(a), i))
        i += 1
    return out


def _pad(p, other):
    n = max(len(p), len(other))
    return list(p) + [Fraction(0)] * (n - len(p))


# -- root finding ---------------------------------------------------------

def _initial_guesses(g: IntegerPolynomial) -> list:
    deg = g.degree
    try:
        with np.errstate(all="raise"):
            guesses = np.roots([float(c) for c in reversed(g.coeffs)])
        if len(guesses) != deg or not np.all(np.isfinite(guesses)):
            raise FloatingPointError
    except (FloatingPointError, OverflowError, np.linalg.LinAlgError):
        radius = 1 + max(abs(Fraction(c, g.leading)) for c in g.coeffs[:-1])
        guesses = [
            complex(mp.mpf(float(radius)) * mp.expj(2 * mp.pi * (k + 0.25) / deg))
            for k in range(deg)
        ]
    out = []
    for k, z in enumerate(guesses):
        z = mp.mpc(complex(z))
        # Aberth needs pairwise distinct starting points
        while any(abs(z - o) < 1e-12 for o in out):
            z += mp.mpc(1e-6, 1e-6 * (k + 1))
        out.append(z)
    return out


def _horner2(coeffs, z):
    p = dp = mp.mpc(0)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(g: IntegerPolynomial, precision: int) -> tuple[list, list]:
    """Simple roots of a square-free integer polynomial with error radii.

    The radius deg(g) * |g(z)/g'(z)| is a classical bound: that disk around
    z contains a root of g.
    """
    deg = g.degree
    with mp.workdps(precision + 10):
        coeffs = [mp.mpf(c) for c in g.coeffs]
        zs = _initial_guesses(g)
        tol = mp.mpf(10) ** -(precision + 5)
        for _ in range(MAX_ABERTH_ITERATIONS):
            biggest = mp.mpf(0)
            for i in range(deg):
                p, dp = _horner2(coeffs, zs[i])
                if p == 0:
                    continue
                ratio = p / dp
                repulsion = mp.fsum(1 / (zs[i] - zs[j]) for j in range(deg) if j != i)
                step = ratio / (1 - ratio * repulsion)
                zs[i] -= step
                biggest = max(biggest, abs(step) / max(1, abs(zs[i])))
            if biggest < tol:
                break
        else:
            raise ConvergenceFailure(f"Aberth iteration did not converge for {g}")
        errors = []
        for z in zs:
            p, dp = _horner2(coeffs, z)
            errors.append(deg * abs(p / dp) if p else mp.mpf(0))
        roots = []
        for z, err in zip(zs, errors):
            floor = mp.mpf(10) ** -(precision + 5) * max(1, abs(z))
            if abs(z.imag) <= max(err, floor):
                z = mp.mpc(z.real, 0)
            roots.append(z)
        return roots, errors


def q_roots(bundle: CharPolyBundle, precision: int = DEFAULT_PRECISION) -> RootSet:
    if bundle.q.degree < 1:
        return RootSet((), (), (), precision)
    found = []
    for factor, mult in squarefree_decomposition(bundle.q):
        if factor.degree < 1:
            continue
        roots, errors = aberth(factor, precision)
        for z, err in zip(roots, errors):
            found.extend([(z, err, mult)] * mult)
    found.sort(key=lambda t: (float(t[0].real), float(t[0].imag)))
    if len(found) != bundle.q.degree:
        raise ConvergenceFailure("root count does not match the degree of Q")
    return RootSet(
        tuple(t[0] for t in found),
        tuple(t[1] for t in found),
        tuple(t[2] for t in found),
        precision,
    )


def outer_z(w):
    """The solution z of w = (z + 1/z)/2 with |z| >= 1."""
    z = w + mp.sqrt(w * w - 1)
    return 1 / z if abs(z) < 1 else z


def _roots_route(bundle: CharPolyBundle, precision: int, roots: RootSet | None):
    if roots is None:
        roots = q_roots(bundle, precision)
    with mp.workdps(precision + 10):
        value = mp.mpf(bundle.eta)
        rel_err = mp.mpf(0)
        for w, err in zip(roots.roots, roots.certified_error):
            z = outer_z(w)
            if abs(abs(z) - 1) <= UNIT_CIRCLE_GAP:
                raise UnitCircleRoot(
                    f"root w={mp.nstr(w, 10)} of Q maps to |z| = {mp.nstr(abs(z), 10)} on the unit circle"
                )
            value *= abs(z)
            rel_err += err / abs(mp.sqrt(w * w - 1))
        return +value, value * rel_err, roots


def mahler_via_roots(bundle: CharPolyBundle, precision: int = DEFAULT_PRECISION, roots: RootSet | None = None):
    return _roots_route(bundle, precision, roots)[0]


def _log_abs_q(coeffs, t_num, t_den):
    x = mp.cos(2 * mp.pi * t_num / t_den)
    return mp.log(abs(poly_eval_mp(coeffs, x)))


def poly_eval_mp(coeffs, x):
    acc = mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _quadrature_route(bundle: CharPolyBundle, precision: int):
    with mp.workdps(precision + 10):
        coeffs = [mp.mpf(c) for c in bundle.q.coeffs]
        if bundle.q.degree < 1:
            return mp.mpf(abs(bundle.q.leading)), mp.mpf(0)
        tol = mp.mpf(10) ** -(precision - 5)
        # integrand is even about t = 1/2, so nodes k and N - k coincide
        n_nodes = 8
        prev = None
        while n_nodes <= MAX_QUADRATURE_NODES:
            half = n_nodes // 2
            total = _log_abs_q(coeffs, 0, n_nodes) + _log_abs_q(coeffs, half, n_nodes)
            total += 2 * mp.fsum(_log_abs_q(coeffs, k, n_nodes) for k in range(1, half))
            estimate = total / n_nodes
            if prev is not None and abs(estimate - prev) < tol / 2:
                value = mp.exp(estimate)
                return +value, value * abs(estimate - prev)
            prev = estimate
            n_nodes *= 2
        raise QuadratureNonconvergence(
            f"trapezoid rule did not settle within {MAX_QUADRATURE_NODES} nodes"
        )


def mahler_via_quadrature(bundle: CharPolyBundle, precision: int = DEFAULT_PRECISION):
    return _quadrature_route(bundle, precision)[0]


def mahler_report(spec_or_bundle, precision: int = DEFAULT_PRECISION) -> MahlerReport:
    bundle = spec_or_bundle if isinstance(spec_or_bundle, CharPolyBundle) else char_poly(spec_or_bundle)
    a_r, err_r, roots = _roots_route(bundle, precision, None)
    a_q, err_q = _quadrature_route(bundle, precision)
    with mp.workdps(precision + 10):
        gap = abs(a_r - a_q)
        # slack covers rounding in the working precision itself
        slack = max(a_r, 1) * mp.mpf(10) ** -(precision - 5)
        if gap > err_r + err_q + slack:
            raise InvariantViolation(
                f"Mahler measure routes disagree: {mp.nstr(a_r, 20)} vs {mp.nstr(a_q, 20)}"
            )
    return MahlerReport(a_r, a_q, gap, err_r, err_q, roots)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    nth_root: object
    ratio: object
    formal: bool


@dataclass(frozen=True)
class ConvergenceReport:
    growth_constant: object
    rows: tuple[ConvergenceRow, ...]

    @property
    def final_deviation(self):
        return abs(self.rows[-1].ratio - 1) if self.rows else None


def nth_root(value: int, n: int, precision: int = DEFAULT_PRECISION):
    with mp.workdps(precision + 10):
        return mp.exp(mp.log(mp.mpf(value)) / n)


def convergence_report(
    spec: FoliationSpec,
    n_max: int,
    n_min: int = 3,
    step: int = 1,
    precision: int = DEFAULT_PRECISION,
) -> ConvergenceReport:
    """Table of f(n)^(1/n) and its ratio to A for n = n_min..n_max."""
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    a = mahler_via_roots(char_poly(spec), precision)
    rows = []
    for n in range(n_min, n_max + 1, step):
        report = forest_count(spec, n)
        root = nth_root(report.f_n, n, precision)
        with mp.workdps(precision + 10):
            rows.append(ConvergenceRow(n, root, root / a, report.formal))
    return ConvergenceReport(a, tuple(rows))
