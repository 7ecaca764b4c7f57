"""Shared fixtures and independent oracles.

The oracles deliberately avoid the library's own code paths: discriminants
and factorizations come from sympy, traces from exact symbolic root sums,
representation facts from brute-force searches.
"""

import itertools
import random

import pytest
import sympy
from hypothesis import strategies as st

from cubictrace.cforms import CubicForm
from cubictrace.qforms import QuadraticForm

X = sympy.symbols("x")


# ---------------------------------------------------------------------------
# sympy oracles


def oracle_cubic_disc(a, b, c, d):
    """Discriminant of ax^3+bx^2y+cxy^2+dy^3 via the univariate resultant."""
    assert a != 0
    return int(sympy.discriminant(a * X**3 + b * X**2 + c * X + d, X))


def oracle_quadratic_disc(a, b, c):
    return b * b - 4 * a * c


def oracle_is_irreducible(a, b, c, d):
    """No rational root and no linear factor in y (i.e. a != 0 path)."""
    poly = sympy.Poly(a * X**3 + b * X**2 + c * X + d, X)
    fl = poly.factor_list()[1]
    return all(f.degree() == 3 for f, _ in fl) and a != 0


def oracle_shape_mod_p(a, b, c, d, p):
    """Factorization shape of the binary cubic mod p, point at infinity
    included as a factor y of multiplicity 3 - deg(F(x,1) mod p)."""
    poly = sympy.Poly(a * X**3 + b * X**2 + c * X + d, X, modulus=p, symmetric=False)
    if poly.is_zero:
        raise ValueError("form vanishes mod p")
    shape = []
    deg = 0
    for f, m in poly.factor_list()[1]:
        shape.append((f.degree(), m))
        deg += f.degree() * m
    if deg < 3:
        shape.append((1, 3 - deg))
    return tuple(sorted(shape))


def oracle_trace(f: CubicForm, coeffs):
    """tr(g(theta)) for g = c0 + c1*t + c2*t^2, theta a root of F(x,1),
    as an exact rational via a symbolic sum over all three roots."""
    a, b, c, d = f.coeffs()
    c0, c1, c2 = [sympy.Rational(x) for x in coeffs]
    g = sympy.Lambda(X, c0 + c1 * X + c2 * X**2)
    val = sympy.RootSum(a * X**3 + b * X**2 + c * X + d, g)
    return sympy.Rational(sympy.nsimplify(sympy.simplify(val)))


# ---------------------------------------------------------------------------
# brute-force oracles


def represents(q: QuadraticForm, v: int, box: int) -> bool:
    return any(
        q(x, y) == v
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
        if (x, y) != (0, 0)
    )


def unimodular_matrices(bound: int):
    """All 2x2 integer matrices with entries in [-bound, bound], det +-1."""
    rng = range(-bound, bound + 1)
    for r, s, t, u in itertools.product(rng, rng, rng, rng):
        if r * u - s * t in (1, -1):
            yield ((r, s), (t, u))


def brute_cubics(abound, bbound, cbound, dbound):
    for a in range(1, abound + 1):
        for b in range(-bbound, bbound + 1):
            for c in range(-cbound, cbound + 1):
                for d in range(-dbound, dbound + 1):
                    if d != 0:
                        yield (a, b, c, d)


# ---------------------------------------------------------------------------
# hypothesis strategies


def random_unimodular(draw_ints):
    """Build a unimodular matrix as a word in the elementary generators."""
    m = ((1, 0), (0, 1))
    for k, lower in draw_ints:
        g = ((1, 0), (k, 1)) if lower else ((1, k), (0, 1))
        m = (
            (m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]),
            (m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]),
        )
    return m


unimodular_st = st.lists(
    st.tuples(st.integers(-4, 4), st.booleans()), min_size=0, max_size=5
).map(random_unimodular)

small_cubic_st = st.tuples(
    st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9)
).filter(lambda t: t[0] != 0)


def irreducible_cubics_st():
    return small_cubic_st.filter(
        lambda t: oracle_cubic_disc(*t) != 0 and oracle_is_irreducible(*t)
    ).map(lambda t: CubicForm(*t))


# ---------------------------------------------------------------------------
# fixtures


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260818)


@pytest.fixture(scope="session")
def small_field_corpus():
    """Every field representative with fundamental |d| <= 600, both signs."""
    from cubictrace.cforms import fields_by_discriminant

    corpus = {}
    corpus.update(fields_by_discriminant(-600, -1))
    corpus.update(fields_by_discriminant(1, 1500))
    return corpus
