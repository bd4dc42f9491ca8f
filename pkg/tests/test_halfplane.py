"""Modular reduction, shortest vectors, and the two capacity evaluation paths."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from growthcap import (
    PHI,
    ModularMatrix,
    Surd,
    UpperHalfPoint,
    growth_capacity,
    growth_capacity_direct,
    mobius_apply,
    reduce_to_fundamental,
    shortest_vector_sq,
    tangent_circle,
)

from conftest import NAMED_X


def naive_shortest_sq(w, window=8):
    """Brute-force shortest vector over |alpha|, |beta| <= window.

    For Re in [-1/2, 1/2] and Im >= 0.05 the window provably contains a
    minimizer: d^2 <= (2/sqrt(3)) * Im bounds |beta| <= 4.9 and |alpha| < 4.
    """
    x, y = w.x, w.y
    y2 = y * y
    best = None
    for beta in range(-window, window + 1):
        for alpha in range(-window, window + 1):
            if alpha == 0 and beta == 0:
                continue
            u = alpha + beta * x
            q = u * u + beta * beta * y2
            if best is None or q < best:
                best = q
    return best


def word_matrix(rng, max_len=12):
    g = ModularMatrix.identity()
    for _ in range(rng.randint(0, max_len)):
        if rng.random() < 0.5:
            g = g @ ModularMatrix.S()
        else:
            g = g @ ModularMatrix.T(rng.choice([-2, -1, 1, 2]))
    return g


# -- matrices -------------------------------------------------------------------


def test_matrix_det_must_be_one():
    with pytest.raises(ValueError, match="determinant must be 1"):
        ModularMatrix(1, 0, 0, 2)
    with pytest.raises(ValueError, match="determinant must be 1"):
        ModularMatrix(1, 0, 0, -1)


def test_matrix_sign_canonicalization():
    assert ModularMatrix(-1, 0, 0, -1) == ModularMatrix.identity()
    g = ModularMatrix(0, 1, -1, 0)
    assert (g.a, g.b, g.c, g.d) == (0, -1, 1, 0)


def test_matrix_inverse_round_trip():
    rng = random.Random(7)
    for _ in range(100):
        g = word_matrix(rng)
        assert g @ g.inverse() == ModularMatrix.identity()
        assert g.inverse() @ g == ModularMatrix.identity()


def test_cusp_of_matrix():
    assert ModularMatrix.S().cusp() == Fraction(0)
    assert ModularMatrix.T(3).cusp() is None
    g = ModularMatrix(3, -5, 2, -3)
    assert g.cusp() == Fraction(3, 2)


# -- Mobius action ----------------------------------------------------------------


def test_mobius_on_exact_points():
    w = UpperHalfPoint(Fraction(1, 2), Fraction(1, 4))
    s = mobius_apply(ModularMatrix.S(), w)
    # -1/w for w = (2+i)/4: |w|^2 = 5/16
    assert s.x == Fraction(-8, 5) and s.y == Fraction(4, 5)
    t = mobius_apply(ModularMatrix.T(-2), w)
    assert t.x == Fraction(-3, 2) and t.y == Fraction(1, 4)


def test_mobius_fixed_point_of_s():
    w = UpperHalfPoint(0, 1)
    s = mobius_apply(ModularMatrix.S(), w)
    assert s.x == 0 and s.y == 1


def test_mobius_boundary_rationals():
    g = ModularMatrix(1, 1, 1, 2)  # sends -2 -> pole -> None (cusp at infinity)
    assert mobius_apply(g, Fraction(-2)) is None
    assert mobius_apply(g, Fraction(0)) == Fraction(1, 2)
    assert mobius_apply(g, None) == Fraction(1, 1)  # g(infinity) = a/c


def test_mobius_composition():
    rng = random.Random(3)
    w = UpperHalfPoint(Fraction(2, 7), Fraction(3, 5))
    for _ in range(60):
        g, h = word_matrix(rng), word_matrix(rng)
        lhs = mobius_apply(g @ h, w)
        rhs = mobius_apply(g, mobius_apply(h, w))
        assert lhs.x == rhs.x and lhs.y == rhs.y


# -- reduction ---------------------------------------------------------------------


def in_fundamental_domain(w) -> bool:
    x, y = w.x, w.y
    half = Fraction(1, 2)
    if not (-half <= x <= half):
        return False
    return x * x + y * y >= 1


@settings(max_examples=120, deadline=None)
@given(
    st.fractions(min_value=-10, max_value=10, max_denominator=60),
    st.fractions(min_value=Fraction(1, 50), max_value=5, max_denominator=50),
)
def test_reduce_lands_in_fundamental_domain_exactly(xq, yq):
    w = UpperHalfPoint(xq, yq)
    g, w0 = reduce_to_fundamental(w)
    assert in_fundamental_domain(w0)
    back = mobius_apply(g, w0)
    assert back.x == w.x and back.y == w.y


def test_reduce_is_identity_on_interior_points():
    w = UpperHalfPoint(Fraction(1, 5), Fraction(3, 2))
    g, w0 = reduce_to_fundamental(w)
    assert g == ModularMatrix.identity()
    assert w0.x == w.x and w0.y == w.y


def test_reduce_handles_corner_and_edges():
    # the corner (1+i*sqrt(3))/2 and its translate reduce consistently:
    # the representative keeps Re = +1/2 (right edge convention)
    rho = UpperHalfPoint(Fraction(1, 2), Surd(0, 1, 2, 3))
    g, w0 = reduce_to_fundamental(rho)
    assert in_fundamental_domain(w0)
    assert w0.x == Fraction(1, 2)
    shifted = UpperHalfPoint(Fraction(-1, 2), Surd(0, 1, 2, 3))
    g2, w2 = reduce_to_fundamental(shifted)
    assert in_fundamental_domain(w2)


def test_reduce_deep_point_terminates():
    w = UpperHalfPoint(Fraction(355, 113), Fraction(1, 10**9))
    g, w0 = reduce_to_fundamental(w)
    assert in_fundamental_domain(w0)
    assert mobius_apply(g, w0).x == w.x


def test_y_positive_enforced():
    with pytest.raises(ValueError, match="upper half-plane"):
        UpperHalfPoint(Fraction(0), Fraction(0))
    with pytest.raises(ValueError, match="upper half-plane"):
        UpperHalfPoint(0.3, -0.2)


# -- shortest vector ------------------------------------------------------------------


def test_gauss_equals_naive_on_exact_grid():
    rng = random.Random(11)
    for _ in range(150):
        x = Fraction(rng.randint(-50, 50), 100)
        y = Fraction(rng.randint(5, 200), 100)
        w = UpperHalfPoint(x, y)
        d_sq, wit = shortest_vector_sq(w)
        assert d_sq == naive_shortest_sq(w)
        a, b = wit
        u = a + b * x
        assert u * u + b * b * y * y == d_sq


def test_gauss_equals_naive_on_floats():
    rng = random.Random(13)
    for _ in range(200):
        x = rng.uniform(-0.5, 0.5)
        y = rng.uniform(0.05, 2.0)
        w = UpperHalfPoint(x, y)
        d_sq, _ = shortest_vector_sq(w)
        assert abs(float(d_sq) - float(naive_shortest_sq(w))) < 1e-12


def test_shortest_vector_on_surd_point():
    w = UpperHalfPoint(PHI, Fraction(1, 10))
    d_sq, wit = shortest_vector_sq(w)
    assert isinstance(d_sq, Surd)
    assert d_sq == naive_shortest_sq(w)


# -- capacity ---------------------------------------------------------------------------


def test_capacity_two_paths_agree_exactly():
    rng = random.Random(17)
    for _ in range(80):
        x = Fraction(rng.randint(-400, 400), rng.randint(1, 120))
        y = Fraction(rng.randint(1, 300), rng.randint(1, 120))
        w = UpperHalfPoint(x, y)
        assert growth_capacity(w) == growth_capacity_direct(w)
    w = UpperHalfPoint(PHI, Fraction(1, 7))
    assert growth_capacity(w) == growth_capacity_direct(w)


def test_capacity_known_values():
    assert growth_capacity(UpperHalfPoint(0, 2)) == Fraction(1, 2)
    assert growth_capacity(UpperHalfPoint(0, Fraction(1, 2))) == Fraction(1, 2)
    assert growth_capacity(UpperHalfPoint(0, 1)) == 1
    # hexagonal point: f = 2/sqrt(3), the global maximum
    rho = UpperHalfPoint(Fraction(1, 2), Surd(0, 1, 2, 3))
    assert growth_capacity(rho) == Surd(0, 2, 3, 3)


def test_capacity_invariance_exact_words():
    rng = random.Random(23)
    w = UpperHalfPoint(PHI, Fraction(1, 10))
    f = growth_capacity(w)
    for _ in range(40):
        g = word_matrix(rng)
        assert growth_capacity(mobius_apply(g, w)) == f


def test_capacity_mpf_tier():
    w = UpperHalfPoint(0.25, 0.9)
    f = growth_capacity(w)
    g = growth_capacity_direct(w)
    assert abs(f - g) < mp.mpf("1e-40")


# -- tangent circle ----------------------------------------------------------------------


def test_tangent_circle_pinned_example():
    w = UpperHalfPoint(Fraction(1, 2), Fraction(1, 4))
    c = tangent_circle(w)
    assert c.cusp == Fraction(1, 2)
    assert c.diameter == Fraction(1, 4)


def test_tangent_circle_passes_through_the_point():
    # circle tangent to the real axis at cusp with diameter D passes through
    # w iff (x - cusp)^2 + y^2 = y * D  (exact identity)
    rng = random.Random(29)
    checked = 0
    for _ in range(200):
        x = Fraction(rng.randint(-300, 300), rng.randint(1, 90))
        y = Fraction(rng.randint(1, 60), rng.randint(60, 90))
        w = UpperHalfPoint(x, y)
        try:
            c = tangent_circle(w)
        except ValueError:
            continue
        dx = x - c.cusp
        assert dx * dx + y * y == y * c.diameter
        checked += 1
    assert checked > 150


def test_tangent_circle_cusp_at_infinity():
    with pytest.raises(ValueError, match="cusp at infinity"):
        tangent_circle(UpperHalfPoint(Fraction(1, 5), 2))


def test_named_x_tangent_data(named_x):
    # along a vertical geodesic deep below the circles, every named x yields
    # a finite cusp equal to a convergent of x
    from growthcap import cf_expand, convergents

    for x in named_x.values():
        w = UpperHalfPoint(x, Fraction(1, 1000))
        c = tangent_circle(w)
        cs = convergents(cf_expand(x), 12)
        assert any(Fraction(cv.p, cv.q) == c.cusp for cv in cs)
