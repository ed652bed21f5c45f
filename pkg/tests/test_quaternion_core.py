"""Algebra, chart, and frame tests for the quaternion core."""

import math
import random

import pytest

from fueterlab.quaternion_core import (
    ChartSingularityError,
    I,
    J,
    K,
    ONE,
    Quaternion,
    SphericalPoint,
    from_spherical,
    iota,
    iota_alpha,
    iota_alpha_inv,
    iota_beta,
    iota_beta_inv,
    to_spherical,
)

HALF_PI = math.pi / 2.0


def random_quaternion(rng, scale=2.0):
    return Quaternion(*(rng.uniform(-scale, scale) for _ in range(4)))


def random_angles(rng):
    # keep beta away from the chart poles
    return rng.uniform(-math.pi, math.pi), rng.uniform(0.2, math.pi - 0.2)


# ---------------------------------------------------------------------------
# basis algebra


def test_basis_products():
    assert I * J == K
    assert J * K == I
    assert K * I == J
    assert J * I == -K
    minus_one = Quaternion(-1.0)
    assert I * I == minus_one
    assert J * J == minus_one
    assert K * K == minus_one
    assert I * J * K == minus_one


def test_one_plus_i_times_one_plus_j():
    assert (ONE + I) * (ONE + J) == Quaternion(1.0, 1.0, 1.0, 1.0)


def test_product_is_noncommutative_but_associative():
    rng = random.Random(7)
    for _ in range(100):
        a, b, c = (random_quaternion(rng) for _ in range(3))
        left = (a * b) * c
        right = a * (b * c)
        assert left.isclose(right, tol=1e-12 * (1.0 + abs(left)))
    assert not (I * J).isclose(J * I)


def test_norm_is_multiplicative():
    rng = random.Random(8)
    for _ in range(200):
        a, b = random_quaternion(rng), random_quaternion(rng)
        assert abs(a * b) == pytest.approx(abs(a) * abs(b), rel=1e-12)


def test_conjugate_reverses_products():
    rng = random.Random(9)
    for _ in range(100):
        a, b = random_quaternion(rng), random_quaternion(rng)
        lhs = (a * b).conjugate()
        rhs = b.conjugate() * a.conjugate()
        assert lhs.isclose(rhs, tol=1e-12 * (1.0 + abs(lhs)))


def test_addition_subtraction_negation():
    a = Quaternion(1.0, -2.0, 3.0, -4.0)
    b = Quaternion(0.5, 0.25, -0.75, 2.0)
    assert a + b == Quaternion(1.5, -1.75, 2.25, -2.0)
    assert a - b == Quaternion(0.5, -2.25, 3.75, -6.0)
    assert -a == Quaternion(-1.0, 2.0, -3.0, 4.0)
    assert 1.0 - I == Quaternion(1.0, -1.0, 0.0, 0.0)
    assert a + 2.0 == Quaternion(3.0, -2.0, 3.0, -4.0)


def test_inverse_closed_forms():
    assert I.inverse() == -I
    assert Quaternion(2.0).inverse() == Quaternion(0.5)
    rng = random.Random(10)
    for _ in range(100):
        p = random_quaternion(rng)
        if abs(p) < 1e-3:
            continue
        prod = p * p.inverse()
        assert prod.isclose(ONE, tol=1e-12)
        assert (p / p).isclose(ONE, tol=1e-12)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Quaternion().inverse()


def test_from_vector_and_accessors():
    q = Quaternion.from_vector((1.0, 2.0, 3.0), t=0.5)
    assert q == Quaternion(0.5, 1.0, 2.0, 3.0)
    assert q.vector == (1.0, 2.0, 3.0)
    assert q.vector_norm() == pytest.approx(math.sqrt(14.0))
    assert q.norm_sq() == pytest.approx(0.25 + 14.0)


# ---------------------------------------------------------------------------
# imaginary-direction frame


def test_iota_at_reference_angles():
    assert iota(0.0, HALF_PI).isclose(I, tol=1e-15)
    assert iota_alpha(0.0, HALF_PI).isclose(J, tol=1e-15)
    assert iota_beta(0.0, HALF_PI).isclose(-K, tol=1e-15)


def test_iota_is_a_unit_imaginary_root():
    rng = random.Random(11)
    for _ in range(1000):
        alpha, beta = random_angles(rng)
        io = iota(alpha, beta)
        assert abs(io) == pytest.approx(1.0, abs=1e-14)
        assert (io * io).isclose(Quaternion(-1.0), tol=1e-13)


def test_tangents_anticommute_with_iota():
    # iota_alpha * iota + iota * iota_alpha = 0, same for the beta tangent
    rng = random.Random(12)
    for _ in range(1000):
        alpha, beta = random_angles(rng)
        io = iota(alpha, beta)
        ta = iota_alpha(alpha, beta)
        tb = iota_beta(alpha, beta)
        assert abs(ta * io + io * ta) < 1e-12
        assert abs(tb * io + io * tb) < 1e-12


def test_tangent_norms_and_orthogonality():
    rng = random.Random(13)
    for _ in range(300):
        alpha, beta = random_angles(rng)
        ta = iota_alpha(alpha, beta)
        tb = iota_beta(alpha, beta)
        io = iota(alpha, beta)
        assert abs(ta) == pytest.approx(abs(math.sin(beta)), abs=1e-13)
        assert abs(tb) == pytest.approx(1.0, abs=1e-13)
        dot_ab = ta.x * tb.x + ta.y * tb.y + ta.z * tb.z
        dot_ai = ta.x * io.x + ta.y * io.y + ta.z * io.z
        dot_bi = tb.x * io.x + tb.y * io.y + tb.z * io.z
        assert abs(dot_ab) < 1e-13
        assert abs(dot_ai) < 1e-13
        assert abs(dot_bi) < 1e-13


def test_inverse_tangents():
    rng = random.Random(14)
    for _ in range(300):
        alpha, beta = random_angles(rng)
        sb = math.sin(beta)
        expected_a = Quaternion(0.0, math.sin(alpha), -math.cos(alpha), 0.0) / sb
        assert iota_alpha_inv(alpha, beta).isclose(expected_a, tol=1e-13)
        assert iota_beta_inv(alpha, beta).isclose(-iota_beta(alpha, beta), tol=1e-15)
        # they really are multiplicative inverses of the tangents
        prod_a = iota_alpha(alpha, beta) * iota_alpha_inv(alpha, beta)
        prod_b = iota_beta(alpha, beta) * iota_beta_inv(alpha, beta)
        assert prod_a.isclose(ONE, tol=1e-12)
        assert prod_b.isclose(ONE, tol=1e-12)


def test_frame_resolves_cartesian_units():
    # iota * x_r - (iota_alpha_inv * x_alpha + iota_beta_inv * x_beta) / r
    # recovers i, j, k when applied to the coordinate components.
    rng = random.Random(15)
    for _ in range(200):
        alpha, beta = random_angles(rng)
        r = rng.uniform(0.3, 2.0)
        io = iota(alpha, beta)
        ia_inv = iota_alpha_inv(alpha, beta)
        ib_inv = iota_beta_inv(alpha, beta)
        # components of (x, y, z) = r * iota in the spherical chart
        for unit, dr, dalpha, dbeta in (
            (I, io.x, iota_alpha(alpha, beta).x * r, iota_beta(alpha, beta).x * r),
            (J, io.y, iota_alpha(alpha, beta).y * r, iota_beta(alpha, beta).y * r),
            (K, io.z, iota_alpha(alpha, beta).z * r, iota_beta(alpha, beta).z * r),
        ):
            got = io * dr - (ia_inv * dalpha + ib_inv * dbeta) / r
            assert got.isclose(unit, tol=1e-10)


# ---------------------------------------------------------------------------
# spherical chart


def test_to_spherical_reference_points():
    s = to_spherical(Quaternion(1.0, 1.0, 0.0, 0.0))
    assert (s.t, s.r) == (1.0, 1.0)
    assert s.alpha == pytest.approx(0.0, abs=1e-15)
    assert s.beta == pytest.approx(HALF_PI, abs=1e-15)

    s = to_spherical(Quaternion(2.0, 0.0, 3.0, 0.0))
    assert (s.t, s.r) == (2.0, 3.0)
    assert s.alpha == pytest.approx(HALF_PI)
    assert s.beta == pytest.approx(HALF_PI)


def test_chart_singularities_raise():
    with pytest.raises(ChartSingularityError):
        to_spherical(Quaternion(1.0, 0.0, 0.0, 1.0))  # x = y = 0
    with pytest.raises(ChartSingularityError):
        to_spherical(Quaternion(3.0))  # real axis, r = 0
    with pytest.raises(ChartSingularityError):
        to_spherical(Quaternion(0.0, 0.0, 0.0, -0.5))


def test_chart_round_trips():
    rng = random.Random(16)
    for _ in range(500):
        p = random_quaternion(rng)
        if math.hypot(p.x, p.y) < 1e-6:
            continue
        s = to_spherical(p)
        assert s.r > 0.0
        assert 0.0 < s.beta < math.pi
        back = from_spherical(s)
        assert back.isclose(p, tol=1e-12 * (1.0 + abs(p)))
    for _ in range(500):
        t = rng.uniform(-2.0, 2.0)
        r = rng.uniform(0.1, 3.0)
        alpha, beta = random_angles(rng)
        s = to_spherical(from_spherical(SphericalPoint(t, r, alpha, beta)))
        assert s.t == pytest.approx(t, abs=1e-12)
        assert s.r == pytest.approx(r, rel=1e-12)
        assert s.alpha == pytest.approx(alpha, abs=1e-12)
        assert s.beta == pytest.approx(beta, abs=1e-12)


def test_from_spherical_matches_explicit_embedding():
    s = SphericalPoint(0.25, 1.5, 0.8, 1.1)
    p = from_spherical(s)
    assert p.t == pytest.approx(0.25)
    assert p.x == pytest.approx(1.5 * math.cos(0.8) * math.sin(1.1))
    assert p.y == pytest.approx(1.5 * math.sin(0.8) * math.sin(1.1))
    assert p.z == pytest.approx(1.5 * math.cos(1.1))
