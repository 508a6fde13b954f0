"""Quadrature rules against closed-form moments, classical interlacing,
and the reference implementations in numpy/scipy (oracle side only)."""

import math

import numpy as np
import pytest
import scipy.special

from kgo import (
    IntegrandError,
    QuadratureError,
    gauss_hermite,
    gauss_laguerre,
    gauss_legendre,
    hermite_function,
    integrate,
    laguerre_function,
)
from kgo.quadrature import MAX_NODES


def hermite_moment(j):
    """integral xi^j exp(-xi^2) dxi = Gamma((j+1)/2) for even j, 0 odd."""
    if j % 2:
        return 0.0
    return math.exp(math.lgamma((j + 1) / 2.0))


def laguerre_moment(j, alpha):
    return math.exp(math.lgamma(j + alpha + 1.0))


def legendre_moment(j, a, b):
    return (b ** (j + 1) - a ** (j + 1)) / (j + 1)


# ---------------------------------------------------------------------------
# trivial rules
# ---------------------------------------------------------------------------


def test_hermite_one_point():
    rule = gauss_hermite(1)
    assert rule.nodes == pytest.approx([0.0], abs=0)
    assert rule.weights == pytest.approx([math.sqrt(math.pi)], rel=1e-15)


def test_hermite_two_point():
    rule = gauss_hermite(2)
    assert rule.nodes == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)], rel=1e-15)
    assert rule.weights == pytest.approx([math.sqrt(math.pi) / 2] * 2, rel=1e-14)


def test_laguerre_one_point():
    rule = gauss_laguerre(1, 0.0)
    assert rule.nodes == pytest.approx([1.0], rel=1e-14)
    assert rule.weights == pytest.approx([1.0], rel=1e-14)
    rule = gauss_laguerre(1, 0.5)
    assert rule.nodes == pytest.approx([1.5], rel=1e-14)
    assert rule.weights == pytest.approx([math.sqrt(math.pi) / 2], rel=1e-14)


def test_legendre_small_rules():
    rule = gauss_legendre(1, -1.0, 1.0)
    assert rule.nodes == pytest.approx([0.0], abs=0)
    assert rule.weights == pytest.approx([2.0], abs=0)
    rule = gauss_legendre(2, -1.0, 1.0)
    assert rule.nodes == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-15)
    assert rule.weights == pytest.approx([1.0, 1.0], rel=1e-14)


# ---------------------------------------------------------------------------
# structural invariants
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("count", [1, 2, 3, 7, 32, 128, 201])
def test_structure_hermite(count):
    rule = gauss_hermite(count)
    assert rule.count == count
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)
    assert np.all(np.isfinite(rule.log_weights))
    assert rule.weights.sum() == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert rule.exactness_degree == 2 * count - 1
    assert not rule.nodes.flags.writeable


@pytest.mark.parametrize("count,alpha", [(1, 0.0), (3, 2.5), (17, 0.5), (64, 10.5), (160, 0.5)])
def test_structure_laguerre(count, alpha):
    rule = gauss_laguerre(count, alpha)
    assert np.all(rule.nodes > 0)
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)
    assert rule.weights.sum() == pytest.approx(math.exp(math.lgamma(alpha + 1)), rel=1e-13)


@pytest.mark.parametrize(
    "factory", [lambda: gauss_hermite(512), lambda: gauss_laguerre(201, 0.5)]
)
def test_structure_huge_rules(factory):
    # true edge weights of very large Hermite/Laguerre rules fall below
    # the double range; the log form must stay exact and positive-signed
    rule = factory()
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights >= 0)
    assert np.all(np.isfinite(rule.log_weights))
    assert np.all(rule.modified_weights > 0)


@pytest.mark.parametrize("count,a,b", [(1, -1, 1), (2, 0, 5), (33, -2.5, 0.5), (201, -1, 1)])
def test_structure_legendre(count, a, b):
    rule = gauss_legendre(count, a, b)
    assert np.all(np.diff(rule.nodes) > 0)
    assert rule.nodes[0] > a and rule.nodes[-1] < b
    assert np.all(rule.weights > 0)
    assert rule.weights.sum() == pytest.approx(b - a, rel=1e-14)


def test_count_limits():
    with pytest.raises(QuadratureError):
        gauss_hermite(0)
    with pytest.raises(QuadratureError):
        gauss_hermite(MAX_NODES + 1)
    with pytest.raises(QuadratureError):
        gauss_laguerre(10, -1.0)
    with pytest.raises(QuadratureError):
        gauss_legendre(4, 1.0, 1.0)
    # the maximum itself must work
    rule = gauss_hermite(MAX_NODES)
    assert rule.count == MAX_NODES
    assert np.all(np.isfinite(rule.log_weights))
    rule = gauss_laguerre(MAX_NODES, 0.5)
    assert np.all(np.isfinite(rule.log_weights))


def test_determinism():
    a = gauss_hermite(64)
    b = gauss_hermite(64)
    assert a.nodes.tobytes() == b.nodes.tobytes()
    assert a.weights.tobytes() == b.weights.tobytes()
    a = gauss_laguerre(48, 2.5)
    b = gauss_laguerre(48, 2.5)
    assert a.nodes.tobytes() == b.nodes.tobytes()
    assert a.weights.tobytes() == b.weights.tobytes()


# ---------------------------------------------------------------------------
# exactness sweeps (closed-form moment oracle via math.lgamma)
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("count", [1, 2, 3, 5, 8, 13, 21, 34, 64])
def test_hermite_moments(count):
    rule = gauss_hermite(count)
    degrees = np.arange(2 * count)
    vander = rule.nodes[None, :] ** degrees[:, None]
    got = vander @ rule.weights
    for j in degrees:
        exact = hermite_moment(int(j))
        scale = hermite_moment(int(j) + (int(j) % 2))  # magnitude scale for odd j
        assert abs(got[j] - exact) <= 1e-11 * max(scale, 1.0)


@pytest.mark.parametrize("count,alpha", [(1, 0.0), (2, 0.5), (5, 2.5), (13, 0.0), (34, 5.5), (64, 1.5)])
def test_laguerre_moments(count, alpha):
    rule = gauss_laguerre(count, alpha)
    degrees = np.arange(2 * count)
    vander = rule.nodes[None, :] ** degrees[:, None]
    got = vander @ rule.weights
    for j in degrees:
        exact = laguerre_moment(int(j), alpha)
        assert abs(got[j] - exact) <= 1e-11 * exact


@pytest.mark.parametrize("count", [1, 2, 5, 13, 34, 64])
def test_legendre_moments(count):
    a, b = -1.0, 1.5
    rule = gauss_legendre(count, a, b)
    degrees = np.arange(2 * count)
    vander = rule.nodes[None, :] ** degrees[:, None]
    got = vander @ rule.weights
    for j in degrees:
        exact = legendre_moment(int(j), a, b)
        assert abs(got[j] - exact) <= 1e-11 * max(1.0, abs(exact))


def test_hermite_64_high_moment():
    # integral xi^126 exp(-xi^2) = Gamma(63.5)
    rule = gauss_hermite(64)
    got = integrate(rule, lambda x: x**126)
    exact = math.exp(math.lgamma(63.5))
    assert got == pytest.approx(exact, rel=1e-12)


def test_laguerre_40_moment():
    rule = gauss_laguerre(40, 2.5)
    got = integrate(rule, lambda x: x**10)
    assert got == pytest.approx(math.exp(math.lgamma(13.5)), rel=1e-12)


def test_legendre_cubic_on_0_5():
    rule = gauss_legendre(16, 0.0, 5.0)
    assert integrate(rule, lambda x: x**3) == pytest.approx(156.25, rel=1e-13)


# ---------------------------------------------------------------------------
# interlacing
# ---------------------------------------------------------------------------


def _assert_interlaced(small, large):
    assert large[0] < small[0]
    assert small[-1] < large[-1]
    for i in range(len(small)):
        assert large[i] < small[i] < large[i + 1]


@pytest.mark.parametrize("count", list(range(1, 64)))
def test_hermite_interlacing(count):
    _assert_interlaced(gauss_hermite(count).nodes, gauss_hermite(count + 1).nodes)


@pytest.mark.parametrize("count", list(range(1, 64, 3)))
def test_laguerre_interlacing(count):
    _assert_interlaced(gauss_laguerre(count, 1.5).nodes, gauss_laguerre(count + 1, 1.5).nodes)


@pytest.mark.parametrize("count", list(range(1, 64, 3)))
def test_legendre_interlacing(count):
    _assert_interlaced(
        gauss_legendre(count, -1, 1).nodes, gauss_legendre(count + 1, -1, 1).nodes
    )


# ---------------------------------------------------------------------------
# node residuals and library cross-checks
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("count", [16, 128])
def test_hermite_node_residual(count):
    rule = gauss_hermite(count)
    h_k = hermite_function(count, rule.nodes)
    h_km1 = hermite_function(count - 1, rule.nodes)
    slope = np.abs(math.sqrt(2.0 * count) * h_km1 - rule.nodes * h_k)
    gaps = np.empty(count)
    diffs = np.diff(rule.nodes)
    gaps[0] = diffs[0]
    gaps[-1] = diffs[-1]
    if count > 2:
        gaps[1:-1] = np.minimum(diffs[:-1], diffs[1:])
    assert np.all(np.abs(h_k) <= 1e-10 * slope * gaps)


@pytest.mark.parametrize("count,alpha", [(16, 0.5), (96, 3.5)])
def test_laguerre_node_residual(count, alpha):
    rule = gauss_laguerre(count, alpha)
    lf_k = laguerre_function(count, alpha, rule.nodes)
    lf_km1 = laguerre_function(count - 1, alpha, rule.nodes)
    slope = np.abs(
        lf_k * (count / rule.nodes + 0.5 * alpha / rule.nodes - 0.5)
        - math.sqrt(count * (count + alpha)) * lf_km1 / rule.nodes
    )
    gaps = np.empty(count)
    diffs = np.diff(rule.nodes)
    gaps[0] = diffs[0]
    gaps[-1] = diffs[-1]
    if count > 2:
        gaps[1:-1] = np.minimum(diffs[:-1], diffs[1:])
    assert np.all(np.abs(lf_k) <= 1e-10 * slope * gaps)


@pytest.mark.parametrize("count", [3, 8, 16, 33, 64])
def test_hermite_vs_numpy(count):
    rule = gauss_hermite(count)
    nodes, weights = np.polynomial.hermite.hermgauss(count)
    assert np.max(np.abs(rule.nodes - nodes)) <= 1e-13 * max(1.0, np.max(np.abs(nodes)))
    assert np.max(np.abs(rule.weights - weights)) <= 1e-13 * np.max(weights)


@pytest.mark.parametrize("count", [3, 8, 16, 33, 64])
def test_legendre_vs_numpy(count):
    rule = gauss_legendre(count, -1.0, 1.0)
    nodes, weights = np.polynomial.legendre.leggauss(count)
    assert np.max(np.abs(rule.nodes - nodes)) <= 1e-14
    assert np.max(np.abs(rule.weights - weights)) <= 1e-13


@pytest.mark.parametrize("count,alpha", [(3, 0.0), (8, 2.5), (16, 0.5), (40, 2.5), (64, 10.5)])
def test_laguerre_vs_scipy(count, alpha):
    rule = gauss_laguerre(count, alpha)
    nodes, weights = scipy.special.roots_genlaguerre(count, alpha)
    assert np.max(np.abs(rule.nodes - nodes) / nodes) <= 1e-12
    assert np.max(np.abs(rule.weights - weights)) <= 1e-12 * np.max(weights)


# ---------------------------------------------------------------------------
# integrate() contract
# ---------------------------------------------------------------------------


def test_integrate_total_mass():
    assert integrate(gauss_hermite(2), lambda x: 1.0) == pytest.approx(
        math.sqrt(math.pi), rel=1e-15
    )
    assert integrate(gauss_laguerre(5, 0.0), lambda x: 1.0) == pytest.approx(1.0, rel=1e-13)
    assert integrate(gauss_legendre(2, -1, 1), lambda x: x * x) == pytest.approx(
        2.0 / 3.0, rel=1e-14
    )


def test_integrate_rejects_nan():
    rule = gauss_legendre(8, 0.0, 1.0)
    with pytest.raises(IntegrandError):
        integrate(rule, lambda x: float("nan") if x > 0.5 else 1.0)
    with pytest.raises(IntegrandError):
        integrate(rule, lambda x: float("inf"))
