import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xdiscord.entropy import (
    Divergent,
    cond_entropy,
    cond_entropy_d1,
    cond_entropy_d2_at_0,
    cond_entropy_d2_at_pi2,
    cond_entropy_oracle,
    entropy_AB,
    entropy_AB_oracle,
    entropy_B,
    is_divergent,
    shannon,
)
from xdiscord.models import bell_diagonal, horodecki
from xdiscord.boundaries import sufficient_sigma_x, sufficient_sigma_z
from xdiscord.xmatrix import BELL_PHI_PLUS, MAXIMALLY_MIXED, TILTED_STATE, RealXState

from conftest import random_real_states, real_states

HALF_PI = math.pi / 2


def reduced_B_entropy_oracle(state):
    rho = state.matrix().reshape(2, 2, 2, 2)
    rho_b = np.einsum("ijik->jk", rho)
    return shannon(np.clip(np.linalg.eigvalsh(rho_b), 0, None))


def test_entropy_B_examples():
    assert entropy_B(MAXIMALLY_MIXED) == pytest.approx(math.log(2), abs=1e-15)
    assert entropy_B(RealXState(1, 0, 0, 0)) == 0
    assert entropy_B(TILTED_STATE) == pytest.approx(reduced_B_entropy_oracle(TILTED_STATE), abs=1e-14)
    assert entropy_B(TILTED_STATE) == pytest.approx(0.5050, abs=1e-4)


def test_entropy_AB_examples():
    assert entropy_AB(MAXIMALLY_MIXED) == pytest.approx(math.log(4), abs=1e-15)
    assert entropy_AB(BELL_PHI_PLUS) == pytest.approx(0, abs=1e-15)
    assert entropy_AB(TILTED_STATE) == pytest.approx(entropy_AB_oracle(TILTED_STATE), abs=1e-10)


@given(real_states())
def test_entropy_AB_matches_eigendecomposition(x):
    assert entropy_AB(x) == pytest.approx(entropy_AB_oracle(x), abs=1e-10)


def test_cond_entropy_maximally_mixed_is_ln2():
    th = np.linspace(0, HALF_PI, 11)
    np.testing.assert_allclose(cond_entropy(MAXIMALLY_MIXED, th), math.log(2), atol=1e-15)
    np.testing.assert_allclose(cond_entropy_oracle(MAXIMALLY_MIXED, th, 0.7), math.log(2), atol=1e-14)


def test_cond_entropy_tilted_state_oracle_at_quarter_pi():
    assert cond_entropy(TILTED_STATE, math.pi / 4) == pytest.approx(
        cond_entropy_oracle(TILTED_STATE, math.pi / 4, 0.0), abs=1e-10
    )


def test_cond_entropy_tilted_state_minimizer():
    # Dense oracle scan over theta; the minimizer is reported at 0.4883 rad.
    th = np.linspace(0, HALF_PI, 200_001)
    s = cond_entropy_oracle(TILTED_STATE, th, 0.0)
    assert th[np.argmin(s)] == pytest.approx(0.4883, abs=1e-3)


def test_oracle_at_theta_zero_is_diagonal_conditioning():
    for x in random_real_states(np.random.default_rng(3), 20):
        a, b, c, d = x.a, x.b, x.c, x.d
        # sigma_z outcome 0 leaves A in diag(a, c)/(a+c), outcome 1 in diag(b, d)/(b+d).
        want = (a + c) * shannon([a / (a + c), c / (a + c)]) + (b + d) * shannon([b / (b + d), d / (b + d)])
        assert cond_entropy_oracle(x, 0.0, 1.3) == pytest.approx(want, abs=1e-12)


def test_tilted_state_azimuth_optimal_at_zero():
    th, ph = np.meshgrid(np.linspace(0, HALF_PI, 181), np.linspace(0, math.pi, 181), indexing="ij")
    s = cond_entropy_oracle(TILTED_STATE, th, ph)
    # u = 0 here, so every azimuth ties; phi = 0 must reach the grid minimum.
    assert s[:, 0].min() <= s.min() + 1e-14
    assert s[:, -1].min() <= s.min() + 1e-14


def test_phi_optimality_on_random_states(rng):
    th, ph = np.meshgrid(np.linspace(0, HALF_PI, 181), np.linspace(0, math.pi, 181), indexing="ij")
    for x in random_real_states(rng, 10):
        s = cond_entropy_oracle(x, th, ph)
        assert s[:, 0].min() <= s.min() + 1e-12


@settings(max_examples=200, deadline=None)
@given(real_states(), st.floats(0, HALF_PI))
def test_cond_entropy_matches_oracle(x, theta):
    assert cond_entropy(x, theta) == pytest.approx(cond_entropy_oracle(x, theta, 0.0), abs=1e-10)


def test_d1_endpoints_vanish():
    for x in random_real_states(np.random.default_rng(5), 50):
        assert cond_entropy_d1(x, 0.0) == 0.0
        assert cond_entropy_d1(x, HALF_PI) == 0.0
        assert abs(cond_entropy_d1(x, 1e-9)) < 1e-8
        assert abs(cond_entropy_d1(x, HALF_PI - 1e-9)) < 1e-8


def test_d1_examples():
    assert cond_entropy_d1(MAXIMALLY_MIXED, math.pi / 4) == pytest.approx(0, abs=1e-15)
    h = 1e-5
    fd = (cond_entropy(TILTED_STATE, 0.3 + h) - cond_entropy(TILTED_STATE, 0.3 - h)) / (2 * h)
    assert cond_entropy_d1(TILTED_STATE, 0.3) == pytest.approx(fd, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(real_states(slack=0.99))
def test_d1_matches_central_differences(x):
    h = 1e-5
    th = np.linspace(0.05, HALF_PI - 0.05, 15)
    fd = (cond_entropy(x, th + h) - cond_entropy(x, th - h)) / (2 * h)
    np.testing.assert_allclose(cond_entropy_d1(x, th), fd, atol=1e-6)


def second_difference(x, theta, h=1e-4):
    return float((cond_entropy(x, theta + h) - 2 * cond_entropy(x, theta) + cond_entropy(x, theta - h)) / h**2)


@settings(max_examples=100, deadline=None)
@given(real_states(slack=0.99))
def test_d2_match_second_differences(x):
    # S_cond is even about both endpoints, so the symmetric stencil is valid there.
    assert cond_entropy_d2_at_0(x) == pytest.approx(second_difference(x, 0.0), abs=1e-4)
    assert cond_entropy_d2_at_pi2(x) == pytest.approx(second_difference(x, HALF_PI), abs=1e-4)


def test_d2_bell_diagonal_on_boundary():
    x = bell_diagonal(0.3, 0.25, 0.3)
    assert cond_entropy_d2_at_0(x) == pytest.approx(0, abs=1e-14)
    assert cond_entropy_d2_at_pi2(x) == pytest.approx(0, abs=1e-14)


def test_d2_maximally_mixed():
    assert cond_entropy_d2_at_0(MAXIMALLY_MIXED) == pytest.approx(0, abs=1e-15)
    assert cond_entropy_d2_at_pi2(MAXIMALLY_MIXED) == pytest.approx(0, abs=1e-15)


def test_d2_vanish_at_horodecki_boundaries():
    assert cond_entropy_d2_at_0(horodecki(0.228, 0.101474)) == pytest.approx(0, abs=1e-6)
    assert cond_entropy_d2_at_pi2(horodecki(0.228, 0.100997)) == pytest.approx(0, abs=1e-6)


def test_d2_removable_singularity_continuous():
    # a = c exactly versus a hair away.
    x0 = RealXState(0.2, 0.3, 0.2, 0.3, 0.1, 0.15)
    x1 = RealXState(0.2 + 1e-7, 0.3, 0.2, 0.3 - 1e-7, 0.1, 0.15)
    assert cond_entropy_d2_at_0(x0) == pytest.approx(cond_entropy_d2_at_0(x1), abs=1e-5)
    assert cond_entropy_d2_at_0(x0) == pytest.approx(second_difference(x0, 0.0), abs=1e-4)


def test_d2_divergent_marker():
    # a = 0 with c > 0 and coherence in the inner block: ln(a) survives.
    x = RealXState(0.0, 0.3, 0.4, 0.3, 0.0, 0.2)
    val = cond_entropy_d2_at_0(x)
    assert is_divergent(val)
    assert isinstance(val, Divergent) and val > 0
    assert "+inf" in repr(val)
    # Second differences grow like -ln(h).
    fd = [second_difference(x, 0.0, h) for h in (1e-2, 1e-3, 1e-4, 1e-5)]
    assert all(f2 > f1 + 0.4 for f1, f2 in zip(fd, fd[1:]))
    assert not is_divergent(cond_entropy_d2_at_0(TILTED_STATE))


def test_d2_pi2_at_zero_radius_limit():
    # r = 0: a + b = c + d and w = 0.
    x = RealXState(0.4, 0.1, 0.2, 0.3, 0.0, 0.0)
    c3 = x.a - x.b - x.c + x.d
    assert cond_entropy_d2_at_pi2(x) == pytest.approx(-c3 * c3, abs=1e-15)
    assert cond_entropy_d2_at_pi2(x) == pytest.approx(second_difference(x, HALF_PI), abs=1e-4)


def test_d2_pi2_pure_bell_state_is_flat():
    assert cond_entropy_d2_at_pi2(BELL_PHI_PLUS) == pytest.approx(0, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(real_states())
def test_curvature_signs_under_sufficient_conditions(x):
    # An endpoint that is the global minimum cannot curve downward there.
    if sufficient_sigma_z(x):
        assert cond_entropy_d2_at_0(x) >= -1e-12
    if sufficient_sigma_x(x):
        assert cond_entropy_d2_at_pi2(x) >= -1e-12
