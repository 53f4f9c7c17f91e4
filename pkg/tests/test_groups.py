import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symfem import groups
from symfem.groups import (
    BurgersElement,
    ExpGroupElement,
    OrderingError,
    PainleveElement,
    PoleError,
    Sl2Element,
    SuperpositionElement,
    act_jet,
    act_point,
    compose,
    inverse,
    sl2_form_factor,
    sl2_transform_hat,
    sl2_transform_hat_deriv,
)
from symfem.mesh import DiscreteJet, Mesh, hat_eval


def _alpha(x):
    return math.exp(x)


def _gamma(x):
    return math.exp(-x)


IDENTITIES = [
    Sl2Element.identity(),
    ExpGroupElement.identity(),
    PainleveElement.identity(),
    SuperpositionElement(0.0, 0.0, _alpha, _gamma),
]


@pytest.mark.parametrize("g", IDENTITIES, ids=lambda g: type(g).__name__)
def test_identity_fixes_points(g):
    assert act_point(g, (0.3, -1.7)) == (0.3, -1.7)


def test_burgers_identity_and_boost():
    assert act_point(BurgersElement.identity(), (1.0, 3.0, 5.0)) == (1.0, 3.0, 5.0)
    assert act_point(BurgersElement(1, 0, 0, 2), (1.0, 3.0, 5.0)) == (7.0, 3.0, 7.0)


def test_sl2_scaling_example():
    g = Sl2Element(2.0, 0.0, 0.0, 0.5)
    assert g.act_x(3.0) == 12.0


def test_sl2_normalizes_and_rejects():
    g = Sl2Element(2.0, 0.0, 0.0, 2.0)
    assert g.alpha * g.delta - g.beta * g.gamma == pytest.approx(1.0)
    with pytest.raises(ValueError):
        Sl2Element(1.0, 1.0, 1.0, 1.0)
    with pytest.raises(PoleError):
        Sl2Element(1, 0, 1, 1).act(-1.0, 1.0)


def test_burgers_rejects_nonpositive_scaling():
    with pytest.raises(ValueError):
        BurgersElement(0.0, 0, 0, 0)


def test_act_jet_examples():
    jet = DiscreteJet.from_points((0, 1, 2), (1, 1, 1), k=4)
    assert act_jet(Sl2Element.identity(), jet) == jet
    p = act_jet(PainleveElement(0.0, math.log(2.0)), jet)
    assert p.xs == jet.xs and p.us == pytest.approx((2, 2, 2), abs=1e-15)
    s = act_jet(Sl2Element(1, 0, 1, 1), jet)
    assert s.k == 4
    assert s.xs == pytest.approx((0, 0.5, 2 / 3), abs=1e-15)
    assert s.us == pytest.approx((1, 0.5, 1 / 3), abs=1e-15)


def test_act_jet_detects_folding():
    # crossing the pole reverses the order of the images
    jet = DiscreteJet.from_points((-2.0, -0.5, 1.0), (1, 1, 1))
    with pytest.raises(OrderingError):
        act_jet(Sl2Element(1, 0, 1, 1), jet)


def _random_pair(kind, rng):
    if kind == "sl2":
        return groups.random_sl2(rng), groups.random_sl2(rng)
    if kind == "exp":
        return groups.random_exp(rng), groups.random_exp(rng)
    if kind == "painleve":
        return groups.random_painleve(rng), groups.random_painleve(rng)
    if kind == "superposition":
        return (groups.random_superposition(rng, _alpha, _gamma), groups.random_superposition(rng, _alpha, _gamma))
    return groups.random_burgers(rng), groups.random_burgers(rng)


@pytest.mark.parametrize("kind", ["sl2", "exp", "painleve", "superposition", "burgers"])
def test_composition_matches_sequential_action(kind):
    rng = np.random.default_rng(7)
    for _ in range(10):
        g, h = _random_pair(kind, rng)
        gh = compose(g, h)
        if kind == "burgers":
            x, t, u = rng.uniform(-1, 1, size=3)
            np.testing.assert_allclose(gh.act(x, t, u), g.act(*h.act(x, t, u)), atol=1e-12)
        else:
            x, u = rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2)
            np.testing.assert_allclose(gh.act(x, u), g.act(*h.act(x, u)), atol=1e-12)


@pytest.mark.parametrize("kind", ["sl2", "exp", "painleve", "superposition", "burgers"])
def test_compose_with_inverse_is_identity(kind):
    rng = np.random.default_rng(11)
    g, _ = _random_pair(kind, rng)
    e = compose(g, inverse(g))
    if kind == "burgers":
        np.testing.assert_allclose(e.act(0.3, 0.2, 0.7), (0.3, 0.2, 0.7), atol=1e-14)
    else:
        np.testing.assert_allclose(e.act(0.3, 0.7), (0.3, 0.7), atol=1e-14)


def test_sl2_composition_is_matrix_product():
    rng = np.random.default_rng(3)
    g, h = groups.random_sl2(rng), groups.random_sl2(rng)
    gh = compose(g, h)
    np.testing.assert_allclose(gh.matrix, g.matrix @ h.matrix, atol=1e-14)
    assert np.linalg.det(gh.matrix) == pytest.approx(1.0, abs=1e-14)


def test_exp_composition_law_pointwise():
    rng = np.random.default_rng(5)
    g, h = groups.random_exp(rng), groups.random_exp(rng)
    gh = compose(g, h)
    for x, u in rng.uniform(-1, 1, size=(10, 2)):
        np.testing.assert_allclose(gh.act(x, u), g.act(*h.act(x, u)), atol=1e-13)


def test_compose_rejects_mixed_types():
    with pytest.raises(TypeError):
        compose(Sl2Element.identity(), PainleveElement.identity())
    with pytest.raises(ValueError):
        compose(SuperpositionElement(0, 0, _alpha, _gamma), SuperpositionElement(0, 0, math.cos, math.sin))


def test_transform_hat_examples():
    m = Mesh([0.0, 1.0, 2.0])
    e = Sl2Element.identity()
    for x in (0.25, 0.5, 1.5):
        assert sl2_transform_hat(e, m, 1, x) == hat_eval(m, 1, x)
        assert sl2_transform_hat_deriv(e, m, 1, x) == pytest.approx([1.0, 1.0, -1.0][[0.25, 0.5, 1.5].index(x)])
    g = Sl2Element(1, 0, 1, 1)
    assert sl2_transform_hat(g, m, 1, 1.0) == 1.0
    assert sl2_transform_hat(g, m, 1, 0.5) == pytest.approx(2 / 3, abs=1e-15)


def test_transformed_hat_is_hat_on_transformed_mesh():
    # Phi_k re-derived independently as the plain hat of the image mesh at X
    rng = np.random.default_rng(12)
    m = Mesh(np.sort(rng.uniform(0, 1, 6)))
    for _ in range(50):
        g = groups.random_sl2(rng)
        image = Mesh([g.act_x(v) for v in m.nodes])
        k = int(rng.integers(0, len(m)))
        x = rng.uniform(m.nodes[0], m.nodes[-1])
        assert sl2_transform_hat(g, m, k, x) == pytest.approx(hat_eval(image, k, g.act_x(x)), abs=1e-12)


def test_transform_hat_derivative_matches_chain_rule():
    rng = np.random.default_rng(2)
    m = Mesh(np.sort(rng.uniform(0, 1, 6)))
    for _ in range(20):
        g = groups.random_sl2(rng)
        k = int(rng.integers(0, len(m)))
        x = rng.uniform(m.nodes[0], m.nodes[-1])
        h = 1e-6
        dX = g.act_x(x + h) - g.act_x(x - h)
        fd = (sl2_transform_hat(g, m, k, x + h) - sl2_transform_hat(g, m, k, x - h)) / dX
        if np.any(np.abs(m.nodes - x) < 2 * h):
            continue
        assert sl2_transform_hat_deriv(g, m, k, x) == pytest.approx(fd, abs=1e-6)


def test_form_factor():
    assert sl2_form_factor(Sl2Element.identity(), 0.7) == 1.0
    assert sl2_form_factor(Sl2Element(1, 0, 1, 1), 1.0) == 0.25
    rng = np.random.default_rng(9)
    for _ in range(10):
        g = groups.random_sl2(rng)
        x = rng.uniform(-1, 1)
        h = 1e-5
        fd = (g.act_x(x + h) - g.act_x(x - h)) / (2 * h)
        assert sl2_form_factor(g, x) == pytest.approx(fd, abs=1e-8)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_exp_group_associativity(e1, a1, e2, a2, e3, a3):
    g, h, k = ExpGroupElement(e1, a1, 0.2), ExpGroupElement(e2, a2, -0.1), ExpGroupElement(e3, a3, 0.4)
    left = compose(compose(g, h), k)
    right = compose(g, compose(h, k))
    np.testing.assert_allclose((left.eps, left.a, left.b), (right.eps, right.a, right.b), atol=1e-12)
