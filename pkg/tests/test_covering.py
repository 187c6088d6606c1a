"""Tests for the covering-homomorphism exponentials."""

import numpy as np
import pytest

from structexp import (
    COVERING_ALGEBRAS,
    NotInAlgebra,
    expm_auto,
    expm_series,
    exp_via_covering,
    psi,
    psi_inverse,
    rel_error,
)
from structexp.covering import P3R, P4R, SO3, SO4, SO21R, SO22R

from conftest import covering_member, rodrigues, u17


def _skew3(w):
    return np.array([
        [0.0, -w[2], w[1]],
        [w[2], 0.0, -w[0]],
        [-w[1], w[0], 0.0],
    ])


def _upstairs(alg, rng):
    return sum(u17(rng) * p for p in alg.params)


def test_registry_names():
    assert set(COVERING_ALGEBRAS) == {"so3", "so4", "p4r", "so22r", "p3r", "so21r"}
    for name, alg in COVERING_ALGEBRAS.items():
        assert alg.name == name
        assert alg.form.shape == (alg.dim, alg.dim)


def test_zero_maps_to_identity():
    for alg in COVERING_ALGEBRAS.values():
        g, h = psi_inverse(alg, np.zeros((alg.dim, alg.dim)))
        assert np.linalg.norm(g) < 1e-12
        assert (h is None) == (not alg.two_factor)
        if h is not None:
            assert np.linalg.norm(h) < 1e-12
        e = exp_via_covering(alg, np.zeros((alg.dim, alg.dim)))
        assert np.linalg.norm(e - np.eye(alg.dim)) < 1e-14


def test_so3_z_generator():
    a = _skew3((0.0, 0.0, 1.3))
    g, h = psi_inverse(SO3, a)
    assert h is None
    assert np.linalg.norm(psi(SO3, g) - a) < 1e-13


def test_psi_inverse_round_trip():
    rng = np.random.default_rng(81)
    for alg in COVERING_ALGEBRAS.values():
        for _ in range(50):
            a = covering_member(alg, rng)
            g, h = psi_inverse(alg, a)
            assert abs(np.trace(g)) < 1e-12
            if alg.two_factor:
                assert abs(np.trace(h)) < 1e-12
            back = psi(alg, g, h)
            assert np.linalg.norm(back - a) < 1e-12 * (1.0 + np.linalg.norm(a))


def test_exp_matches_oracle():
    rng = np.random.default_rng(82)
    for alg in COVERING_ALGEBRAS.values():
        for _ in range(50):
            a = covering_member(alg, rng)
            assert rel_error(exp_via_covering(alg, a), expm_series(a)) < 1e-10, alg.name


def test_so3_against_rodrigues():
    rng = np.random.default_rng(83)
    for _ in range(100):
        k = _skew3(u17(rng, 3))
        got = exp_via_covering(SO3, k)
        assert np.linalg.norm(got - rodrigues(k)) < 1e-12


def test_covering_is_two_to_one():
    # adding a full turn around the same axis flips the upstairs pair
    # but must not move the downstairs rotation
    w = np.array([0.5, -1.1, 0.8])
    th = np.linalg.norm(w)
    w_plus = w * (1.0 + 2.0 * np.pi / th)
    e1 = exp_via_covering(SO3, _skew3(w))
    e2 = exp_via_covering(SO3, _skew3(w_plus))
    assert np.linalg.norm(e1 - e2) < 1e-10


def test_exponential_is_one_parameter_group():
    rng = np.random.default_rng(84)
    for alg in COVERING_ALGEBRAS.values():
        a = covering_member(alg, rng)
        e1 = exp_via_covering(alg, a)
        e2 = exp_via_covering(alg, 2.0 * a)
        assert np.linalg.norm(e1 @ e1 - e2) < 1e-10 * (1.0 + np.linalg.norm(e2))


def test_group_preserves_form():
    rng = np.random.default_rng(85)
    for alg in COVERING_ALGEBRAS.values():
        for _ in range(25):
            g = exp_via_covering(alg, covering_member(alg, rng))
            err = np.linalg.norm(g.T @ alg.form @ g - alg.form)
            assert err < 1e-11 * (1.0 + np.linalg.norm(g) ** 2), alg.name


def test_psi_is_a_lie_homomorphism():
    rng = np.random.default_rng(86)
    for alg in COVERING_ALGEBRAS.values():
        g1, g2 = _upstairs(alg, rng), _upstairs(alg, rng)
        if alg.two_factor:
            h1, h2 = _upstairs(alg, rng), _upstairs(alg, rng)
        else:
            h1 = h2 = None
        m1 = psi(alg, g1, h1)
        m2 = psi(alg, g2, h2)
        gb = g1 @ g2 - g2 @ g1
        hb = None if h1 is None else h1 @ h2 - h2 @ h1
        lhs = psi(alg, gb, hb)
        rhs = m1 @ m2 - m2 @ m1
        assert np.linalg.norm(lhs - rhs) < 1e-12 * (1.0 + np.linalg.norm(rhs)), alg.name


def test_psi_image_satisfies_defining_relation():
    rng = np.random.default_rng(87)
    for alg in COVERING_ALGEBRAS.values():
        g = _upstairs(alg, rng)
        h = _upstairs(alg, rng) if alg.two_factor else None
        x = psi(alg, g, h)
        assert np.linalg.norm(x.T @ alg.form + alg.form @ x) < 1e-12


def _trace_gram(alg):
    n = len(alg.basis)
    return np.array([[np.trace(alg.basis[i] @ alg.basis[j]).real
                      for j in range(n)] for i in range(n)])


def _det_polarization_gram(alg):
    n = len(alg.basis)
    def q(x):
        return float(np.linalg.det(x).real)
    return np.array([[(q(alg.basis[i] + alg.basis[j]) - q(alg.basis[i])
                       - q(alg.basis[j])) / 2.0 for j in range(n)]
                     for i in range(n)])


def test_gram_matrices_realize_the_forms():
    # adjoint algebras carry the trace form on V
    assert np.allclose(_trace_gram(SO3), 2.0 * SO3.form)
    assert np.allclose(_trace_gram(P3R), P3R.form)
    assert np.allclose(_trace_gram(SO21R), 2.0 * SO21R.form)
    # two-factor algebras carry the determinant form on V
    assert np.allclose(_det_polarization_gram(SO4), SO4.form)
    assert np.allclose(_det_polarization_gram(P4R), P4R.form / 2.0)
    assert np.allclose(_det_polarization_gram(SO22R), SO22R.form)


def test_four_by_four_coverings_agree_with_structured_routes():
    rng = np.random.default_rng(88)
    family_of = {"so4": "SkewSymmetric", "p4r": "Perskewsymmetric", "so22r": "Lie1"}
    for name, tag in family_of.items():
        alg = COVERING_ALGEBRAS[name]
        for _ in range(25):
            a = covering_member(alg, rng)
            r = expm_auto(a)
            assert r.route == tag
            via_cover = exp_via_covering(alg, a)
            assert np.linalg.norm(via_cover - r.value) < 1e-10 * (1.0 + np.linalg.norm(r.value))


def test_rejects_non_members():
    rng = np.random.default_rng(89)
    dense = rng.uniform(-1.0, 1.0, (3, 3)) + np.eye(3)
    with pytest.raises(NotInAlgebra) as exc:
        psi_inverse(SO3, dense)
    assert exc.value.name == "so3"
    assert exc.value.residual > 1e-3
    with pytest.raises(NotInAlgebra):
        exp_via_covering(SO21R, np.diag([1.0, 1.0, 1.0]))
    with pytest.raises(NotInAlgebra):
        psi_inverse(SO3, 1j * _skew3((1.0, 0.0, 0.0)))
    with pytest.raises(ValueError):
        psi_inverse(SO4, np.zeros((3, 3)))


def test_complex_entries_with_zero_imag_accepted():
    a = _skew3((0.3, -0.2, 0.9)).astype(complex)
    g, _ = psi_inverse(SO3, a)
    assert np.linalg.norm(psi(SO3, g) - a.real) < 1e-12
