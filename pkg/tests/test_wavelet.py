import math

import mpmath
import numpy as np
import pytest
from conftest import audit_grids, wavelet
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelet.errors import DivergenceError, DomainError, GridMismatchError, InadmissibleWaveletError
from hankelet.families import FunctionSpec
from hankelet.hankel import hankel_transform
from hankelet.radial import RadialFunction, RadialGrid, ScaleSpaceGrid, lp_norm_radial, weighted_moment
from hankelet.translate import dilate
from hankelet.wavelet import (
    ScaleSpaceFunction, Wavelet, admissibility_constant, hwt_direct_oracle, hwt_forward, log_mean_quadrature,
    make_bessel_hat, norm_sq_quadrature, wavelet_atom,
)


def test_bessel_hat_constants_examples():
    w = make_bessel_hat(1.3, 2, 1.0)
    assert w.c_admissible == pytest.approx(0.5, rel=1e-15)
    w = make_bessel_hat(0.0, 2, 2.0)
    assert (w.c_admissible, w.l2_norm_sq) == (pytest.approx(1 / 32), pytest.approx(1 / 64))
    assert w.entropy_precondition and w.contrast == pytest.approx(2.0)
    w = make_bessel_hat(0.0, 2, 1.0)
    assert w.l2_norm_sq == pytest.approx(1.0) and not w.entropy_precondition
    assert admissibility_constant(make_bessel_hat(0.0, 1, 1.0)) == pytest.approx(0.5, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=-0.45, max_value=4.0), st.integers(min_value=1, max_value=5),
       st.floats(min_value=0.3, max_value=4.0))
def test_closed_forms_vs_quadrature(alpha, k, sigma):
    w = make_bessel_hat(alpha, k, sigma)
    assert admissibility_constant(w) == pytest.approx(w.c_admissible, rel=1e-8)
    assert norm_sq_quadrature(w) == pytest.approx(w.l2_norm_sq, rel=1e-8)
    assert log_mean_quadrature(w) == pytest.approx(w.closed_form.log_mean(), rel=1e-8, abs=1e-10)


def test_norm_closed_form_against_mpmath():
    alpha, k, sigma = 0.7, 3, 1.4
    w = make_bessel_hat(alpha, k, sigma)
    oracle = mpmath.quad(lambda x: x ** (2 * k) * mpmath.exp(-(sigma * x) ** 2) * x ** (2 * alpha + 1)
                         / (2 ** alpha * mpmath.gamma(alpha + 1)), [0, 2, 10])
    assert w.l2_norm_sq == pytest.approx(float(oracle), rel=1e-12)


def test_inadmissible_and_invalid():
    for k in (0, -1, 1.5, True):
        with pytest.raises(InadmissibleWaveletError):
            make_bessel_hat(0.0, k, 1.0)
    with pytest.raises(DomainError):
        make_bessel_hat(0.0, 2, 0.0)
    with pytest.raises(DivergenceError):
        Wavelet.from_spectrum(0.0, lambda xi: np.exp(-0.5 * np.asarray(xi) ** 2))


def test_from_spectrum_matches_closed_form():
    ref = make_bessel_hat(1.0, 2, 1.5)
    w = Wavelet.from_spectrum(1.0, ref.spectrum)
    assert w.c_admissible == pytest.approx(ref.c_admissible, rel=1e-10)
    assert w.l2_norm_sq == pytest.approx(ref.l2_norm_sq, rel=1e-10)
    g = RadialGrid.composite(1.0)
    assert np.allclose(w.time(g.nodes), ref.time(g.nodes), atol=1e-8)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.5])
def test_time_side_by_hankel_transform(alpha):
    # k = 2, sigma = 1 has the time form (2 alpha + 2 - x^2) e^{-x^2/2}
    g = RadialGrid.composite(alpha)
    psi = make_bessel_hat(alpha, 2, 1.0).time_samples(g)
    assert np.max(np.abs(psi.samples - (2 * alpha + 2 - g.nodes ** 2) * np.exp(-0.5 * g.nodes ** 2))) <= 1e-8


@pytest.mark.parametrize("k", [1, 3])
def test_fast_time_table_matches_exact(k):
    w = make_bessel_hat(0.5, k, 2.0)
    r = np.concatenate([np.linspace(0, 50, 997), [799.0, 801.0, 2000.0]])
    exact = w.time(r)
    assert np.max(np.abs(w.fast_time(r) - exact)) <= 1e-8 * np.max(np.abs(exact))


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_atom_norms_and_spectrum(alpha):
    g = RadialGrid.composite(alpha, radius=24.0, n_nodes=1024, panels=32)
    w = make_bessel_hat(alpha, 2, 1.0)
    psi_norm = math.sqrt(w.l2_norm_sq)
    for a in (0.5, 1.0, 2.0):
        at0 = wavelet_atom(w, a, 0.0, g)
        assert lp_norm_radial(at0, 2) == pytest.approx(psi_norm / math.sqrt(w.c_admissible), rel=1e-6)
        expected = w.c_admissible ** -0.5 * a ** -(alpha + 1) * w.spectrum(g.nodes / a)
        assert np.max(np.abs(hankel_transform(at0).samples - expected)) <= 1e-6
        for x in (0.5, 2.0):
            assert lp_norm_radial(wavelet_atom(w, a, x, g), 2) <= (1 + 1e-6) * psi_norm / math.sqrt(w.c_admissible)
    with pytest.raises(DomainError):
        wavelet_atom(w, 0.0, 1.0, g)


def test_plancherel_example_and_sup_bound():
    pos, ss = audit_grids(0.0)
    f = FunctionSpec("gaussian").sample(pos)
    w = wavelet(0.0, 2, 2.0)
    W = hwt_forward(f, w, ss)
    nf = lp_norm_radial(f, 2) ** 2
    assert weighted_moment(W, "a^s", 0.0) == pytest.approx(nf, rel=1e-3)
    assert np.max(np.abs(W.samples)) <= math.sqrt(nf * w.l2_norm_sq / w.c_admissible) + 1e-9
    zero = RadialFunction(pos, np.zeros(pos.size))
    assert np.all(hwt_forward(zero, w, ss).samples == 0.0)


def test_plancherel_improves_when_band_widens():
    pos = RadialGrid.composite(0.0)
    f = FunctionSpec("gaussian").sample(pos)
    w = make_bessel_hat(0.0, 2, 2.0)
    defects = []
    for lo, hi in ((1 / 16, 16), (1 / 64, 64)):
        W = hwt_forward(f, w, ScaleSpaceGrid.build(pos, lo, hi, 8))
        defects.append(abs(weighted_moment(W, "a^s", 0.0) / 0.5 - 1))
    assert defects[1] < defects[0]


def test_direct_oracle_agrees_at_origin_and_inside():
    g = RadialGrid.composite(1.0)
    f = FunctionSpec("poly_gaussian", 1.0, 1).sample(g)
    w = make_bessel_hat(1.0, 3, 2.0)
    scales = np.array([0.3, 1.0, 4.0])
    ss = ScaleSpaceGrid(1.0, 0.3, 4.0, scales, np.ones(3), g)
    W = hwt_forward(f, w, ss).samples
    sup = np.max(np.abs(W))
    for j, a in enumerate(scales):
        for i in (0, 100, 250):
            assert abs(hwt_direct_oracle(f, w, a, g.nodes[i]) - W[j, i]) <= 1e-5 * sup
        # at x = 0 the atom is the dilated wavelet itself
        assert abs(hwt_direct_oracle(f, w, a, 0.0) - W[j, 0]) <= 1e-3 * sup


def test_atom_as_input_peaks_at_its_own_scale_and_origin():
    alpha, a0 = 0.5, 1.0
    g = RadialGrid.composite(alpha)
    w = make_bessel_hat(alpha, 2, 1.0)
    f = wavelet_atom(w, a0, 0.0, g) * math.sqrt(w.c_admissible)
    ss = ScaleSpaceGrid.build(g, 1 / 8, 8, 8)
    W = np.abs(hwt_forward(f, w, ss).samples)
    j, i = np.unravel_index(np.argmax(W), W.shape)
    assert i == 0
    assert abs(math.log2(ss.scales[j] / a0)) <= 1 / 8


@pytest.mark.parametrize("lam", [0.5, 2.0])
def test_dilation_covariance(lam):
    # W(D_lam f)(a, x) = W f(a / lam, lam x); the scaled position grid has nodes lam * x exactly
    alpha = 0.5
    g = RadialGrid.composite(alpha, radius=24.0, n_nodes=1024, panels=32)
    scaled = RadialGrid.from_edges(alpha, lam * np.asarray(g.edges), g.nodes_per_panel)
    w = make_bessel_hat(alpha, 2, 2.0)
    spec = FunctionSpec("gaussian")
    f = spec.sample(g)
    scales = np.array([0.25, 0.7, 1.0, 3.0])
    left = hwt_forward(dilate(f, lam), w, ScaleSpaceGrid(alpha, 0.25, 3.0, scales, np.ones(4), g)).samples
    right = hwt_forward(f, w, ScaleSpaceGrid(alpha, 0.25 / lam, 3.0 / lam, scales / lam, np.ones(4), scaled)).samples
    keep = g.nodes <= 12.0
    assert np.max(np.abs(left[:, keep] - right[:, keep])) <= 1e-5


def test_linearity_and_mismatch():
    pos, ss = audit_grids(1.0)
    w = wavelet(1.0, 2, 2.0)
    f = FunctionSpec("gaussian", 0.7).sample(pos)
    h = FunctionSpec("poly_gaussian", 1.0, 1).sample(pos)
    combo = f.with_samples(2 * f.samples - 3 * h.samples)
    lhs = hwt_forward(combo, w, ss).samples
    rhs = 2 * hwt_forward(f, w, ss).samples - 3 * hwt_forward(h, w, ss).samples
    assert np.allclose(lhs, rhs, atol=1e-13)
    with pytest.raises(GridMismatchError):
        hwt_forward(f, wavelet(0.0, 2, 2.0), ss)
    with pytest.raises(GridMismatchError):
        ScaleSpaceFunction(ss, np.zeros((2, 2)))


def test_thread_count_does_not_change_result(monkeypatch):
    pos, ss = audit_grids(0.5)
    f = FunctionSpec("gaussian").sample(pos)
    w = wavelet(0.5, 3, 2.0)
    serial = hwt_forward(f, w, ss, workers=1).samples
    monkeypatch.setenv("HANKELET_THREADS", "3")
    assert np.array_equal(hwt_forward(f, w, ss).samples, serial)


def test_restrict_recomputes_on_subgrid():
    pos, ss = audit_grids(0.0)
    f = FunctionSpec("gaussian").sample(pos)
    w = wavelet(0.0, 2, 2.0)
    W = hwt_forward(f, w, ss)
    sub = W.restrict(0.5, 2.0, 0.0, 3.0)
    assert sub.grid.a_min == 0.5 and sub.grid.position_grid.radius == 3.0
    with pytest.raises(DomainError):
        ScaleSpaceFunction(ss, W.samples).restrict(0.5, 2.0, 0.0, 3.0)
