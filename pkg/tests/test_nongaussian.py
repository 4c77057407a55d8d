import numpy as np
import pytest

from cvwitness import families, nongaussian
from cvwitness.errors import UnsupportedOrder
from cvwitness.nongaussian import NGPASGSpec
from cvwitness.symplectic import gaussian_overlap, validate_cm

from oracles import ladder, single_mode_gaussian_rho, two_mode_squeezed_thermal_rho


def random_single_mode_cm(rng):
    r = rng.uniform(0.0, 0.5)
    phi = rng.uniform(0.0, np.pi)
    nu = rng.uniform(1.0, 2.0)
    c, s = np.cos(phi), np.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    return nu * rot @ np.diag([np.exp(2 * r), np.exp(-2 * r)]) @ rot.T


def added_subtracted_rho(rho_g, k, m, cutoff):
    a = ladder(cutoff)
    ad = a.conj().T
    op = np.linalg.matrix_power(ad, k) @ np.linalg.matrix_power(a, m)
    rho = op @ rho_g @ op.conj().T
    return rho / np.trace(rho)


def test_spec_validation():
    kernel = validate_cm(np.eye(2))
    with pytest.raises(ValueError):
        NGPASGSpec(kernel=kernel, adds=(1, 1), subs=(0,))
    with pytest.raises(ValueError):
        NGPASGSpec(kernel=kernel, adds=(-1,), subs=(0,))


def test_q_char_zero_at_origin():
    g = validate_cm(families.squeezed_thermal_cm(1.5, 1.5, 0.4))
    z = np.zeros(2)
    assert nongaussian.q_char_zero(g, z, z, z, z) == pytest.approx(1.0)


def test_q_evaluation_zero_arguments():
    g = validate_cm(families.squeezed_thermal_cm(1.5, 1.5, 0.4))
    z = np.zeros(2)
    ev = nongaussian.q_evaluation(g, np.eye(4), z, z, z, z)
    assert ev.chi_q == pytest.approx(1.0)
    assert ev.f_value == pytest.approx(0.0)


def test_q_char_vacuum_kernel_single_mode():
    # vacuum CCM is sigma1, so the (eps, -zeta) form with eps=(t) gives
    # exponent -[t 0] (sigma1 + sigma1) [t 0]^T / 4 = 0
    g = validate_cm(np.eye(2))
    t = 0.7
    val = nongaussian.q_char_zero(g, [t], [0.0], [0.0], [0.0])
    assert val == pytest.approx(1.0)
    # with zeta too the quadratic form is -(gamma_plus coupling) t*z
    val2 = nongaussian.q_char_zero(g, [t], [0.0], [0.0], [t])
    assert val2 == pytest.approx(np.exp(t * t))


def test_zero_counts_reduce_to_gaussian_overlap():
    g = validate_cm(families.squeezed_thermal_cm(1.8, 1.4, 0.5))
    s = NGPASGSpec(kernel=g, adds=(0, 0), subs=(0, 0))
    gm = np.diag([1.5, 1.5, 2.0, 2.0])
    assert nongaussian.ngpasg_trace_finite(s, gm) == pytest.approx(
        gaussian_overlap(g.entries, gm), rel=1e-12
    )


def test_unsupported_order():
    g = validate_cm(np.eye(2))
    s = NGPASGSpec(kernel=g, adds=(3,), subs=(0,))
    with pytest.raises(UnsupportedOrder):
        nongaussian.ngpasg_trace_finite(s, np.eye(2))


def test_single_mode_against_fock_oracle():
    rng = np.random.default_rng(7)
    cut = 40
    for _ in range(3):
        gam = random_single_mode_cm(rng)
        lam = rng.uniform(1.2, 3.0)
        gm = np.diag([lam, lam])
        rho_g = single_mode_gaussian_rho(gam, cut)
        m_op = single_mode_gaussian_rho(gm, cut)
        spec_cm = validate_cm(gam)
        for k, m in [(1, 0), (0, 1), (1, 1), (2, 0), (2, 2)]:
            rho = added_subtracted_rho(rho_g, k, m, cut)
            brute = float(np.real(np.trace(rho @ m_op)))
            s = NGPASGSpec(kernel=spec_cm, adds=(k,), subs=(m,))
            assert nongaussian.ngpasg_trace_finite(s, gm) == pytest.approx(
                brute, abs=1e-6
            )


def test_two_mode_against_fock_oracle():
    cut = 12
    nbar, r = 0.15, 0.25
    rho_g = two_mode_squeezed_thermal_rho(nbar, r, cut)
    gam = validate_cm(families.symmetric_squeezed_thermal(nbar, r))
    a = ladder(cut)
    a1 = np.kron(a, np.eye(cut))
    a2 = np.kron(np.eye(cut), a)
    lam = 1.6
    gm = lam * np.eye(4)
    # thermal tail at this cutoff leaves a ~1e-6 CM residual, fine for a
    # 1e-5 trace comparison
    m_single = single_mode_gaussian_rho(np.diag([lam, lam]), cut, check_tol=1e-5)
    m_op = np.kron(m_single, m_single)
    for adds, subs in [((1, 0), (0, 0)), ((1, 1), (0, 0)), ((0, 0), (1, 1))]:
        op = np.eye(cut * cut)
        for mode_op, count in ((a1.conj().T, adds[0]), (a2.conj().T, adds[1])):
            op = np.linalg.matrix_power(mode_op, count) @ op
        sub_op = np.eye(cut * cut)
        for mode_op, count in ((a1, subs[0]), (a2, subs[1])):
            sub_op = np.linalg.matrix_power(mode_op, count) @ sub_op
        rho = op @ sub_op @ rho_g @ sub_op.conj().T @ op.conj().T
        rho = rho / np.trace(rho)
        brute = float(np.real(np.trace(rho @ m_op)))
        s = NGPASGSpec(kernel=gam, adds=adds, subs=subs)
        assert nongaussian.ngpasg_trace_finite(s, gm) == pytest.approx(brute, abs=1e-5)


def test_limit_equals_overlap_and_ignores_counts():
    g = validate_cm(families.squeezed_thermal_cm(1.8, 1.4, 0.5))
    gm = np.diag([3.0, 3.0, 2.0, 2.0])
    base = nongaussian.ngpasg_trace_limit(
        NGPASGSpec(kernel=g, adds=(0, 0), subs=(0, 0)), gm
    )
    assert base == pytest.approx(gaussian_overlap(g.entries, gm), rel=1e-12)
    other = nongaussian.ngpasg_trace_limit(
        NGPASGSpec(kernel=g, adds=(1, 1), subs=(2, 0)), gm
    )
    assert other == base


def test_finite_trace_converges_to_limit():
    g = validate_cm(families.squeezed_thermal_cm(1.5, 1.5, 0.5))
    s = NGPASGSpec(kernel=g, adds=(1, 1), subs=(0, 0))
    gaps = []
    for lam in (10.0, 100.0, 1000.0):
        gm = lam * np.eye(4)
        fin = nongaussian.ngpasg_trace_finite(s, gm)
        lim = nongaussian.ngpasg_trace_limit(s, gm)
        gaps.append(abs(fin - lim))
    assert gaps[0] > gaps[1] > gaps[2]


def test_photon_added_criterion_count_invariant():
    g = validate_cm(families.symmetric_squeezed_thermal(1.0, 0.7))
    verdicts = set()
    for k in range(3):
        for m in range(3):
            s = NGPASGSpec(kernel=g, adds=(k, k), subs=(m, m))
            v = nongaussian.photon_added_criterion(s)
            verdicts.add((v.criterion_id, round(v.margin, 10)))
    assert len(verdicts) == 1


def test_fig2a_boundary_values():
    assert nongaussian.fig2a_boundary(0.0) == 0.0
    assert nongaussian.fig2a_boundary(1.0) == pytest.approx(np.arctanh(0.5))
    ns = np.linspace(0.0, 4.0, 30)
    bs = [nongaussian.fig2a_boundary(n) for n in ns]
    assert all(b2 > b1 for b1, b2 in zip(bs, bs[1:]))
    with pytest.raises(ValueError):
        nongaussian.fig2a_boundary(-0.5)


def test_criterion_margin_vanishes_on_fig2a_boundary():
    for n_th in (0.3, 1.0, 2.5):
        r = nongaussian.fig2a_boundary(n_th)
        g = validate_cm(families.symmetric_squeezed_thermal(n_th, r))
        s = NGPASGSpec(kernel=g, adds=(1, 1), subs=(0, 0))
        v = nongaussian.photon_added_criterion(s)
        assert v.margin == pytest.approx(0.0, abs=1e-9)
        # below the boundary: separable; above: entangled
        g_lo = validate_cm(families.symmetric_squeezed_thermal(n_th, r * 0.9))
        g_hi = validate_cm(families.symmetric_squeezed_thermal(n_th, r * 1.1))
        assert not nongaussian.photon_added_criterion(
            NGPASGSpec(kernel=g_lo, adds=(1, 1), subs=(0, 0))
        ).entangled
        assert nongaussian.photon_added_criterion(
            NGPASGSpec(kernel=g_hi, adds=(1, 1), subs=(0, 0))
        ).entangled


def test_kernel_verdict_dispatch():
    sym = validate_cm(families.symmetric_squeezed_thermal(0.5, 0.3))
    assert nongaussian.kernel_verdict(sym).criterion_id == "symmetric_two_mode"
    asym = validate_cm(families.squeezed_thermal_cm(2.0, 1.5, 0.6))
    assert nongaussian.kernel_verdict(asym).criterion_id == "squeezed_thermal"
