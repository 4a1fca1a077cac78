import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coherentinfo import qstate, superop
from coherentinfo.cohinfo import coherent_information, joint_state, one_time_coherent_information
from coherentinfo.errors import DimMismatch, NotTP
from coherentinfo.superop import Superoperator

from test_superop import random_channel


def test_identity_channel_keeps_everything(rng):
    rho = qstate.random_density(3, rng)
    rep = coherent_information(superop.identity_channel(3), rho)
    assert rep.s_e == pytest.approx(0.0, abs=1e-9)
    assert rep.i_c == pytest.approx(rep.s_in, abs=1e-9)


def test_unitary_channel_ic_equals_source_entropy(rng):
    for _ in range(5):
        rho = qstate.random_density(4, rng)
        rep = coherent_information(superop.from_unitary(qstate.random_unitary(4, rng)), rho)
        assert rep.i_c == pytest.approx(rep.s_in, abs=1e-9)


def test_constant_channel_has_no_coherent_information(rng):
    sigma = qstate.random_density(2, rng)
    rep = coherent_information(superop.constant_channel(2, sigma), np.eye(2) / 2)
    assert rep.i_c == 0.0
    assert rep.raw_ic == pytest.approx(-1.0, abs=1e-9)
    assert rep.s_out == pytest.approx(qstate.von_neumann_entropy(sigma), abs=1e-9)


def test_joint_state_pure_for_pure_input():
    js = joint_state(superop.identity_channel(2), qstate.pure_state([1, 1j]))
    assert qstate.von_neumann_entropy(js.rho_alpha) == pytest.approx(0.0, abs=1e-10)


def test_zero_eigenvalues_dropped():
    js = joint_state(superop.identity_channel(3), np.diag([0.5, 0.5, 0.0]))
    assert np.trace(js.rho_alpha).real == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 3))
def test_marginals_and_bounds(seed, din, dout):
    rng = np.random.default_rng(seed)
    s = random_channel(din, dout, rng)
    rho = qstate.random_density(din, rng)
    js = joint_state(s, rho)
    np.testing.assert_allclose(js.output_marginal(), s(rho), atol=1e-10)
    np.testing.assert_allclose(js.input_marginal(), rho.conj(), atol=1e-10)
    rep = coherent_information(s, rho)
    assert rep.raw_ic <= rep.s_in + 1e-9
    assert 0.0 <= rep.i_c <= math.log2(dout) + 1e-9


def test_degenerate_input_basis_choice_irrelevant(rng):
    s = random_channel(2, 2, rng)
    u = qstate.random_unitary(2, rng)
    a = coherent_information(s, np.eye(2) / 2)
    # same maximally mixed input, written in another eigenbasis
    b = coherent_information(s, u @ (np.eye(2) / 2) @ u.conj().T)
    assert a.raw_ic == pytest.approx(b.raw_ic, abs=1e-10)


def test_measurement_after_channel_kills_information(rng):
    s = superop.compose(superop.reduction_channel(3), random_channel(2, 3, rng))
    assert coherent_information(s, qstate.random_density(2, rng)).i_c <= 1e-9


def test_rejects_non_tp_and_dims(rng):
    with pytest.raises(NotTP):
        coherent_information(Superoperator(2 * superop.identity_channel(2).blocks), np.eye(2) / 2)
    with pytest.raises(DimMismatch):
        coherent_information(superop.identity_channel(3), np.eye(2) / 2)


def test_one_time_bell_state():
    psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    assert one_time_coherent_information(np.outer(psi, psi), (2, 2)) == pytest.approx(1.0)
    assert one_time_coherent_information(np.eye(4) / 4, (2, 2)) == 0.0
    with pytest.raises(DimMismatch):
        one_time_coherent_information(np.eye(4) / 4, (3, 2))
