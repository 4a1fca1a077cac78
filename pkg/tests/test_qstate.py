import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coherentinfo import qstate
from coherentinfo.errors import BlochNormExceeded, NotHermitian, NotNormalized, NotPSD, NotSquare


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_entropy_maximally_mixed(d):
    assert qstate.von_neumann_entropy(qstate.maximally_mixed(d)) == pytest.approx(math.log2(d), abs=1e-12)


def test_entropy_pure_state_is_zero():
    assert qstate.von_neumann_entropy(qstate.pure_state([1, 1j, -1])) == pytest.approx(0.0, abs=1e-12)


def test_entropy_floor_drops_tiny_eigenvalues():
    assert qstate.entropy_of_spectrum([1.0, 1e-13]) == 0.0
    assert qstate.entropy_of_spectrum([0.5, 0.5]) == pytest.approx(1.0)


def test_entropy_unitary_invariance(rng):
    rho = qstate.random_density(4, rng)
    u = qstate.random_unitary(4, rng)
    assert qstate.von_neumann_entropy(u @ rho @ u.conj().T) == pytest.approx(
        qstate.von_neumann_entropy(rho), abs=1e-10
    )


def test_validate_density_errors():
    with pytest.raises(NotSquare):
        qstate.validate_density(np.ones((2, 3)) / 3)
    with pytest.raises(NotNormalized):
        qstate.validate_density(np.eye(2))
    with pytest.raises(NotHermitian):
        qstate.validate_density(np.array([[0.5, 0.3], [0.0, 0.5]]))
    with pytest.raises(NotPSD):
        qstate.validate_density(np.diag([1.5, -0.5]))


def test_qubit_state_layout():
    rho = qstate.qubit_state(0.7, 0.1 + 0.2j)
    assert rho[0, 0] == 0.7 and rho[1, 0] == 0.1 - 0.2j
    assert qstate.density_to_bloch(qstate.qubit_state(1.0)) == (1.0, 0.0, 0.0)


bloch = st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda r: sum(c * c for c in r) <= 1.0)


@given(bloch)
def test_bloch_round_trip(r):
    rho = qstate.bloch_to_density(qstate.QubitBloch(*r))
    qstate.validate_density(rho)
    np.testing.assert_allclose(qstate.density_to_bloch(rho), r, atol=1e-12)


def test_bloch_norm_exceeded():
    with pytest.raises(BlochNormExceeded):
        qstate.bloch_to_density(qstate.QubitBloch(1.0, 0.5, 0.0))


def test_conjugate_state_same_spectrum(rng):
    rho = qstate.random_density(3, rng)
    conj = qstate.conjugate_state(rho)
    assert np.array_equal(conj, rho.conj())
    assert qstate.von_neumann_entropy(conj) == pytest.approx(qstate.von_neumann_entropy(rho))


def test_random_density_rank(rng):
    rho = qstate.random_density(4, rng, rank=1)
    assert qstate.von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-9)
