import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cosserat_rayleigh.errors import BadDirection, ComplexFrequency, MissingParameter
from cosserat_rayleigh.material import characteristic_speeds
from cosserat_rayleigh.planewave import (
    acoustic_matrix_inplane,
    acoustic_matrix_outofplane,
    branch_frequencies,
)

from strategies import materials, wavenumbers


def test_longitudinal_branch_along_e1(alu):
    prob = acoustic_matrix_inplane(alu, [1.0, 0.0, 0.0], 2.0)
    omegas = branch_frequencies(prob)
    c_p = characteristic_speeds(alu).c_p
    assert np.min(np.abs(omegas - 2.0 * c_p)) < 1e-12


def test_rotational_branch_starts_at_cutoff(alu):
    prob = acoustic_matrix_inplane(alu, [0.0, 1.0, 0.0], 1e-6)
    omegas = branch_frequencies(prob)
    assert omegas[-1] == pytest.approx(characteristic_speeds(alu).cutoff_frequency, rel=1e-9)


def test_matrix_is_symmetric(alu):
    xi = np.array([0.6, 0.8, 0.0])
    q = acoustic_matrix_inplane(alu, xi, 1.3).matrix
    assert np.allclose(q, q.T)


@given(materials(), wavenumbers, st.floats(0.0, 2 * math.pi))
def test_isotropy_branches_do_not_depend_on_direction(m, k, phi):
    ref = branch_frequencies(acoustic_matrix_inplane(m, [1.0, 0.0, 0.0], k))
    xi = [math.cos(phi), math.sin(phi), 0.0]
    assert np.allclose(branch_frequencies(acoustic_matrix_inplane(m, xi, k)), ref, rtol=1e-10, atol=1e-12)


@given(materials(), wavenumbers)
def test_admissible_materials_have_real_frequencies(m, k):
    omegas = branch_frequencies(acoustic_matrix_inplane(m, [0.0, 1.0, 0.0], k))
    assert np.all(omegas > 0)


@pytest.mark.parametrize("xi", [[1.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.6, 0.0, 0.8], [1.0, 0.0]])
def test_bad_directions(alu, xi):
    with pytest.raises(BadDirection):
        acoustic_matrix_inplane(alu, xi, 1.0)


def test_bad_wavenumber(alu):
    with pytest.raises(BadDirection):
        acoustic_matrix_inplane(alu, [1.0, 0.0, 0.0], 0.0)


def test_out_of_plane_needs_weights(alu):
    with pytest.raises(MissingParameter):
        acoustic_matrix_outofplane(alu, 1.0)


def test_out_of_plane_branches(alu):
    m = alu.with_(alpha1=1.0, alpha2=0.5, alpha3=0.2)
    prob = acoustic_matrix_outofplane(m, 1.0)
    q = prob.matrix
    assert np.allclose(q, q.T)
    # theta1 decouples: its frequency follows from the (2, 2) entry alone
    omegas = branch_frequencies(prob)
    assert np.min(np.abs(omegas - math.sqrt(q[1, 1]))) < 1e-12


def test_negative_modulus_gives_complex_frequency(alu):
    bad = alu.with_(lambda_e=-5.0)
    with pytest.raises(ComplexFrequency):
        branch_frequencies(acoustic_matrix_inplane(bad, [1.0, 0.0, 0.0], 1.0))
