import math

import numpy as np
import pytest

from shadowsum.errors import InvalidLevel, NonIntegerFusion, NotInAlcove, OnWall
from shadowsum.liealg import build_root_system
from shadowsum.modular import (
    alcove_weights,
    build_modular_data,
    fusion_matrix_identity_check,
    modular_identity_report,
    qdim,
    s_matrix,
    signed_qdim,
    sin_product,
    verlinde_fusion3,
)

CASES = [("A1", 1), ("A1", 4), ("A2", 2), ("B2", 2), ("G2", 1), ("C3", 1)]


@pytest.mark.parametrize("name, k", CASES)
def test_modular_identities(name, k):
    rep = modular_identity_report(build_modular_data(name, k))
    assert rep["pass"], rep


def test_alcove_sizes_and_order():
    rs = build_root_system("A2")
    assert len(alcove_weights(rs, 2)) == 6
    assert alcove_weights(rs, 1) == ((0, 0), (1, 0), (0, 1))
    # G2 at level 1: comarks (1, 2), so only the 7-dimensional omega_1 joins 0
    assert alcove_weights(build_root_system("G2"), 1) == ((0, 0), (1, 0))
    assert len(alcove_weights(build_root_system("A1"), 7)) == 8


def test_a1_level1_s_matrix():
    md = build_modular_data("A1", 1)
    expected = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    assert np.allclose(md.s, expected, atol=1e-14)


def test_exponent_sign_selection():
    # with an odd number of positive roots the positive exponent fails (ST)^3 = C
    for name, k, sign in [("A1", 3, -1), ("A2", 2, -1), ("B2", 2, 1), ("G2", 1, 1)]:
        assert build_modular_data(name, k).exponent_sign == sign
    rs = build_root_system("A1")
    S = s_matrix(rs, 3, 1)
    md = build_modular_data(rs, 3)
    ST = S @ md.t
    assert np.max(np.abs(ST @ ST @ ST - md.c)) > 1.0


@pytest.mark.parametrize("name, k", CASES)
def test_quantum_dimensions(name, k):
    md = build_modular_data(name, k)
    for lam in md.alcove:
        assert abs(qdim(md, lam) - sin_product(md.rs, md.shifted_level, lam)) < 1e-12
        assert qdim(md, lam) > 0


def test_signed_qdim():
    md = build_modular_data("A1", 1)
    assert abs(signed_qdim(md, (3,)) + 1) < 1e-12
    assert abs(signed_qdim(md, (1,)) - 1) < 1e-12
    with pytest.raises(OnWall):
        signed_qdim(md, (2,))


def test_verlinde_small_tables():
    md = build_modular_data("A1", 1)
    assert verlinde_fusion3(md, (1,), (1,), (1,))[1] == 0
    assert verlinde_fusion3(md, (1,), (1,), (0,))[1] == 1
    md = build_modular_data("A2", 1)
    # Z_3 fusion: omega_1 x omega_1 = omega_2, so N_{w1 w1 w1} = 1
    assert verlinde_fusion3(md, (1, 0), (1, 0), (1, 0))[1] == 1
    assert md.N_upper((0, 1), (1, 0), (1, 0)) == 1
    assert md.N_upper((0, 0), (1, 0), (1, 0)) == 0


@pytest.mark.parametrize("name, k", CASES)
def test_fusion_tensor_integral_and_symmetric(name, k):
    md = build_modular_data(name, k)
    N = md.fusion_integers
    assert np.all(N >= 0)
    assert np.array_equal(N, N.transpose(1, 0, 2))
    assert np.array_equal(N, N.transpose(0, 2, 1))
    # N_{0 a b} = C_{ab}
    assert np.array_equal(N[0], md.c.astype(np.int64))


@pytest.mark.parametrize("name, k", CASES)
def test_fusion_matrix_identity(name, k):
    assert fusion_matrix_identity_check(build_modular_data(name, k))["pass"]


def test_errors():
    with pytest.raises(InvalidLevel):
        build_modular_data("A1", 0)
    with pytest.raises(InvalidLevel):
        build_modular_data("A1", 1.5)
    md = build_modular_data("A1", 2)
    with pytest.raises(NotInAlcove):
        md.index((3,))
    assert issubclass(NonIntegerFusion, Exception)
