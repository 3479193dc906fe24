import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clockchain.strings import (ClockString, DimensionMismatchError,
                                OperatorSum, anticommutator, commutator,
                                identity_string, multiply,
                                nested_commutator, omega, pauli_string)

from conftest import dense_opsum


def random_string(rng, Q, N, max_coeff=2.0):
    c = complex(rng.uniform(-max_coeff, max_coeff),
                rng.uniform(-max_coeff, max_coeff))
    return ClockString(Q, N, rng.integers(0, Q, N), rng.integers(0, Q, N), c)


# -- multiply ----------------------------------------------------------------

def test_pauli_sy_sx_gives_minus_i_sz():
    sy = pauli_string(1, {1: "Y"})
    sx = pauli_string(1, {1: "X"})
    p = multiply(sy, sx)
    assert p.x_exp == (0,) and p.z_exp == (1,)
    assert p.coeff == -1j


def test_identity_multiplication_neutral(rng):
    for _ in range(10):
        s = random_string(rng, 3, 4)
        assert multiply(identity_string(3, 4), s).key == s.key
        assert multiply(identity_string(3, 4), s).coeff == s.coeff


def test_q3_exchange_rule():
    # Z X = omega^-1 (normal-ordered X Z)
    Z = ClockString(3, 1, [0], [1])
    X = ClockString(3, 1, [1], [0])
    p = multiply(Z, X)
    assert p.x_exp == (1,) and p.z_exp == (1,)
    assert abs(p.coeff - omega(3, -1)) < 1e-15
    # equivalently X Z = omega Z X
    lhs = multiply(X, Z)
    assert abs(lhs.coeff - omega(3, 1) * p.coeff) < 1e-15


def test_multiply_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        multiply(identity_string(2, 2), identity_string(2, 3))
    with pytest.raises(DimensionMismatchError):
        multiply(identity_string(2, 2), identity_string(3, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 4]),
       st.integers(1, 4))
def test_multiply_matches_dense(seed, Q, N):
    rng = np.random.default_rng(seed)
    a = random_string(rng, Q, N)
    b = random_string(rng, Q, N)
    got = dense_opsum(OperatorSum([multiply(a, b)]))
    want = dense_opsum(OperatorSum([a])) @ dense_opsum(OperatorSum([b]))
    assert np.abs(got - want).max() < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 5]))
def test_multiply_associative(seed, Q):
    rng = np.random.default_rng(seed)
    a, b, c = (random_string(rng, Q, 3) for _ in range(3))
    lhs = multiply(multiply(a, b), c)
    rhs = multiply(a, multiply(b, c))
    assert lhs.key == rhs.key
    assert abs(lhs.coeff - rhs.coeff) < 1e-13 * max(1, abs(lhs.coeff))


# -- add / scale -------------------------------------------------------------

def test_add_cancellation_empty_sum():
    h = OperatorSum([pauli_string(2, {1: "Z"})])
    assert (h + (-1.0) * h).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_add_commutative_structural(seed):
    rng = np.random.default_rng(seed)
    a = OperatorSum([random_string(rng, 3, 3) for _ in range(4)])
    b = OperatorSum([random_string(rng, 3, 3) for _ in range(4)])
    assert a + b == b + a


def test_scale_by_one_is_identity_map():
    rng = np.random.default_rng(3)
    H = OperatorSum([random_string(rng, 2, 4) for _ in range(5)])
    assert 1.0 * H == H


def test_sum_mixed_dimensions_rejected():
    with pytest.raises(DimensionMismatchError):
        OperatorSum([identity_string(2, 2), identity_string(2, 3)])


# -- commutators ---------------------------------------------------------------

def _gc26_generator(j):
    # range-2 family on 6 sites: h_j = sigma^y_j sigma^x_{j+1} sigma^x_{j+2}
    sites = {(j - 1) % 6 + 1: "Y", j % 6 + 1: "X", (j + 1) % 6 + 1: "X"}
    return OperatorSum([pauli_string(6, sites)])


def test_self_commutator_vanishes():
    h = _gc26_generator(1)
    assert commutator(h, h).is_zero()


def test_range2_distant_pair_commutes():
    # distance 3 on six sites: outside range 2 from both directions
    assert commutator(_gc26_generator(1), _gc26_generator(4)).is_zero()


def test_range2_near_pair_anticommutes():
    # indices 1 and 5 are distance 2 around the ring
    assert anticommutator(_gc26_generator(1), _gc26_generator(5)).is_zero()


def test_nested_commutator_depth_one_and_self():
    rng = np.random.default_rng(11)
    a = OperatorSum([random_string(rng, 2, 3) for _ in range(3)])
    b = OperatorSum([random_string(rng, 2, 3) for _ in range(3)])
    assert nested_commutator(a, b, 1) == commutator(a, b)
    assert nested_commutator(a, a, 2).is_zero()
    with pytest.raises(ValueError):
        nested_commutator(a, b, 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_jacobi_identity(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (OperatorSum([random_string(rng, 2, 3) for _ in range(2)])
               for _ in range(3))
    total = commutator(a, commutator(b, c)) \
        + commutator(b, commutator(c, a)) \
        + commutator(c, commutator(a, b))
    assert total.max_coeff() < 1e-12


# -- adjoint -------------------------------------------------------------------

def test_adjoint_sigma_z_fixed():
    sz = OperatorSum([pauli_string(1, {1: "Z"})])
    assert sz.adjoint() == sz


def test_adjoint_omega_z_q3():
    v = OperatorSum([ClockString(3, 1, [0], [1], omega(3, 1))])
    expect = OperatorSum([ClockString(3, 1, [0], [2], omega(3, -1))])
    assert v.adjoint().equals(expect, 1e-15)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 4]))
def test_adjoint_involution_and_dense_match(seed, Q):
    rng = np.random.default_rng(seed)
    op = OperatorSum([random_string(rng, Q, 3) for _ in range(3)])
    if Q == 2:
        assert op.adjoint().adjoint() == op      # exact: phases are +-1, +-i
    else:
        # reorder phases are root-of-unity floats, exact to one ulp
        assert op.adjoint().adjoint().equals(op, 1e-13)
    got = dense_opsum(op.adjoint())
    want = dense_opsum(op).conj().T
    assert np.abs(got - want).max() < 1e-12


# -- equals / translate ----------------------------------------------------------

def test_equals_exact_and_scaled():
    h = OperatorSum([pauli_string(3, {1: "X", 2: "X"})])
    assert h.equals(h, 0.0)
    assert not h.equals(2.0 * h, 1e-12)


def test_sqrt2_e_minus_id_equals_h():
    h = OperatorSum([pauli_string(2, {1: "Z"})])
    e = (1 / np.sqrt(2)) * (OperatorSum.identity(2, 2) + h)
    assert (np.sqrt(2) * e - OperatorSum.identity(2, 2)).equals(h, 1e-12)


def test_translate_relabels_sites():
    h1 = OperatorSum([pauli_string(4, {1: "Z"})])
    h3 = OperatorSum([pauli_string(4, {3: "Z"})])
    assert h1.translate(2) == h3


def test_translate_by_n_is_identity_map():
    rng = np.random.default_rng(5)
    op = OperatorSum([random_string(rng, 3, 5) for _ in range(4)])
    assert op.translate(5) == op


def test_translation_invariance_of_homogeneous_sum():
    # homogeneous range-2 chain Hamiltonian is translation invariant
    terms = []
    for j in range(1, 7):
        terms.append(pauli_string(
            6, {(j - 1) % 6 + 1: "Y", j % 6 + 1: "X", (j + 1) % 6 + 1: "X"}))
    H = OperatorSum(terms)
    assert H.translate(1) == H


# -- powers / invariants ----------------------------------------------------------

@pytest.mark.parametrize("Q", [2, 3, 4])
def test_generator_power_q_is_identity(Q):
    # X..XZ strings and sigma^y-strings both have h^Q = id
    x = [1, 1, 0, 0]
    z = [0, 0, 1, 0]
    h = OperatorSum([ClockString(Q, 4, x, z)])
    assert (h ** Q).equals(OperatorSum.identity(Q, 4), 1e-13)
    if Q == 2:
        hy = OperatorSum([pauli_string(4, {1: "Y", 2: "X", 3: "X"})])
        assert (hy * hy).equals(OperatorSum.identity(2, 4), 0.0)


def test_invalid_constructions_rejected():
    with pytest.raises(ValueError):
        ClockString(1, 2, [0, 0], [0, 0])
    with pytest.raises(ValueError):
        ClockString(2, 2, [0], [0, 0])
    with pytest.raises(ValueError):
        ClockString(2, 1, [0], [0], complex("nan"))
    with pytest.raises(ValueError):
        OperatorSum([])


def test_canonical_order_and_merging():
    a = pauli_string(2, {1: "X"}, 0.5)
    b = pauli_string(2, {2: "Z"})
    c = pauli_string(2, {1: "X"}, 0.5)
    op = OperatorSum([b, a, c])
    keys = [t.key for t in op.terms]
    assert keys == sorted(keys)
    assert op.coefficient((1, 0), (0, 0)) == 1.0


def test_pruning_tolerance():
    tiny = pauli_string(2, {1: "X"}, 1e-16)
    op = OperatorSum([tiny])
    assert op.is_zero()


def test_json_round_trip():
    rng = np.random.default_rng(9)
    op = OperatorSum([random_string(rng, 3, 4) for _ in range(5)])
    back = OperatorSum.from_json(op.to_json())
    assert back.equals(op, 1e-15)
    d = op.to_json_dict()
    assert set(d) == {"Q", "N", "terms"}
    assert all(set(t) == {"x", "z", "re", "im"} for t in d["terms"])


def test_frobenius_norm_matches_dense():
    rng = np.random.default_rng(13)
    op = OperatorSum([random_string(rng, 3, 3) for _ in range(4)])
    assert abs(op.frobenius_norm()
               - np.linalg.norm(dense_opsum(op))) < 1e-10
