import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clockchain import linalg
from clockchain.models import (ConfigError, ModelSpec, UnknownModelError,
                               clifford_transform, commuting_charge,
                               dual_generator, gca_generator, hamiltonian,
                               load_model_config, model_from_dict,
                               onsager_generator, onsager_tower, tl_generator)
from clockchain.strings import (ClockString, OperatorSum, commutator,
                                nested_commutator, pauli_string)

from conftest import dense_opsum, pauli_site_op


TFIM4 = ModelSpec("tfim", L=4)
FM6 = ModelSpec("fendley", L=6, r=2)
FF8V4 = ModelSpec("ff8v", L=4)
CPFM6 = ModelSpec("cpfm", L=6, r=2, Q=3)


# -- ModelSpec validation -----------------------------------------------------

def test_spec_validation():
    with pytest.raises(UnknownModelError):
        ModelSpec("bogus", L=4)
    with pytest.raises(ConfigError):
        ModelSpec("tfim", L=4, Q=3)
    with pytest.raises(ConfigError):
        ModelSpec("tfim", L=4, r=2)
    with pytest.raises(ConfigError):
        ModelSpec("fendley", L=0, r=2)
    with pytest.raises(ConfigError):
        ModelSpec("fendley", L=4, r=2, boundary="twisted")
    assert ModelSpec("cpfm", L=6, r=2, Q=3).n_generators == 6
    assert TFIM4.n_generators == 8


def test_divisibility_guard():
    with pytest.raises(ConfigError):
        onsager_generator(ModelSpec("fendley", L=7, r=2), 0)


# -- gca_generator ------------------------------------------------------------

def test_tfim_generators():
    assert gca_generator(TFIM4, 1) == OperatorSum([pauli_string(4, {1: "Z"})])
    assert gca_generator(TFIM4, 2) == OperatorSum(
        [pauli_string(4, {1: "X", 2: "X"})])
    # periodic wrap of the even generator
    assert gca_generator(TFIM4, 8) == OperatorSum(
        [pauli_string(4, {4: "X", 1: "X"})])


def test_fendley_generator_r2():
    got = gca_generator(FM6, 1)
    want = OperatorSum([pauli_string(6, {1: "Y", 2: "X", 3: "X"})])
    assert got == want
    dense = linalg.to_dense(got)
    oracle = pauli_site_op({1: "Y", 2: "X", 3: "X"}, 6)
    assert np.abs(dense - oracle).max() < 1e-14


def test_cpfm_generator():
    got = gca_generator(CPFM6, 1)
    want = OperatorSum([ClockString(3, 6, [1, 1, 0, 0, 0, 0],
                                    [0, 0, 1, 0, 0, 0])])
    assert got == want


def test_ff8v_generator_and_range():
    got = gca_generator(FF8V4, 1)
    assert got == OperatorSum([pauli_string(4, {1: "Y", 2: "X"})])
    with pytest.raises(IndexError):
        gca_generator(FF8V4, 5)
    with pytest.raises(IndexError):
        gca_generator(FF8V4, 0)


def test_mixed_kind_has_no_single_generator():
    with pytest.raises(UnknownModelError):
        gca_generator(ModelSpec("fendley_mixed", L=6, r=2, theta=0.3), 1)


def test_chiral_potts_generators():
    m = ModelSpec("chiral_potts", L=3, Q=3)
    zgen = gca_generator(m, 1)
    assert zgen == OperatorSum([ClockString(3, 3, [0, 0, 0], [1, 0, 0])])
    xgen = gca_generator(m, 2)
    assert xgen == OperatorSum([ClockString(3, 3, [1, 2, 0], [0, 0, 0])])


# -- tl_generator --------------------------------------------------------------

def test_tl_q2_form():
    e = tl_generator(TFIM4, 1)
    want = (1 / math.sqrt(2)) * (OperatorSum.identity(2, 4)
                                 + OperatorSum([pauli_string(4, {1: "Z"})]))
    assert e.equals(want, 1e-15)


def test_tl_q2_idempotent():
    e = tl_generator(FM6, 3)
    assert (e * e - math.sqrt(2) * e).max_coeff() <= 1e-12


def test_tl_q3_idempotent_beta_sqrt3_dense_oracle():
    # dense evaluation at L = 3 fixes beta = sqrt(Q), not sqrt(N)
    m = ModelSpec("cpfm", L=3, r=1, Q=3)
    e = tl_generator(m, 1, 1)
    E = dense_opsum(e)
    assert np.abs(E @ E - math.sqrt(3) * E).max() < 1e-12
    assert np.abs(E @ E - math.sqrt(27) * E).max() > 1.0


def test_tl_colour_label_validation():
    with pytest.raises(ValueError):
        tl_generator(CPFM6, 1, 0)
    with pytest.raises(ValueError):
        tl_generator(CPFM6, 1, 3)
    tl_generator(CPFM6, 1, 2)  # valid


# -- onsager_generator -----------------------------------------------------------

def test_tfim_a0_is_total_sz():
    A0 = onsager_generator(TFIM4, 0)
    want = OperatorSum([pauli_string(4, {j: "Z"}) for j in range(1, 5)])
    assert A0 == want
    assert A0.n_terms() == 4


def test_ff8v_a1():
    A1 = onsager_generator(FF8V4, 1)
    want = OperatorSum([pauli_string(4, {2: "Y", 3: "X"}),
                        pauli_string(4, {4: "Y", 1: "X"})])
    assert A1 == want


def test_fendley_a_families_have_l_over_3_unit_terms():
    for s in range(3):
        A = onsager_generator(FM6, s)
        assert A.n_terms() == 2
        assert all(abs(t.coeff) == 1.0 for t in A.terms)


def test_dolan_grady_tfim():
    A0, A1 = onsager_generator(TFIM4, 0), onsager_generator(TFIM4, 1)
    for a, b in ((A0, A1), (A1, A0)):
        defect = nested_commutator(a, b, 3) - 16.0 * commutator(a, b)
        assert defect.frobenius_norm() <= 1e-10


def test_dolan_grady_cpfm_with_weighted_lift():
    A0, A1 = onsager_generator(CPFM6, 0), onsager_generator(CPFM6, 1)
    defect = nested_commutator(A0, A1, 3) - 16.0 * commutator(A0, A1)
    assert defect.frobenius_norm() <= 1e-10
    assert not commutator(A0, A1).is_zero(1e-9)


def test_weighted_lift_reduces_to_plain_sum_at_q2():
    # the 4/Q normalization of the root-of-unity lift collapses to the bare
    # generator sum when Q = 2
    m2 = ModelSpec("cpfm", L=6, r=2, Q=2)
    fm = onsager_generator(FM6, 0)
    cp = onsager_generator(m2, 0)
    # both have unit weights; the fendley family carries sigma^y heads so
    # compare structurally through the generator count and coefficients
    assert cp.n_terms() == 2
    assert all(abs(t.coeff - 1.0) < 1e-14 for t in cp.terms)
    assert fm.n_terms() == cp.n_terms()


def test_nested_commutator_depth3_tfim_identity():
    A0, A1 = onsager_generator(TFIM4, 0), onsager_generator(TFIM4, 1)
    lhs = nested_commutator(A0, A1, 3)
    rhs = 16.0 * commutator(A0, A1)
    assert (lhs - rhs).max_coeff() <= 1e-12


# -- commuting_charge ---------------------------------------------------------

def test_tfim_charge_is_spin_current():
    Hc = commuting_charge(TFIM4, 0, 1)
    want = OperatorSum(
        [pauli_string(4, {j: "X", j % 4 + 1: "Y"}, 0.5) for j in range(1, 5)]
        + [pauli_string(4, {j: "Y", j % 4 + 1: "X"}, -0.5)
           for j in range(1, 5)])
    assert Hc.equals(want, 1e-13)


def test_charge_commutes_with_both_generators():
    for (s, t) in [(0, 1), (0, 2), (1, 2)]:
        Hc = commuting_charge(FM6, s, t)
        assert commutator(Hc, onsager_generator(FM6, s)).is_zero()
        assert commutator(Hc, onsager_generator(FM6, t)).is_zero()


def test_charge_is_hermitian():
    Hc = commuting_charge(FM6, 0, 2)
    assert (Hc - Hc.adjoint()).max_coeff() <= 1e-13


def test_charge_prefactor_conventions():
    half = commuting_charge(FM6, 0, 1, prefactor="half")
    quarter = commuting_charge(FM6, 0, 1, prefactor="quarter")
    assert half.equals(2.0 * quarter, 1e-13)


def test_charge_argument_validation():
    with pytest.raises(ValueError):
        commuting_charge(FM6, 1, 1)
    with pytest.raises(ValueError):
        commuting_charge(FM6, 2, 1)
    with pytest.raises(ConfigError):
        commuting_charge(CPFM6, 0, 1)


# -- hamiltonian ----------------------------------------------------------------

def test_tfim_l2_hamiltonian_doubles_bond():
    m = ModelSpec("tfim", L=2, lam=1.0)
    H = hamiltonian(m)
    want = OperatorSum([pauli_string(2, {1: "Z"}), pauli_string(2, {2: "Z"}),
                        pauli_string(2, {1: "X", 2: "X"}, 2.0)])
    assert H.equals(want, 1e-14)


def test_tfim_lambda_weighting():
    m = ModelSpec("tfim", L=4, lam=0.7)
    H = hamiltonian(m)
    assert abs(H.coefficient([0] * 4, [1, 0, 0, 0]) - 0.7) < 1e-14


def test_fendley_homogeneous_6_terms():
    H = hamiltonian(FM6)
    assert H.n_terms() == 6
    assert H.translate(1) == H


def test_fendley_open_chain_term_count_and_coupling_check():
    m = ModelSpec("fendley", L=6, r=2, boundary="open")
    assert hamiltonian(m).n_terms() == 4
    m = ModelSpec("fendley", L=6, r=2, boundary="open",
                  couplings=(1.0, 2.0, 3.0, 4.0))
    assert hamiltonian(m).n_terms() == 4
    with pytest.raises(ConfigError):
        hamiltonian(ModelSpec("fendley", L=6, r=2, boundary="open",
                              couplings=(1.0, 2.0)))


def test_fendley_staggered_pattern_expansion():
    m = ModelSpec("fendley", L=6, r=2, couplings=(2.0, 3.0, 5.0))
    H = hamiltonian(m)
    direct = OperatorSum.zero(2, 6)
    for j, w in zip(range(1, 7), (2.0, 3.0, 5.0, 2.0, 3.0, 5.0)):
        direct = direct + w * gca_generator(FM6, j)
    assert H.equals(direct, 1e-14)


def test_cpfm_hamiltonian_hermitian():
    H = hamiltonian(CPFM6)
    assert (H - H.adjoint()).max_coeff() <= 1e-13


def test_cpfm_hamiltonian_equals_weighted_a_sum():
    # H = (Q/4) * sum_s A^(s) under the Dolan-Grady normalization
    H = hamiltonian(CPFM6)
    total = onsager_generator(CPFM6, 0) + onsager_generator(CPFM6, 1) \
        + onsager_generator(CPFM6, 2)
    assert H.equals((3.0 / 4.0) * total, 1e-12)


def test_chiral_potts_hamiltonian_hermitian_and_lambda():
    m = ModelSpec("chiral_potts", L=3, Q=3, lam=0.4)
    H = hamiltonian(m)
    assert (H - H.adjoint()).max_coeff() <= 1e-13
    Hd = dense_opsum(H)
    assert np.abs(Hd - Hd.conj().T).max() < 1e-12


def test_mixed_hamiltonian_combination():
    m = ModelSpec("fendley_mixed", L=6, r=2, theta=0.3)
    H = hamiltonian(m)
    Hf = hamiltonian(FM6)
    Hd = hamiltonian(ModelSpec("fendley_dual", L=6, r=2))
    want = math.cos(0.3) * Hf + math.sin(0.3) * Hd
    assert H.equals(want, 1e-13)


# -- dual generators ---------------------------------------------------------------

def test_fendley_dual_generator():
    got = dual_generator(FM6, 1)
    want = OperatorSum([pauli_string(6, {1: "X", 2: "X", 3: "Y"})])
    assert got == want


def test_ff8v_dual_generator():
    m = ModelSpec("ff8v", L=4)
    assert dual_generator(m, 1) == OperatorSum(
        [pauli_string(4, {1: "X", 2: "Y"})])


def test_dual_family_commutes_everywhere():
    for j in range(1, 7):
        for k in range(1, 7):
            c = commutator(gca_generator(FM6, j), dual_generator(FM6, k))
            assert c.is_zero()


# -- Clifford transformation ---------------------------------------------------------

def test_clifford_fixes_sigma_x():
    sx = OperatorSum([pauli_string(6, {2: "X"})])
    assert clifford_transform(sx, 2) == sx


def test_clifford_maps_generator_to_shifted_dual():
    for j in range(1, 7):
        img = clifford_transform(gca_generator(FM6, j), 2)
        want = dual_generator(FM6, (j - 2 - 1) % 6 + 1)
        assert img.equals(want, 1e-13)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_clifford_preserves_commutators(seed):
    rng = np.random.default_rng(seed)

    def rand_pauli():
        return OperatorSum([ClockString(2, 6, rng.integers(0, 2, 6),
                                        rng.integers(0, 2, 6),
                                        complex(rng.uniform(-1, 1)))])

    a, b = rand_pauli(), rand_pauli()
    lhs = clifford_transform(commutator(a, b), 2)
    rhs = commutator(clifford_transform(a, 2), clifford_transform(b, 2))
    assert lhs.equals(rhs, 1e-12)


def test_clifford_rejects_clock_input():
    with pytest.raises(ValueError):
        clifford_transform(OperatorSum.identity(3, 3), 1)


# -- onsager tower -------------------------------------------------------------------

def test_tower_g0_vanishes():
    A0, A1 = onsager_generator(TFIM4, 0), onsager_generator(TFIM4, 1)
    fam = onsager_tower(A0, A1, 2)
    assert fam[("G", 0)].is_zero()


def test_tower_relations_tfim():
    A0, A1 = onsager_generator(TFIM4, 0), onsager_generator(TFIM4, 1)
    fam = onsager_tower(A0, A1, 3)
    r = commutator(fam[("A", 2)], fam[("A", 1)]) - 4.0 * fam[("G", 1)]
    assert r.frobenius_norm() <= 1e-10
    r = commutator(fam[("G", 1)], fam[("G", 2)])
    assert r.frobenius_norm() <= 1e-10
    r = commutator(fam[("G", 1)], fam[("A", 1)]) \
        - 2.0 * (fam[("A", 2)] - fam[("A", 0)])
    assert r.frobenius_norm() <= 1e-10


def test_tower_negative_indices():
    A0, A1 = onsager_generator(TFIM4, 0), onsager_generator(TFIM4, 1)
    fam = onsager_tower(A0, A1, 2)
    assert fam[("G", -1)].equals(-1.0 * fam[("G", 1)], 1e-13)
    assert ("A", -2) in fam


# -- config parsing --------------------------------------------------------------------

def test_model_from_dict_lambda_alias():
    m = model_from_dict({"kind": "tfim", "L": 4, "lambda": 0.5})
    assert m.lam == 0.5


def test_model_from_dict_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        model_from_dict({"kind": "tfim", "L": 4, "mystery": 1})


def test_load_toml_and_json(tmp_path):
    p = tmp_path / "m.toml"
    p.write_text('kind = "fendley"\nL = 6\nr = 2\n')
    m = load_model_config(p)
    assert (m.kind, m.L, m.r) == ("fendley", 6, 2)
    q = tmp_path / "m.json"
    q.write_text(json.dumps({"kind": "cpfm", "L": 6, "r": 2, "Q": 3}))
    m = load_model_config(q)
    assert (m.kind, m.Q) == ("cpfm", 3)


def test_load_config_bad_file(tmp_path):
    p = tmp_path / "m.json"
    p.write_text("{{{not json")
    with pytest.raises(ConfigError):
        load_model_config(p)
