import cmath
import itertools
import math

import numpy as np
import pytest

from pointsplit.fock import (
    ELECTRON,
    POSITRON,
    FockVector,
    SlotIndex,
    apply_create,
    inner,
    n_slots_for,
    vacuum,
)
from pointsplit.lattice import LatticeConfig, dispersion, spinor
from pointsplit.modeops import (
    ModeOperator,
    annihilator_op,
    apply_operator,
    boulware_current,
    charge_commutator_gradient_form,
    charge_density,
    coeff_distance,
    commutator,
    constant_op,
    creator_op,
    current_density,
    current_shifted,
    expectation,
    hamiltonian,
    is_hermitian,
    multiply,
    smeared_charge,
    split_current,
    split_hamiltonian,
    split_hamiltonian_raw,
    total_charge,
    vev,
)
from pointsplit.trigpoly import TrigPoly

CFG1 = LatticeConfig(1.0, 1.0, 1)
CFG2 = LatticeConfig(1.0, 1.0, 2)
N1 = n_slots_for(1)
N2 = n_slots_for(2)


def dense(op: ModeOperator) -> np.ndarray:
    """Dense matrix via action on every basis state (oracle-only representation)."""
    dim = 1 << op.n_slots
    mat = np.zeros((dim, dim), dtype=complex)
    for bits in range(dim):
        image = apply_operator(op, FockVector.basis_state(bits, op.n_slots))
        for out_bits, amp in image.amp.items():
            mat[out_bits, bits] = amp
    return mat


def random_bilinear(rng, n_slots: int) -> ModeOperator:
    terms = {}
    for _ in range(4):
        s, t = rng.integers(0, n_slots, size=2)
        c = complex(rng.normal(), rng.normal())
        terms[((int(s),), (int(t),))] = terms.get(((int(s),), (int(t),)), 0j) + c
    return ModeOperator(n_slots, terms)


# -- product and commutator basics ------------------------------------------


def test_swap_identity():
    # a_s a'_s normal-orders to 1 - a'_s a_s
    a = annihilator_op(2, N1)
    c = creator_op(2, N1)
    prod = multiply(a, c)
    expect = constant_op(1.0, N1) - multiply(c, a)
    assert coeff_distance(prod, expect) == 0.0


def test_vev_of_number_like_terms():
    c = creator_op(1, N1)
    a = annihilator_op(1, N1)
    assert vev(multiply(c, a)) == 0
    assert vev(multiply(a, c)) == pytest.approx(1.0)


def test_product_associativity_and_dense_oracle():
    rng = np.random.default_rng(3)
    for _ in range(5):
        A, B, C = (random_bilinear(rng, N1) for _ in range(3))
        left = multiply(multiply(A, B), C)
        right = multiply(A, multiply(B, C))
        assert coeff_distance(left, right) < 1e-12
        assert np.abs(dense(left) - dense(A) @ dense(B) @ dense(C)).max() < 1e-12


def test_multiply_matches_dense_composition():
    rng = np.random.default_rng(5)
    for _ in range(5):
        A = random_bilinear(rng, N1)
        B = random_bilinear(rng, N1)
        assert np.abs(dense(multiply(A, B)) - dense(A) @ dense(B)).max() < 1e-12


def test_commutator_basics():
    A = random_bilinear(np.random.default_rng(9), N1)
    assert commutator(A, A).max_abs_coeff() == 0.0
    n_op = multiply(creator_op(3, N1), annihilator_op(3, N1))
    assert coeff_distance(commutator(n_op, creator_op(3, N1)), creator_op(3, N1)) == 0.0


def test_lattice_mismatch_rejected():
    with pytest.raises(ValueError):
        multiply(constant_op(1.0, N1), constant_op(1.0, N2))
    with pytest.raises(ValueError):
        apply_operator(constant_op(1.0, N2), vacuum(CFG1))


def test_adjoint_closes_canonical_form():
    rng = np.random.default_rng(17)
    A = random_bilinear(rng, N1)
    assert np.abs(dense(A.adjoint()) - dense(A).conj().T).max() < 1e-12


# -- Hamiltonian --------------------------------------------------------------


def test_hamiltonian_vacuum_energy():
    H = hamiltonian(CFG2)
    assert vev(H) == 0
    assert apply_operator(H, vacuum(CFG2)).is_zero()
    assert is_hermitian(H)


@pytest.mark.parametrize("q", [-2, 0, 1])
def test_single_particle_energy(q):
    H = hamiltonian(CFG2)
    state = apply_create(SlotIndex(ELECTRON, q), vacuum(CFG2))
    val = inner(state, apply_operator(H, state))
    assert val == pytest.approx(dispersion(q * 1.0, 1.0), abs=1e-12)


def test_hamiltonian_minimum_by_enumeration():
    # independent oracle: energies are additive over occupied slots
    H = hamiltonian(CFG2)
    weights = [H.coefficient(((s,), (s,))).real for s in range(N2)]
    energies = []
    for bits in range(1 << N2):
        energies.append(sum(w for s, w in enumerate(weights) if (bits >> s) & 1))
    energies = np.array(energies)
    assert energies.min() == 0.0
    assert np.count_nonzero(energies == 0.0) == 1  # only the vacuum
    assert (np.delete(energies, 0) > 0).all()


def test_split_hamiltonian_reductions():
    assert coeff_distance(split_hamiltonian(CFG2, 0.0), hamiltonian(CFG2)) == 0.0
    H = split_hamiltonian(CFG2, 0.7)
    assert vev(H) == 0
    assert apply_operator(H, vacuum(CFG2)).is_zero()
    assert is_hermitian(H)


def test_split_hamiltonian_cos_pi_flip():
    # p*eps = pi makes the mode coefficient exactly -E
    cfg = CFG2
    eps = math.pi  # p_1 = 1
    H = split_hamiltonian(cfg, eps)
    slot = SlotIndex(ELECTRON, 1).linear(cfg.n_max)
    assert H.coefficient(((slot,), (slot,))).real == pytest.approx(-dispersion(1.0, 1.0))


def test_split_hamiltonian_raw_renormalization():
    for eps in (0.0, 0.3, 1.7):
        raw = split_hamiltonian_raw(CFG2, eps)
        assert coeff_distance(raw, split_hamiltonian(CFG2, eps)) < 1e-12
    unrenormalized = split_hamiltonian_raw(CFG2, 0.5, renormalization=0.0)
    expected_const = -sum(
        dispersion(j * 1.0, 1.0) * math.cos(j * 0.5) for j in range(-2, 3)
    )
    assert vev(unrenormalized) == pytest.approx(expected_const, abs=1e-12)


# -- charge density and total charge ------------------------------------------


def test_charge_density_background_and_hermiticity():
    for z in (0.0, 0.9, 4.4):
        rho = charge_density(z, CFG2)
        assert is_hermitian(rho)
        assert vev(rho) == pytest.approx(CFG2.n_modes / CFG2.box_length, abs=1e-12)


def test_total_charge_is_box_integral_of_density():
    # trapezoid over the box is exact for the finitely many harmonics of rho
    n_grid = 4 * CFG2.n_max + 2
    zs = [CFG2.box_length * k / n_grid for k in range(n_grid)]
    acc = ModeOperator(N2)
    for z in zs:
        acc = acc + charge_density(z, CFG2)
    acc = (CFG2.box_length / n_grid) * acc
    assert coeff_distance(acc, total_charge(CFG2)) < 1e-12


def test_total_charge_conserved():
    Q = total_charge(CFG2)
    assert commutator(hamiltonian(CFG2), Q).max_abs_coeff() < 1e-12
    assert commutator(split_hamiltonian(CFG2, 1.3), Q).max_abs_coeff() < 1e-12


# -- currents ------------------------------------------------------------------


def test_split_current_vev_vanishes():
    for eps in (0.0, 0.2, 1.1):
        assert abs(vev(split_current(0.77, eps, CFG2))) < 1e-12


def test_split_current_eps_zero_reduction():
    for z in (0.0, 2.2):
        assert coeff_distance(split_current(z, 0.0, CFG2), current_density(z, CFG2)) == 0.0


def test_one_sided_current_vev_kernel():
    """<psi'(z+g) sx psi(z)> is z-independent, purely imaginary, odd in g."""
    cfg = CFG2
    for g in (0.15, 0.8):
        vals = [vev(current_shifted(z, g, cfg)) for z in (0.0, 1.3, 5.1)]
        assert max(abs(v - vals[0]) for v in vals) < 1e-12
        assert abs(vals[0].real) < 1e-12
        # independent sum: -(1/L) sum_j (p_j/E_j) exp(-i p_j g)
        direct = -sum(
            (j / dispersion(j, 1.0)) * cmath.exp(-1j * j * g) for j in range(-2, 3) if j
        ) / cfg.box_length
        assert abs(vals[0] - direct) < 1e-12
        assert abs(vev(current_shifted(0.0, -g, cfg)) + vals[0]) < 1e-12
    assert abs(vev(current_shifted(0.3, 0.0, cfg))) < 1e-12


# -- continuity ----------------------------------------------------------------


def test_continuity_pairwise_identity():
    cfg = LatticeConfig(1.0, 1.0, 4)
    for (la, ja), (lb, jb) in itertools.product(
        itertools.product((+1, -1), cfg.mode_indices()), repeat=2
    ):
        sa, sb = spinor(la, ja, cfg), spinor(lb, jb, cfg)
        mat = (la * sa.energy - lb * sb.energy) * np.eye(2) + (sb.p - sa.p) * np.array(
            [[0, 1], [1, 0]]
        )
        assert abs(np.vdot(sa.u, mat @ sb.u)) < 1e-12


@pytest.mark.parametrize("z", [0.0, 0.31, 2.7])
def test_continuity_operator_level(z):
    lhs = commutator(hamiltonian(CFG2), charge_density(z, CFG2))
    rhs = 1j * current_density(z, CFG2, dz=True)
    assert coeff_distance(lhs, rhs) < 1e-12


# -- corrected split current ---------------------------------------------------


def test_boulware_eps_zero_is_plain_current():
    for z in (0.0, 1.9):
        assert coeff_distance(boulware_current(z, 0.0, CFG2), current_density(z, CFG2)) < 1e-14


@pytest.mark.parametrize("eps", [0.3, 1.7])
@pytest.mark.parametrize("z", [0.45, 3.3])
def test_split_continuity_defining_relation(eps, z):
    # both sides computed along independent paths (product algebra vs phase calculus)
    lhs = commutator(split_hamiltonian(CFG2, eps), charge_density(z, CFG2))
    rhs = 1j * boulware_current(z, eps, CFG2, dz=True)
    assert coeff_distance(lhs, rhs) < 1e-10


@pytest.mark.parametrize("eps", [0.3, 1.7])
def test_gradient_form_matches_commutator(eps):
    z = 0.9
    lhs = commutator(split_hamiltonian(CFG2, eps), charge_density(z, CFG2))
    rhs = charge_commutator_gradient_form(z, eps, CFG2)
    assert coeff_distance(lhs, rhs) < 1e-10


# -- smeared charge -------------------------------------------------------------


def test_smeared_constant_is_charge_multiple():
    f = TrigPoly.constant(CFG2.box_length, 2.5)
    F = smeared_charge(f, CFG2)
    assert coeff_distance(F, 2.5 * total_charge(CFG2)) < 1e-12


def test_smeared_charge_hermitian():
    f = TrigPoly.from_harmonics(CFG2.box_length, [(1, 0.4, -0.2), (2, 0.1, 0.05)])
    assert is_hermitian(smeared_charge(f, CFG2))


def test_smeared_charge_harmonic_out_of_range():
    f = TrigPoly.from_harmonics(CFG2.box_length, [(5, 1.0, 0.0)])
    with pytest.raises(ValueError):
        smeared_charge(f, CFG2)


def test_smeared_charge_couples_vacuum_only_to_pairs():
    f = TrigPoly.from_harmonics(CFG2.box_length, [(1, 0.5, 0.0)])
    F = smeared_charge(f, CFG2)
    vac = vacuum(CFG2)
    per_species = CFG2.n_modes
    for bits in range(1 << N2):
        amp = inner(vacuum(CFG2), apply_operator(F, FockVector.basis_state(bits, N2)))
        if bits == 0:
            continue
        if amp != 0:
            electrons = bits & ((1 << per_species) - 1)
            positrons = bits >> per_species
            assert bin(electrons).count("1") == 1 and bin(positrons).count("1") == 1


# -- evaluation helpers ----------------------------------------------------------


def test_expectation_agrees_with_vev_on_vacuum():
    rng = np.random.default_rng(23)
    vac = vacuum(CFG1)
    for _ in range(5):
        A = random_bilinear(rng, N1)
        A = A + constant_op(complex(rng.normal(), rng.normal()), N1)
        assert abs(expectation(vac, A) - vev(A)) < 1e-12


def test_apply_hamiltonian_eigenstate():
    state = apply_create(SlotIndex(POSITRON, -2), vacuum(CFG2))
    image = apply_operator(hamiltonian(CFG2), state)
    assert image.sub(state.scaled(dispersion(2.0, 1.0))).norm() < 1e-12
