import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pointsplit.fock import (
    ELECTRON,
    POSITRON,
    FockVector,
    SlotIndex,
    apply_annihilate,
    apply_create,
    inner,
    n_max_from_slots,
    n_slots_for,
    slot_from_linear,
    vacuum,
)
from pointsplit.lattice import LatticeConfig

CFG1 = LatticeConfig(1.0, 1.0, 1)  # 6 slots, dim 64
N1 = n_slots_for(1)


def dense_create_matrix(k: int, n_slots: int) -> np.ndarray:
    """Independent sign oracle: build the creator matrix from the bit rule."""
    dim = 1 << n_slots
    mat = np.zeros((dim, dim), dtype=complex)
    for bits in range(dim):
        if (bits >> k) & 1:
            continue
        sign = (-1) ** bin(bits & ((1 << k) - 1)).count("1")
        mat[bits | (1 << k), bits] = sign
    return mat


def as_dense(v: FockVector) -> np.ndarray:
    out = np.zeros(1 << v.n_slots, dtype=complex)
    for bits, a in v.amp.items():
        out[bits] = a
    return out


def random_vector(rng, n_slots: int) -> FockVector:
    dim = 1 << n_slots
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    keep = rng.random(dim) < 0.3
    return FockVector(n_slots, {b: complex(amps[b]) for b in range(dim) if keep[b]})


def test_slot_linearization_roundtrip():
    n_max = 3
    seen = set()
    for species in (ELECTRON, POSITRON):
        for j in range(-n_max, n_max + 1):
            k = SlotIndex(species, j).linear(n_max)
            assert slot_from_linear(k, n_max) == SlotIndex(species, j)
            seen.add(k)
    assert seen == set(range(n_slots_for(n_max)))
    assert n_max_from_slots(n_slots_for(n_max)) == n_max


def test_slot_validation():
    with pytest.raises(ValueError):
        SlotIndex("muon", 0)
    with pytest.raises(ValueError):
        SlotIndex(ELECTRON, 2).linear(1)


def test_vacuum_definition():
    v = vacuum(CFG1)
    assert v.amp == {0: 1.0 + 0.0j}
    assert v.norm() == pytest.approx(1.0)
    for species in (ELECTRON, POSITRON):
        for j in (-1, 0, 1):
            assert apply_annihilate(SlotIndex(species, j), v).is_zero()


def test_create_on_vacuum():
    v = apply_create(SlotIndex(ELECTRON, -1), vacuum(CFG1))  # slot 0: no signs below
    assert v.amp == {1: 1.0 + 0.0j}
    assert apply_create(SlotIndex(ELECTRON, -1), v).is_zero()  # Pauli exclusion


def test_create_order_sign():
    # creating j=0 then j=1 versus the reverse differ by the overall sign -1
    v = vacuum(CFG1)
    a = apply_create(SlotIndex(ELECTRON, 1), apply_create(SlotIndex(ELECTRON, 0), v))
    b = apply_create(SlotIndex(ELECTRON, 0), apply_create(SlotIndex(ELECTRON, 1), v))
    assert a.amp.keys() == b.amp.keys()
    assert a.sub(b.scaled(-1.0)).is_zero()


def test_annihilate_inverts_create_on_vacuum():
    v = vacuum(CFG1)
    w = apply_annihilate(SlotIndex(ELECTRON, 0), apply_create(SlotIndex(ELECTRON, 0), v))
    assert w.sub(v).is_zero()
    assert apply_annihilate(SlotIndex(POSITRON, 1), v).is_zero()


def test_create_matches_dense_oracle():
    rng = np.random.default_rng(7)
    for k in range(N1):
        mat = dense_create_matrix(k, N1)
        v = random_vector(rng, N1)
        got = as_dense(apply_create(slot_from_linear(k, 1), v))
        assert np.allclose(got, mat @ as_dense(v), atol=1e-14)
        # annihilation is the conjugate transpose of the same oracle
        got_a = as_dense(apply_annihilate(slot_from_linear(k, 1), v))
        assert np.allclose(got_a, mat.conj().T @ as_dense(v), atol=1e-14)


def test_adjointness():
    rng = np.random.default_rng(11)
    for k in range(N1):
        slot = slot_from_linear(k, 1)
        v = random_vector(rng, N1)
        w = random_vector(rng, N1)
        lhs = inner(w, apply_create(slot, v))
        rhs = inner(apply_annihilate(slot, w), v)
        assert abs(lhs - rhs) < 1e-12


def test_inner_examples():
    vac = vacuum(CFG1)
    assert inner(vac, vac) == 1.0
    one_particle = apply_create(SlotIndex(ELECTRON, 0), vac)
    assert inner(vac, one_particle) == 0.0  # orthogonal particle-number sectors


def test_inner_conjugate_symmetry():
    rng = np.random.default_rng(13)
    v = random_vector(rng, N1)
    w = random_vector(rng, N1)
    assert abs(inner(v, w) - inner(w, v).conjugate()) < 1e-12
    assert inner(v, v).imag == pytest.approx(0.0, abs=1e-14)
    assert inner(v, v).real >= 0.0


def test_inner_lattice_mismatch():
    with pytest.raises(ValueError):
        inner(vacuum(CFG1), vacuum(LatticeConfig(1.0, 1.0, 2)))


@given(st.integers(0, N1 - 1), st.integers(0, N1 - 1), st.integers(0, (1 << N1) - 1))
@settings(max_examples=200, deadline=None)
def test_car_on_basis_states(s, t, bits):
    """{a_s, a'_t} = delta_st, {a_s, a_t} = 0, {a'_s, a'_t} = 0, exact signs."""
    from pointsplit.fock import _apply_annihilate_linear as ann
    from pointsplit.fock import _apply_create_linear as cre

    v = FockVector.basis_state(bits, N1)
    x = ann(s, cre(t, v)).add(cre(t, ann(s, v)))
    expect = v if s == t else FockVector.zero(N1)
    assert x.sub(expect).norm() == 0.0
    assert ann(s, ann(t, v)).add(ann(t, ann(s, v))).norm() == 0.0
    assert cre(s, cre(t, v)).add(cre(t, cre(s, v))).norm() == 0.0


def test_number_operator_eigenvalues():
    from pointsplit.fock import _apply_annihilate_linear as ann
    from pointsplit.fock import _apply_create_linear as cre

    for bits in range(1 << N1):
        v = FockVector.basis_state(bits, N1)
        for s in range(N1):
            n_v = cre(s, ann(s, v))
            occ = (bits >> s) & 1
            assert n_v.sub(v.scaled(float(occ))).norm() == 0.0
