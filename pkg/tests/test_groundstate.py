import math

import pytest

from pointsplit.fock import ELECTRON, POSITRON, inner, vacuum
from pointsplit.groundstate import (
    excitation_energy,
    ground_state_bruteforce,
    redefined_vacuum,
    redefined_vacuum_energy,
    split_spectrum,
)
from pointsplit.lattice import LatticeConfig, dispersion
from pointsplit.modeops import apply_operator, split_hamiltonian

CFG3 = LatticeConfig(1.0, 1.0, 3)

# frozen: 4*(sqrt(2)cos 2 + sqrt(5)cos 4), confirmed by the enumeration below
GROUND_ENERGY_EPS2 = 4.0 * (math.sqrt(2.0) * math.cos(2.0) + math.sqrt(5.0) * math.cos(4.0))


def test_excitation_energy_reductions():
    for q in range(-3, 4):
        assert excitation_energy(q, ELECTRON, 0.0, CFG3) == pytest.approx(
            dispersion(float(q), 1.0), abs=1e-12
        )
    # p*eps = pi flips the sign exactly
    assert excitation_energy(1, ELECTRON, math.pi, CFG3) == pytest.approx(
        -dispersion(1.0, 1.0), abs=1e-12
    )


def test_excitation_energy_species_independent():
    for q in (-3, -1, 0, 2):
        for eps in (0.0, 0.5, 2.0):
            e = excitation_energy(q, ELECTRON, eps, CFG3)
            p = excitation_energy(q, POSITRON, eps, CFG3)
            expected = dispersion(float(q), 1.0) * math.cos(q * eps)
            assert e == pytest.approx(expected, abs=1e-12)
            assert p == pytest.approx(expected, abs=1e-12)


def test_excitation_energy_frozen_example():
    got = excitation_energy(2, ELECTRON, 2.0, CFG3)
    assert got == pytest.approx(math.sqrt(5.0) * math.cos(4.0), abs=1e-12)
    assert got == pytest.approx(-1.4615915693101362, abs=1e-12)


def test_excitation_energy_out_of_range():
    with pytest.raises(ValueError):
        excitation_energy(4, ELECTRON, 0.1, CFG3)


def test_split_spectrum_eps_zero_empty():
    spec = split_spectrum(0.0, CFG3)
    assert spec.negative_modes == ()
    assert spec.zero_modes == ()


def test_split_spectrum_interval_example():
    # 0.1*|j| in (pi/2, 3pi/2) <=> |j| in 16..47, intersected with the grid
    cfg = LatticeConfig(1.0, 1.0, 40)
    spec = split_spectrum(0.1, cfg)
    expected = {j for j in range(-40, 41) if 16 <= abs(j) <= 40}
    assert set(spec.negative_modes) == expected


def test_split_spectrum_eps2_example():
    spec = split_spectrum(2.0, CFG3)
    assert set(spec.negative_modes) == {-2, -1, 1, 2}  # cos2 < 0, cos4 < 0, cos6 > 0
    assert spec.zero_modes == ()


def test_split_spectrum_nonempty_beyond_threshold():
    # once cutoff*eps > pi/2 some mode has negative split energy
    for eps, n_max in [(0.6, 3), (0.2, 8), (2.0, 1)]:
        cfg = LatticeConfig(1.0, 1.0, n_max)
        assert cfg.cutoff * eps > math.pi / 2
        assert split_spectrum(eps, cfg).negative_modes


def test_redefined_vacuum_eps_zero_is_vacuum():
    v = redefined_vacuum(0.0, CFG3)
    assert v.sub(vacuum(CFG3)).is_zero()


def test_redefined_vacuum_energy_formula():
    assert redefined_vacuum_energy(2.0, CFG3) == pytest.approx(GROUND_ENERGY_EPS2, abs=1e-12)
    for eps in (0.0, 0.5, 1.0, 2.0, 3.7):
        assert redefined_vacuum_energy(eps, CFG3) <= 0.0


def test_redefined_vacuum_operator_energy_agrees():
    for eps in (0.5, 2.0):
        state = redefined_vacuum(eps, CFG3)
        assert state.norm() == pytest.approx(1.0)
        h = split_hamiltonian(CFG3, eps)
        via_ops = inner(state, apply_operator(h, state))
        assert via_ops.imag == pytest.approx(0.0, abs=1e-14)
        assert via_ops.real == pytest.approx(redefined_vacuum_energy(eps, CFG3), abs=1e-12)


def test_bruteforce_eps_zero():
    rep = ground_state_bruteforce(0.0, CFG3)
    assert rep.energy == 0.0
    assert rep.degeneracy == 1
    assert rep.state_bits == 0
    assert rep.matches_redefined_vacuum


def test_bruteforce_eps2_frozen_example():
    rep = ground_state_bruteforce(2.0, CFG3)
    assert rep.energy == pytest.approx(GROUND_ENERGY_EPS2, abs=1e-10)
    assert rep.energy == pytest.approx(-8.20044827797506, abs=1e-10)
    assert rep.degeneracy == 1
    assert rep.matches_redefined_vacuum
    assert rep.energy < 0.0  # strictly below the empty state
    # the minimizer is exactly the redefined vacuum bitstring
    (bits,) = redefined_vacuum(2.0, CFG3).amp
    assert rep.state_bits == bits


def test_bruteforce_negative_whenever_set_nonempty():
    for eps in (0.6, 1.1, 2.0):
        spec = split_spectrum(eps, CFG3)
        rep = ground_state_bruteforce(eps, CFG3)
        if spec.negative_modes:
            assert rep.energy < 0.0
        assert rep.energy == pytest.approx(redefined_vacuum_energy(eps, CFG3), abs=1e-12)


def test_bruteforce_enumeration_bound():
    with pytest.raises(ValueError):
        ground_state_bruteforce(0.5, LatticeConfig(1.0, 1.0, 6))


def test_monotone_refinement():
    # enlarging the cutoff never raises the ground-state energy
    eps = 1.3
    energies = [
        redefined_vacuum_energy(eps, LatticeConfig(1.0, 1.0, n_max)) for n_max in range(1, 7)
    ]
    for lo, hi in zip(energies[1:], energies[:-1]):
        assert lo <= hi + 1e-12


def test_zero_cos_boundary_reported_as_degeneracy():
    # delta_p = 1, eps = pi/2 puts the |j| = 1 modes exactly on cos = 0
    cfg = LatticeConfig(1.0, 1.0, 2)
    spec = split_spectrum(math.pi / 2.0, cfg)
    assert set(spec.zero_modes) == {-1, 1}
    assert set(spec.negative_modes) == {-2, 2}
    rep = ground_state_bruteforce(math.pi / 2.0, cfg)
    assert rep.degeneracy == 2 ** (2 * len(spec.zero_modes))
    assert rep.matches_redefined_vacuum
