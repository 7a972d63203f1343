"""Tour of the finite model: momentum modes, spinors, and the Fock space.

Builds the smallest interesting lattice and walks through the objects the
rest of the workbench is made of, printing the identities as it checks them.
Run:  python demos/01_modes_and_fock_space.py
"""

import numpy as np

from pointsplit import (
    ELECTRON,
    POSITRON,
    LatticeConfig,
    SlotIndex,
    apply_annihilate,
    apply_create,
    dispersion,
    inner,
    spinor,
    vacuum,
)
from pointsplit.lattice import ID2, SIGMA_X, SIGMA_Z

cfg = LatticeConfig(mass=1.0, delta_p=1.0, n_max=2)

print("=" * 70)
print("Lattice: mass", cfg.mass, "| spacing", cfg.delta_p, "| modes j =",
      list(cfg.mode_indices()))
print("Box length L =", cfg.box_length, "| cutoff =", cfg.cutoff)
print("=" * 70)

print("\nDispersion E(p) = sqrt(p^2 + m^2):")
for j in cfg.mode_indices():
    print(f"  j={j:+d}  p={cfg.momentum(j):+.1f}  E={dispersion(cfg.momentum(j), cfg.mass):.6f}")

print("\nSpinors u(lam, p) satisfy (sx*p + sz*m) u = lam*E*u, u'u = 1:")
for j in cfg.mode_indices():
    for lam in (+1, -1):
        sp = spinor(lam, j, cfg)
        h = SIGMA_X * sp.p + SIGMA_Z * cfg.mass
        resid = np.linalg.norm(h @ sp.u - lam * sp.energy * sp.u)
        print(f"  lam={lam:+d} j={j:+d}  u = [{sp.u[0]:.4f}, {sp.u[1]:.4f}]  eigenresidual {resid:.1e}")

print("\nCompleteness sum_lam u u' = identity at each momentum:")
worst = 0.0
for j in cfg.mode_indices():
    total = sum(np.outer(spinor(lam, j, cfg).u, spinor(lam, j, cfg).u.conj()) for lam in (+1, -1))
    worst = max(worst, float(np.abs(total - ID2).max()))
print("  worst deviation:", worst)

print("\nFock space: 10 slots (5 electron + 5 positron), dimension 2^10.")
vac = vacuum(cfg)
print("  vacuum amplitude map:", dict(vac.amp))

e0 = SlotIndex(ELECTRON, 0)
p1 = SlotIndex(POSITRON, 1)
state = apply_create(p1, apply_create(e0, vac))
print("  b'(e,0) then d'(p,1) on vacuum ->", {f"{b:010b}": a for b, a in state.amp.items()})

print("\nFermionic signs: creating in the opposite order flips the amplitude:")
other = apply_create(e0, apply_create(p1, vac))
print("  reversed order   ->", {f"{b:010b}": a for b, a in other.amp.items()})
print("  inner product of the two orderings:", inner(state, other))

print("\nPauli exclusion: creating the same slot twice annihilates the state:")
print("  b'(e,0) b'(e,0) |0> =", apply_create(e0, apply_create(e0, vac)).amp, "(empty = zero vector)")

print("\nEvery annihilator kills the vacuum:")
residual = max(
    apply_annihilate(SlotIndex(sp, j), vac).norm()
    for sp in (ELECTRON, POSITRON)
    for j in cfg.mode_indices()
)
print("  max norm over all slots:", residual)
