"""Exact fermionic Fock space over the lattice modes.

Basis states are occupation bitstrings over M_tot = 2*(2*n_max+1) slots:
electron modes sit at slots 0..2*n_max (ascending mode index j), positron
modes at slots 2*n_max+1..4*n_max+1 (ascending j).  Bit k of the integer
key is slot k.

This fixed slot order is the single source of truth for every fermionic
sign in the package: creating or annihilating in slot k multiplies the
amplitude by (-1)**(number of occupied slots with smaller index), the
standard string-of-signs realization of the anticommutation relations on
bitstrings.  Amplitudes are double-precision complex; the signs themselves
are exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

ELECTRON = "electron"
POSITRON = "positron"
_SPECIES = (ELECTRON, POSITRON)


@dataclass(frozen=True)
class SlotIndex:
    """A single fermionic slot: species ('electron'|'positron') and mode index j."""

    species: str
    j: int

    def __post_init__(self):
        if self.species not in _SPECIES:
            raise ValueError(f"unknown species {self.species!r}")

    def linear(self, n_max: int) -> int:
        """Position of this slot in the fixed linear order."""
        if abs(self.j) > n_max:
            raise ValueError(f"mode index {self.j} out of range for n_max={n_max}")
        offset = 0 if self.species == ELECTRON else 2 * n_max + 1
        return offset + (self.j + n_max)


def n_slots_for(n_max: int) -> int:
    return 2 * (2 * n_max + 1)


def n_max_from_slots(n_slots: int) -> int:
    n_max = (n_slots // 2 - 1) // 2
    if n_slots_for(n_max) != n_slots:
        raise ValueError(f"slot count {n_slots} is not of the form 2*(2*n_max+1)")
    return n_max


def slot_from_linear(k: int, n_max: int) -> SlotIndex:
    per_species = 2 * n_max + 1
    if not 0 <= k < 2 * per_species:
        raise ValueError(f"linear slot {k} out of range")
    if k < per_species:
        return SlotIndex(ELECTRON, k - n_max)
    return SlotIndex(POSITRON, k - per_species - n_max)


def _parity_below(bits: int, k: int) -> int:
    """1 if an odd number of slots below k are occupied, else 0."""
    return (bits & ((1 << k) - 1)).bit_count() & 1


@dataclass(frozen=True)
class FockVector:
    """Sparse state: occupation bitstring -> complex amplitude.

    Treated as immutable; all operations return new vectors.  Exact zeros
    are never stored, so the empty map is the zero vector.
    """

    n_slots: int
    amp: dict[int, complex] = field(default_factory=dict)

    @classmethod
    def zero(cls, n_slots: int) -> "FockVector":
        return cls(n_slots, {})

    @classmethod
    def basis_state(cls, bits: int, n_slots: int) -> "FockVector":
        if not 0 <= bits < (1 << n_slots):
            raise ValueError(f"bitstring {bits} out of range for {n_slots} slots")
        return cls(n_slots, {bits: 1.0 + 0.0j})

    def norm(self) -> float:
        return sum(abs(a) ** 2 for a in self.amp.values()) ** 0.5

    def scaled(self, c: complex) -> "FockVector":
        if c == 0:
            return FockVector.zero(self.n_slots)
        return FockVector(self.n_slots, {b: c * a for b, a in self.amp.items()})

    def add(self, other: "FockVector") -> "FockVector":
        _check_same_space(self, other)
        out = dict(self.amp)
        for b, a in other.amp.items():
            s = out.get(b, 0j) + a
            if s == 0:
                out.pop(b, None)
            else:
                out[b] = s
        return FockVector(self.n_slots, out)

    def sub(self, other: "FockVector") -> "FockVector":
        return self.add(other.scaled(-1.0))

    def pruned(self, tol: float) -> "FockVector":
        return FockVector(self.n_slots, {b: a for b, a in self.amp.items() if abs(a) > tol})

    def is_zero(self) -> bool:
        return not self.amp


def _check_same_space(v: FockVector, w: FockVector) -> None:
    if v.n_slots != w.n_slots:
        raise ValueError(f"lattice mismatch: {v.n_slots} vs {w.n_slots} slots")


def vacuum(cfg) -> FockVector:
    """The empty-occupation state |0>, annihilated by every mode operator."""
    return FockVector.basis_state(0, n_slots_for(cfg.n_max))


def _apply_create_linear(k: int, v: FockVector) -> FockVector:
    out: dict[int, complex] = {}
    bit = 1 << k
    for bits, a in v.amp.items():
        if bits & bit:
            continue
        if _parity_below(bits, k):
            a = -a
        out[bits | bit] = out.get(bits | bit, 0j) + a
    return FockVector(v.n_slots, {b: a for b, a in out.items() if a != 0})


def _apply_annihilate_linear(k: int, v: FockVector) -> FockVector:
    out: dict[int, complex] = {}
    bit = 1 << k
    for bits, a in v.amp.items():
        if not bits & bit:
            continue
        if _parity_below(bits, k):
            a = -a
        out[bits ^ bit] = out.get(bits ^ bit, 0j) + a
    return FockVector(v.n_slots, {b: a for b, a in out.items() if a != 0})


def apply_create(slot: SlotIndex, v: FockVector) -> FockVector:
    """Creation operator for the given slot; vanishing branches drop out."""
    return _apply_create_linear(slot.linear(n_max_from_slots(v.n_slots)), v)


def apply_annihilate(slot: SlotIndex, v: FockVector) -> FockVector:
    """Annihilation operator; adjoint of apply_create under inner()."""
    return _apply_annihilate_linear(slot.linear(n_max_from_slots(v.n_slots)), v)


def inner(v: FockVector, w: FockVector) -> complex:
    """<v|w>, conjugate-linear in the first argument."""
    _check_same_space(v, w)
    if len(w.amp) < len(v.amp):
        return sum(v.amp[b].conjugate() * a for b, a in w.amp.items() if b in v.amp)
    return sum(a.conjugate() * w.amp[b] for b, a in v.amp.items() if b in w.amp)
