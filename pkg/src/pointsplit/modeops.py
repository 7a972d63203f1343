"""Normal-ordered polynomials in mode creation/annihilation operators.

A ModeOperator is a sparse sum of monomials

    coeff * a'_{c1} a'_{c2} ... a_{s1} a_{s2} ...

with creators stored in strictly ascending linear-slot order and
annihilators in strictly descending order (the canonical normal form;
the empty monomial is the c-number part).  Products re-normal-order via
the anticommutator rule {a_s, a'_t} = delta_st, so all operator algebra
is exact up to floating-point coefficient arithmetic.

Builders construct every operator of the 1+1D model.  The field is

    psi(z) = sum_alpha A_alpha u_alpha exp(i p_alpha z) / sqrt(L)

where alpha runs over positive-energy modes (A = electron annihilator b_j)
and negative-energy modes (A = positron creator d'_j).  A bilinear
psi'(x) M psi(y) therefore expands into the four blocks b'b, b'd', d b and
d d'; normal-ordering the last block produces an explicit c-number, which
is kept (densities are not normal-ordered here; the constant part cancels
in every commutator).

Position z enters only through phase coefficients, so z-derivatives are
applied analytically to the phases (the dz=True flags), never numerically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .fock import FockVector, _parity_below, n_slots_for
from .lattice import ID2, SIGMA_X, SIGMA_Z, LatticeConfig, spinor
from .trigpoly import TrigPoly

Signature = tuple[tuple[int, ...], tuple[int, ...]]

_IDENTITY_SIG: Signature = ((), ())


class ModeOperator:
    """Sparse normal-ordered operator polynomial on n_slots fermionic slots."""

    __slots__ = ("n_slots", "terms")

    def __init__(self, n_slots: int, terms: dict[Signature, complex] | None = None):
        self.n_slots = n_slots
        self.terms: dict[Signature, complex] = {}
        if terms:
            for sig, c in terms.items():
                if c != 0:
                    self.terms[sig] = complex(c)

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "ModeOperator") -> "ModeOperator":
        _check_same(self, other)
        out = dict(self.terms)
        for sig, c in other.terms.items():
            s = out.get(sig, 0j) + c
            if s == 0:
                out.pop(sig, None)
            else:
                out[sig] = s
        return ModeOperator(self.n_slots, out)

    def __sub__(self, other: "ModeOperator") -> "ModeOperator":
        return self + (-1.0) * other

    def __neg__(self) -> "ModeOperator":
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, ModeOperator):
            return multiply(self, other)
        return ModeOperator(self.n_slots, {sig: other * c for sig, c in self.terms.items()})

    def __rmul__(self, scalar) -> "ModeOperator":
        return ModeOperator(self.n_slots, {sig: scalar * c for sig, c in self.terms.items()})

    def adjoint(self) -> "ModeOperator":
        """Hermitian conjugate; the canonical form is closed under it."""
        out: dict[Signature, complex] = {}
        for (cre, ann), c in self.terms.items():
            out[(tuple(reversed(ann)), tuple(reversed(cre)))] = c.conjugate()
        return ModeOperator(self.n_slots, out)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def coefficient(self, sig: Signature) -> complex:
        return self.terms.get(sig, 0.0 + 0.0j)

    def pruned(self, tol: float) -> "ModeOperator":
        return ModeOperator(self.n_slots, {s: c for s, c in self.terms.items() if abs(c) > tol})

    def __repr__(self) -> str:
        return f"ModeOperator(n_slots={self.n_slots}, n_terms={len(self.terms)})"


def _check_same(a: ModeOperator, b: ModeOperator) -> None:
    if a.n_slots != b.n_slots:
        raise ValueError(f"lattice mismatch: {a.n_slots} vs {b.n_slots} slots")


def constant_op(value: complex, n_slots: int) -> ModeOperator:
    return ModeOperator(n_slots, {_IDENTITY_SIG: value})


def creator_op(slot: int, n_slots: int) -> ModeOperator:
    return ModeOperator(n_slots, {((slot,), ()): 1.0 + 0.0j})


def annihilator_op(slot: int, n_slots: int) -> ModeOperator:
    return ModeOperator(n_slots, {((), (slot,)): 1.0 + 0.0j})


# -- normal ordering -----------------------------------------------------


def _sort_with_parity(seq, descending: bool):
    """Sort distinct slots, tracking the anticommutation sign; None on repeats."""
    arr = list(seq)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        if descending:
            while j > 0 and arr[j - 1] < arr[j]:
                arr[j - 1], arr[j] = arr[j], arr[j - 1]
                sign = -sign
                j -= 1
        else:
            while j > 0 and arr[j - 1] > arr[j]:
                arr[j - 1], arr[j] = arr[j], arr[j - 1]
                sign = -sign
                j -= 1
    for x, y in zip(arr, arr[1:]):
        if x == y:
            return None, 0
    return tuple(arr), sign


def _reduce_word(word: tuple, coeff: complex, out: dict[Signature, complex]) -> None:
    """Normal-order a word of (slot, is_creator) factors into `out`.

    Repeatedly applies a_s a'_t = delta_st - a'_t a_s to the first
    annihilator-creator adjacency; terminates because each swap removes
    an inversion and each contraction shortens the word.
    """
    for i in range(len(word) - 1):
        (s, ds), (t, dt) = word[i], word[i + 1]
        if (not ds) and dt:
            swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2 :]
            _reduce_word(swapped, -coeff, out)
            if s == t:
                _reduce_word(word[:i] + word[i + 2 :], coeff, out)
            return
    n_cre = sum(1 for _, d in word if d)
    cre, sign_c = _sort_with_parity((s for s, _ in word[:n_cre]), descending=False)
    if cre is None:
        return
    ann, sign_a = _sort_with_parity((s for s, _ in word[n_cre:]), descending=True)
    if ann is None:
        return
    sig = (cre, ann)
    s = out.get(sig, 0j) + coeff * sign_c * sign_a
    if s == 0:
        out.pop(sig, None)
    else:
        out[sig] = s


def multiply(a: ModeOperator, b: ModeOperator) -> ModeOperator:
    """Exact normal-ordered product; bilinear and associative."""
    _check_same(a, b)
    out: dict[Signature, complex] = {}
    for (c1, a1), x in a.terms.items():
        w1 = tuple((s, True) for s in c1) + tuple((s, False) for s in a1)
        for (c2, a2), y in b.terms.items():
            word = w1 + tuple((s, True) for s in c2) + tuple((s, False) for s in a2)
            _reduce_word(word, x * y, out)
    return ModeOperator(a.n_slots, out)


def commutator(a: ModeOperator, b: ModeOperator) -> ModeOperator:
    """A*B - B*A in canonical form; c-number parts drop out."""
    return multiply(a, b) - multiply(b, a)


def coeff_distance(a: ModeOperator, b: ModeOperator) -> float:
    """Largest coefficient difference over the union of monomials."""
    _check_same(a, b)
    keys = set(a.terms) | set(b.terms)
    return max((abs(a.coefficient(k) - b.coefficient(k)) for k in keys), default=0.0)


def is_hermitian(a: ModeOperator, tol: float = 1e-12) -> bool:
    return coeff_distance(a, a.adjoint()) <= tol


# -- state action --------------------------------------------------------


def apply_operator(a: ModeOperator, v: FockVector) -> FockVector:
    """Apply the operator to a sparse state, factor by factor."""
    if a.n_slots != v.n_slots:
        raise ValueError(f"lattice mismatch: {a.n_slots} vs {v.n_slots} slots")
    out: dict[int, complex] = {}
    for (cre, ann), coeff in a.terms.items():
        for bits, amp in v.amp.items():
            x = coeff * amp
            b = bits
            dead = False
            for s in reversed(ann):  # rightmost factor acts first
                if not (b >> s) & 1:
                    dead = True
                    break
                if _parity_below(b, s):
                    x = -x
                b ^= 1 << s
            if dead:
                continue
            for s in reversed(cre):
                if (b >> s) & 1:
                    dead = True
                    break
                if _parity_below(b, s):
                    x = -x
                b |= 1 << s
            if dead or x == 0:
                continue
            acc = out.get(b, 0j) + x
            if acc == 0:
                out.pop(b, None)
            else:
                out[b] = acc
    return FockVector(v.n_slots, out)


def vev(a: ModeOperator) -> complex:
    """Vacuum expectation value: the c-number part of the normal form."""
    return a.coefficient(_IDENTITY_SIG)


def expectation(v: FockVector, a: ModeOperator) -> complex:
    """<v|A|v> via explicit state application (independent of vev)."""
    from .fock import inner

    return inner(v, apply_operator(a, v))


# -- field modes ---------------------------------------------------------


@dataclass(frozen=True)
class _FieldMode:
    """One term of the mode expansion of psi: operator slot, momentum, spinor."""

    lam: int
    j: int
    slot: int
    p: float
    energy: float
    u: np.ndarray


def _field_modes(cfg: LatticeConfig) -> list[_FieldMode]:
    modes = []
    per_species = cfg.n_modes
    for lam in (+1, -1):
        for j in cfg.mode_indices():
            sp = spinor(lam, j, cfg)
            offset = 0 if lam == +1 else per_species
            modes.append(
                _FieldMode(lam=lam, j=j, slot=offset + j + cfg.n_max, p=sp.p, energy=sp.energy, u=sp.u)
            )
    return modes


def _add_field_bilinear(
    terms: dict[Signature, complex], ma: _FieldMode, mb: _FieldMode, coeff: complex
) -> None:
    """Accumulate coeff * A'_a A_b in normal-ordered form.

    A is b (electron annihilator) on positive-energy modes and d' (positron
    creator) on negative-energy modes, so the four lam blocks normal-order
    as below; only the d d' block generates a contraction c-number.
    """
    if coeff == 0:
        return

    def put(sig: Signature, c: complex) -> None:
        s = terms.get(sig, 0j) + c
        if s == 0:
            terms.pop(sig, None)
        else:
            terms[sig] = s

    if ma.lam == +1 and mb.lam == +1:
        put(((ma.slot,), (mb.slot,)), coeff)
    elif ma.lam == +1 and mb.lam == -1:
        put(((ma.slot, mb.slot), ()), coeff)  # electron slot < positron slot
    elif ma.lam == -1 and mb.lam == +1:
        put(((), (ma.slot, mb.slot)), coeff)  # positron slot > electron slot
    else:
        if ma.j == mb.j:
            put(_IDENTITY_SIG, coeff)
        put(((mb.slot,), (ma.slot,)), -coeff)


def _sandwich(ua: np.ndarray, matrix: np.ndarray, ub: np.ndarray) -> complex:
    return complex(np.vdot(ua, matrix @ ub))


# -- operator builders ---------------------------------------------------


def hamiltonian(cfg: LatticeConfig) -> ModeOperator:
    """Free Hamiltonian sum_j E_j (b'_j b_j + d'_j d_j), c-number exactly zero.

    The subtraction constant that removes the filled-sea energy has already
    been applied, so the empty state is the zero-energy eigenvector.
    """
    return split_hamiltonian(cfg, 0.0)


def split_hamiltonian(cfg: LatticeConfig, eps: float) -> ModeOperator:
    """Point-split Hamiltonian: per-mode energies E_j cos(p_j eps), renormalized."""
    terms: dict[Signature, complex] = {}
    n = n_slots_for(cfg.n_max)
    per_species = cfg.n_modes
    for j in cfg.mode_indices():
        p = cfg.momentum(j)
        w = math.hypot(p, cfg.mass) * math.cos(p * eps)
        if w == 0:
            continue
        se = j + cfg.n_max
        sp = per_species + j + cfg.n_max
        terms[((se,), (se,))] = complex(w)
        terms[((sp,), (sp,))] = complex(w)
    return ModeOperator(n, terms)


def split_hamiltonian_raw(cfg: LatticeConfig, eps: float, renormalization: float | None = None) -> ModeOperator:
    """Pre-normal-ordered form sum_j E_j cos(p_j eps)(b'_j b_j - d_j d'_j) + const.

    The d d' factor is normal-ordered by the product machinery, exposing the
    c-number -sum_j E_j cos(p_j eps).  With the default renormalization
    constant (+sum_j E_j cos(p_j eps)) the result equals split_hamiltonian
    coefficient for coefficient.
    """
    n = n_slots_for(cfg.n_max)
    per_species = cfg.n_modes
    if renormalization is None:
        renormalization = sum(
            math.hypot(cfg.momentum(j), cfg.mass) * math.cos(cfg.momentum(j) * eps)
            for j in cfg.mode_indices()
        )
    op = constant_op(renormalization, n)
    for j in cfg.mode_indices():
        p = cfg.momentum(j)
        w = math.hypot(p, cfg.mass) * math.cos(p * eps)
        se = j + cfg.n_max
        sp = per_species + j + cfg.n_max
        op = op + w * (creator_op(se, n) * annihilator_op(se, n))
        op = op - w * (annihilator_op(sp, n) * creator_op(sp, n))
    return op


def charge_density(z: float, cfg: LatticeConfig) -> ModeOperator:
    """psi'(z) psi(z), hermitian; carries the constant background (2n_max+1)/L."""
    return _field_bilinear_operator(z, 0.0, ID2, cfg)


def current_shifted(z: float, shift: float, cfg: LatticeConfig, dz: bool = False) -> ModeOperator:
    """One-sided bilinear psi'(z + shift) sigma_x psi(z) (no gamma average)."""
    return _field_bilinear_operator(z, shift, SIGMA_X, cfg, dz=dz)


def current_density(z: float, cfg: LatticeConfig, dz: bool = False) -> ModeOperator:
    """Unsplit current psi'(z) sigma_x psi(z); dz=True gives its exact z-derivative."""
    return _field_bilinear_operator(z, 0.0, SIGMA_X, cfg, dz=dz)


def split_current(z: float, eps: float, cfg: LatticeConfig, dz: bool = False) -> ModeOperator:
    """Symmetrized split current (1/2) sum_{gamma=+-1} psi'(z + gamma*eps) sigma_x psi(z)."""
    plus = current_shifted(z, +eps, cfg, dz=dz)
    minus = current_shifted(z, -eps, cfg, dz=dz)
    return 0.5 * (plus + minus)


def _field_bilinear_operator(
    z: float, shift: float, matrix: np.ndarray, cfg: LatticeConfig, dz: bool = False
) -> ModeOperator:
    """sum_ab A'_a A_b  u_a' M u_b  exp(i(p_b - p_a)z) exp(-i p_a shift) / L."""
    modes = _field_modes(cfg)
    length = cfg.box_length
    terms: dict[Signature, complex] = {}
    for ma in modes:
        left_phase = cmath.exp(-1j * ma.p * (z + shift))
        for mb in modes:
            ins = _sandwich(ma.u, matrix, mb.u)
            if ins == 0:
                continue
            coeff = ins * left_phase * cmath.exp(1j * mb.p * z) / length
            if dz:
                coeff *= 1j * (mb.p - ma.p)
            _add_field_bilinear(terms, ma, mb, coeff)
    return ModeOperator(n_slots_for(cfg.n_max), terms)


def boulware_current(z: float, eps: float, cfg: LatticeConfig, dz: bool = False) -> ModeOperator:
    """Split current corrected by a line-integral term so that the continuity
    relation with the split Hamiltonian holds exactly:

        commutator(split_hamiltonian, charge_density(z)) == 1j * d/dz of this.

    Structure per gamma = +-1 (averaged with weight 1/2):

        psi'(z + g) sigma_x psi(z)
        + i * integral_{z-g}^{z} psi'(z' + g) (i sigma_x d/dz' - m sigma_z) psi(z') dz'

    with g = gamma*eps.  In mode space the line integral is the elementary
    closed form (exp(iqz) - exp(iq(z - g)))/(iq) for momentum transfer
    q = p_b - p_a, and just g when q = 0; dz=True differentiates both the
    plain phase and the line factor analytically.
    """
    modes = _field_modes(cfg)
    length = cfg.box_length
    m = cfg.mass
    terms: dict[Signature, complex] = {}
    for gamma in (+1, -1):
        g = gamma * eps
        for ma in modes:
            s_a = cmath.exp(-1j * ma.p * g)
            for mb in modes:
                q = mb.p - ma.p
                phase = cmath.exp(1j * q * z)
                c = 0j
                ins_x = _sandwich(ma.u, SIGMA_X, mb.u)
                if ins_x != 0:
                    if dz:
                        c += ins_x * (1j * q) * phase * s_a
                    else:
                        c += ins_x * phase * s_a
                ins_line = _sandwich(ma.u, (-mb.p) * SIGMA_X - m * SIGMA_Z, mb.u)
                if ins_line != 0:
                    if dz:
                        line = phase - cmath.exp(1j * q * (z - g))
                    elif q == 0:
                        line = complex(g)
                    else:
                        line = (phase - cmath.exp(1j * q * (z - g))) / (1j * q)
                    c += 1j * ins_line * s_a * line
                _add_field_bilinear(terms, ma, mb, c / (2.0 * length))
    return ModeOperator(n_slots_for(cfg.n_max), terms)


def charge_commutator_gradient_form(z: float, eps: float, cfg: LatticeConfig) -> ModeOperator:
    """The commutator of the split Hamiltonian with the charge density, written
    through point-shifted field gradients instead of operator products:

        (1/2) sum_gamma [ i d/dz(psi'(z+g)) sigma_x psi(z)
                          + i psi'(z) sigma_x d/dz(psi(z+g))
                          + m psi'(z+g) sigma_z psi(z)
                          - m psi'(z) sigma_z psi(z+g) ],  g = gamma*eps.

    Used as the independent cross-check against commutator(split_hamiltonian,
    charge_density); the two agree term by term.
    """
    modes = _field_modes(cfg)
    length = cfg.box_length
    m = cfg.mass
    terms: dict[Signature, complex] = {}
    for gamma in (+1, -1):
        g = gamma * eps
        for ma in modes:
            for mb in modes:
                q = mb.p - ma.p
                phase = cmath.exp(1j * q * z)
                ins_x = _sandwich(ma.u, SIGMA_X, mb.u)
                ins_z = _sandwich(ma.u, SIGMA_Z, mb.u)
                c = (
                    ma.p * ins_x * cmath.exp(-1j * ma.p * g)
                    - mb.p * ins_x * cmath.exp(1j * mb.p * g)
                    + m * ins_z * cmath.exp(-1j * ma.p * g)
                    - m * ins_z * cmath.exp(1j * mb.p * g)
                )
                _add_field_bilinear(terms, ma, mb, c * phase / (2.0 * length))
    return ModeOperator(n_slots_for(cfg.n_max), terms)


def smeared_charge(f: TrigPoly, cfg: LatticeConfig) -> ModeOperator:
    """F = integral of charge_density(z) * f(z) dz, exact over box harmonics.

    The harmonic k_n = n*delta_p matches the momentum grid, so the z-integral
    picks out coefficient c_{j_a - j_b} for each mode pair; hermitian for any
    real f.
    """
    if abs(f.length - cfg.box_length) > 1e-9 * cfg.box_length:
        raise ValueError(f"smearing box {f.length} does not match lattice box {cfg.box_length}")
    if f.max_harmonic > 2 * cfg.n_max:
        raise ValueError(
            f"harmonic {f.max_harmonic} out of range: needs momentum transfer beyond 2*n_max = {2 * cfg.n_max}"
        )
    modes = _field_modes(cfg)
    terms: dict[Signature, complex] = {}
    for ma in modes:
        for mb in modes:
            c = f.coeff(ma.j - mb.j)
            if c == 0:
                continue
            ins = _sandwich(ma.u, ID2, mb.u)
            _add_field_bilinear(terms, ma, mb, c * ins)
    return ModeOperator(n_slots_for(cfg.n_max), terms)


def total_charge(cfg: LatticeConfig) -> ModeOperator:
    """Q = integral of charge_density over the box: electron number minus
    positron number plus the constant background 2*n_max + 1."""
    n = n_slots_for(cfg.n_max)
    per_species = cfg.n_modes
    terms: dict[Signature, complex] = {_IDENTITY_SIG: complex(per_species)}
    for j in cfg.mode_indices():
        se = j + cfg.n_max
        sp = per_species + j + cfg.n_max
        terms[((se,), (se,))] = 1.0 + 0.0j
        terms[((sp,), (sp,))] = -1.0 + 0.0j
    return ModeOperator(n, terms)
