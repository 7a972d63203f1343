"""Real trigonometric polynomials on the periodic box.

Smearing functions are restricted to finitely many box harmonics,

    f(z) = sum_n c_n exp(2*pi*i*n*z / L),   c_{-n} = conj(c_n),

so that every spatial integral used elsewhere (products, derivatives,
shifted arguments) is an exact finite sum instead of a quadrature.
"""

from __future__ import annotations

import cmath
import math

_SYMMETRY_TOL = 1e-12


class TrigPoly:
    """Finite real harmonic sum on a box of length L."""

    def __init__(self, length: float, coeffs: dict[int, complex]):
        if not length > 0:
            raise ValueError(f"box length must be positive, got {length}")
        cleaned = {int(n): complex(c) for n, c in coeffs.items() if c != 0}
        for n, c in cleaned.items():
            mirror = cleaned.get(-n, 0.0 + 0.0j)
            if abs(mirror - c.conjugate()) > _SYMMETRY_TOL:
                raise ValueError(
                    f"harmonic {n} breaks conjugate symmetry: c[{-n}]={mirror}, conj(c[{n}])={c.conjugate()}"
                )
        self.length = float(length)
        self.coeffs = cleaned

    @classmethod
    def from_harmonics(cls, length: float, harmonics) -> "TrigPoly":
        """Build from (n, re, im) triples with n >= 0; negative harmonics mirrored.

        The entry (n, re, im) contributes (re + i*im) exp(i k_n z) plus its
        conjugate at -n, so from_harmonics(L, [(1, 0.5, 0)]) is cos(2*pi*z/L).
        """
        coeffs: dict[int, complex] = {}
        for n, re, im in harmonics:
            if n < 0:
                raise ValueError(f"harmonic index must be >= 0, got {n}")
            c = complex(re, im)
            if n == 0:
                if im != 0:
                    raise ValueError("constant harmonic must be real")
                coeffs[0] = coeffs.get(0, 0j) + c
            else:
                coeffs[n] = coeffs.get(n, 0j) + c
                coeffs[-n] = coeffs.get(-n, 0j) + c.conjugate()
        return cls(length, coeffs)

    @classmethod
    def constant(cls, length: float, value: float) -> "TrigPoly":
        return cls(length, {0: complex(value)})

    def wavenumber(self, n: int) -> float:
        return 2.0 * math.pi * n / self.length

    def coeff(self, n: int) -> complex:
        return self.coeffs.get(n, 0.0 + 0.0j)

    @property
    def max_harmonic(self) -> int:
        return max((abs(n) for n in self.coeffs), default=0)

    def __call__(self, z: float) -> float:
        total = sum(c * cmath.exp(1j * self.wavenumber(n) * z) for n, c in self.coeffs.items())
        return total.real

    def derivative(self) -> "TrigPoly":
        return TrigPoly(self.length, {n: 1j * self.wavenumber(n) * c for n, c in self.coeffs.items()})

    def shifted(self, a: float) -> "TrigPoly":
        """The translate z -> f(z + a); still real."""
        return TrigPoly(
            self.length,
            {n: c * cmath.exp(1j * self.wavenumber(n) * a) for n, c in self.coeffs.items()},
        )

    def integral(self) -> float:
        """Exact integral over one period: L * c_0."""
        return (self.length * self.coeff(0)).real

    def derivative_power(self) -> float:
        """Exact integral of f'(z)^2 over one period (Parseval)."""
        return self.length * sum(self.wavenumber(n) ** 2 * abs(c) ** 2 for n, c in self.coeffs.items())

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        self._check_box(other)
        merged = dict(self.coeffs)
        for n, c in other.coeffs.items():
            merged[n] = merged.get(n, 0j) + c
        return TrigPoly(self.length, merged)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            self._check_box(other)
            prod: dict[int, complex] = {}
            for n1, c1 in self.coeffs.items():
                for n2, c2 in other.coeffs.items():
                    n = n1 + n2
                    prod[n] = prod.get(n, 0j) + c1 * c2
            return TrigPoly(self.length, prod)
        return TrigPoly(self.length, {n: other * c for n, c in self.coeffs.items()})

    __rmul__ = __mul__

    def _check_box(self, other: "TrigPoly") -> None:
        if abs(self.length - other.length) > 1e-12 * max(self.length, other.length):
            raise ValueError(f"box length mismatch: {self.length} vs {other.length}")

    def __repr__(self) -> str:
        parts = ", ".join(f"{n}: {c}" for n, c in sorted(self.coeffs.items()))
        return f"TrigPoly(L={self.length}, {{{parts}}})"
