"""Exact affine forms ``c0 + sum(c_v * x_v)`` in units of pi.

``x_v`` is the crossing angle at vertex ``v`` divided by pi, so a form
with ``const=1`` and no variables is the straight angle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


@dataclass(frozen=True)
class AngleForm:
    const: Fraction = Fraction(0)
    coeffs: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "const", Fraction(self.const))
        merged: dict[int, Fraction] = {}
        for v, c in self.coeffs:
            merged[v] = merged.get(v, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "coeffs",
                           tuple(sorted((v, c) for v, c in merged.items() if c != 0)))

    @classmethod
    def constant(cls, c) -> "AngleForm":
        return cls(Fraction(c))

    @classmethod
    def var(cls, v: int, c=1) -> "AngleForm":
        return cls(Fraction(0), ((v, Fraction(c)),))

    @property
    def var_coeffs(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def coeff(self, v: int) -> Fraction:
        return self.var_coeffs.get(v, Fraction(0))

    def is_constant(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, AngleForm):
            other = AngleForm.constant(other)
        return AngleForm(self.const + other.const, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return AngleForm(-self.const, tuple((v, -c) for v, c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, AngleForm):
            other = AngleForm.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        k = Fraction(k)
        return AngleForm(self.const * k, tuple((v, c * k) for v, c in self.coeffs))

    __rmul__ = __mul__

    def __call__(self, x: Mapping[int, Fraction] | None = None):
        """Evaluate at ``x`` (vertex -> value); works for Fractions and floats."""
        total = self.const
        for v, c in self.coeffs:
            total = total + c * x[v]
        return total

    def vector(self, variables) -> list[Fraction]:
        d = self.var_coeffs
        return [d.get(v, Fraction(0)) for v in variables]

    def __str__(self) -> str:
        parts = []
        if self.const or not self.coeffs:
            parts.append(str(self.const))
        for v, c in self.coeffs:
            mag = abs(c)
            term = f"x{v}" if mag == 1 else f"{mag}*x{v}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"{sign} {term}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"const": str(self.const),
                "coeffs": {str(v): str(c) for v, c in self.coeffs}}

    @classmethod
    def from_json(cls, data: dict) -> "AngleForm":
        return cls(Fraction(data["const"]),
                   tuple((int(v), Fraction(c)) for v, c in data["coeffs"].items()))


ZERO = AngleForm()
PI = AngleForm.constant(1)
