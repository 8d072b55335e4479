"""Gauss-Bonnet constraints on the crossing angles of a closed geodesic.

For a geodesic polygon face ``f`` with ``c_f`` corners the curvature it
encloses is ``omega_f = 2*pi - sum(pi - interior angle)``; on a strictly
convex sphere every ``omega_f`` is positive and they add up to ``4*pi``.
Everything here is exact and measured in units of pi, with variable
``x_v = alpha_v / pi`` constrained to ``(0, 1)``.

The closure constraints are listed in a fixed order shared by all
certificates: one ``omega_f >= 0`` per face, then ``x_v >= 0`` and
``1 - x_v >= 0`` per vertex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasibleSystem
from .forms import AngleForm
from .positivity import Region
from .planar_map import CurveDiagram
from .ratlp import LPInstance, Status, solve_lp


@dataclass(frozen=True)
class GBSystem:
    variables: tuple[int, ...]
    face_curvatures: tuple[AngleForm, ...]

    @property
    def constraints(self) -> tuple[AngleForm, ...]:
        """Closure constraints ``g >= 0`` in canonical order."""
        lower = tuple(AngleForm.var(v) for v in self.variables)
        upper = tuple(1 - AngleForm.var(v) for v in self.variables)
        return self.face_curvatures + lower + upper

    @property
    def region(self) -> Region:
        """The open angle region: every closure constraint strictly positive."""
        return Region(self.constraints)

    def constraint_names(self) -> list[str]:
        return ([f"face {i}" for i in range(len(self.face_curvatures))]
                + [f"x{v} > 0" for v in self.variables]
                + [f"x{v} < 1" for v in self.variables])


class GBStatus(str, enum.Enum):
    FORBIDDEN_GB = "FORBIDDEN_GB"
    FEASIBLE = "FEASIBLE"


@dataclass(frozen=True)
class FarkasCertificate:
    """Nonnegative weights on :attr:`GBSystem.constraints` summing to a constant ``<= 0``."""
    multipliers: tuple[Fraction, ...]


@dataclass(frozen=True)
class GBVerdict:
    max_slack: Fraction
    witness: dict[int, Fraction] | None
    farkas: FarkasCertificate | None

    @property
    def status(self) -> GBStatus:
        return GBStatus.FORBIDDEN_GB if self.max_slack <= 0 else GBStatus.FEASIBLE


def build_gb_system(diagram: CurveDiagram) -> GBSystem:
    forms = []
    for face in diagram.faces:
        omega = AngleForm.constant(2 - face.size)
        for c in face.corners:
            omega = omega + c.form
        forms.append(omega)
    return GBSystem(tuple(diagram.vertices), tuple(forms))


def check_total_curvature(system: GBSystem) -> bool:
    total = sum(system.face_curvatures, AngleForm())
    return total == AngleForm.constant(4)


def _combine(weights, forms) -> AngleForm:
    return sum((Fraction(w) * f for w, f in zip(weights, forms)), AngleForm())


def gb_feasibility(system: GBSystem) -> GBVerdict:
    """Maximize the common slack ``t`` of every closure constraint."""
    vars_ = system.variables
    names = [f"x{v}" for v in vars_] + ["t"]
    rows = []
    for g in system.constraints:
        # g(x) - t >= 0
        rows.append((g.vector(vars_) + [Fraction(-1)], ">=", -g.const))
    objective = [Fraction(0)] * len(vars_) + [Fraction(1)]
    res = solve_lp(LPInstance.build(names, objective, rows))
    assert res.status is Status.OPTIMAL, res.status
    t = res.optimum
    if t > 0:
        witness = dict(zip(vars_, res.point[:-1]))
        return GBVerdict(t, witness, None)
    return GBVerdict(t, None, FarkasCertificate(tuple(res.multipliers)))


def verify_farkas(system: GBSystem, certificate: FarkasCertificate) -> bool:
    """Exact check that the weights prove the strict system infeasible."""
    lam = certificate.multipliers
    cons = system.constraints
    if len(lam) != len(cons):
        return False
    if any(Fraction(w) < 0 for w in lam) or sum(lam) <= 0:
        return False
    combo = _combine(lam, cons)
    return combo.is_constant() and combo.const <= 0


def witness_margin(system: GBSystem, witness: dict[int, Fraction]) -> Fraction:
    return min(g(witness) for g in system.constraints)


def sup_angle_form(system: GBSystem, form: AngleForm, require_strict: bool = True,
                   extra: tuple[AngleForm, ...] = ()) -> Fraction | float:
    """Supremum of ``form`` over the closure of the feasible angle region.

    With ``require_strict`` the strict region must be nonempty, otherwise the
    closure only. ``extra`` adds further constraints ``g >= 0``. Returns
    ``math.inf`` when unbounded.
    """
    if require_strict and gb_feasibility(system).max_slack <= 0:
        raise InfeasibleSystem("no strictly positive curvature assignment exists")
    vars_ = system.variables
    rows = [(g.vector(vars_), ">=", -g.const) for g in system.constraints + tuple(extra)]
    res = solve_lp(LPInstance.build([f"x{v}" for v in vars_], form.vector(vars_), rows))
    if res.status is Status.INFEASIBLE:
        raise InfeasibleSystem("closure of the angle region is empty")
    if res.status is Status.UNBOUNDED:
        return float("inf")
    return res.optimum + form.const
