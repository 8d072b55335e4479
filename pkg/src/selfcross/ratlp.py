"""Exact rational linear programming.

Two-phase dense-tableau simplex over :class:`fractions.Fraction` with
Bland's anti-cycling rule. Every result carries a certificate that can be
checked by substitution:

* ``OPTIMAL``: nonnegative multipliers ``lam`` with
  ``c.x + sum(lam_i * g_i(x)) == optimum`` identically in ``x``;
* ``INFEASIBLE``: nonnegative multipliers with ``sum(lam_i * g_i(x))``
  identically equal to a negative constant;
* ``UNBOUNDED``: a feasible point and an improving recession direction.

Here ``g_i(x) = s_i * (a_i.x - b_i)`` is constraint ``i`` rewritten as
``g_i >= 0`` (``s_i = +1`` for ``>=`` and ``==``, ``-1`` for ``<=``).
Multipliers on equality rows are free in sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

MAX_VARIABLES = 64
MAX_CONSTRAINTS = 256
MAX_PIVOTS = 10**6

RELATIONS = (">=", "<=", "==")


class SizeExceeded(ValueError):
    pass


class PivotLimit(RuntimeError):
    pass


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    bound: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "bound", Fraction(self.bound))

    @property
    def sign(self) -> int:
        return -1 if self.relation == "<=" else 1


@dataclass(frozen=True)
class LPInstance:
    """Maximize ``objective . x`` over free variables subject to ``constraints``."""

    variables: tuple[str, ...]
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        n = len(self.variables)
        if len(self.objective) != n:
            raise ValueError("objective length does not match variables")
        for con in self.constraints:
            if len(con.coeffs) != n:
                raise ValueError("constraint length does not match variables")

    @classmethod
    def build(cls, variables: Sequence[str], objective, rows) -> "LPInstance":
        """Convenience constructor; ``rows`` are ``(coeffs, relation, bound)`` triples."""
        return cls(tuple(variables), tuple(objective),
                   tuple(Constraint(tuple(a), rel, b) for a, rel, b in rows))


@dataclass
class LPResult:
    status: Status
    optimum: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    multipliers: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    pivots: int = 0


@dataclass
class _Tableau:
    rows: list[list[Fraction]]
    rhs: list[Fraction]
    basis: list[int]
    pivots: int = 0
    blocked: set[int] = field(default_factory=set)

    def pivot(self, r: int, j: int) -> None:
        self.pivots += 1
        if self.pivots > MAX_PIVOTS:
            raise PivotLimit("pivot ceiling exceeded")
        row = self.rows[r]
        p = row[j]
        if p != 1:
            self.rows[r] = row = [v / p for v in row]
            self.rhs[r] /= p
        nz = [k for k, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[j]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = j

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        red = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                red = [d - cb * a for d, a in zip(red, row)]
        return red

    def run(self, cost: Sequence[Fraction]) -> int | None:
        """Maximize ``cost``; returns ``None`` at optimum or an unbounded column."""
        red = self.reduced_costs(cost)
        while True:
            entering = next((j for j, d in enumerate(red)
                             if d > 0 and j not in self.blocked), None)
            if entering is None:
                return None
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return entering
            r = best[1]
            self.pivot(r, entering)
            f = red[entering]
            red = [d - f * a if a else d for d, a in zip(red, self.rows[r])]


def _solve_transpose(cols: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve ``B^T y = rhs`` where ``cols`` are the columns of square ``B``."""
    m = len(cols)
    # row k of B^T is column k of B
    aug = [list(cols[k]) + [rhs[k]] for k in range(m)]
    for c in range(m):
        piv = next(r for r in range(c, m) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [v / p for v in aug[c]]
        for r in range(m):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [aug[k][m] for k in range(m)]


def solve_lp(instance: LPInstance) -> LPResult:
    n = len(instance.variables)
    cons = instance.constraints
    m = len(cons)
    if n > MAX_VARIABLES or m > MAX_CONSTRAINTS:
        raise SizeExceeded(f"{n} variables x {m} constraints exceeds "
                           f"{MAX_VARIABLES} x {MAX_CONSTRAINTS}")

    # columns: u (n), w (n), one slack per inequality row, one artificial per row
    slack_of: dict[int, int] = {}
    col = 2 * n
    for i, con in enumerate(cons):
        if con.relation != "==":
            slack_of[i] = col
            col += 1
    n_real = col
    n_cols = n_real + m

    std_rows: list[list[Fraction]] = []
    std_rhs: list[Fraction] = []
    flips: list[int] = []
    for i, con in enumerate(cons):
        row = [Fraction(0)] * n_cols
        for k, a in enumerate(con.coeffs):
            row[k] = a
            row[n + k] = -a
        if i in slack_of:
            row[slack_of[i]] = Fraction(1 if con.relation == "<=" else -1)
        b = con.bound
        f = 1
        if b < 0:
            f = -1
            row = [-v for v in row]
            b = -b
        row[n_real + i] = Fraction(1)
        std_rows.append(row)
        std_rhs.append(b)
        flips.append(f)
    std_cols = [[std_rows[r][j] for r in range(m)] for j in range(n_cols)]

    tab = _Tableau([list(r) for r in std_rows], list(std_rhs), [n_real + i for i in range(m)])
    active = list(range(m))  # original row index of each tableau row

    def duals(cost: Sequence[Fraction]) -> list[Fraction]:
        y_active = _solve_transpose(
            [[std_cols[b][active[k]] for k in range(len(active))] for b in tab.basis],
            [cost[b] for b in tab.basis]) if active else []
        y = [Fraction(0)] * m
        for k, i in enumerate(active):
            y[i] = y_active[k]
        lam = []
        for i, con in enumerate(cons):
            mu = flips[i] * y[i]
            lam.append(-mu * con.sign)
        return lam

    phase1 = [Fraction(0)] * n_real + [Fraction(-1)] * m
    tab.run(phase1)
    infeas = sum(tab.rhs[r] for r, b in enumerate(tab.basis) if b >= n_real)
    if infeas > 0:
        return LPResult(Status.INFEASIBLE, multipliers=tuple(duals(phase1)), pivots=tab.pivots)

    # drive zero-level artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(tab.basis):
        if tab.basis[r] >= n_real:
            j = next((j for j in range(n_real) if tab.rows[r][j] != 0), None)
            if j is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r], active[r]
                continue
            tab.pivot(r, j)
        r += 1
    tab.blocked = set(range(n_real, n_cols))

    cost = [Fraction(0)] * n_cols
    for k, c in enumerate(instance.objective):
        cost[k] = c
        cost[n + k] = -c
    unbounded_col = tab.run(cost)

    z = [Fraction(0)] * n_cols
    for r, b in enumerate(tab.basis):
        z[b] = tab.rhs[r]
    point = tuple(z[k] - z[n + k] for k in range(n))

    if unbounded_col is not None:
        d = [Fraction(0)] * n_cols
        d[unbounded_col] = Fraction(1)
        for r, b in enumerate(tab.basis):
            d[b] = -tab.rows[r][unbounded_col]
        ray = tuple(d[k] - d[n + k] for k in range(n))
        return LPResult(Status.UNBOUNDED, point=point, ray=ray, pivots=tab.pivots)

    optimum = sum((c * x for c, x in zip(instance.objective, point)), Fraction(0))
    return LPResult(Status.OPTIMAL, optimum=optimum, point=point,
                    multipliers=tuple(duals(cost)), pivots=tab.pivots)


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _feasible(instance: LPInstance, point) -> bool:
    for con in instance.constraints:
        v = _dot(con.coeffs, point)
        if con.relation == ">=" and v < con.bound:
            return False
        if con.relation == "<=" and v > con.bound:
            return False
        if con.relation == "==" and v != con.bound:
            return False
    return True


def _combination(instance: LPInstance, lam) -> tuple[list[Fraction], Fraction]:
    """Coefficients and constant of ``sum(lam_i * g_i(x))``."""
    n = len(instance.variables)
    lin = [Fraction(0)] * n
    const = Fraction(0)
    for l, con in zip(lam, instance.constraints):
        s = con.sign
        for k, a in enumerate(con.coeffs):
            lin[k] += l * s * a
        const -= l * s * con.bound
    return lin, const


def _multipliers_ok(instance: LPInstance, lam) -> bool:
    if lam is None or len(lam) != len(instance.constraints):
        return False
    return all(l >= 0 for l, con in zip(lam, instance.constraints) if con.relation != "==")


def check_solution(instance: LPInstance, result: LPResult) -> bool:
    """Exact substitution check of an :class:`LPResult` against its instance."""
    if result.status is Status.OPTIMAL:
        if result.point is None or result.optimum is None:
            return False
        if not _feasible(instance, result.point):
            return False
        if _dot(instance.objective, result.point) != result.optimum:
            return False
        if not _multipliers_ok(instance, result.multipliers):
            return False
        lin, const = _combination(instance, result.multipliers)
        # c.x + sum(lam g) == optimum identically
        return (all(c + l == 0 for c, l in zip(instance.objective, lin))
                and const == result.optimum)
    if result.status is Status.INFEASIBLE:
        if not _multipliers_ok(instance, result.multipliers):
            return False
        lin, const = _combination(instance, result.multipliers)
        return all(l == 0 for l in lin) and const < 0
    if result.status is Status.UNBOUNDED:
        if result.point is None or result.ray is None:
            return False
        if not _feasible(instance, result.point):
            return False
        for con in instance.constraints:
            v = _dot(con.coeffs, result.ray)
            if con.relation == ">=" and v < 0 or con.relation == "<=" and v > 0 \
                    or con.relation == "==" and v != 0:
                return False
        return _dot(instance.objective, result.ray) > 0
    return False
