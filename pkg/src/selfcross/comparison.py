"""Half-plane refutation of comparison polygons.

A disc region cut out by the geodesic has a convex comparison polygon in
the plane whose turning at each corner is at least ``pi`` minus the
surface angle there, whose other vertices turn by a nonnegative amount,
and whose side lengths agree wherever the region's boundary runs along the
same arc twice. Orient the sides and anchor the first at direction 0;
every later side direction then lies in a cone of width equal to the
unused turning budget. If some unit vector ``r`` has a negative inner
product with every equal-length group of sides, the sides cannot close up
and the region, hence the pattern, is impossible.

Two layers live here:

* fixed bounds (:class:`PolygonSpec`): numeric search for ``r`` with
  outward-rounded interval verification;
* angle-dependent bounds (:class:`ParametricCertificate`): the turning
  bounds are affine in the crossing angles and ``r`` may depend on the
  polygon itself. Its existence for every admissible polygon over the
  whole Gauss-Bonnet region is proven exactly by eliminating ``r``,
  minimizing over the polygon's free turnings, and certifying each
  remaining affine inequality in the angles with
  :func:`positivity.prove_positive`.

Angles are in units of pi unless a name says radians.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from mpmath import iv

from .config import Config
from .errors import NegativeSlack
from .forms import AngleForm
from .gb_system import GBSystem, gb_feasibility, sup_angle_form
from .positivity import PositivityCertificate, Region, prove_positive, verify_positive
from .planar_map import BoundaryWalk, CurveDiagram, delete_edge, face_walks


# ---------------------------------------------------------------- fixed bounds

@dataclass(frozen=True)
class PolygonSpec:
    sides: tuple[tuple[int, int], ...]           # (edge, occurrence of that edge)
    turning_lower_bounds: tuple[Fraction, ...]   # after each side
    upper_angles: tuple[Fraction, ...] = ()

    @property
    def slack(self) -> Fraction:
        return 2 - sum(self.turning_lower_bounds, Fraction(0))

    @property
    def groups(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, (edge, _) in enumerate(self.sides):
            out.setdefault(edge, []).append(i)
        return {e: tuple(p) for e, p in sorted(out.items())}

    def rotated(self, k: int) -> "PolygonSpec":
        k %= len(self.sides)
        rot = lambda t: t[k:] + t[:k]  # noqa: E731
        return PolygonSpec(rot(self.sides), rot(self.turning_lower_bounds),
                           rot(self.upper_angles) if self.upper_angles else ())


def _occurrences(sides) -> tuple[tuple[int, int], ...]:
    seen: dict[int, int] = {}
    out = []
    for edge, _ in sides:
        out.append((edge, seen.get(edge, 0)))
        seen[edge] = seen.get(edge, 0) + 1
    return tuple(out)


def spec_from_upper_angles(sides, uppers) -> PolygonSpec:
    uppers = tuple(Fraction(u) for u in uppers)
    lows = tuple(max(Fraction(0), 1 - u) for u in uppers)
    return PolygonSpec(_occurrences(sides), lows, uppers)


def build_polygon_spec(walk: BoundaryWalk, system: GBSystem,
                       point: dict[int, Fraction] | None = None) -> PolygonSpec:
    """Turning bounds from the sup of each corner angle (or its value at ``point``)."""
    uppers = []
    for form in walk.corner_forms:
        if form.is_constant():
            uppers.append(form.const)
        elif point is not None:
            uppers.append(form(point))
        else:
            uppers.append(sup_angle_form(system, form))
    return spec_from_upper_angles(walk.sides, uppers)


@dataclass(frozen=True)
class DirectionCone:
    start: Fraction
    end: Fraction

    @property
    def width(self) -> Fraction:
        return self.end - self.start


def direction_cones(spec: PolygonSpec) -> list[DirectionCone]:
    S = spec.slack
    if S < 0:
        raise NegativeSlack(f"turning bounds exceed the full turn by {-S}")
    cones = []
    a = Fraction(0)
    for low in spec.turning_lower_bounds:
        cones.append(DirectionCone(a, a + S))
        a += low
    return cones


class HalfplaneOutcome(str, enum.Enum):
    NOT_FOUND = "NotFound"
    IMMEDIATE_FORBIDDEN = "ImmediateForbidden"


@dataclass(frozen=True)
class DirectionCertificate:
    rho: float                                  # radians
    group_margins: tuple[tuple[int, float], ...]  # (edge, upper bound on group sum)
    margin: float
    bounds: tuple[tuple[int, str], ...] = ()    # (edge, "conservative" | "joint")

    def bound_kind(self, edge: int) -> str:
        return dict(self.bounds).get(edge, "conservative")


def _cone_arrays(spec: PolygonSpec):
    cones = direction_cones(spec)
    s = np.array([float(c.start) for c in cones])
    e = np.array([float(c.end) for c in cones])
    return s, e


def conservative_bounds(spec: PolygonSpec, rho) -> np.ndarray:
    """``max cos(phi - rho)`` over each side's cone; shape ``(sides, len(rho))``."""
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    s, e = _cone_arrays(spec)
    r = np.mod(rho / math.pi, 2.0)[None, :]
    s, e = s[:, None], e[:, None]
    inside = ((r >= s) & (r <= e)) | (r + 2 <= e)
    d = np.minimum(np.mod(s - r, 2.0), np.mod(r - e, 2.0))
    return np.where(inside, 1.0, np.cos(math.pi * d))


def group_bounds(spec: PolygonSpec, rho) -> dict[int, np.ndarray]:
    per_side = conservative_bounds(spec, rho)
    return {g: per_side[list(pos)].sum(axis=0) for g, pos in spec.groups.items()}


def joint_pair_bound(spec: PolygonSpec, i: int, j: int, rho: float,
                     budget: int = 10**6) -> tuple[float, float]:
    """Grid maximum of ``cos(p - rho) + cos(q - rho)`` over jointly admissible directions.

    For sides ``i < j`` the sub-side directions satisfy ``p >= a_i``,
    ``q <= a_j + S`` and ``q - p >= a_j - a_i``. Returns ``(grid max,
    Lipschitz error)``; the true maximum is at most their sum.
    """
    if i > j:
        i, j = j, i
    cones = direction_cones(spec)
    S = float(spec.slack)
    ai, aj = float(cones[i].start), float(cones[j].start)
    D = aj - ai
    k = max(2, int(math.isqrt(max(budget, 4))))
    h = S / (k - 1) if S > 0 else 0.0
    p = ai + h * np.arange(k)
    q = aj + h * np.arange(k)
    P, Q = np.meshgrid(p, q, indexing="ij")
    ok = Q - P >= D - h - 1e-15
    vals = np.cos(math.pi * P - rho) + np.cos(math.pi * Q - rho)
    best = float(vals[ok].max())
    # the grid point below the maximizer is within h in each coordinate
    return best, 2 * math.pi * h + 1e-12


def _joint_group_bound(spec, positions, rho, budget) -> float:
    if len(positions) != 2:
        return math.inf
    best, err = joint_pair_bound(spec, positions[0], positions[1], rho, budget)
    return best + err


def _objective(spec: PolygonSpec, rho) -> np.ndarray:
    return np.max(np.vstack(list(group_bounds(spec, rho).values())), axis=0)


def _golden_min(f, lo, hi, iters=60):
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def _interval_side_bound(cone: DirectionCone, rho: float):
    """Outward-rounded upper bound of ``max cos(phi - rho)`` over ``cone``."""
    if cone.width >= 2:
        return iv.mpf(1)
    r = iv.mpf(math.fmod(rho, 2 * math.pi) % (2 * math.pi)) / iv.pi
    s = iv.mpf(cone.start.numerator) / cone.start.denominator
    e = iv.mpf(cone.end.numerator) / cone.end.denominator
    if r.b < s:
        d_lo = min((s - r).a, (r + 2 - e).a)
    elif r.a > e and (r + 2).a > e:
        d_lo = min((r - e).a, (s + 2 - r).a)
    else:
        return iv.mpf(1)
    if d_lo <= 0:
        return iv.mpf(1)
    return iv.cos(iv.pi * iv.mpf(d_lo))


def interval_group_margins(spec: PolygonSpec, rho: float) -> dict[int, object]:
    cones = direction_cones(spec)
    out = {}
    for g, pos in spec.groups.items():
        total = iv.mpf(0)
        for i in pos:
            total = total + _interval_side_bound(cones[i], rho)
        out[g] = total
    return out


def find_halfplane_certificate(spec: PolygonSpec, config: Config = Config()):
    """Search for a separating direction for ``spec``.

    Returns a :class:`DirectionCertificate` or a :class:`HalfplaneOutcome`.
    """
    if spec.slack < 0:
        return HalfplaneOutcome.IMMEDIATE_FORBIDDEN
    delta = config.margin
    N = config.grid
    rho = 2 * math.pi * np.arange(N) / N
    F = _objective(spec, rho)
    good = F <= -delta

    candidates = []
    if good.any():
        # centre of the longest circular run of good grid points
        idx = np.flatnonzero(good)
        if good.all():
            candidates.append(0.0)
        else:
            start = int(np.flatnonzero(~good)[0])
            order = np.roll(np.arange(N), -start)
            run, runs = [], []
            for k in order:
                if good[k]:
                    run.append(k)
                elif run:
                    runs.append(run)
                    run = []
            if run:
                runs.append(run)
            longest = max(runs, key=len)
            k0 = longest[len(longest) // 2]
            if len(longest) % 2 == 0:
                candidates.append(float(rho[k0]) - math.pi / N)
            else:
                candidates.append(float(rho[k0]))
        del idx
    else:
        # refine around the lowest local minima
        f = lambda t: float(_objective(spec, t)[0])  # noqa: E731
        mins = [k for k in range(N) if F[k] <= F[k - 1] and F[k] <= F[(k + 1) % N]]
        mins.sort(key=lambda k: F[k])
        h = 2 * math.pi / N
        for k in mins[:8]:
            t, ft = _golden_min(f, rho[k] - h, rho[k] + h)
            if ft <= -delta:
                candidates.append(t % (2 * math.pi))
                break

    for t in candidates:
        cert = _certify(spec, t, delta, False, config.polytope_budget)
        if cert is not None:
            return cert

    if config.joint_bound:
        order = np.argsort(F)[: max(8, N // 256)]
        for k in order:
            cert = _certify(spec, float(rho[k]), delta, True, config.polytope_budget)
            if cert is not None:
                return cert
    return HalfplaneOutcome.NOT_FOUND


def _certify(spec, rho, delta, joint, budget):
    margins = interval_group_margins(spec, rho)
    out, kinds = [], []
    for g, pos in spec.groups.items():
        m = float(margins[g].b)
        kind = "conservative"
        if m > -delta and joint:
            mj = _joint_group_bound(spec, pos, rho, budget)
            if mj < m:
                m, kind = mj, "joint"
        if m > -delta:
            return None
        out.append((g, m))
        kinds.append((g, kind))
    return DirectionCertificate(rho, tuple(out), delta, tuple(kinds))


def sample_turnings(spec: PolygonSpec, samples: int, rng) -> np.ndarray:
    """Random side directions (radians) of admissible polygons, shape ``(samples, k)``.

    Anchored at side 0's first sub-side. Each side gets one direction drawn
    from its own span of sub-side directions.
    """
    k = len(spec.sides)
    L = np.array([float(x) for x in spec.turning_lower_bounds])
    S = float(spec.slack)
    parts = rng.dirichlet(np.ones(2 * k), size=samples) * S
    spread, extra = parts[:, :k], parts[:, k:]
    advance = spread + extra + L[None, :]
    starts = np.concatenate([np.zeros((samples, 1)), np.cumsum(advance, axis=1)[:, :-1]], axis=1)
    within = rng.random((samples, k)) * spread
    return math.pi * (starts + within)


def verify_certificate(spec: PolygonSpec, cert: DirectionCertificate,
                       samples: int = 10_000, seed: int = 0,
                       budget: int = 10**6) -> bool:
    if not cert.margin > 0 or spec.slack < 0:
        return False
    claimed = dict(cert.group_margins)
    if set(claimed) != set(spec.groups):
        return False
    margins = interval_group_margins(spec, cert.rho)
    for g, pos in spec.groups.items():
        if cert.bound_kind(g) == "joint":
            m = _joint_group_bound(spec, pos, cert.rho, budget)
        else:
            m = float(margins[g].b)
        if m > -cert.margin or claimed[g] < m:
            return False
    if samples:
        rng = np.random.default_rng(seed)
        phi = sample_turnings(spec, samples, rng)
        c = np.cos(phi - cert.rho)
        for pos in spec.groups.values():
            if (c[:, list(pos)].sum(axis=1) >= 0).any():
                return False
    return True


# ------------------------------------------------------ angle-dependent bounds
#
# Quantify over the actual polygons: crossing angles x in the open
# Gauss-Bonnet region, a turning t_j >= L_j(x) at every corner and a spread
# w_i >= 0 of sub-side directions along every side, with sum(w) + sum(t) = 2.
# Side i's directions fill the sector [theta_i, theta_i + w_i] where
# theta_i = sum over j < i of (w_j + t_j). Every condition below is affine
# in (rho, x, w, t).

@dataclass(frozen=True)
class PolygonForm:
    """``x_part(x) + w . widths + t . turnings``."""
    x_part: AngleForm
    w: tuple[Fraction, ...]
    t: tuple[Fraction, ...]

    @classmethod
    def zero(cls, k: int) -> "PolygonForm":
        z = (Fraction(0),) * k
        return cls(AngleForm(), z, z)

    @classmethod
    def unit(cls, k: int, kind: str, i: int) -> "PolygonForm":
        e = tuple(Fraction(int(j == i)) for j in range(k))
        z = (Fraction(0),) * k
        return cls(AngleForm(), e, z) if kind == "w" else cls(AngleForm(), z, e)

    def __add__(self, other):
        if not isinstance(other, PolygonForm):
            return PolygonForm(self.x_part + other, self.w, self.t)
        return PolygonForm(self.x_part + other.x_part,
                           tuple(a + b for a, b in zip(self.w, other.w)),
                           tuple(a + b for a, b in zip(self.t, other.t)))

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        k = Fraction(k)
        return PolygonForm(self.x_part * k, tuple(a * k for a in self.w),
                           tuple(a * k for a in self.t))

    __rmul__ = __mul__

    def __call__(self, x, widths, turnings):
        total = self.x_part(x)
        for c, v in zip(self.w, widths):
            total = total + c * v
        for c, v in zip(self.t, turnings):
            total = total + c * v
        return total


@dataclass(frozen=True)
class LinearCondition:
    """``rho_coeff * rho + h > 0`` with ``rho`` the direction of ``r`` in units of pi."""
    rho_coeff: int
    h: PolygonForm


def _eligible_turnings(walk: BoundaryWalk, relax: Fraction = Fraction(0)):
    """Turning lower bounds ``1 - angle`` per corner, or ``None`` if the region is unusable.

    Usable regions have only genuine corners (one sector) and straight
    pass-throughs, and traverse every arc at most twice. ``relax`` widens
    every genuine corner's angle bound.
    """
    if not walk.sides:
        return None
    out = []
    for span, form in zip(walk.corner_sectors, walk.corner_forms):
        if len(span) > 2 or (len(span) == 2 and form != AngleForm.constant(1)):
            return None
        out.append(1 - form - relax if len(span) == 1 else 1 - form)
    counts: dict[int, int] = {}
    for edge, _ in walk.sides:
        counts[edge] = counts.get(edge, 0) + 1
    if max(counts.values()) > 2:
        return None
    return tuple(out)


def slot_conditions(walk: BoundaryWalk, slot: int,
                    relax: Fraction = Fraction(0)) -> list[LinearCondition]:
    """Conditions on ``rho`` placed in the gap after sector ``slot``."""
    if _eligible_turnings(walk, relax) is None:
        raise ValueError("region is not usable for the comparison argument")
    k = len(walk.sides)
    theta = [PolygonForm.zero(k)]
    for i in range(k):
        theta.append(theta[-1] + PolygonForm.unit(k, "w", i) + PolygonForm.unit(k, "t", i))
    theta[k] = PolygonForm.zero(k) + 2
    end = [theta[i] + PolygonForm.unit(k, "w", i) for i in range(k)]
    conds = [LinearCondition(1, -end[slot]), LinearCondition(-1, theta[slot + 1])]
    fwd, back = [], []
    for i in range(k):
        if i <= slot:
            fwd.append((-1, theta[i] + 2))
            back.append((1, -end[i]))
        else:
            fwd.append((-1, theta[i]))
            back.append((1, 2 - end[i]))
    groups: dict[int, list[int]] = {}
    for i, (edge, _) in enumerate(walk.sides):
        groups.setdefault(edge, []).append(i)
    for pos in groups.values():
        if len(pos) == 1:
            i = pos[0]
            for c, h in (fwd[i], back[i]):
                conds.append(LinearCondition(c, h - Fraction(1, 2)))
        else:
            i, j = pos
            for ci, hi in (fwd[i], back[i]):
                for cj, hj in (fwd[j], back[j]):
                    conds.append(LinearCondition(ci + cj, hi + hj - 1))
    return conds


def eliminate_rho(conds: Sequence[LinearCondition]) -> list[PolygonForm]:
    """Forms whose joint positivity is equivalent to some ``rho`` satisfying ``conds``."""
    free = [c.h for c in conds if c.rho_coeff == 0]
    lows = [c for c in conds if c.rho_coeff > 0]
    ups = [c for c in conds if c.rho_coeff < 0]
    out = list(free)
    for lo in lows:
        for up in ups:
            out.append(lo.h * (-up.rho_coeff) + up.h * lo.rho_coeff)
    return list(dict.fromkeys(out))


def reduce_form(form: PolygonForm, L: Sequence[AngleForm]) -> AngleForm:
    """Minimum of ``form`` over the widths and turnings allowed at each ``x``.

    With ``t = L(x) + e`` the pair ``(w, e)`` ranges over the simplex of
    total ``S(x) = 2 - sum(L(x))``, so the minimum is attained at a vertex.
    """
    kappa = min(form.w + form.t)
    const = form.x_part.const + 2 * kappa
    coeffs = dict(form.x_part.coeffs)
    for c, low in zip(form.t, L):
        k = c - kappa
        if k:
            const += k * low.const
            for v, a in low.coeffs:
                coeffs[v] = coeffs.get(v, 0) + k * a
    return AngleForm(const, tuple(coeffs.items()))


def turning_region(system: GBSystem, L: Sequence[AngleForm]) -> Region:
    """Open angle region together with a nonnegative turning budget."""
    return Region(system.constraints, (2 - sum(L, AngleForm()),))


def rho_interval(conds: Sequence[LinearCondition], x, widths, turnings):
    lo = max(-c.h(x, widths, turnings) / c.rho_coeff for c in conds if c.rho_coeff > 0)
    hi = min(c.h(x, widths, turnings) / -c.rho_coeff for c in conds if c.rho_coeff < 0)
    return lo, hi


@dataclass(frozen=True)
class PolygonSample:
    """One admissible polygon shape together with a separating direction for it."""
    point: dict[int, Fraction]
    widths: tuple[Fraction, ...]
    turnings: tuple[Fraction, ...]
    rho: float                                  # radians
    group_margins: tuple[tuple[int, float], ...]
    margin: float


@dataclass(frozen=True)
class ParametricCertificate:
    source: tuple[str, int]
    slot: int
    positivity: tuple[PositivityCertificate, ...]
    sample: PolygonSample | None


def region_walks(diagram: CurveDiagram) -> list[BoundaryWalk]:
    """Candidate regions in fixed order: faces by id, then single-edge deletions by id."""
    if diagram.n == 0:
        return []
    return face_walks(diagram) + [delete_edge(diagram, e) for e in range(diagram.num_edges)]


def walk_for_source(diagram: CurveDiagram, source) -> BoundaryWalk:
    kind, ident = source
    if kind == "face":
        return face_walks(diagram)[ident]
    if kind == "edge":
        return delete_edge(diagram, ident)
    raise ValueError(f"unknown region kind {kind!r}")


def _sectors(widths, turnings) -> list[DirectionCone]:
    out, a = [], Fraction(0)
    for w, t in zip(widths, turnings):
        out.append(DirectionCone(a, a + w))
        a += w + t
    return out


def sample_margins(walk: BoundaryWalk, widths, turnings, rho: float) -> dict[int, object]:
    """Interval upper bounds of each group's inner-product sum with ``r``."""
    sectors = _sectors(widths, turnings)
    out: dict[int, object] = {}
    for i, (edge, _) in enumerate(walk.sides):
        out[edge] = out.get(edge, iv.mpf(0)) + _interval_side_bound(sectors[i], rho)
    return out


def _make_sample(walk, conds, L, point, margin) -> PolygonSample | None:
    k = len(walk.sides)
    S = 2 - sum(L, AngleForm())
    s = S(point)
    if s <= 0:
        return None
    share = s / (2 * k)
    widths = (share,) * k
    turnings = tuple(low(point) + share for low in L)
    lo, hi = rho_interval(conds, point, widths, turnings)
    if lo >= hi:
        return None
    rho = float((lo + hi) / 2) * math.pi
    margins = sample_margins(walk, widths, turnings, rho)
    out = tuple((g, float(m.b)) for g, m in margins.items())
    if any(m > -margin for _, m in out):
        return None
    return PolygonSample(dict(point), widths, turnings, rho, out, margin)


def prove_region(walk: BoundaryWalk, system: GBSystem, point: dict[int, Fraction],
                 config: Config = Config(),
                 relax: Fraction = Fraction(0)) -> ParametricCertificate | None:
    """Try every placement of ``r``; ``point`` is a strictly feasible angle vector."""
    L = _eligible_turnings(walk, relax)
    if L is None:
        return None
    region = turning_region(system, L)
    budget_ok = region.loose[0](point) >= 0
    for slot in range(len(walk.sides)):
        conds = slot_conditions(walk, slot, relax)
        forms = list(dict.fromkeys(reduce_form(f, L) for f in eliminate_rho(conds)))
        if budget_ok and any(f(point) <= 0 for f in forms):
            continue
        proofs = []
        for f in forms:
            cert = prove_positive(region, f)
            if cert is None:
                break
            proofs.append(cert)
        else:
            sample = _make_sample(walk, conds, L, point, config.margin)
            return ParametricCertificate(walk.source, slot, tuple(proofs), sample)
    return None


def _random_points(system: GBSystem, base: dict[int, Fraction], count: int, rng) -> np.ndarray:
    """Points of the open angle region, spread between ``base`` and random box points."""
    vars_ = list(system.variables)
    x0 = np.array([float(base[v]) for v in vars_])
    A = np.array([[float(c) for c in g.vector(vars_)] for g in system.constraints])
    b = np.array([float(g.const) for g in system.constraints])
    u = rng.random((count, len(vars_)))
    s = rng.random(count)[:, None]
    for _ in range(60):
        x = x0 + s * (u - x0)
        bad = ((x @ A.T + b) <= 0).any(axis=1)
        if not bad.any():
            break
        s[bad] /= 2
    return x0 + s * (u - x0)


def check_random_polygons(walk: BoundaryWalk, system: GBSystem, slot: int,
                          base: dict[int, Fraction], samples: int, seed: int = 0,
                          relax: Fraction = Fraction(0)) -> bool:
    """Draw admissible polygons, place ``r`` in the slot and test every group sum."""
    L = _eligible_turnings(walk, relax)
    conds = slot_conditions(walk, slot, relax)
    vars_ = list(system.variables)
    k = len(walk.sides)
    rng = np.random.default_rng(seed)
    X = _random_points(system, base, samples, rng)
    Lv = (np.array([float(low.const) for low in L])[None, :]
          + X @ np.array([[float(c) for c in low.vector(vars_)] for low in L]).T)
    S = 2 - Lv.sum(axis=1)
    keep = S > 0
    X, Lv, S = X[keep], Lv[keep], S[keep]
    if len(S) == 0:
        return True
    parts = rng.dirichlet(np.ones(2 * k), size=len(S)) * S[:, None]
    W, T = parts[:, :k], parts[:, k:] + Lv

    def ev(f: PolygonForm):
        out = np.full(len(S), float(f.x_part.const))
        for v, c in f.x_part.coeffs:
            out += float(c) * X[:, vars_.index(v)]
        out += W @ np.array([float(c) for c in f.w]) + T @ np.array([float(c) for c in f.t])
        return out

    lo = np.max([-ev(c.h) / c.rho_coeff for c in conds if c.rho_coeff > 0], axis=0)
    hi = np.min([ev(c.h) / -c.rho_coeff for c in conds if c.rho_coeff < 0], axis=0)
    if (lo >= hi).any():
        return False
    rho = math.pi * (lo + hi) / 2
    starts = np.concatenate([np.zeros((len(S), 1)), np.cumsum(W + T, axis=1)[:, :-1]], axis=1)
    phi = math.pi * (starts + rng.random(W.shape) * W)
    c = np.cos(phi - rho[:, None])
    groups: dict[int, list[int]] = {}
    for i, (edge, _) in enumerate(walk.sides):
        groups.setdefault(edge, []).append(i)
    return all((c[:, pos].sum(axis=1) < 0).all() for pos in groups.values())


def verify_sample(walk: BoundaryWalk, system: GBSystem, L, sample: PolygonSample) -> bool:
    x = sample.point
    if set(x) != set(system.variables) or any(g(x) <= 0 for g in system.constraints):
        return False
    k = len(walk.sides)
    if len(sample.widths) != k or len(sample.turnings) != k:
        return False
    if any(w < 0 for w in sample.widths):
        return False
    if any(t < low(x) for t, low in zip(sample.turnings, L)):
        return False
    if sum(sample.widths) + sum(sample.turnings) != 2 or not sample.margin > 0:
        return False
    margins = sample_margins(walk, sample.widths, sample.turnings, sample.rho)
    claimed = dict(sample.group_margins)
    if set(claimed) != set(margins):
        return False
    return all(float(m.b) <= -sample.margin and claimed[g] >= float(m.b)
               for g, m in margins.items())


def verify_parametric(diagram: CurveDiagram, system: GBSystem, cert: ParametricCertificate,
                      samples: int = 10_000, seed: int = 0,
                      relax: Fraction = Fraction(0)) -> bool:
    walk = walk_for_source(diagram, cert.source)
    L = _eligible_turnings(walk, relax)
    if L is None or not 0 <= cert.slot < len(walk.sides):
        return False
    region = turning_region(system, L)
    needed = {reduce_form(f, L) for f in eliminate_rho(slot_conditions(walk, cert.slot, relax))}
    proved = {p.target for p in cert.positivity if verify_positive(region, p)}
    if not needed <= proved:
        return False
    if cert.sample is not None:
        if not verify_sample(walk, system, L, cert.sample):
            return False
        if samples and not check_random_polygons(walk, system, cert.slot, cert.sample.point,
                                                 samples, seed, relax):
            return False
    return True


@dataclass(frozen=True)
class ComparisonResult:
    certificate: ParametricCertificate | None
    regions_tried: int

    @property
    def forbidden(self) -> bool:
        return self.certificate is not None


def comparison_verdict(diagram: CurveDiagram, system: GBSystem,
                       config: Config = Config()) -> ComparisonResult:
    verdict = gb_feasibility(system)
    if verdict.max_slack <= 0:
        raise ValueError("comparison test needs a strictly feasible Gauss-Bonnet system")
    tried = 0
    for walk in region_walks(diagram):
        tried += 1
        cert = prove_region(walk, system, verdict.witness, config)
        if cert is not None:
            return ComparisonResult(cert, tried)
    return ComparisonResult(None, tried)
