import dataclasses
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from selfcross.comparison import (DirectionCertificate, HalfplaneOutcome, PolygonForm,
                                  build_polygon_spec, check_random_polygons,
                                  comparison_verdict, conservative_bounds, direction_cones,
                                  eliminate_rho, find_halfplane_certificate, joint_pair_bound,
                                  prove_region, reduce_form, region_walks, rho_interval,
                                  sample_turnings, slot_conditions, spec_from_upper_angles,
                                  verify_certificate, verify_parametric, _eligible_turnings)
from selfcross.config import Config
from selfcross.errors import NegativeSlack
from selfcross.gauss_code import enumerate_words
from selfcross.gb_system import build_gb_system, gb_feasibility
from selfcross.planar_map import delete_edge, distinct_realizations

F = Fraction
TRI = [(0, 1), (1, 1), (2, 1)]
# a side, the same arc back after a right angle, then straight down: cannot close
STUCK = ([(0, 1), (0, -1), (1, 1)], [F(1, 2), F(0), F(1, 2)])


# ---------------------------------------------------------------- fixed bounds

def test_regular_triangle_cones_are_points():
    spec = spec_from_upper_angles(TRI, [F(1, 3)] * 3)
    assert spec.slack == 0
    cones = direction_cones(spec)
    assert [(c.start, c.end) for c in cones] == [(0, 0), (F(2, 3), F(2, 3)), (F(4, 3), F(4, 3))]
    assert find_halfplane_certificate(spec) is HalfplaneOutcome.NOT_FOUND


def test_all_free_spec():
    spec = spec_from_upper_angles(TRI, [1, 1, 1])
    assert all(c.width == 2 for c in direction_cones(spec))
    assert (conservative_bounds(spec, np.linspace(0, 6, 50)) == 1).all()
    assert find_halfplane_certificate(spec) is HalfplaneOutcome.NOT_FOUND


def test_budget_exceeded():
    spec = spec_from_upper_angles(TRI, [0, 0, 0])
    assert spec.slack < 0
    assert find_halfplane_certificate(spec) is HalfplaneOutcome.IMMEDIATE_FORBIDDEN
    with pytest.raises(NegativeSlack):
        direction_cones(spec)


def test_synthetic_certificate():
    spec = spec_from_upper_angles(*STUCK)
    cert = find_halfplane_certificate(spec)
    assert isinstance(cert, DirectionCertificate)
    assert verify_certificate(spec, cert, samples=10_000)
    assert all(m <= -cert.margin for _, m in cert.group_margins)


def test_certificate_mutations():
    spec = spec_from_upper_angles(*STUCK)
    cert = find_halfplane_certificate(spec)
    # r pointing along the singleton side: its bound is cos 0 = 1
    inside = dataclasses.replace(cert, rho=1.5 * math.pi)
    assert not verify_certificate(spec, inside)
    assert not verify_certificate(spec, dataclasses.replace(cert, margin=0.0))
    assert not verify_certificate(spec, dataclasses.replace(cert, group_margins=()))


def test_anchoring_invariance_fixed():
    spec = spec_from_upper_angles(*STUCK)
    for k in range(3):
        assert isinstance(find_halfplane_certificate(spec.rotated(k)), DirectionCertificate)
    for k in range(3):
        tri = spec_from_upper_angles(TRI, [F(1, 3)] * 3).rotated(k)
        assert find_halfplane_certificate(tri) is HalfplaneOutcome.NOT_FOUND


def test_monotone_under_loosening_fixed():
    sides, uppers = STUCK
    found = []
    for j in range(0, 40):
        spec = spec_from_upper_angles(sides, [u + F(j, 100) for u in uppers])
        found.append(isinstance(find_halfplane_certificate(spec), DirectionCertificate))
    assert found[0] and not found[-1]
    first_miss = found.index(False)
    assert not any(found[first_miss:])


def test_joint_bound_below_conservative(config6):
    s = build_gb_system(config6)
    x = gb_feasibility(s).witness
    spec = build_polygon_spec(delete_edge(config6, 5), s, x)
    for rho in np.linspace(0, 2 * math.pi, 17):
        per_side = conservative_bounds(spec, rho)[:, 0]
        for g, pos in spec.groups.items():
            if len(pos) == 2:
                best, _ = joint_pair_bound(spec, pos[0], pos[1], float(rho), budget=40_000)
                assert best <= per_side[list(pos)].sum() + 1e-9


def test_config6_spec_shape(config6):
    s = build_gb_system(config6)
    spec = build_polygon_spec(delete_edge(config6, 5), s)
    assert len(spec.sides) == 7
    sizes = sorted(len(p) for p in spec.groups.values())
    assert sizes == [1, 1, 1, 2, 2]
    # the only binding corner is the one after the alpha bound: U = 1/3
    assert spec.turning_lower_bounds == (0, 0, 0, 0, 0, F(2, 3), 0)


def test_global_bounds_admit_a_closed_polygon(config6):
    """Per-corner sups alone cannot refute the region: a closing shape exists."""
    s = build_gb_system(config6)
    spec = build_polygon_spec(delete_edge(config6, 5), s)
    assert find_halfplane_certificate(spec, Config(joint_bound=True)) is \
        HalfplaneOutcome.NOT_FOUND
    rng = np.random.default_rng(1)
    phi = sample_turnings(spec, 4000, rng)
    groups = list(spec.groups.values())
    witnessed = False
    for row in phi:
        vecs = [sum(np.array([math.cos(row[i]), math.sin(row[i])]) for i in pos)
                for pos in groups]
        ang = np.sort([math.atan2(v[1], v[0]) for v in vecs])
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
        if gaps.max() < math.pi - 1e-9:
            witnessed = True   # zero is a positive combination of the group vectors
            break
    assert witnessed


# ------------------------------------------------------ angle-dependent bounds

def _small_census():
    for n in range(4):
        for c in enumerate_words(n):
            for d in distinct_realizations(c.code):
                yield d


def test_config6_forbidden(config6):
    s = build_gb_system(config6)
    res = comparison_verdict(config6, s)
    assert res.forbidden
    cert = res.certificate
    assert cert.source == ("edge", 5) and cert.slot == 5
    assert verify_parametric(config6, s, cert, samples=10_000)


def test_no_false_positives():
    flagged = []
    for d in _small_census():
        s = build_gb_system(d)
        if gb_feasibility(s).max_slack > 0 and comparison_verdict(d, s).forbidden:
            flagged.append(tuple(sorted(f.size for f in d.faces)))
    assert flagged == [(1, 1, 1, 4, 5)]


def test_loop_deletions_are_ineligible(config6):
    for e in (0, 2, 4):
        assert _eligible_turnings(delete_edge(config6, e)) is None


def _rotate(walk, k):
    r = lambda t: t[k:] + t[:k]  # noqa: E731
    return dataclasses.replace(walk, sides=r(walk.sides), corner_forms=r(walk.corner_forms),
                               corner_sectors=r(walk.corner_sectors))


def test_anchoring_invariance_parametric(config6):
    s = build_gb_system(config6)
    x = gb_feasibility(s).witness
    walk = delete_edge(config6, 5)
    for k in range(len(walk)):
        cert = prove_region(_rotate(walk, k), s, x)
        assert cert is not None and cert.slot == (5 - k) % len(walk)
    for d in _small_census():
        sd = build_gb_system(d)
        v = gb_feasibility(sd)
        if v.max_slack <= 0 or d.n == 0:
            continue
        for w in region_walks(d):
            base = prove_region(w, sd, v.witness) is not None
            assert all((prove_region(_rotate(w, k), sd, v.witness) is not None) == base
                       for k in range(1, len(w)))


def test_monotone_under_loosening_parametric(config6):
    s = build_gb_system(config6)
    x = gb_feasibility(s).witness
    walk = delete_edge(config6, 5)
    seq = [prove_region(walk, s, x, relax=F(j, 100)) is not None for j in range(0, 12)]
    assert seq[0]
    first_miss = seq.index(False)
    assert not any(seq[first_miss:])


def test_certificate_mutations_parametric(config6):
    s = build_gb_system(config6)
    cert = comparison_verdict(config6, s).certificate
    p = cert.positivity[0]
    bumped = dataclasses.replace(p, constant=p.constant + F(1, 3))
    assert not verify_parametric(config6, s, dataclasses.replace(
        cert, positivity=(bumped,) + cert.positivity[1:]), samples=0)
    assert not verify_parametric(config6, s, dataclasses.replace(
        cert, positivity=cert.positivity[1:]), samples=0)
    assert not verify_parametric(config6, s, dataclasses.replace(cert, slot=4), samples=0)
    flipped = dataclasses.replace(cert.sample, rho=cert.sample.rho + math.pi)
    assert not verify_parametric(config6, s, dataclasses.replace(cert, sample=flipped),
                                 samples=0)


def test_random_polygons_are_separated(config6):
    s = build_gb_system(config6)
    cert = comparison_verdict(config6, s).certificate
    walk = delete_edge(config6, 5)
    assert check_random_polygons(walk, s, cert.slot, cert.sample.point, 20_000, seed=7)


@settings(max_examples=60, deadline=None)
@given(raw=st.lists(st.integers(0, 50), min_size=14, max_size=14))
def test_reduced_form_is_a_lower_bound(raw, config6):
    s = build_gb_system(config6)
    x = gb_feasibility(s).witness
    walk = delete_edge(config6, 5)
    L = _eligible_turnings(walk)
    k = len(walk)
    budget = 2 - sum(low(x) for low in L)
    total = sum(raw)
    assume(total > 0)
    parts = [F(r, total) * budget for r in raw]
    w, e = parts[:k], parts[k:]
    t = [low(x) + ei for low, ei in zip(L, e)]
    assert sum(w) + sum(t) == 2
    conds = slot_conditions(walk, 5)
    for f in eliminate_rho(conds):
        assert f(x, w, t) >= reduce_form(f, L)(x)
    lo, hi = rho_interval(conds, x, w, t)
    assert lo < hi


def test_polygon_form_algebra():
    a = PolygonForm.unit(3, "w", 1) + 2
    b = PolygonForm.unit(3, "t", 0) * 3
    f = a - b
    assert f({}, [1, 5, 1], [2, 0, 0]) == 5 + 2 - 6
