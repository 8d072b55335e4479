"""Exact positivity certificates for affine forms on polyhedral regions.

A region is ``{g > 0 for g in strict} & {g >= 0 for g in loose}``. An
affine ``target`` is positive on it when

    target == sum(ls_i * strict_i) + sum(ll_j * loose_j) + constant

with every weight and the constant nonnegative and at least one of the
constant and the strict weights positive (Motzkin transposition).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .forms import AngleForm
from .ratlp import LPInstance, Status, solve_lp


@dataclass(frozen=True)
class Region:
    strict: tuple[AngleForm, ...]
    loose: tuple[AngleForm, ...] = ()


@dataclass(frozen=True)
class PositivityCertificate:
    target: AngleForm
    strict_weights: tuple[Fraction, ...]
    loose_weights: tuple[Fraction, ...]
    constant: Fraction


def _keys(forms) -> list[int]:
    keys = set()
    for f in forms:
        keys.update(v for v, _ in f.coeffs)
    return sorted(keys)


def prove_positive(region: Region, target: AngleForm) -> PositivityCertificate | None:
    """A certificate for ``target > 0`` on ``region``, or ``None``.

    Minimizes ``target`` over the closure first; only a minimum of exactly
    zero needs the larger search for a positive strict weight.
    """
    forms = region.strict + region.loose
    keys = _keys((target,) + forms)
    rows = [(f.vector(keys), ">=", -f.const) for f in forms]
    res = solve_lp(LPInstance.build([f"x{v}" for v in keys],
                                    [-c for c in target.vector(keys)], rows))
    if res.status is not Status.OPTIMAL:
        return None
    low = target.const - res.optimum
    if low < 0:
        return None
    if low > 0:
        lam = res.multipliers
        ns = len(region.strict)
        cert = PositivityCertificate(target, tuple(lam[:ns]), tuple(lam[ns:]), low)
        assert verify_positive(region, cert)
        return cert
    return _motzkin(region, target)


def _motzkin(region: Region, target: AngleForm) -> PositivityCertificate | None:
    strict, loose = region.strict, region.loose
    ns, nl = len(strict), len(loose)
    keys = _keys((target,) + strict + loose)
    names = [f"s{i}" for i in range(ns)] + [f"l{j}" for j in range(nl)] + ["c", "u"]
    nv = ns + nl + 2
    forms = strict + loose
    z = [Fraction(0)]
    rows = []
    for v in keys:
        rows.append(([f.coeff(v) for f in forms] + z + z, "==", target.coeff(v)))
    rows.append(([f.const for f in forms] + [Fraction(1)] + z, "==", target.const))
    for k in range(nv - 1):
        e = [Fraction(0)] * nv
        e[k] = Fraction(1)
        rows.append((e, ">=", 0))
    # u <= c + sum(strict weights) and u <= 1; maximize u
    rows.append(([Fraction(-1)] * ns + [Fraction(0)] * nl + [Fraction(-1), Fraction(1)], "<=", 0))
    rows.append(([Fraction(0)] * (nv - 1) + [Fraction(1)], "<=", 1))
    objective = [Fraction(0)] * (nv - 1) + [Fraction(1)]
    res = solve_lp(LPInstance.build(names, objective, rows))
    if res.status is not Status.OPTIMAL or res.optimum <= 0:
        return None
    w = res.point
    cert = PositivityCertificate(target, tuple(w[:ns]), tuple(w[ns:ns + nl]), w[-2])
    assert verify_positive(region, cert)
    return cert


def verify_positive(region: Region, cert: PositivityCertificate) -> bool:
    ws, wl = cert.strict_weights, cert.loose_weights
    if len(ws) != len(region.strict) or len(wl) != len(region.loose):
        return False
    if any(Fraction(k) < 0 for k in ws + wl) or cert.constant < 0:
        return False
    if cert.constant == 0 and all(k == 0 for k in ws):
        return False
    total = AngleForm.constant(cert.constant)
    for k, g in zip(ws + wl, region.strict + region.loose):
        total = total + Fraction(k) * g
    return total == cert.target
