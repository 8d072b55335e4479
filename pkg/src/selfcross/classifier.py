"""Pipeline orchestration, census and report serialization.

Reports are plain JSON. Exact quantities (GB data, multipliers, sample
polygon angles) are ``"p/q"`` strings; the separating direction and the
interval margins of a comparison certificate are decimal floats next to
an explicit ``margin`` field.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .comparison import (ParametricCertificate, PolygonSample, comparison_verdict,
                         verify_parametric)
from .config import Config
from .errors import MalformedPayload
from .forms import AngleForm
from .gauss_code import GaussCode, canonical_code, enumerate_words
from .gb_system import FarkasCertificate, build_gb_system, gb_feasibility, verify_farkas
from .planar_map import (CurveDiagram, distinct_realizations, euler_characteristic,
                         face_vector, sphere_realizations)
from .positivity import PositivityCertificate
from .render import render_svg  # noqa: F401  re-exported


class Verdict(str, enum.Enum):
    NOT_REALIZABLE_AS_CURVE = "NOT_REALIZABLE_AS_CURVE"
    FORBIDDEN_GB = "FORBIDDEN_GB"
    FORBIDDEN_COMPARISON = "FORBIDDEN_COMPARISON"
    PASSES = "PASSES"


# Known facts about small patterns, attached as metadata only.
_KNOWN_N3 = {
    (1, 1, 1, 3, 6): "configuration 5: known to be forbidden (Gauss-Bonnet)",
    (1, 1, 1, 4, 5): "configuration 6: known to be forbidden (comparison geometry)",
}
_UNDECIDED = "realizability undecided"


def annotations_for(n: int, fvec: tuple[int, ...] | None, verdict: Verdict) -> tuple[str, ...]:
    notes = []
    if fvec is not None:
        if n <= 2:
            notes.append("known: no forbidden patterns below three crossings")
        elif n == 3:
            notes.append(_KNOWN_N3.get(
                fvec, "one of configurations 1-4: known realizable by a closed geodesic"))
    if verdict is Verdict.PASSES and n > 3:
        notes.append(_UNDECIDED)
    return tuple(notes)


@dataclass
class ClassificationReport:
    input_code: tuple[int, ...]
    canonical_code: tuple[int, ...]
    realizable: bool
    realization: int
    realizations: int
    chirality: tuple[int, ...] | None
    face_vector: tuple[int, ...] | None
    verdict: Verdict
    certificate: FarkasCertificate | ParametricCertificate | None
    annotations: tuple[str, ...] = ()
    tool_version: str = __version__
    config: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.canonical_code) // 2

    def to_json(self) -> dict:
        return {
            "input_code": list(self.input_code),
            "canonical_code": list(self.canonical_code),
            "realizable": self.realizable,
            "realization": self.realization,
            "realizations": self.realizations,
            "chirality": None if self.chirality is None else list(self.chirality),
            "face_vector": None if self.face_vector is None else list(self.face_vector),
            "verdict": self.verdict.value,
            "certificate": certificate_to_json(self.certificate),
            "annotations": list(self.annotations),
            "tool_version": self.tool_version,
            "config": dict(self.config),
        }

    @classmethod
    def from_json(cls, data) -> "ClassificationReport":
        try:
            chi = data["chirality"]
            fvec = data["face_vector"]
            return cls(
                input_code=tuple(int(v) for v in data["input_code"]),
                canonical_code=tuple(int(v) for v in data["canonical_code"]),
                realizable=_bool(data["realizable"]),
                realization=int(data["realization"]),
                realizations=int(data["realizations"]),
                chirality=None if chi is None else tuple(int(b) for b in chi),
                face_vector=None if fvec is None else tuple(int(s) for s in fvec),
                verdict=Verdict(data["verdict"]),
                certificate=certificate_from_json(data["certificate"]),
                annotations=tuple(str(a) for a in data.get("annotations", ())),
                tool_version=str(data.get("tool_version", "")),
                config=dict(data.get("config", {})),
            )
        except MalformedPayload:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
            raise MalformedPayload(f"bad report: {exc!r}") from exc


def _bool(v) -> bool:
    if not isinstance(v, bool):
        raise MalformedPayload(f"expected a boolean, got {v!r}")
    return v


def _q(x) -> str:
    return str(Fraction(x))


def _fractions(items) -> tuple[Fraction, ...]:
    if isinstance(items, (str, bytes)) or not hasattr(items, "__iter__"):
        raise MalformedPayload(f"expected a list of rationals, got {items!r}")
    out = []
    for s in items:
        if not isinstance(s, str):
            raise MalformedPayload(f"rationals must be 'p/q' strings, got {s!r}")
        out.append(Fraction(s))
    return tuple(out)


def certificate_to_json(cert) -> dict | None:
    if cert is None:
        return None
    if isinstance(cert, FarkasCertificate):
        return {"kind": "farkas", "multipliers": [_q(m) for m in cert.multipliers]}
    if isinstance(cert, ParametricCertificate):
        s = cert.sample
        return {
            "kind": "comparison",
            "region": {"kind": cert.source[0], "id": cert.source[1]},
            "slot": cert.slot,
            "positivity": [{
                "target": p.target.to_json(),
                "strict_weights": [_q(w) for w in p.strict_weights],
                "loose_weights": [_q(w) for w in p.loose_weights],
                "constant": _q(p.constant),
            } for p in cert.positivity],
            "sample": None if s is None else {
                "point": {str(v): _q(x) for v, x in sorted(s.point.items())},
                "widths": [_q(w) for w in s.widths],
                "turnings": [_q(t) for t in s.turnings],
                "rho": s.rho,
                "group_margins": [[g, m] for g, m in s.group_margins],
                "margin": s.margin,
            },
        }
    raise TypeError(f"unknown certificate type {type(cert).__name__}")


def certificate_from_json(data):
    if data is None:
        return None
    if not isinstance(data, dict):
        raise MalformedPayload("certificate must be an object")
    kind = data.get("kind")
    try:
        if kind == "farkas":
            return FarkasCertificate(_fractions(data["multipliers"]))
        if kind == "comparison":
            proofs = tuple(PositivityCertificate(
                AngleForm.from_json(p["target"]),
                _fractions(p["strict_weights"]),
                _fractions(p["loose_weights"]),
                Fraction(p["constant"])) for p in data["positivity"])
            s = data["sample"]
            sample = None if s is None else PolygonSample(
                {int(v): Fraction(x) for v, x in s["point"].items()},
                _fractions(s["widths"]), _fractions(s["turnings"]),
                float(s["rho"]),
                tuple((int(g), float(m)) for g, m in s["group_margins"]),
                float(s["margin"]))
            region = data["region"]
            return ParametricCertificate((str(region["kind"]), int(region["id"])),
                                         int(data["slot"]), proofs, sample)
    except MalformedPayload:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
        raise MalformedPayload(f"bad certificate: {exc!r}") from exc
    raise MalformedPayload(f"unknown certificate kind {kind!r}")


def _diagram_verdict(diagram: CurveDiagram, config: Config):
    system = build_gb_system(diagram)
    gb = gb_feasibility(system)
    if gb.max_slack <= 0:
        assert verify_farkas(system, gb.farkas)
        return Verdict.FORBIDDEN_GB, gb.farkas
    result = comparison_verdict(diagram, system, config)
    if result.forbidden:
        cert = result.certificate
        assert verify_parametric(diagram, system, cert, config.samples, config.seed), \
            "emitted comparison certificate failed verification"
        return Verdict.FORBIDDEN_COMPARISON, cert
    return Verdict.PASSES, None


def classify(code: GaussCode, config: Config = Config(),
             realization: int = 0) -> ClassificationReport:
    """Classify one sphere realization (``realization`` indexes them by canonical key)."""
    canon = canonical_code(code).code
    options = distinct_realizations(canon, max_crossings=config.max_crossings)
    base = dict(input_code=tuple(code.word), canonical_code=tuple(canon.word),
                realizations=len(options), config=config.snapshot())
    if not options:
        return ClassificationReport(realizable=False, realization=0, chirality=None,
                                    face_vector=None,
                                    verdict=Verdict.NOT_REALIZABLE_AS_CURVE,
                                    certificate=None, **base)
    if not 0 <= realization < len(options):
        raise ValueError(f"realization index {realization} out of range "
                         f"(code has {len(options)})")
    diagram = options[realization]
    verdict, cert = _diagram_verdict(diagram, config)
    fvec = face_vector(diagram)
    return ClassificationReport(realizable=True, realization=realization,
                                chirality=tuple(diagram.chirality), face_vector=fvec,
                                verdict=verdict, certificate=cert,
                                annotations=annotations_for(canon.n, fvec, verdict), **base)


def verify_report(report: ClassificationReport, config: Config | None = None) -> bool:
    """Re-check a report against its own code; raises :class:`MalformedPayload` if unusable."""
    if isinstance(report, dict):
        report = ClassificationReport.from_json(report)
    if config is None:
        snap = report.config or {}
        config = Config(samples=int(snap.get("samples", Config.samples)),
                        seed=int(snap.get("seed", Config.seed)))
    try:
        code = GaussCode(report.canonical_code)
    except ValueError as exc:
        raise MalformedPayload(f"bad canonical code: {exc}") from exc
    if canonical_code(code).code.word != code.word:
        return False
    if report.input_code and canonical_code(GaussCode(report.input_code)).code.word != code.word:
        return False
    cert = report.certificate
    if report.verdict is Verdict.PASSES and cert is not None:
        return False
    if report.verdict is Verdict.NOT_REALIZABLE_AS_CURVE:
        return (cert is None and not report.realizable
                and not sphere_realizations(code, max(code.n, config.max_crossings)))
    if not report.realizable or report.chirality is None or len(report.chirality) != code.n:
        return False
    diagram = CurveDiagram(code, report.chirality)
    if euler_characteristic(diagram) != 2:
        return False
    if report.face_vector is not None and tuple(report.face_vector) != face_vector(diagram):
        return False
    system = build_gb_system(diagram)
    if report.verdict is Verdict.FORBIDDEN_GB:
        return isinstance(cert, FarkasCertificate) and verify_farkas(system, cert)
    if report.verdict is Verdict.FORBIDDEN_COMPARISON:
        if not isinstance(cert, ParametricCertificate):
            return False
        if gb_feasibility(system).max_slack <= 0:
            return False
        return verify_parametric(diagram, system, cert, config.samples, config.seed)
    return True


@dataclass(frozen=True)
class CensusRow:
    n: int
    canonical_code: tuple[int, ...]
    realization: int
    face_vector: tuple[int, ...]
    verdict: Verdict
    seconds: float
    report: ClassificationReport

    def to_json(self) -> dict:
        return {"n": self.n, "canonical_code": list(self.canonical_code),
                "realization": self.realization, "face_vector": list(self.face_vector),
                "verdict": self.verdict.value, "seconds": round(self.seconds, 6),
                "report": self.report.to_json()}


def census(n_max: int, config: Config = Config(), mirror_distinct: bool = False,
           n_min: int = 0) -> list[CensusRow]:
    """One row per realizable class with ``n_min <= n <= n_max`` crossings.

    Rows come in order of ``n``, then canonical word, then realization key.
    """
    rows = []
    for n in range(n_min, n_max + 1):
        for canon in enumerate_words(n, config.max_crossings):
            options = distinct_realizations(canon.code, mirror_distinct, config.max_crossings)
            for k, diagram in enumerate(options):
                t0 = time.perf_counter()
                verdict, cert = _diagram_verdict(diagram, config)
                fvec = face_vector(diagram)
                report = ClassificationReport(
                    input_code=tuple(canon.code.word), canonical_code=tuple(canon.code.word),
                    realizable=True, realization=k, realizations=len(options),
                    chirality=tuple(diagram.chirality), face_vector=fvec, verdict=verdict,
                    certificate=cert, annotations=annotations_for(n, fvec, verdict),
                    config=config.snapshot())
                rows.append(CensusRow(n, tuple(canon.code.word), k, fvec, verdict,
                                      time.perf_counter() - t0, report))
    return rows
