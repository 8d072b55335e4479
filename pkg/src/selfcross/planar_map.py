"""Sphere realizations of Gauss codes as 4-valent combinatorial maps.

Darts: edge ``k`` of a code of length ``2n`` runs along the curve from
position ``k`` to position ``k + 1``; dart ``2k`` is its tail and dart
``2k + 1`` its head, so ``d ^ 1`` is the mate of ``d``. At each crossing
the rotation lists its four darts counterclockwise. Sector ``s`` at a
vertex is the angular region between rotation entries ``s`` and ``s + 1``.

Faces are the orbits of ``d -> sigma(mate(d))``: walk along ``d`` to the far
end, then turn counterclockwise to the next dart.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import LimitExceeded
from .forms import AngleForm
from .gauss_code import DEFAULT_MAX_CROSSINGS, GaussCode


class AngleType(str, enum.Enum):
    A = "A"          # the crossing angle alpha_v
    ABAR = "Abar"    # its supplement pi - alpha_v


@dataclass(frozen=True)
class Corner:
    vertex: int
    slot: int
    angle_type: AngleType

    @property
    def form(self) -> AngleForm:
        x = AngleForm.var(self.vertex)
        return x if self.angle_type is AngleType.A else 1 - x


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[int, ...]      # sides, each walked from its own vertex to its mate's
    corners: tuple[Corner, ...]  # corners[i] follows darts[i]

    @property
    def size(self) -> int:
        return len(self.corners)


@dataclass(frozen=True)
class BoundaryWalk:
    """Boundary of a disc region: sides alternate with corners.

    ``sides[i]`` is ``(edge, direction)`` with direction ``+1`` along the
    curve; ``corner_forms[i]`` is the interior angle after ``sides[i]``
    and ``corner_sectors[i]`` the original sectors it spans.
    """
    sides: tuple[tuple[int, int], ...]
    corner_forms: tuple[AngleForm, ...]
    corner_sectors: tuple[tuple[Corner, ...], ...]
    source: tuple[str, int]      # ("face", face id) or ("edge", deleted edge id)

    def __len__(self) -> int:
        return len(self.sides)


@dataclass(frozen=True, eq=False)
class CurveDiagram:
    code: GaussCode
    chirality: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def num_darts(self) -> int:
        return 2 * len(self.code.word)

    @property
    def num_edges(self) -> int:
        return len(self.code.word)

    @cached_property
    def rotation(self) -> dict[int, tuple[int, int, int, int]]:
        return rotation_system(self.code, self.chirality)

    @cached_property
    def dart_slot(self) -> dict[int, tuple[int, int]]:
        """dart -> (vertex, index in that vertex's rotation)."""
        return {d: (v, i) for v, rot in self.rotation.items() for i, d in enumerate(rot)}

    @property
    def strand_order(self) -> tuple[int, ...]:
        return tuple(range(self.num_darts))

    def dart_vertex(self, d: int) -> int:
        return self.dart_slot[d][0]

    def sigma(self, d: int) -> int:
        v, i = self.dart_slot[d]
        return self.rotation[v][(i + 1) % 4]

    def sector_type(self, v: int, slot: int) -> AngleType:
        rot = self.rotation[v]
        base = rot.index(min(rot))
        return AngleType.A if (slot - base) % 2 == 0 else AngleType.ABAR

    def corner(self, v: int, slot: int) -> Corner:
        return Corner(v, slot % 4, self.sector_type(v, slot % 4))

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(trace_faces(self))

    def __repr__(self) -> str:
        return f"CurveDiagram(code={list(self.code.word)}, chirality={list(self.chirality)})"


def rotation_system(code: GaussCode, chirality) -> dict[int, tuple[int, int, int, int]]:
    m = len(code.word)
    rot = {}
    for v in range(1, code.n + 1):
        p, q = code.positions(v)
        in_p, out_p = 2 * ((p - 1) % m) + 1, 2 * p
        in_q, out_q = 2 * ((q - 1) % m) + 1, 2 * q
        if chirality[v - 1] == 0:
            rot[v] = (in_p, out_q, out_p, in_q)
        else:
            rot[v] = (in_p, in_q, out_p, out_q)
    return rot


def _orbits(darts, step):
    seen = set()
    out = []
    for d in sorted(darts):
        if d in seen:
            continue
        orbit = []
        e = d
        while e not in seen:
            seen.add(e)
            orbit.append(e)
            e = step(e)
        out.append(orbit)
    return out


def euler_characteristic(diagram: CurveDiagram) -> int:
    if diagram.n == 0:
        return 2
    faces = _orbits(range(diagram.num_darts), lambda d: diagram.sigma(d ^ 1))
    return diagram.n - diagram.num_edges + len(faces)


def trace_faces(diagram: CurveDiagram) -> list[Face]:
    if diagram.n == 0:
        return [Face(0, (), ()), Face(1, (), ())]
    faces = []
    for fid, orbit in enumerate(_orbits(range(diagram.num_darts),
                                        lambda d: diagram.sigma(d ^ 1))):
        corners = []
        for d in orbit:
            v, i = diagram.dart_slot[d ^ 1]
            corners.append(diagram.corner(v, i))
        faces.append(Face(fid, tuple(orbit), tuple(corners)))
    return faces


def face_vector(diagram: CurveDiagram) -> tuple[int, ...]:
    return tuple(sorted(f.size for f in diagram.faces))


def _check_budget(code: GaussCode, max_crossings: int) -> None:
    if code.n > max_crossings:
        raise LimitExceeded(f"n={code.n} exceeds the limit of {max_crossings} crossings")


def chirality_assignments(n: int):
    """All chirality vectors with vertex 1 fixed, in increasing bit order."""
    if n == 0:
        yield ()
        return
    for bits in range(2 ** (n - 1)):
        yield (0,) + tuple((bits >> k) & 1 for k in range(n - 1))


def realize_on_sphere(code: GaussCode,
                      max_crossings: int = DEFAULT_MAX_CROSSINGS) -> CurveDiagram | None:
    """The first chirality assignment embedding ``code`` in the sphere, or ``None``."""
    _check_budget(code, max_crossings)
    for chi in chirality_assignments(code.n):
        diagram = CurveDiagram(code, chi)
        if euler_characteristic(diagram) == 2:
            return diagram
    return None


def sphere_realizations(code: GaussCode,
                        max_crossings: int = DEFAULT_MAX_CROSSINGS) -> list[CurveDiagram]:
    """Every spherical chirality assignment (vertex 1 fixed), in bit order."""
    _check_budget(code, max_crossings)
    out = []
    for chi in chirality_assignments(code.n):
        diagram = CurveDiagram(code, chi)
        if euler_characteristic(diagram) == 2:
            out.append(diagram)
    return out


def distinct_realizations(code: GaussCode, mirror_distinct: bool = False,
                          max_crossings: int = DEFAULT_MAX_CROSSINGS) -> list[CurveDiagram]:
    """Pairwise non-isomorphic realizations, ordered by canonical key."""
    by_key: dict[bytes, CurveDiagram] = {}
    for diagram in sphere_realizations(code, max_crossings):
        candidates = [diagram]
        if mirror_distinct and code.n:
            # fixing vertex 1 only identifies a diagram with its global mirror
            candidates.append(CurveDiagram(code, tuple(1 - b for b in diagram.chirality)))
        for d in candidates:
            by_key.setdefault(diagram_canonical_key(d, mirror_distinct), d)
    return [by_key[k] for k in sorted(by_key)]


def _walk_from_reduced(diagram: CurveDiagram, removed: set[int]):
    """Faces of the map with ``removed`` darts deleted, as (darts, spanned sectors)."""
    remaining = [d for d in range(diagram.num_darts) if d not in removed]

    def next_kept(d):
        v, i = diagram.dart_slot[d]
        rot = diagram.rotation[v]
        for k in range(1, 5):
            e = rot[(i + k) % 4]
            if e not in removed:
                return e, [diagram.corner(v, i + j) for j in range(k)]
        raise AssertionError("isolated dart")

    faces = []
    for orbit in _orbits(remaining, lambda d: next_kept(d ^ 1)[0]):
        faces.append((orbit, [next_kept(d ^ 1)[1] for d in orbit]))
    return faces


def _walk(darts, sectors, source) -> BoundaryWalk:
    sides = tuple((d // 2, 1 if d % 2 == 0 else -1) for d in darts)
    forms = tuple(sum((c.form for c in span), AngleForm()) for span in sectors)
    return BoundaryWalk(sides, forms, tuple(tuple(s) for s in sectors), source)


def face_walks(diagram: CurveDiagram) -> list[BoundaryWalk]:
    return [_walk(f.darts, [(c,) for c in f.corners], ("face", f.id))
            for f in diagram.faces]


def delete_edge(diagram: CurveDiagram, edge: int) -> BoundaryWalk:
    """Boundary walk of the face created by erasing ``edge`` from the curve."""
    if not 0 <= edge < diagram.num_edges:
        raise ValueError(f"no edge {edge}")
    faces = _walk_from_reduced(diagram, {2 * edge, 2 * edge + 1})
    merged = [f for f in faces if any(len(span) > 1 for span in f[1])]
    assert len(merged) == 1, "deleted edge must border exactly one merged face"
    darts, sectors = merged[0]
    return _walk(darts, sectors, ("edge", edge))


def diagram_canonical_key(diagram: CurveDiagram, mirror_distinct: bool = False) -> bytes:
    """Encoding minimal over starting darts (and over reflection unless ``mirror_distinct``)."""
    if diagram.n == 0:
        return b""
    N = diagram.num_darts
    sig = [diagram.sigma(d) for d in range(N)]
    inv = [0] * N
    for d, e in enumerate(sig):
        inv[e] = d
    orientations = [sig] if mirror_distinct else [sig, inv]
    best = None
    for rot in orientations:
        for start in range(N):
            label = {start: 0}
            order = [start]
            k = 0
            while k < len(order):
                d = order[k]
                for e in (d ^ 1, rot[d]):
                    if e not in label:
                        label[e] = len(order)
                        order.append(e)
                k += 1
            enc = tuple(itertools.chain.from_iterable(
                (label[d ^ 1], label[rot[d]]) for d in order))
            if best is None or enc < best:
                best = enc
    return bytes(best)


def is_transversal(diagram: CurveDiagram) -> bool:
    """Strand passages alternate around every vertex."""
    for v, rot in diagram.rotation.items():
        p, q = diagram.code.positions(v)
        m = len(diagram.code.word)
        passage = {2 * ((p - 1) % m) + 1: 0, 2 * p: 0, 2 * ((q - 1) % m) + 1: 1, 2 * q: 1}
        kinds = [passage[d] for d in rot]
        if any(kinds[i] == kinds[(i + 1) % 4] for i in range(4)):
            return False
    return True
