"""Double-occurrence words (flat Gauss codes) and their canonical forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LimitExceeded, MalformedToken, OccurrenceError, OddLength

DEFAULT_MAX_CROSSINGS = 8


@dataclass(frozen=True)
class GaussCode:
    word: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        _validate(self.word)

    @property
    def n(self) -> int:
        return len(self.word) // 2

    def positions(self, label: int) -> tuple[int, int]:
        """The two positions of ``label``, in increasing order."""
        p = [i for i, c in enumerate(self.word) if c == label]
        return p[0], p[1]

    def __str__(self) -> str:
        return render_text(self)


@dataclass(frozen=True)
class Symmetry:
    """Maps an input word to its canonical image.

    The canonical word is obtained by reading the input starting at
    ``offset`` (backwards if ``reflected``) and renaming each label
    ``a`` to ``relabel[a]``.
    """
    offset: int
    reflected: bool
    relabel: dict[int, int]


@dataclass(frozen=True)
class CanonicalCode:
    code: GaussCode
    provenance: Symmetry

    @property
    def word(self) -> tuple[int, ...]:
        return self.code.word

    @property
    def n(self) -> int:
        return self.code.n


def _validate(word: Sequence[int]) -> None:
    if len(word) % 2:
        raise OddLength(f"word of odd length {len(word)}")
    counts: dict[int, int] = {}
    for c in word:
        if not isinstance(c, int) or isinstance(c, bool) or c < 1:
            raise MalformedToken(f"label {c!r} is not a positive integer")
        counts[c] = counts.get(c, 0) + 1
    bad = sorted(c for c, k in counts.items() if k != 2)
    if bad:
        raise OccurrenceError(f"labels {bad} do not appear exactly twice")


def normalize(word: Iterable[int]) -> tuple[tuple[int, ...], dict[int, int]]:
    """Relabel by order of first appearance; returns the word and the renaming."""
    names: dict[int, int] = {}
    out = []
    for c in word:
        if c not in names:
            names[c] = len(names) + 1
        out.append(names[c])
    return tuple(out), names


def parse_code(text: str) -> GaussCode:
    tokens = text.split()
    labels = []
    for tok in tokens:
        try:
            v = int(tok)
        except ValueError:
            raise MalformedToken(f"token {tok!r} is not an integer") from None
        if v < 1:
            raise MalformedToken(f"token {tok!r} is not a positive integer")
        labels.append(v)
    if len(labels) % 2:
        # report a missing partner before the parity
        _validate_counts_only(labels)
        raise OddLength(f"word of odd length {len(labels)}")
    _validate(labels)
    return GaussCode(normalize(labels)[0])


def _validate_counts_only(labels: list[int]) -> None:
    counts: dict[int, int] = {}
    for c in labels:
        counts[c] = counts.get(c, 0) + 1
    bad = sorted(c for c, k in counts.items() if k != 2)
    if bad:
        raise OccurrenceError(f"labels {bad} do not appear exactly twice")


def render_text(code: GaussCode) -> str:
    return " ".join(map(str, code.word))


def symmetry_images(word: Sequence[int]):
    """Yield ``(offset, reflected, image)`` over rotations and reversals, unnormalized."""
    m = len(word)
    for reflected in (False, True):
        base = tuple(reversed(word)) if reflected else tuple(word)
        for k in range(m):
            yield k, reflected, base[k:] + base[:k]


def canonical_code(code: GaussCode) -> CanonicalCode:
    word = code.word
    if not word:
        return CanonicalCode(code, Symmetry(0, False, {}))
    best = None
    for offset, reflected, image in symmetry_images(word):
        norm, names = normalize(image)
        if best is None or norm < best[0]:
            best = (norm, offset, reflected, names)
    norm, offset, reflected, names = best
    return CanonicalCode(GaussCode(norm), Symmetry(offset, reflected, names))


def _matchings(points: list[int]):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        for m in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, partner)] + m


def enumerate_words(n: int, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> list[CanonicalCode]:
    """All canonical double-occurrence words on ``n`` labels, sorted."""
    if n < 0:
        raise ValueError("crossing count must be nonnegative")
    if n > max_crossings:
        raise LimitExceeded(f"n={n} exceeds the limit of {max_crossings} crossings")
    seen: dict[tuple[int, ...], CanonicalCode] = {}
    for matching in _matchings(list(range(2 * n))):
        word = [0] * (2 * n)
        for label, (p, q) in enumerate(matching, start=1):
            word[p] = word[q] = label
        canon = canonical_code(GaussCode(normalize(word)[0]))
        seen.setdefault(canon.word, canon)
    return [seen[w] for w in sorted(seen)]


def interlaced(code: GaussCode, a: int, b: int) -> bool:
    """Whether chords ``a`` and ``b`` cross in the chord diagram of ``code``."""
    pa, qa = code.positions(a)
    pb, qb = code.positions(b)
    return (pa < pb < qa) != (pa < qb < qa)
