"""Phonetic distances between readings and phoneticity of inclusion edges.

Every syllable token maps to a 7-feature vector (4 consonant features of
the onset, 3 vowel features of the nucleus); syllable distance is a
weighted Euclidean distance in that space with fixed axis weights
(4, 1, 4, 1, 5, 1, 1).  Readings of unequal syllable count are compared
with a sliding window: the shorter reading against every contiguous
same-length subword of the longer one, keeping the minimum mean
per-syllable distance.

Mandarin syllables additionally carry a tone digit; tone mismatch adds a
small fixed penalty on top of the segmental distance so that tone-only
pairs stay close.  The Mandarin distance is pluggable via
``MANDARIN_DISTANCE`` should a finer model be needed.

The phoneticity of an edge maps the minimum reading distance between the
two classes onto [0, 1], with 1 at distance zero and 0 at the largest
finite distance observed in the graph.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable

from .charstore import CharacterStore, Language, Reading
from .errors import DataError, InputError
from .graphcore import InclusionGraph

FEATURE_WEIGHTS = (4.0, 1.0, 4.0, 1.0, 5.0, 1.0, 1.0)

#: Fraction of the maximum segmental distance added for a Mandarin tone
#: mismatch.
TONE_PENALTY_FACTOR = 0.1

UNKNOWN = None  # alias used in signatures: a distance that cannot be computed


@dataclass(frozen=True)
class SyllableFeatures:
    consonant_place: float
    consonant_voicing: float
    consonant_manner: float
    consonant_palatalization: float
    vowel_frontness: float
    vowel_height: float
    vowel_rounding: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.consonant_place, self.consonant_voicing,
                self.consonant_manner, self.consonant_palatalization,
                self.vowel_frontness, self.vowel_height, self.vowel_rounding)


class FeatureTable:
    """Phoneme -> scale values, loaded from a TSV data table."""

    def __init__(self, consonants: dict[str, tuple[float, float, float, float]],
                 vowels: dict[str, tuple[float, float, float]]) -> None:
        if "-" not in consonants or "-" not in vowels:
            raise InputError("feature table must define the '-' null phonemes")
        self.consonants = consonants
        self.vowels = vowels
        self._onsets = sorted(consonants, key=len, reverse=True)

    @classmethod
    def load(cls, path: str | None = None) -> "FeatureTable":
        if path is None:
            ref = resources.files("sinograph").joinpath("data/phoneme_features.tsv")
            text = ref.read_text(encoding="utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        consonants: dict[str, tuple[float, float, float, float]] = {}
        vowels: dict[str, tuple[float, float, float]] = {}
        for lineno, row in enumerate(csv.reader(text.splitlines(), delimiter="\t"), 1):
            if not row or row[0].startswith("#"):
                continue
            kind, symbol, *values = row
            try:
                nums = tuple(float(v) for v in values)
            except ValueError:
                raise InputError(f"feature table line {lineno}: bad number") from None
            if kind == "C" and len(nums) == 4:
                consonants[symbol] = nums  # type: ignore[assignment]
            elif kind == "V" and len(nums) == 3:
                vowels[symbol] = nums  # type: ignore[assignment]
            else:
                raise InputError(f"feature table line {lineno}: malformed row {row!r}")
        return cls(consonants, vowels)

    def syllable_features(self, token: str) -> SyllableFeatures:
        """Map a romanized syllable token to its feature vector.

        The longest matching onset from the consonant inventory is taken,
        then the first vowel symbol of the remainder; a missing onset or
        nucleus maps to the null phoneme.  Tone digits are ignored here.
        """
        body = strip_tone(token)[0]
        if not body:
            raise InputError(f"empty syllable token {token!r}")
        onset = "-"
        for cand in self._onsets:
            if cand != "-" and body.startswith(cand):
                onset = cand
                body = body[len(cand):]
                break
        vowel = next((ch for ch in body if ch in self.vowels and ch != "-"), "-")
        c = self.consonants[onset]
        v = self.vowels[vowel]
        return SyllableFeatures(*c, *v)

    def max_segmental_distance(self) -> float:
        """Largest weighted distance realizable between two syllables of
        this inventory (used to scale the tone penalty)."""
        return _max_segmental_distance(self)


@lru_cache(maxsize=8)
def _max_segmental_distance(table: FeatureTable) -> float:
    wc = FEATURE_WEIGHTS[:4]
    wv = FEATURE_WEIGHTS[4:]
    best_c = max(
        sum((w * (a - b)) ** 2 for w, a, b in zip(wc, ca, cb))
        for ca in table.consonants.values() for cb in table.consonants.values())
    best_v = max(
        sum((w * (a - b)) ** 2 for w, a, b in zip(wv, va, vb))
        for va in table.vowels.values() for vb in table.vowels.values())
    return math.sqrt(best_c + best_v)


_DEFAULT_TABLE: FeatureTable | None = None


def default_table() -> FeatureTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = FeatureTable.load()
    return _DEFAULT_TABLE


def strip_tone(token: str) -> tuple[str, int]:
    """Split a syllable token into its segmental body and tone digit
    (0 when absent)."""
    token = token.strip().lower()
    if token and token[-1].isdigit():
        return token[:-1], int(token[-1])
    return token, 0


def syllable_distance(a: SyllableFeatures, b: SyllableFeatures) -> float:
    """Euclidean distance after scaling each axis by its weight."""
    return math.sqrt(sum(
        (w * (x - y)) ** 2
        for w, x, y in zip(FEATURE_WEIGHTS, a.as_tuple(), b.as_tuple())))


def _japanese_token_distance(a: str, b: str, table: FeatureTable) -> float:
    return syllable_distance(table.syllable_features(a), table.syllable_features(b))


def _mandarin_token_distance(a: str, b: str, table: FeatureTable) -> float:
    seg = syllable_distance(table.syllable_features(a), table.syllable_features(b))
    tone_a = strip_tone(a)[1]
    tone_b = strip_tone(b)[1]
    if tone_a != tone_b:
        seg += TONE_PENALTY_FACTOR * table.max_segmental_distance()
    return seg


#: Pluggable Mandarin syllable distance; replace to swap in a finer model.
MANDARIN_DISTANCE: Callable[[str, str, FeatureTable], float] = _mandarin_token_distance


def token_distance(language: Language, a: str, b: str,
                   table: FeatureTable | None = None) -> float:
    table = table or default_table()
    if language is Language.MANDARIN:
        return MANDARIN_DISTANCE(a, b, table)
    return _japanese_token_distance(a, b, table)


def reading_distance(r1: Reading, r2: Reading,
                     table: FeatureTable | None = None) -> float:
    """Sliding-window distance between two readings of one language.

    Equal lengths: mean of per-position syllable distances.  Unequal:
    minimum such mean over all contiguous same-length subwords of the
    longer reading.
    """
    if r1.language is not r2.language:
        raise InputError(f"cannot compare readings across languages "
                         f"({r1.language.value} vs {r2.language.value})")
    table = table or default_table()
    short, long_ = sorted((r1.syllables, r2.syllables), key=len)
    k = len(short)
    best = math.inf
    for offset in range(len(long_) - k + 1):
        mean = sum(token_distance(r1.language, short[i], long_[offset + i], table)
                   for i in range(k)) / k
        best = min(best, mean)
    return best


def class_distance(store: CharacterStore, class_a: int, class_b: int,
                   language: Language,
                   table: FeatureTable | None = None) -> float | None:
    """Minimum reading distance over all member-reading pairs; ``None``
    (unknown) when either class has no reading in the language."""
    readings_a = [r for cp in store.class_by_id(class_a).members
                  for r in store.readings(cp, language)]
    readings_b = [r for cp in store.class_by_id(class_b).members
                  for r in store.readings(cp, language)]
    if not readings_a or not readings_b:
        return UNKNOWN
    table = table or default_table()
    return min(reading_distance(ra, rb, table)
               for ra in readings_a for rb in readings_b)


def phoneticity(g: InclusionGraph, store: CharacterStore, language: Language,
                table: FeatureTable | None = None) -> InclusionGraph:
    """Annotate every edge with its phoneticity for ``language``.

    phi = 1 - d_min / D with D the maximum finite class distance over all
    edges, so phi is 1 exactly at distance 0 and the farthest edge gets 0.
    Edges with an unknown distance stay unannotated.  D is recorded in the
    graph metadata.  Raises DataError when no edge has a finite distance.
    """
    table = table or default_table()
    distances: dict[tuple[int, int], float] = {}
    for sub, sup in g.edges():
        d = class_distance(store, sub, sup, language, table)
        if d is not None:
            distances[(sub, sup)] = d
    if not distances:
        raise DataError(f"no edge has a computable {language.value} distance")
    d_max = max(distances.values())
    for (sub, sup), d in distances.items():
        data = g.edge(sub, sup)
        data.d_min[language.value] = d
        data.phi[language.value] = 1.0 if d_max == 0 else 1.0 - d / d_max
    g.meta[f"phi_dmax_{language.value}"] = repr(d_max)
    g.meta["phi_normalization"] = "1 - d_min / max_finite_d_min"
    return g


def least_phonetic_chain(g: InclusionGraph, start: int,
                         language: Language) -> list[int]:
    """Repeatedly descend to the incoming subcharacter with minimal
    phoneticity, skipping edges with unknown phi; ties break toward the
    lowest class id."""
    if start not in g:
        raise DataError(f"node {start} not in graph")
    lang = language.value
    chain = [start]
    current = start
    while True:
        candidates = [(g.edge(p, current).phi[lang], p)
                      for p in g.predecessors(current)
                      if lang in g.edge(p, current).phi]
        if not candidates:
            return chain
        _, nxt = min(candidates)
        chain.append(nxt)
        current = nxt


def phoneticity_histogram(g: InclusionGraph, language: Language,
                          bins: int = 20) -> tuple[list[float], list[int]]:
    """Histogram of defined phi values over [0, 1].

    Returns (bin_edges, counts); the last bin includes 1.0.  Raises
    DataError when no edge has a defined phi for the language.
    """
    if bins < 1:
        raise InputError("bins must be >= 1")
    lang = language.value
    values = [g.edge(a, b).phi[lang] for a, b in g.edges()
              if lang in g.edge(a, b).phi]
    if not values:
        raise DataError(f"no edge carries a {lang} phoneticity")
    counts = [0] * bins
    for v in values:
        idx = min(int(v * bins), bins - 1)
        counts[idx] += 1
    edges = [i / bins for i in range(bins + 1)]
    return edges, counts
