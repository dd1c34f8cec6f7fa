"""Synset store, semantic annotation and the semanticity of inclusions.

Semanticity of an edge subcharacter -> character is estimated from three
signals: how often member characters of the two classes appear in words
linked by a direct synset relation (f1), by a two-step relation path
(f2), and how often the two sides share a Kāng Xī radical (r).  The raw
score 0.5*log(1+f1) + 0.25*log(1+f2) + 0.25*r (natural log) is divided
by its maximum over all edges so values land in [0, 1].
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .charstore import AllographClass
from .errors import DataError, InputError
from .graphcore import InclusionGraph

#: Default mixing coefficients for (f1, f2, r).
SEMANTICITY_COEFFICIENTS = (0.5, 0.25, 0.25)


@dataclass(frozen=True)
class SemRelation:
    source: str
    relation_type: str
    target: str


class SynsetStore:
    """Synsets (id -> lemma words), typed relations between them, and the
    derived indices used by the counting operations."""

    def __init__(self) -> None:
        self._lemmas: dict[str, frozenset[str]] = {}
        self._relations: list[SemRelation] = []
        self._relation_set: set[SemRelation] = set()
        self._out: dict[str, list[SemRelation]] = defaultdict(list)
        self._word_index: dict[str, set[str]] = defaultdict(set)
        self._char_index: dict[str, set[str]] = defaultdict(set)

    def add_synset(self, synset_id: str, lemmas: Iterable[str]) -> None:
        lemmaset = frozenset(w for w in lemmas if w)
        if not lemmaset:
            raise InputError(f"synset {synset_id!r} has no lemmas")
        if synset_id in self._lemmas:
            raise InputError(f"duplicate synset id {synset_id!r}")
        self._lemmas[synset_id] = lemmaset
        for w in lemmaset:
            self._word_index[w].add(synset_id)
            for ch in w:
                self._char_index[ch].add(synset_id)

    def add_relation(self, source: str, relation_type: str, target: str) -> None:
        if source not in self._lemmas:
            raise InputError(f"relation source {source!r} is not a known synset")
        if target not in self._lemmas:
            raise InputError(f"relation target {target!r} is not a known synset")
        rel = SemRelation(source, relation_type, target)
        if rel not in self._relation_set:
            self._relation_set.add(rel)
            self._relations.append(rel)
            self._out[source].append(rel)

    @property
    def synset_ids(self) -> list[str]:
        return sorted(self._lemmas)

    def lemmas(self, synset_id: str) -> frozenset[str]:
        try:
            return self._lemmas[synset_id]
        except KeyError:
            raise DataError(f"unknown synset {synset_id!r}") from None

    @property
    def relations(self) -> list[SemRelation]:
        return list(self._relations)

    def outgoing(self, synset_id: str) -> list[SemRelation]:
        return list(self._out.get(synset_id, ()))

    def synsets_of_word(self, word: str) -> set[str]:
        return set(self._word_index.get(word, ()))

    def synsets_containing_char(self, char: str) -> set[str]:
        return set(self._char_index.get(char, ()))


def annotate_classes(
    store: SynsetStore,
    definitions: Mapping[int, Iterable[str]],
    classes: Sequence[AllographClass],
) -> dict[int, set[str]]:
    """Attach synset ids to allographic classes.

    A class receives a synset when a member's gloss word equals one of the
    synset's lemmas, or when the member character itself occurs inside a
    lemma word.  Classes may end up unannotated.
    """
    out: dict[int, set[str]] = {}
    for cls in classes:
        ids: set[str] = set()
        for cp in cls.members:
            for gloss in definitions.get(cp, ()):
                ids |= store.synsets_of_word(gloss)
            ids |= store.synsets_containing_char(chr(cp))
        if ids:
            out[cls.id] = ids
    return out


def _char_word_pairs(store: SynsetStore, synset_id: str,
                     members: frozenset[int]) -> int:
    """Number of (word, member) pairs with the member character occurring
    inside a lemma word of the synset."""
    chars = [chr(cp) for cp in members]
    return sum(1 for w in store.lemmas(synset_id) for ch in chars if ch in w)


def count_f1(sub: AllographClass, sup: AllographClass,
             store: SynsetStore) -> int:
    """Semantic weight of an inclusion from one-step synset relations.

    Counts distinct tuples (relation, word1, word2, s, c): the relation
    links synset1 -> synset2, s is a member of the subcharacter class
    occurring in word1 (a lemma of synset1), and c a member of the
    containing class occurring in word2 (a lemma of synset2).
    """
    total = 0
    for rel in store.relations:
        left = _char_word_pairs(store, rel.source, sub.members)
        if not left:
            continue
        total += left * _char_word_pairs(store, rel.target, sup.members)
    return total


def count_f2(sub: AllographClass, sup: AllographClass,
             store: SynsetStore) -> int:
    """Like ``count_f1`` but over two-step relation paths
    synset1 -> mid -> synset2 (any relation types); one-step pairs do not
    count here.  Distinct intermediate synsets yield distinct tuples."""
    total = 0
    for first in store.relations:
        left = _char_word_pairs(store, first.source, sub.members)
        if not left:
            continue
        for second in store.outgoing(first.target):
            total += left * _char_word_pairs(store, second.target, sup.members)
    return total


def radical_agreement(sub: AllographClass, sup: AllographClass,
                      radicals: Mapping[int, int]) -> float:
    """Fraction of member pairs sharing the same Kāng Xī radical; pairs
    with a missing radical count as disagreement."""
    n, m = len(sub.members), len(sup.members)
    agree = 0
    for s in sub.members:
        rs = radicals.get(s)
        if rs is None:
            continue
        for c in sup.members:
            if radicals.get(c) == rs:
                agree += 1
    return agree / (n * m)


def semanticity(
    g: InclusionGraph,
    f1: Mapping[tuple[int, int], int] | None = None,
    f2: Mapping[tuple[int, int], int] | None = None,
    r: Mapping[tuple[int, int], float] | None = None,
    coefficients: tuple[float, float, float] = SEMANTICITY_COEFFICIENTS,
) -> InclusionGraph:
    """Annotate every edge with its semanticity.

    Raw score per edge: a*log(1+f1) + b*log(1+f2) + c*r with natural
    logarithms and counts defaulting to 0 where absent.  Raw scores are
    divided by their maximum over all edges (recorded in the metadata);
    if every raw score is 0 all edges get S = 0.
    """
    f1 = f1 or {}
    f2 = f2 or {}
    r = r or {}
    a, b, c = coefficients
    raw: dict[tuple[int, int], float] = {}
    for key in g.edges():
        data = g.edge(*key)
        data.f1 = int(f1.get(key, 0))
        data.f2 = int(f2.get(key, 0))
        data.r = float(r.get(key, 0.0))
        raw[key] = (a * math.log1p(data.f1) + b * math.log1p(data.f2)
                    + c * data.r)
    max_raw = max(raw.values(), default=0.0)
    for key, value in raw.items():
        data = g.edge(*key)
        data.s_raw = value
        data.s = value / max_raw if max_raw > 0 else 0.0
    g.meta["s_raw_max"] = repr(max_raw)
    return g


def annotate_semanticity(
    g: InclusionGraph,
    classes: Sequence[AllographClass],
    store: SynsetStore | None,
    radicals: Mapping[int, int],
    coefficients: tuple[float, float, float] = SEMANTICITY_COEFFICIENTS,
) -> InclusionGraph:
    """Compute f1/f2/r for every edge from raw resources, then the
    normalized semanticity."""
    by_id = {cls.id: cls for cls in classes}
    f1: dict[tuple[int, int], int] = {}
    f2: dict[tuple[int, int], int] = {}
    r: dict[tuple[int, int], float] = {}
    for sub_id, sup_id in g.edges():
        sub, sup = by_id[sub_id], by_id[sup_id]
        if store is not None:
            f1[(sub_id, sup_id)] = count_f1(sub, sup, store)
            f2[(sub_id, sup_id)] = count_f2(sub, sup, store)
        if radicals:
            r[(sub_id, sup_id)] = radical_agreement(sub, sup, radicals)
    return semanticity(g, f1, f2, r, coefficients)


def most_semantic_chain(g: InclusionGraph, start: int) -> list[int]:
    """Repeatedly descend to the incoming subcharacter with maximal
    semanticity (S = 0 is a value and stays eligible); ties break toward
    the lowest class id; stops at a node without incoming edges."""
    if start not in g:
        raise DataError(f"node {start} not in graph")
    chain = [start]
    current = start
    while True:
        preds = g.predecessors(current)
        if not preds:
            return chain
        candidates = []
        for p in preds:
            s = g.edge(p, current).s
            if s is None:
                raise DataError(f"edge {p} -> {current} has no semanticity; "
                                f"run semanticity() first")
            candidates.append((-s, p))
        _, nxt = min(candidates)
        chain.append(nxt)
        current = nxt
