"""Unigram feature vectors over allographic classes, plus chain-based
augmentation.

Baseline vectors carry, per document, the relative frequency of each
class (max over member characters), restricted to classes frequent
enough corpus-wide.  Augmentation walks each in-vocabulary class's
weighted chain of subcharacters and adds discounted weight to the chain
members: depth i receives (1/i) * edge_weight * w(class).  Chain members
outside the vocabulary are added to it, tagged with their provenance.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .charstore import Language
from .errors import DataError, InputError
from .graphcore import InclusionGraph
from .phonetics import least_phonetic_chain
from .semantics import most_semantic_chain

log = logging.getLogger(__name__)

PROVENANCE_BASELINE = "baseline"
PROVENANCE_CHAIN = "chain"

FeatureVector = dict[int, float]


@dataclass
class Vocabulary:
    """Admitted feature ids with their provenance."""

    provenance: dict[int, str] = field(default_factory=dict)

    @property
    def ids(self) -> set[int]:
        return set(self.provenance)

    def __contains__(self, class_id: int) -> bool:
        return class_id in self.provenance

    def __len__(self) -> int:
        return len(self.provenance)

    def added_ids(self) -> set[int]:
        return {i for i, p in self.provenance.items() if p == PROVENANCE_CHAIN}

    def copy(self) -> "Vocabulary":
        return Vocabulary(dict(self.provenance))


def _l2_normalize(vec: FeatureVector) -> FeatureVector:
    norm = math.sqrt(sum(w * w for w in vec.values()))
    if norm == 0:
        return dict(vec)
    return {k: w / norm for k, w in vec.items()}


def baseline_vectors(
    texts: Sequence[str],
    class_of: Mapping[int, int],
    min_count: int = 10,
    normalize: bool = True,
) -> tuple[Vocabulary, list[FeatureVector]]:
    """Per-document class weights from character unigrams.

    Characters without a class (punctuation, spaces, anything outside the
    store) are ignored entirely, including in the relative-frequency
    denominator.  A class's weight in a document is the maximum relative
    frequency over its member characters.  The vocabulary keeps classes
    whose members occur at least ``min_count`` times corpus-wide; vectors
    are then restricted to it and L2-normalized.
    """
    if not texts:
        raise InputError("empty corpus")
    corpus_class_counts: Counter[int] = Counter()
    doc_char_counts: list[Counter[int]] = []
    for text in texts:
        counts: Counter[int] = Counter()
        for ch in text:
            cp = ord(ch)
            if cp in class_of:
                counts[cp] += 1
        doc_char_counts.append(counts)
        for cp, c in counts.items():
            corpus_class_counts[class_of[cp]] += c

    vocab = Vocabulary({cid: PROVENANCE_BASELINE
                        for cid, c in corpus_class_counts.items()
                        if c >= min_count})
    if not vocab:
        raise DataError(f"no class reaches min_count={min_count}; "
                        f"vocabulary is empty")

    vectors: list[FeatureVector] = []
    for i, counts in enumerate(doc_char_counts):
        total = sum(counts.values())
        if total == 0:
            log.warning("document %d contains no stored characters; "
                        "emitting a zero vector", i)
            vectors.append({})
            continue
        weights: FeatureVector = {}
        for cp, c in counts.items():
            cid = class_of[cp]
            if cid in vocab:
                w = c / total
                if w > weights.get(cid, 0.0):
                    weights[cid] = w
        vectors.append(_l2_normalize(weights) if normalize else weights)
    return vocab, vectors


def semantic_chains(g: InclusionGraph, class_ids: set[int]) -> dict[int, list[int]]:
    """Most-semantic chain per class; classes outside the graph get a
    singleton chain."""
    return {cid: most_semantic_chain(g, cid) if cid in g else [cid]
            for cid in class_ids}


def phonetic_chains(g: InclusionGraph, class_ids: set[int],
                    language: Language) -> dict[int, list[int]]:
    """Least-phonetic chain per class; classes outside the graph get a
    singleton chain."""
    return {cid: least_phonetic_chain(g, cid, language) if cid in g else [cid]
            for cid in class_ids}


def _chain_additions(
    vector: FeatureVector,
    chains: Mapping[int, list[int]],
    edge_weight,
) -> FeatureVector:
    """Discounted chain weights triggered by one document's features."""
    additions: FeatureVector = {}
    for cid, w in vector.items():
        chain = chains.get(cid)
        if not chain or len(chain) < 2:
            continue
        for i in range(1, len(chain)):
            ew = edge_weight(chain[i], chain[i - 1])
            if ew is None:
                continue
            gain = (1.0 / i) * ew * w
            if gain != 0.0:
                additions[chain[i]] = additions.get(chain[i], 0.0) + gain
    return additions


def _apply_augmentation(
    vocab: Vocabulary,
    vectors: Sequence[FeatureVector],
    all_additions: Sequence[FeatureVector],
    normalize: bool,
) -> tuple[Vocabulary, list[FeatureVector]]:
    new_vocab = vocab.copy()
    out: list[FeatureVector] = []
    for vec, adds in zip(vectors, all_additions):
        merged = dict(vec)
        for cid, gain in adds.items():
            merged[cid] = merged.get(cid, 0.0) + gain
            if cid not in new_vocab:
                new_vocab.provenance[cid] = PROVENANCE_CHAIN
        # untouched documents stay bit-identical
        out.append(_l2_normalize(merged) if (normalize and adds) else merged)
    return new_vocab, out


def augment_strategy1(
    g: InclusionGraph,
    vocab: Vocabulary,
    vectors: Sequence[FeatureVector],
    chains: Mapping[int, list[int]] | None = None,
    normalize: bool = True,
) -> tuple[Vocabulary, list[FeatureVector]]:
    """Most-semantic-chain augmentation.

    For each document and each in-vocabulary class with weight w, chain
    member at depth i gains (1/i) * S(edge at step i) * w.  Chain members
    missing from the vocabulary are added with chain provenance.
    """
    if chains is None:
        chains = semantic_chains(g, vocab.ids)

    def s_weight(sub: int, sup: int) -> float | None:
        s = g.edge(sub, sup).s
        if s is None:
            raise DataError(f"edge {sub} -> {sup} has no semanticity")
        return s

    additions = [_chain_additions(vec, chains, s_weight) for vec in vectors]
    return _apply_augmentation(vocab, vectors, additions, normalize)


def augment_strategy2(
    g: InclusionGraph,
    vocab: Vocabulary,
    vectors: Sequence[FeatureVector],
    language: Language,
    semantic: Mapping[int, list[int]] | None = None,
    phonetic: Mapping[int, list[int]] | None = None,
    include_semantic: bool = True,
    normalize: bool = True,
) -> tuple[Vocabulary, list[FeatureVector]]:
    """Semantic plus least-phonetic-chain augmentation.

    Applies the semantic augmentation, then adds (1/i) * phi * w along
    each in-vocabulary class's least phonetic chain.  Edges without a
    defined phi contribute nothing.  ``include_semantic=False`` runs the
    phonetic part alone.
    """
    if phonetic is None:
        phonetic = phonetic_chains(g, vocab.ids, language)

    def phi_weight(sub: int, sup: int) -> float | None:
        return g.edge(sub, sup).phi.get(language.value)

    phonetic_adds = [_chain_additions(vec, phonetic, phi_weight)
                     for vec in vectors]
    if include_semantic:
        if semantic is None:
            semantic = semantic_chains(g, vocab.ids)

        def s_weight(sub: int, sup: int) -> float | None:
            s = g.edge(sub, sup).s
            if s is None:
                raise DataError(f"edge {sub} -> {sup} has no semanticity")
            return s

        semantic_adds = [_chain_additions(vec, semantic, s_weight)
                         for vec in vectors]
        combined = []
        for sa, pa in zip(semantic_adds, phonetic_adds):
            merged = dict(sa)
            for cid, gain in pa.items():
                merged[cid] = merged.get(cid, 0.0) + gain
            combined.append(merged)
        phonetic_adds = combined
    return _apply_augmentation(vocab, vectors, phonetic_adds, normalize)
