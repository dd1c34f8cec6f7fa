"""Command-line pipeline: every stage of the toolkit as a subcommand.

Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
3 inputs parsed but the requested computation is impossible.

Subcommands::

    build-graph    strokes + variants -> reduced class-inclusion snapshot
    annotate       add phoneticity / semanticity / synset annotations
    chains         emit least-phonetic or most-semantic chains
    freqdist       pairwise distance matrix of frequency lists
    features       baseline or chain-augmented document vectors
    evaluate       cross-validated linear classification of a vectors file
    query-unknown  synset distribution approximating an unannotated class
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import formats
from .charstore import CharacterStore, Language
from .classify import cross_validate
from .errors import DataError, InputError
from .features import augment_strategy1, augment_strategy2, baseline_vectors
from .freqlists import aggregate_ufl, distance_matrix
from .graphcore import from_edges, lift_to_classes, transitive_reduce
from .inferschar import semantic_approximation
from .phonetics import (
    FeatureTable,
    least_phonetic_chain,
    phoneticity,
    phoneticity_histogram,
)
from .semantics import (
    SEMANTICITY_COEFFICIENTS,
    SynsetStore,
    annotate_classes,
    annotate_semanticity,
    most_semantic_chain,
)
from .strokesig import char_signature, detect_inclusions

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_DATA = 3


@dataclass
class PipelineConfig:
    """Resolved per-invocation parameters; every field has a CLI flag.

    Built from the parsed arguments of whichever subcommand is running;
    fields a subcommand does not expose keep their defaults.
    """

    tolerance: float = 0.05
    min_count: int = 10
    C: float = 1.0
    k: int = 10
    seed: int = 0
    language: Language = Language.JAPANESE_ON
    coefficients: tuple[float, float, float] = SEMANTICITY_COEFFICIENTS
    max_depth: int = 4
    bins: int = 20
    codepoint_range: tuple[int, int] | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "PipelineConfig":
        cfg = cls()
        for field_name in ("tolerance", "min_count", "C", "k", "seed",
                           "max_depth", "bins"):
            if getattr(args, field_name, None) is not None:
                setattr(cfg, field_name, getattr(args, field_name))
        if getattr(args, "language", None):
            cfg.language = Language.parse(args.language)
        if getattr(args, "coefficients", None):
            cfg.coefficients = tuple(args.coefficients)
        if getattr(args, "codepoint_range", None):
            cfg.codepoint_range = _parse_range(args.codepoint_range)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.tolerance < 0:
            raise InputError("tolerance must be nonnegative")
        if self.min_count < 1:
            raise InputError("min-count must be >= 1")
        if self.C <= 0:
            raise InputError("C must be positive")
        if self.k < 2:
            raise InputError("k must be >= 2")
        if self.max_depth < 1:
            raise InputError("max-depth must be >= 1")
        if self.bins < 1:
            raise InputError("bins must be >= 1")
        if len(self.coefficients) != 3 or any(c < 0 for c in self.coefficients):
            raise InputError("coefficients must be three nonnegative numbers")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; usage is 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo_tok, hi_tok = text.split("-")
        lo, hi = int(lo_tok, 16), int(hi_tok, 16)
    except ValueError:
        raise InputError(f"bad codepoint range {text!r}; expected HEX-HEX") from None
    if lo > hi:
        raise InputError(f"empty codepoint range {text!r}")
    return lo, hi


def _out_stream(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _write_lines(path: str | None, lines: list[str]) -> None:
    fh, close = _out_stream(path)
    try:
        for line in lines:
            fh.write(line + "\n")
    finally:
        if close:
            fh.close()


def _load_synset_store(synsets_path: str, relations_path: str | None) -> SynsetStore:
    store = SynsetStore()
    for sid, lemmas in formats.load_synsets(synsets_path):
        store.add_synset(sid, lemmas)
    if relations_path:
        for rel in formats.load_relations(relations_path):
            store.add_relation(rel.source, rel.relation_type, rel.target)
    return store


# -- subcommands -------------------------------------------------------------

def cmd_build_graph(args: argparse.Namespace) -> int:
    cfg = PipelineConfig.from_args(args)
    strokes = formats.load_strokes(args.strokes)
    if cfg.codepoint_range:
        lo, hi = cfg.codepoint_range
        strokes = {cp: s for cp, s in strokes.items() if lo <= cp <= hi}
    if not strokes:
        raise DataError("no characters to build a graph from")
    sigs = {cp: char_signature(s) for cp, s in strokes.items()}
    char_edges = detect_inclusions(sigs, tolerance=cfg.tolerance)

    char_graph = from_edges(char_edges, nodes=strokes.keys())
    char_reduced = transitive_reduce(char_graph)

    variant_pairs = formats.load_variants(args.variants) if args.variants else set()
    frequencies = (formats.load_freq_counts(args.ufl).as_dict()
                   if args.ufl else None)
    chars = set(strokes) | {cp for pair in variant_pairs for cp in pair}
    store = CharacterStore(chars, variant_pairs, frequencies)
    for cp, s in strokes.items():
        store.set_stroke_count(cp, len(s))

    lifted = lift_to_classes(char_reduced.edges(), store.classes)
    reduced = transitive_reduce(lifted)
    reduced.meta["tolerance"] = repr(cfg.tolerance)

    formats.save_snapshot(args.out, reduced, store.classes)
    print(f"characters\t{len(strokes)}")
    print(f"character_inclusions\t{len(char_edges)}")
    print(f"character_inclusions_reduced\t{char_reduced.edge_count()}")
    print(f"classes\t{reduced.node_count()}")
    print(f"class_inclusions\t{reduced.edge_count()}")
    return EXIT_OK


def cmd_annotate(args: argparse.Namespace) -> int:
    cfg = PipelineConfig.from_args(args)
    g, classes, annotations = formats.load_snapshot(args.snapshot)
    store = CharacterStore({cp for cls in classes for cp in cls.members})

    table = FeatureTable.load(args.feature_table) if args.feature_table else None
    languages = [Language.parse(tok) for tok in args.languages.split(",")] \
        if args.languages else list(Language)

    annotated_phi = []
    if args.readings:
        for cp, reading in formats.load_readings(args.readings):
            if cp in store:
                store.add_reading(cp, reading)
        for lang in languages:
            try:
                phoneticity(g, store, lang, table)
                annotated_phi.append(lang)
            except DataError:
                print(f"note: no computable {lang.value} distances; skipped",
                      file=sys.stderr)

    radicals = formats.load_radicals(args.radicals) if args.radicals else {}
    synstore = (_load_synset_store(args.synsets, args.relations)
                if args.synsets else None)
    annotate_semanticity(g, classes, synstore, radicals,
                         coefficients=cfg.coefficients)

    if synstore is not None:
        definitions = (formats.load_definitions(args.definitions)
                       if args.definitions else {})
        annotations = annotate_classes(synstore, definitions, classes)

    any_s = float(g.meta.get("s_raw_max", "0")) > 0
    if not annotated_phi and not any_s and not annotations:
        raise DataError("no edge could be annotated with phoneticity or "
                        "semanticity and no class received synsets")

    if args.phi_histogram:
        lines = ["language,bin_lo,bin_hi,count"]
        for lang in annotated_phi:
            edges, counts = phoneticity_histogram(g, lang, bins=cfg.bins)
            for i, c in enumerate(counts):
                lines.append(f"{lang.value},{edges[i]:g},{edges[i + 1]:g},{c}")
        _write_lines(args.phi_histogram, lines)

    formats.save_snapshot(args.out, g, classes, annotations)
    print(f"phi_languages\t{' '.join(l.value for l in annotated_phi) or '-'}")
    print(f"s_raw_max\t{g.meta.get('s_raw_max', '0')}")
    print(f"annotated_classes\t{len(annotations)}")
    return EXIT_OK


def _resolve_class(args, classes) -> list[int]:
    if args.all:
        return [cls.id for cls in sorted(classes, key=lambda c: c.id)]
    ids = []
    by_cp = {cp: cls.id for cls in classes for cp in cls.members}
    for token in args.cls or []:
        if token.startswith("U+") or token.startswith("u+"):
            token = token[2:]
        if all(c in "0123456789abcdefABCDEF" for c in token) and token:
            cp = int(token, 16)
            if cp in by_cp:
                ids.append(by_cp[cp])
                continue
        try:
            cid = int(token)
        except ValueError:
            raise InputError(f"cannot resolve class {token!r}") from None
        if not any(cls.id == cid for cls in classes):
            raise DataError(f"no class with id {cid}")
        ids.append(cid)
    if not ids:
        raise InputError("no class given; use --class or --all")
    return ids


def cmd_chains(args: argparse.Namespace) -> int:
    cfg = PipelineConfig.from_args(args)
    g, classes, _ = formats.load_snapshot(args.snapshot)
    targets = _resolve_class(args, classes)
    lines = []
    if args.kind == "phonetic":
        for cid in targets:
            chain = least_phonetic_chain(g, cid, cfg.language)
            lines.append(f"{cid}\t" + " ".join(str(c) for c in chain))
    else:
        for cid in targets:
            chain = most_semantic_chain(g, cid)
            lines.append(f"{cid}\t" + " ".join(str(c) for c in chain))
    _write_lines(args.out, lines)
    return EXIT_OK


def cmd_freqdist(args: argparse.Namespace) -> int:
    lists = [formats.load_freq_counts(p) for p in args.lists]
    names = [os.path.splitext(os.path.basename(p))[0] for p in args.lists]
    if len(lists) < 2:
        raise InputError("need at least two frequency lists")
    mat = distance_matrix(lists, args.n)
    lines = ["\t".join(["list"] + names)]
    for name, row in zip(names, mat):
        lines.append("\t".join([name] + [f"{d:.6f}" for d in row]))
    _write_lines(args.out, lines)
    if args.ufl_out:
        ufl = aggregate_ufl(dict(zip(names, lists)), renormalize=args.renormalize)
        _write_lines(args.ufl_out,
                     [f"{cp:X}\t{f:.12g}" for cp, f in ufl.entries])
    return EXIT_OK


def cmd_features(args: argparse.Namespace) -> int:
    cfg = PipelineConfig.from_args(args)
    g, classes, _ = formats.load_snapshot(args.snapshot)
    docs = formats.load_corpus(args.corpus)
    labels = [label for label, _ in docs]
    texts = [text for _, text in docs]
    class_of = {cp: cls.id for cls in classes for cp in cls.members}

    vocab, vectors = baseline_vectors(texts, class_of, min_count=cfg.min_count)
    if args.strategy == "semantic":
        vocab, vectors = augment_strategy1(g, vocab, vectors)
    elif args.strategy == "combined":
        vocab, vectors = augment_strategy2(g, vocab, vectors, cfg.language)
    elif args.strategy == "phonetic":
        vocab, vectors = augment_strategy2(g, vocab, vectors, cfg.language,
                                           include_semantic=False)

    fh, close = _out_stream(args.out)
    try:
        formats.write_vectors(fh, labels, vectors)
    finally:
        if close:
            fh.close()
    if args.vocab_out:
        lines = [f"{cid}\t{vocab.provenance[cid]}"
                 for cid in sorted(vocab.provenance)]
        _write_lines(args.vocab_out, lines)
    print(f"documents\t{len(vectors)}")
    print(f"vocabulary\t{len(vocab)}")
    print(f"vocabulary_added\t{len(vocab.added_ids())}")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = PipelineConfig.from_args(args)
    labels, vectors = formats.load_vectors(args.vectors)
    report = cross_validate(vectors, labels, k=cfg.k, C=cfg.C, seed=cfg.seed)
    _write_lines(args.out, report.lines())
    return EXIT_OK


def cmd_query_unknown(args: argparse.Namespace) -> int:
    cfg = PipelineConfig.from_args(args)
    g, classes, annotations = formats.load_snapshot(args.snapshot)
    targets = _resolve_class(args, classes)
    lines = []
    for cid in targets:
        vec = semantic_approximation(g, annotations, cid,
                                     max_depth=cfg.max_depth,
                                     direction=args.direction)
        if not vec:
            lines.append(f"{cid}\t-\t0")
            continue
        for sid, w in sorted(vec.items(), key=lambda kv: (-kv[1], kv[0])):
            lines.append(f"{cid}\t{sid}\t{w:.6f}")
    _write_lines(args.out, lines)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="sinograph",
                     description="Subcharacter inclusion graph toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-graph", help="mine inclusions, build the "
                       "reduced class graph")
    p.add_argument("--strokes", required=True)
    p.add_argument("--variants")
    p.add_argument("--ufl", help="frequency counts used to pick class "
                   "representatives")
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--codepoint-range", metavar="LO-HI",
                   help="restrict to a hex codepoint range, e.g. 4E00-9FFF")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_graph)

    p = sub.add_parser("annotate", help="compute phoneticity, semanticity "
                       "and synset annotations")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--readings")
    p.add_argument("--radicals")
    p.add_argument("--synsets")
    p.add_argument("--relations")
    p.add_argument("--definitions")
    p.add_argument("--languages", help="comma-separated subset of cmn,ja_on,ja_kun")
    p.add_argument("--feature-table", help="custom phoneme feature TSV")
    p.add_argument("--coefficients", type=float, nargs=3,
                   default=list(SEMANTICITY_COEFFICIENTS),
                   metavar=("F1", "F2", "R"))
    p.add_argument("--phi-histogram", help="write a phi histogram CSV here")
    p.add_argument("--bins", type=int, default=20)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("chains", help="least-phonetic / most-semantic chains")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--kind", choices=["semantic", "phonetic"], required=True)
    p.add_argument("--language", default=Language.JAPANESE_ON.value)
    p.add_argument("--class", dest="cls", action="append",
                   help="class id, or a member codepoint in hex")
    p.add_argument("--all", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("freqdist", help="pairwise frequency-list distances")
    p.add_argument("--lists", nargs="+", required=True)
    p.add_argument("--n", type=int, default=3000)
    p.add_argument("--ufl-out", help="write the aggregated list here")
    p.add_argument("--renormalize", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_freqdist)

    p = sub.add_parser("features", help="document feature vectors")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--min-count", type=int, default=10)
    p.add_argument("--strategy",
                   choices=["baseline", "semantic", "combined", "phonetic"],
                   default="baseline")
    p.add_argument("--language", default=Language.JAPANESE_ON.value)
    p.add_argument("--vocab-out")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("evaluate", help="cross-validated classification")
    p.add_argument("--vectors", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("query-unknown", help="approximate the semantics of "
                       "an unannotated class")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--class", dest="cls", action="append",
                   help="class id, or a member codepoint in hex")
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--direction", choices=["sub", "super"], default="sub")
    p.add_argument("--out")
    p.set_defaults(func=cmd_query_unknown)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"sinograph: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"sinograph: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DataError as exc:
        print(f"sinograph: {exc}", file=sys.stderr)
        return EXIT_DATA


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
