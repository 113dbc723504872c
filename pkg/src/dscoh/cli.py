"""Command-line front end.

Exit codes: 0 success, 1 malformed input file, 2 unknown id or dimension
mismatch, 3 a cohomology lemma check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .cycles import verify_cohomology_lemmas
from .graph import build_syn_sim_graph
from .lexsim import DimensionMismatch, EmbeddingError, EmbeddingTable, find_sim_pairs, load_embeddings
from .metrics import (
    EvalError,
    Partition,
    adjusted_rand_index,
    fowlkes_mallows,
    normalized_mutual_info,
    read_labeled_pairs,
    spearman,
)
from .similarity import (
    Document,
    DscohConfig,
    MatrixShapeError,
    SimilarityMatrix,
    document_similarity,
    similarity_matrix,
)
from .spectral import spectral_cluster
from .treebank import (
    DEFAULT_STOPWORDS,
    PruneConfig,
    TreebankError,
    parse_bracketed,
    prune,
    read_wordlist,
    serialize_bracketed,
)

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_LEMMA = 0, 1, 2, 3


class InputError(Exception):
    """Malformed input file (exit 1)."""


class MismatchError(Exception):
    """Unknown id or dimension mismatch (exit 2)."""


@dataclass
class RunConfig:
    theta_w: float = 0.6
    theta_c1: float = 3.0
    theta_c2: float = 3.0
    stopwords_path: Optional[str] = None
    entities_path: Optional[str] = None
    pos_whitelist_path: Optional[str] = None
    embeddings_path: Optional[str] = None
    normalize_matrix: bool = False
    seed: int = 0
    base_dir: Path = Path(".")

    @classmethod
    def load(cls, path: Optional[str]) -> "RunConfig":
        if path is None:
            return cls()
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{path}: {exc}") from None
        known = {f for f in cls.__dataclass_fields__ if f != "base_dir"}
        unknown = set(raw) - known
        if unknown:
            raise InputError(f"{path}: unknown config keys {sorted(unknown)}")
        cfg = cls(**raw, base_dir=Path(path).resolve().parent)
        if not 0 < cfg.theta_w <= 1:
            raise InputError(f"{path}: theta_w must lie in (0, 1]")
        return cfg

    def _resolve(self, p: str) -> Path:
        path = Path(p)
        return path if path.is_absolute() else self.base_dir / path

    def _wordlist(self, p: Optional[str], default=frozenset()):
        if p is None:
            return default
        try:
            with open(self._resolve(p), encoding="utf-8") as fh:
                return read_wordlist(fh)
        except OSError as exc:
            raise InputError(str(exc)) from None

    def dscoh(self) -> DscohConfig:
        prune_cfg = PruneConfig(
            stopwords=self._wordlist(self.stopwords_path, DEFAULT_STOPWORDS),
            entities=self._wordlist(self.entities_path),
            pos_whitelist=self._wordlist(self.pos_whitelist_path),
        )
        return DscohConfig(self.theta_w, self.theta_c1, self.theta_c2, prune_cfg)

    def table(self) -> EmbeddingTable:
        if self.embeddings_path is None:
            return EmbeddingTable.empty()
        try:
            with open(self._resolve(self.embeddings_path), encoding="utf-8") as fh:
                return load_embeddings(fh)
        except DimensionMismatch as exc:
            raise MismatchError(f"{self.embeddings_path}: {exc}") from None
        except (OSError, EmbeddingError) as exc:
            raise InputError(f"{self.embeddings_path}: {exc}") from None


def read_corpus(path: str) -> list[Document]:
    """JSON-Lines corpus: one ``{"id": ..., "trees": [...]}`` object per line."""
    docs = []
    seen = set()
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None
    with fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                doc_id, trees = rec["id"], rec["trees"]
                if not isinstance(doc_id, str) or not isinstance(trees, list):
                    raise TypeError("'id' must be a string and 'trees' a list")
                doc = Document(doc_id, tuple(parse_bracketed(t) for t in trees))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError, TreebankError) as exc:
                raise InputError(f"{path}:{lineno}: {type(exc).__name__}: {exc}") from None
            if doc_id in seen:
                raise InputError(f"{path}:{lineno}: duplicate id {doc_id!r}")
            seen.add(doc_id)
            docs.append(doc)
    return docs


def _lookup(docs: list[Document], doc_id: str) -> Document:
    for d in docs:
        if d.id == doc_id:
            return d
    raise MismatchError(f"unknown document id {doc_id!r}")


def _matrix(args, cfg: RunConfig) -> SimilarityMatrix:
    if getattr(args, "matrix", None):
        try:
            with open(args.matrix, encoding="utf-8") as fh:
                return SimilarityMatrix.read_tsv(fh)
        except MatrixShapeError as exc:
            raise MismatchError(f"{args.matrix}: {exc}") from None
        except (OSError, ValueError) as exc:
            raise InputError(f"{args.matrix}: {exc}") from None
    if not args.corpus:
        raise InputError("either --matrix or --corpus is required")
    docs = read_corpus(args.corpus)
    return similarity_matrix(
        docs, cfg.table(), cfg.dscoh(), workers=args.workers, normalize=cfg.normalize_matrix
    )


def _write(out: Optional[str], writer) -> None:
    if out is None:
        writer(sys.stdout)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            writer(fh)


def cmd_sim(args, cfg: RunConfig) -> int:
    docs = read_corpus(args.corpus)
    a, b = _lookup(docs, args.id_a), _lookup(docs, args.id_b)
    value, breakdown = document_similarity(a, b, cfg.table(), cfg.dscoh())
    if args.explain:
        print(json.dumps(breakdown.to_dict(), indent=2, sort_keys=True))
    else:
        print(repr(value))
    return EXIT_OK


def cmd_matrix(args, cfg: RunConfig) -> int:
    mat = _matrix(args, cfg)
    _write(args.out, mat.write_tsv)
    return EXIT_OK


def cmd_cluster(args, cfg: RunConfig) -> int:
    mat = _matrix(args, cfg)
    if not 1 <= args.k <= len(mat):
        raise MismatchError(f"k={args.k} with {len(mat)} documents")
    seed = cfg.seed if args.seed is None else args.seed
    part = spectral_cluster(mat, args.k, seed=seed)
    _write(args.out, part.write_tsv)
    if args.truth:
        try:
            with open(args.truth, encoding="utf-8") as fh:
                truth = Partition.read_tsv(fh)
        except (OSError, EvalError) as exc:
            raise InputError(f"{args.truth}: {exc}") from None
        if truth.labels.keys() != part.labels.keys():
            raise MismatchError("truth labels do not cover the same documents")
        # keep stdout parseable when the partition itself goes to stdout
        stream = sys.stdout if args.out else sys.stderr
        print(f"ARI\t{adjusted_rand_index(part, truth)!r}", file=stream)
        print(f"NMI\t{normalized_mutual_info(part, truth)!r}", file=stream)
        print(f"FMI\t{fowlkes_mallows(part, truth)!r}", file=stream)
    return EXIT_OK


def cmd_eval(args, cfg: RunConfig) -> int:
    mat = _matrix(args, cfg)
    try:
        with open(args.pairs, encoding="utf-8") as fh:
            pairs = read_labeled_pairs(fh)
    except (OSError, EvalError) as exc:
        raise InputError(f"{args.pairs}: {exc}") from None
    ids = set(mat.ids)
    for p in pairs:
        for doc_id in (p.doc_id_a, p.doc_id_b):
            if doc_id not in ids:
                raise MismatchError(f"pairs file references unknown id {doc_id!r}")
    if len(pairs) < 2:
        raise InputError(f"{args.pairs}: need at least 2 labeled pairs")
    ours = [mat.get(p.doc_id_a, p.doc_id_b) for p in pairs]
    human = [p.human_score for p in pairs]
    print(f"spearman\t{spearman(ours, human)!r}")
    return EXIT_OK


def cmd_verify_lemmas(args, cfg: RunConfig) -> int:
    docs = read_corpus(args.corpus)
    a, b = _lookup(docs, args.id_a), _lookup(docs, args.id_b)
    dcfg, table = cfg.dscoh(), cfg.table()
    failed = False
    for k, ta in enumerate(a.sentences):
        pa = prune(ta, dcfg.prune)
        for h, tb in enumerate(b.sentences):
            pb = prune(tb, dcfg.prune)
            print(f"[{a.id}#{k} x {b.id}#{h}]")
            if pa.is_empty or pb.is_empty:
                print("  empty pruned tree: vacuous pass")
                continue
            g = build_syn_sim_graph(pa, pb, find_sim_pairs(pa, pb, table, dcfg.theta_w))
            if g.n_sim == 0:
                print("  no sim edges: vacuous pass")
                continue
            report = verify_cohomology_lemmas(g)
            print(str(report))
            failed |= not report.passed
    print("RESULT: FAIL" if failed else "RESULT: all checks passed")
    return EXIT_LEMMA if failed else EXIT_OK


def cmd_prune(args, cfg: RunConfig) -> int:
    docs = read_corpus(args.corpus)
    if args.ids:
        docs = [_lookup(docs, i) for i in args.ids]
    dcfg = cfg.dscoh()
    for d in docs:
        for k, t in enumerate(d.sentences):
            print(f"{d.id}\t{k}\t{serialize_bracketed(prune(t, dcfg.prune))}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dscoh", description="Document similarity from syn-sim cycle bases.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="RunConfig JSON file")
    common.add_argument("--corpus", help="JSON-Lines corpus of pre-parsed trees")
    common.add_argument("--seed", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sim", parents=[common], help="similarity of two documents")
    p.add_argument("id_a")
    p.add_argument("id_b")
    p.add_argument("--explain", action="store_true", help="print the per-cycle breakdown as JSON")
    p.set_defaults(func=cmd_sim)

    for name, func, helptext in (
        ("matrix", cmd_matrix, "pairwise similarity matrix as TSV"),
        ("cluster", cmd_cluster, "spectral clustering of a similarity matrix"),
        ("eval", cmd_eval, "Spearman correlation against human scores"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--matrix", help="precomputed matrix TSV (instead of --corpus)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out")
        p.set_defaults(func=func)
        if name == "cluster":
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--truth", help="Partition TSV of reference labels")
        if name == "eval":
            p.add_argument("--pairs", required=True, help="TSV of id_a, id_b, human score")

    p = sub.add_parser("verify-lemmas", parents=[common], help="check the cohomology lemmas per sentence pair")
    p.add_argument("id_a")
    p.add_argument("id_b")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("prune", parents=[common], help="print pruned trees")
    p.add_argument("ids", nargs="*")
    p.set_defaults(func=cmd_prune)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.load(args.config)
        if args.command in ("sim", "verify-lemmas", "prune") and not args.corpus:
            raise InputError("--corpus is required")
        return args.func(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
