"""Command-line entry point: ``vnseg <subcommand> [options]``.

Exit status is 0 on success, 1 on usage errors and 2 on data or model
errors. Options may also come from ``--config FILE``, a flat ``key=value``
file whose keys are option names (``max-iter=500``); explicit flags win.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings

from . import __version__
from .corpus import read_corpus
from .evaluation import (
    DEFAULT_C_GRID,
    LENGTH_BUCKETS,
    ablation,
    cross_validate,
    format_csv,
    format_table,
    grid_search,
    percent,
    score,
    score_by_length,
)
from .exceptions import SegmentationError
from .features import FeatureConfig
from .model_io import FORMAT_VERSION, load_model, save_model
from .resources import load_lexicon, load_name_lists
from .segmenter import WordSegmenter, segment_stream
from .stats import LENGTH_BUCKETS as TYPE_BUCKETS, derive_stats, word_length_distribution

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _c_grid(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of numbers: {text!r}") from None
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError("C values must be positive")
    return values


def _features(text: str) -> FeatureConfig:
    try:
        return FeatureConfig.from_groups(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_resources(p):
    p.add_argument("--lexicon", help="word list, one word per line")
    p.add_argument("--family", help="family-name list, one syllable per line")
    p.add_argument("--middle", help="middle-name list, one syllable per line")


def _add_model_opts(p):
    p.add_argument("--features", type=_features, default=FeatureConfig.from_groups(
        "base,long,sep,sfx"), help="comma list from base,long,sep,sfx")
    p.add_argument("--loss", choices=("hinge", "squared_hinge"), default="hinge")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--max-iter", type=int, default=1000)


def _add_cv_opts(p):
    p.add_argument("--k", type=int, default=5, help="number of folds")
    p.add_argument("--csv", help="also write the report as CSV to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vnseg", description="Vietnamese word segmentation with a linear SVM")
    parser.add_argument("--version", action="version",
                        version=f"vnseg {__version__} (model format v{FORMAT_VERSION})")
    parser.add_argument("--config", help="key=value file with default options")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("train", help="train a model on a segmented corpus")
    p.add_argument("--corpus", required=True)
    _add_resources(p)
    _add_model_opts(p)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="model file to write")

    p = sub.add_parser("segment", help="segment raw text")
    p.add_argument("--model", required=True)
    p.add_argument("--lexicon", help="replace the lexicon stored in the model")
    p.add_argument("--input", help="raw text file (default: standard input)")
    p.add_argument("--output", help="output file (default: standard output)")
    p.add_argument("--strict", action="store_true", help="abort on the first malformed line")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("evaluate", help="score a segmentation against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--model", help="model whose lexicon and suffixes define length buckets")
    p.add_argument("--lexicon", help="lexicon for length buckets (overrides the model's)")
    p.add_argument("--csv")

    for name, helptext in (("cv", "k-fold cross-validation at one C"),
                           ("grid", "grid search over C by cross-validation"),
                           ("ablate", "cross-validate all feature combinations with base")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--corpus", required=True)
        _add_resources(p)
        _add_cv_opts(p)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        if name == "cv":
            _add_model_opts(p)
            p.add_argument("--c", type=float, default=1.0)
        else:
            p.add_argument("--grid", type=_c_grid, default=DEFAULT_C_GRID,
                           help="comma list of C values")
            p.add_argument("--loss", choices=("hinge", "squared_hinge"), default="hinge")
            p.add_argument("--tol", type=float, default=1e-3)
            p.add_argument("--max-iter", type=int, default=1000)
            if name == "grid":
                p.add_argument("--features", type=_features,
                               default=FeatureConfig.from_groups("base,long,sep,sfx"))

    p = sub.add_parser("stats", help="word-length distribution, separable syllables, suffixes")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--out-dir", help="also write one report file per table here")
    return parser


def _read_config(path) -> dict[str, str]:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    return values


def _apply_config(parser, argv, config_path) -> None:
    """Install config-file values as defaults of the subcommand in ``argv``."""
    values = _read_config(config_path)
    choices = parser._subparsers._group_actions[0].choices
    command = next((a for a in argv if a in choices), None)
    if command is None:
        return
    subparser = choices[command]
    known = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, raw in values.items():
        action = known.get(key)
        if action is None:
            continue
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            try:
                defaults[key] = action.type(raw)
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise UsageError(f"config {key}: {exc}") from None
        else:
            defaults[key] = raw
    subparser.set_defaults(**defaults)
    for action in subparser._actions:
        if action.dest in defaults:
            action.required = False


def _estimator(args, C=1.0, features=None) -> WordSegmenter:
    lexicon = load_lexicon(args.lexicon) if args.lexicon else None
    names = load_name_lists(args.family, args.middle)
    return WordSegmenter(
        lexicon=lexicon, name_lists=names,
        features=features if features is not None else getattr(args, "features", None),
        C=C, loss=args.loss, tol=args.tol, max_iter=args.max_iter,
        random_state=args.seed,
    )


def _emit(headers, rows, csv_path, out):
    out.write(format_table(headers, rows))
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(headers, rows))


def _pct(x):
    return percent(x) if not math.isnan(x) else x


def cmd_train(args, out):
    corpus = read_corpus(args.corpus)
    model = _estimator(args, C=args.c).fit(corpus)
    save_model(model, args.out)
    sys.stderr.write(f"trained on {len(corpus)} sentences, {len(model.vocabulary_)} features, "
                     f"{model.n_iter_} epochs -> {args.out}\n")


def cmd_segment(args, out):
    lexicon = load_lexicon(args.lexicon) if args.lexicon else None
    model = load_model(args.model, lexicon=lexicon)
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = sys.stdin.read().splitlines()
    # small inputs are not worth a process pool
    workers = max(1, min(args.workers, math.ceil(len(lines) / 256)))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            segment_stream(model, lines, fh, workers, args.strict)
    else:
        segment_stream(model, lines, out, workers, args.strict)


def cmd_evaluate(args, out):
    gold = read_corpus(args.gold)
    pred = read_corpus(args.pred)
    m = score(gold, pred)
    rows = [("all", m.gold_words, m.pred_words, m.correct_words,
             percent(m.precision), percent(m.recall), percent(m.f1))]
    if args.model or args.lexicon:
        model = load_model(args.model) if args.model else None
        lexicon = (load_lexicon(args.lexicon) if args.lexicon else model.lexicon_)
        suffixes = model.stats_.suffixes if model else frozenset()
        buckets = score_by_length(gold, pred, lexicon, suffixes)
        for b in LENGTH_BUCKETS:
            bm = buckets[b]
            rows.append((b, bm.gold_words, bm.pred_words, bm.correct_words,
                         percent(bm.precision), percent(bm.recall), percent(bm.f1)))
    _emit(("words", "gold", "pred", "correct", "P", "R", "F1"), rows, args.csv, out)


def cmd_cv(args, out):
    corpus = read_corpus(args.corpus)
    result = cross_validate(_estimator(args, C=args.c), corpus, args.k, args.seed, args.workers)
    rows = []
    for i, m in enumerate(result.folds, 1):
        if m is None:
            rows.append((str(i), math.nan, math.nan, math.nan))
        else:
            rows.append((str(i), percent(m.precision), percent(m.recall), percent(m.f1)))
    rows.append(("mean", _pct(result.mean_precision), _pct(result.mean_recall),
                 _pct(result.mean_f1)))
    _emit(("fold", "P", "R", "F1"), rows, args.csv, out)
    for fold, err in result.errors:
        sys.stderr.write(f"fold {fold + 1} failed: {err}\n")


def cmd_grid(args, out):
    corpus = read_corpus(args.corpus)
    result = grid_search(_estimator(args), corpus, args.grid, args.k, args.seed, args.workers)
    rows = [(repr(C), _pct(r.mean_f1)) for C, r in result.table]
    _emit(("C", "F1"), rows, args.csv, out)
    out.write(f"best C={result.best_C!r} F1={_pct(result.best_f1):.4f}\n")


def cmd_ablate(args, out):
    corpus = read_corpus(args.corpus)
    base = _estimator(args, features=FeatureConfig())
    rows = ablation(base, corpus, args.grid, args.k, args.seed, args.workers)
    _emit(("features", "C", "F1"),
          [(name, repr(C) if C is not None else "-", _pct(f1)) for name, C, f1 in rows],
          args.csv, out)


def cmd_stats(args, out):
    corpus = read_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon) if args.lexicon else None
    from .resources import Lexicon

    stats = derive_stats(corpus, lexicon if lexicon is not None else Lexicon())
    dist = word_length_distribution(corpus)
    reports = {
        "distribution.tsv": [f"{b}\t{dist[b]:.2f}" for b in TYPE_BUCKETS],
        "separable.tsv": [f"{s}\t{a}\t{b}" for s, (a, b) in sorted(stats.sep_counts.items())
                          if s in stats.separable],
        "suffixes.tsv": [f"{s}\t{stats.suffix_counts[s]}" for s in sorted(stats.suffixes)],
    }
    for name, lines in reports.items():
        out.write(f"# {name[:-4]}\n")
        out.write("".join(line + "\n" for line in lines))
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for name, lines in reports.items():
            with open(os.path.join(args.out_dir, name), "w", encoding="utf-8") as fh:
                fh.write("".join(line + "\n" for line in lines))


COMMANDS = {
    "train": cmd_train,
    "segment": cmd_segment,
    "evaluate": cmd_evaluate,
    "cv": cmd_cv,
    "grid": cmd_grid,
    "ablate": cmd_ablate,
    "stats": cmd_stats,
}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    try:
        config = pre.parse_known_args(argv)[0].config
        if config:
            _apply_config(parser, argv, config)
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    except UsageError as exc:
        sys.stderr.write(f"vnseg: error: {exc}\n")
        return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            COMMANDS[args.command](args, out)
    except (SegmentationError, OSError) as exc:
        sys.stderr.write(f"vnseg: error: {exc}\n")
        return EXIT_DATA
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
