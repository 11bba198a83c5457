"""Command-line interface.

Every subcommand reads the same declarative JSON config (``--config``) and
accepts flag overrides that win over the file.  Exit codes: 0 success,
1 usage or configuration error, 2 data error (unreadable or malformed
inputs), 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .corpus import clean_corpus, load_corpus, load_stopwords
from .evaluation import accuracy, confusion_matrix, macro_average, per_class_metrics
from .exceptions import ConfigError, DataError, TweetsentError
from .lexicon import CANONICAL_LABELS, label_corpus, load_lexicon
from .models import load_model, save_model
from .pipeline import (
    DISPLAY_NAMES,
    RunConfig,
    compare_topics,
    evaluate_topic,
    load_config,
    load_topic_data,
    run_pipeline,
    train_topic_models,
)


class UsageError(Exception):
    """Bad command line; maps to exit code 1."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D401 - argparse hook
        raise UsageError(f"{self.prog}: {message}")


def _model_filename(topic: str, key: str) -> str:
    return f"model_{topic}_{key}.json"


def build_parser() -> _ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH",
                        help="JSON run configuration")
    common.add_argument("--seed", type=int, default=None,
                        help="override the config seed (config default: 42)")
    common.add_argument("--folds", type=int, default=None,
                        help="override the number of CV folds (config default: 4)")
    common.add_argument("--model", default=None, metavar="NAME|all",
                        help="comma-separated model selection override")
    common.add_argument("--lexicon", default=None, metavar="PATH")
    common.add_argument("--stopwords", default=None, metavar="PATH")
    common.add_argument("--min-df", dest="min_df", type=int, default=None)
    common.add_argument("--out", default=None, metavar="DIR",
                        help="override the output directory")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="stdout format for tabular results")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="log pipeline stages to stderr")

    parser = _ArgumentParser(
        prog="tweetsent",
        description="Lexicon-labelled tweet sentiment pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_ArgumentParser)

    handlers = {
        "ingest": (_cmd_ingest, "validate corpora and summarise per-topic counts"),
        "label": (_cmd_label, "weak-label corpora and report sentiment distributions"),
        "train": (_cmd_train, "fit the selected models and save them as JSON"),
        "evaluate": (_cmd_evaluate, "score saved models against the weak labels"),
        "crossval": (_cmd_crossval, "k-fold cross-validate the selected models"),
        "report": (_cmd_report, "run the full pipeline and write the report bundle"),
        "compare": (_cmd_compare, "side-by-side summary of the two topics"),
    }
    for name, (handler, help_text) in handlers.items():
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.set_defaults(handler=handler)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return load_config(
        args.config,
        seed=args.seed,
        folds=args.folds,
        min_df=args.min_df,
        lexicon=args.lexicon,
        stopwords=args.stopwords,
        out_dir=args.out,
        models=args.model,
    )


def _emit(args: argparse.Namespace, payload: dict, header: list[str], rows: list[list]) -> None:
    """Print ``payload`` as JSON or ``header``+``rows`` as CSV."""
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        print(json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True))


def _percent(value: float) -> str:
    return f"{100 * value:.2f}"


def _cmd_ingest(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    summaries = []
    for name, path in config.topics:
        tweets = [t for t in load_corpus(path) if t.topic == name]
        if not tweets:
            raise DataError(f"{path} contains no documents with topic {name!r}")
        summaries.append({"topic": name, "documents": len(tweets), "corpus": str(path)})
    _emit(
        args,
        {"topics": summaries},
        ["topic", "documents"],
        [[s["topic"], str(s["documents"])] for s in summaries],
    )
    return 0


def _cmd_label(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    lexicon = load_lexicon(config.lexicon)
    stopwords = load_stopwords(config.stopwords)
    summaries = []
    written: list[str] = []
    for name, path in config.topics:
        tweets = [t for t in load_corpus(path) if t.topic == name]
        if not tweets:
            raise DataError(f"{path} contains no documents with topic {name!r}")
        documents = clean_corpus(tweets, stopwords)
        labeled, counts = label_corpus(lexicon, documents)
        summaries.append(
            {
                "topic": name,
                "documents": len(labeled),
                "distribution": {lab.tag: counts[lab] for lab in CANONICAL_LABELS},
            }
        )
        if args.out is not None:
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            target = out_dir / f"labels_{name}.csv"
            with open(target, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["id", "label", "score"])
                for item in labeled:
                    writer.writerow([item.doc.id, item.label.tag, repr(item.score)])
            written.append(str(target))

    payload: dict = {"topics": summaries}
    if written:
        payload["files"] = written
    _emit(
        args,
        payload,
        ["topic", "documents", "positive", "neutral", "negative"],
        [
            [
                s["topic"],
                str(s["documents"]),
                str(s["distribution"]["positive"]),
                str(s["distribution"]["neutral"]),
                str(s["distribution"]["negative"]),
            ]
            for s in summaries
        ],
    )
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for data in load_topic_data(config):
        fitted = train_topic_models(config, data)
        for key in config.models:
            target = config.out_dir / _model_filename(data.topic, key)
            save_model(fitted[key], target)
            entries.append({"topic": data.topic, "model": key, "path": str(target)})
    _emit(
        args,
        {"models": entries},
        ["topic", "model", "path"],
        [[e["topic"], e["model"], e["path"]] for e in entries],
    )
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    results = []
    for data in load_topic_data(config):
        for key in config.models:
            path = config.out_dir / _model_filename(data.topic, key)
            if not path.is_file():
                raise DataError(
                    f"no saved model at {path}; run the train subcommand first"
                )
            model = load_model(path)
            training = data.training_set(config.weighting[key])
            if tuple(model.terms) != training.matrix.vocab.terms:
                raise DataError(
                    f"{path}: stored vocabulary does not match the features "
                    "derived from this config (different corpus or min_df?)"
                )
            predicted = [
                model.predict(training.matrix.row(i))
                for i in range(training.matrix.n_docs)
            ]
            cm = confusion_matrix(
                list(training.labels),
                [p.label for p in predicted],
                classes=training.classes,
            )
            macro = macro_average(per_class_metrics(cm))
            results.append(
                {
                    "topic": data.topic,
                    "model": key,
                    "display_name": DISPLAY_NAMES[key],
                    "precision": macro.precision,
                    "recall": macro.recall,
                    "fscore": macro.f1,
                    "accuracy": accuracy(cm),
                }
            )
    _emit(
        args,
        {"results": results},
        ["topic", "model", "precision", "recall", "fscore", "accuracy"],
        [
            [
                r["topic"],
                r["model"],
                _percent(r["precision"]),
                _percent(r["recall"]),
                _percent(r["fscore"]),
                _percent(r["accuracy"]),
            ]
            for r in results
        ],
    )
    return 0


def _cmd_crossval(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    results = []
    for data in load_topic_data(config):
        report = evaluate_topic(config, data)
        for row in report.models:
            results.append(
                {
                    "topic": report.topic,
                    "model": row.key,
                    "display_name": row.display_name,
                    "precision": row.precision,
                    "recall": row.recall,
                    "fscore": row.fscore,
                    "cross_validate": row.cross_validate,
                    "cross_validate_std": row.cross_validate_std,
                }
            )
    _emit(
        args,
        {"results": results},
        ["topic", "model", "precision", "recall", "fscore", "cross_validate", "std"],
        [
            [
                r["topic"],
                r["model"],
                _percent(r["precision"]),
                _percent(r["recall"]),
                _percent(r["fscore"]),
                _percent(r["cross_validate"]),
                _percent(r["cross_validate_std"]),
            ]
            for r in results
        ],
    )
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    result = run_pipeline(config)
    for name in sorted(result.manifest["files"]):
        print(result.out_dir / name)
    print(result.out_dir / "manifest.json")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    if len(config.topics) != 2:
        raise ConfigError("compare needs a config with exactly two topics")
    data = load_topic_data(config)
    reports = [evaluate_topic(config, d) for d in data]
    comparison = compare_topics(reports[0], reports[1])

    a, b = comparison["topics"]
    rows = [["documents", str(comparison["documents"][a]), str(comparison["documents"][b])]]
    for tag in ("positive", "neutral", "negative"):
        rows.append(
            [
                tag,
                str(comparison["distribution"][a][tag]),
                str(comparison["distribution"][b][tag]),
            ]
        )
    _emit(args, comparison, ["quantity", a, b], rows)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")

    try:
        return args.handler(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TweetsentError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - safety net
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
