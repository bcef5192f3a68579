"""Command-line entry point.

Subcommands: ``index``, ``classify``, ``reformulate``, ``localize``,
``evaluate``. Parameters resolve as flags > config file > built-in defaults;
the config file is flat ``key = value`` text and unknown keys are rejected.

Exit codes: 0 success, 1 unexpected failure, 2 index missing or unreadable,
3 invalid or empty report, 4 bad parameter or config, 5 corpus error,
6 goldset error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import (
    BuglocError,
    CorpusError,
    GoldsetError,
    IndexFormatError,
    ParameterError,
    QueryError,
    ReportParseError,
    ReportValidationError,
)
from .evaluate import load_goldset, run_benchmark
from .graphs import to_dot
from .index import ingest, load_index, save_index
from .pipeline import Settings, localize, reformulate_report
from .reports import ReportClass, classify, load_reports, parse_report
from .wordlists import load_wordfile

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INDEX = 2
EXIT_REPORT = 3
EXIT_PARAMS = 4
EXIT_CORPUS = 5
EXIT_GOLDSET = 6

_CONFIG_KEYS = {
    "phi": float,
    "init_weight": float,
    "epsilon": float,
    "max_iter": int,
    "window": int,
    "prf_k": int,
    "length_st": int,
    "length_pe": int,
    "length_nl": int,
    "k1": float,
    "b": float,
    "dedup": bool,
    "extensions": str,
    "stopwords": str,
    "keywords": str,
}


def _parse_config_file(path: str) -> dict:
    values: dict = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ParameterError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ParameterError(f"{path}:{lineno}: unknown config key {key!r}")
        kind = _CONFIG_KEYS[key]
        try:
            if kind is bool:
                if value.lower() not in ("true", "false"):
                    raise ValueError("expected true/false")
                values[key] = value.lower() == "true"
            else:
                values[key] = kind(value)
        except ValueError as exc:
            raise ParameterError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _build_settings(args: argparse.Namespace) -> Settings:
    values: dict = {}
    if getattr(args, "config", None):
        values = _parse_config_file(args.config)

    def pick(flag: str, key: str | None = None):
        flag_value = getattr(args, flag, None)
        if flag_value is not None:
            return flag_value
        return values.get(key or flag)

    settings = Settings()
    for name in (
        "phi", "init_weight", "epsilon", "max_iter", "window", "prf_k",
        "length_st", "length_pe", "length_nl", "k1", "b",
    ):
        value = pick(name)
        if value is not None:
            setattr(settings, name, value)
    if pick("dedup"):
        settings.dedup = True
    extensions = pick("ext", "extensions")
    if extensions is not None:
        if isinstance(extensions, str):
            extensions = [e.strip() for e in extensions.split(",") if e.strip()]
        settings.extensions = tuple(e if e.startswith(".") else "." + e for e in extensions)
    stop_path = pick("stopwords")
    if stop_path is not None:
        settings.stoplist = load_wordfile(stop_path)
    kw_path = pick("keywords")
    if kw_path is not None:
        settings.keywords = frozenset(load_wordfile(kw_path))
    _validate_settings(settings)
    return settings


def _validate_settings(s: Settings) -> None:
    if not 0.0 <= s.phi <= 1.0:
        raise ParameterError(f"phi must be within [0, 1], got {s.phi}")
    if s.epsilon <= 0:
        raise ParameterError(f"epsilon must be positive, got {s.epsilon}")
    if s.max_iter < 1:
        raise ParameterError(f"max_iter must be >= 1, got {s.max_iter}")
    if s.window < 2:
        raise ParameterError(f"window must be >= 2, got {s.window}")
    if s.prf_k < 1:
        raise ParameterError(f"prf_k must be >= 1, got {s.prf_k}")
    for name in ("length_st", "length_pe", "length_nl"):
        if getattr(s, name) < 1:
            raise ParameterError(f"{name} must be >= 1, got {getattr(s, name)}")


def _load_index_checked(path: str):
    if not Path(path).is_file():
        raise IndexFormatError(f"index file not found: {path}")
    return load_index(path)


def _force_class(args: argparse.Namespace) -> ReportClass | None:
    raw = getattr(args, "force_class", None)
    return ReportClass(raw) if raw else None


def _cmd_index(args: argparse.Namespace) -> int:
    settings = _build_settings(args)
    index = ingest(
        args.src,
        extensions=settings.extensions,
        k1=settings.k1,
        b=settings.b,
        stoplist=settings.stoplist,
        keywords=settings.keywords,
        jobs=args.jobs,
    )
    save_index(index, args.out)
    print(f"indexed {index.doc_count} documents -> {args.out}")
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    _build_settings(args)
    report = parse_report(args.report)
    classified = classify(report, force=_force_class(args))
    if args.json:
        print(json.dumps(
            {
                "id": report.id,
                "class": classified.label.value,
                "frames": len(classified.frames),
                "exception_names": list(classified.exception_names),
                "program_entities": list(classified.program_entities),
            },
            sort_keys=True,
        ))
    else:
        print(classified.label.value)
    return EXIT_OK


def _query_json(result_query, classified) -> dict:
    return {
        "id": classified.report.id,
        "class": classified.label.value,
        "query": list(result_query.tokens),
        "provenance": [
            {"token": t, "source": p} for t, p in result_query.tagged()
        ],
    }


def _cmd_reformulate(args: argparse.Namespace) -> int:
    settings = _build_settings(args)
    report = parse_report(args.report)
    classified = classify(report, force=_force_class(args))
    index = None
    if args.index:
        index = _load_index_checked(args.index)
    elif classified.label is ReportClass.BR_NL:
        raise IndexFormatError("BR_NL reformulation needs --index for feedback")
    query, graph = reformulate_report(classified, settings, index)
    if args.dot:
        Path(args.dot).write_text(to_dot(graph), encoding="utf-8")
    if args.json:
        print(json.dumps(_query_json(query, classified), sort_keys=True))
    else:
        print(" ".join(query.tokens))
    return EXIT_OK


def _cmd_localize(args: argparse.Namespace) -> int:
    settings = _build_settings(args)
    report = parse_report(args.report)
    index = _load_index_checked(args.index)
    result = localize(
        report, index, settings, top_n=args.top, force=_force_class(args)
    )
    if args.dot:
        Path(args.dot).write_text(to_dot(result.graph), encoding="utf-8")
    if args.json:
        payload = _query_json(result.query, result.classified)
        payload["results"] = [
            {"rank": i, "score": score, "path": path}
            for i, (path, score) in enumerate(result.ranked.results, 1)
        ]
        print(json.dumps(payload, sort_keys=True))
    else:
        for i, (path, score) in enumerate(result.ranked.results, 1):
            print(f"{i}\t{score:.6f}\t{path}")
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    settings = _build_settings(args)
    index = _load_index_checked(args.index)
    reports = load_reports(args.reports)
    if not reports:
        raise ReportValidationError(f"no reports found under {args.reports}")
    goldset = load_goldset(args.goldset)
    try:
        ks = [int(k) for k in args.k.split(",") if k.strip()]
    except ValueError as exc:
        raise ParameterError(f"--k expects comma-separated integers: {exc}") from exc
    if not ks:
        raise ParameterError("--k needs at least one value")
    result = run_benchmark(
        index, reports, goldset, mode=args.mode, ks=ks, settings=settings, jobs=args.jobs
    )
    payload = json.dumps(result.to_dict(), indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(payload)
    if result.skipped:
        print(f"skipped (no goldset entry): {', '.join(result.skipped)}", file=sys.stderr)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--phi", type=float, help="damping factor (default 0.85)")
    parser.add_argument("--init-weight", dest="init_weight", type=float,
                        help="initial node weight (default 0.25)")
    parser.add_argument("--epsilon", type=float, help="convergence threshold (default 1e-4)")
    parser.add_argument("--max-iter", dest="max_iter", type=int,
                        help="iteration cap (default 100)")
    parser.add_argument("--window", type=int, help="co-occurrence window (default 2)")
    parser.add_argument("--prf-k", dest="prf_k", type=int,
                        help="feedback documents for BR_NL (default 10)")
    parser.add_argument("--length-st", dest="length_st", type=int,
                        help="reformulation length for BR_ST (default 11)")
    parser.add_argument("--length-pe", dest="length_pe", type=int,
                        help="reformulation length for BR_PE (default 30)")
    parser.add_argument("--length-nl", dest="length_nl", type=int,
                        help="reformulation length for BR_NL (default 8)")
    parser.add_argument("--k1", type=float, help="BM25 k1 (default 1.2)")
    parser.add_argument("--b", type=float, help="BM25 b (default 0.75)")
    parser.add_argument("--dedup", action="store_const", const=True, default=None,
                        help="drop duplicate query tokens")
    parser.add_argument("--stopwords", help="override stop-word list file")
    parser.add_argument("--keywords", help="override programming-keyword list file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bugloc",
        description="Classify bug reports, reformulate queries, and localize buggy files.",
    )
    parser.add_argument("--version", action="version", version=f"bugloc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="build a BM25 index from a source tree")
    p.add_argument("--src", required=True, help="source corpus root directory")
    p.add_argument("--out", required=True, help="output index file")
    p.add_argument("--ext", action="append", help="file extension to index (repeatable)")
    p.add_argument("--jobs", type=int, default=1, help="parallel file readers")
    _add_common(p)
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("classify", help="print a report's class")
    p.add_argument("--report", required=True, help="report JSON file")
    p.add_argument("--force-class", choices=[c.value for c in ReportClass])
    p.add_argument("--json", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("reformulate", help="print the reformulated query")
    p.add_argument("--report", required=True, help="report JSON file")
    p.add_argument("--index", help="index file (required for BR_NL feedback)")
    p.add_argument("--force-class", choices=[c.value for c in ReportClass])
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", help="write the term graph as DOT to this file")
    _add_common(p)
    p.set_defaults(func=_cmd_reformulate)

    p = sub.add_parser("localize", help="rank candidate buggy files for a report")
    p.add_argument("--report", required=True, help="report JSON file")
    p.add_argument("--index", required=True, help="index file")
    p.add_argument("--top", type=int, default=10, help="results to print (default 10)")
    p.add_argument("--force-class", choices=[c.value for c in ReportClass])
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", help="write the term graph as DOT to this file")
    _add_common(p)
    p.set_defaults(func=_cmd_localize)

    p = sub.add_parser("evaluate", help="batch benchmark against a goldset")
    p.add_argument("--index", required=True, help="index file")
    p.add_argument("--reports", required=True, help="reports directory or JSON array file")
    p.add_argument("--goldset", required=True, help="TSV goldset file")
    p.add_argument("--mode", choices=["baseline", "blizzard", "both"], default="both")
    p.add_argument("--k", default="1,5,10", help="comma-separated K values")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="parallel report pipelines")
    _add_common(p)
    p.set_defaults(func=_cmd_evaluate)
    return parser


_EXIT_BY_ERROR: list[tuple[type[BuglocError], int]] = [
    (IndexFormatError, EXIT_INDEX),
    (ReportParseError, EXIT_REPORT),
    (ReportValidationError, EXIT_REPORT),
    (QueryError, EXIT_REPORT),
    (CorpusError, EXIT_CORPUS),
    (GoldsetError, EXIT_GOLDSET),
    (ParameterError, EXIT_PARAMS),
]


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BuglocError as exc:
        for error_type, code in _EXIT_BY_ERROR:
            if isinstance(exc, error_type):
                print(f"bugloc: {exc}", file=sys.stderr)
                return code
        print(f"bugloc: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except Exception as exc:  # pragma: no cover - safety net
        print(f"bugloc: unexpected error: {exc}", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
