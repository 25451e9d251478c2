"""Command-line interface.

One-shot:   nl2vis --data movies.csv --query "show budget by genre"
REPL:       nl2vis --data movies.csv --repl [--dialog]
Service:    nl2vis serve --data movies.csv --data cars.csv [--port 8080]

Results go to stdout, diagnostics to stderr. Exit codes: 0 success (including
empty results), 1 data errors, 2 argument errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import Config
from .core import NL2Vis, serialize
from .errors import EmptyQueryError, ToolkitError

OUTPUT_MODES = ("analytic", "vegalite", "both")


def _build_analyze_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nl2vis",
        description="Natural-language queries over tabular data.")
    parser.add_argument("--data", required=True, help="dataset path (CSV/TSV/JSON)")
    parser.add_argument("--format", choices=("csv", "tsv", "json"),
                        help="override format sniffing")
    parser.add_argument("--query", help="query string (one-shot mode)")
    parser.add_argument("--alias-map", dest="alias_map",
                        help="JSON file mapping attribute -> [aliases]")
    parser.add_argument("--config", dest="config_path",
                        help="JSON config file (or set NL2VIS_CONFIG)")
    parser.add_argument("--output", choices=OUTPUT_MODES, default="analytic")
    parser.add_argument("--debug", action="store_true",
                        help="include match/ranking details in the response")
    parser.add_argument("--repl", action="store_true",
                        help="read queries line by line from stdin")
    parser.add_argument("--dialog", action="store_true",
                        help="carry dialog context between REPL queries")
    parser.add_argument("--inline-data", action="store_true",
                        help="inline dataset rows into emitted Vega-Lite specs")
    return parser


def _load_instance(args) -> NL2Vis:
    config = Config.from_file(args.config_path) if args.config_path \
        else Config.load_default()
    alias_map = None
    if args.alias_map:
        with open(args.alias_map, encoding="utf-8") as handle:
            alias_map = json.load(handle)
    return NL2Vis(args.data, format=args.format, alias_map=alias_map, config=config)


def _emit(instance: NL2Vis, spec, output: str, inline: bool) -> None:
    if output in ("analytic", "both"):
        print(serialize(spec))
    if output in ("vegalite", "both"):
        if not spec.vis_list:
            print("no visualization for this query", file=sys.stderr)
            return
        vl_spec = dict(spec.vis_list[0]["vlSpec"])
        if inline:
            from .profiling import typed_rows
            vl_spec["data"] = {"values": typed_rows(instance.profile)}
        print(json.dumps(vl_spec, ensure_ascii=False, separators=(",", ":")))


def _run_repl(instance: NL2Vis, args) -> int:
    prompt = "query> " if sys.stdin.isatty() else ""
    while True:
        try:
            line = input(prompt)
        except EOFError:
            return 0
        line = line.strip()
        if not line:
            continue
        if line in (":quit", ":q"):
            return 0
        if line == ":reset":
            instance.reset_dialog()
            print("dialog context cleared", file=sys.stderr)
            continue
        try:
            spec = instance.analyze_query(line, dialog=args.dialog, debug=args.debug)
        except EmptyQueryError:
            continue
        except ToolkitError as exc:
            print(f"error: {exc}", file=sys.stderr)
            continue
        _emit(instance, spec, args.output, args.inline_data)


def _run_serve(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="nl2vis serve",
                                     description="Run the HTTP service.")
    parser.add_argument("--data", action="append", default=[],
                        help="dataset path to preload (repeatable)")
    parser.add_argument("--config", dest="config_path")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8080)
    parser.add_argument("--ui", dest="ui_dir", help="static frontend directory to mount at /ui")
    args = parser.parse_args(argv)

    import uvicorn

    from .service import create_app

    config = Config.from_file(args.config_path) if args.config_path \
        else Config.load_default()
    app = create_app(config=config, preload=args.data, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "serve":
        return _run_serve(argv[1:])
    parser = _build_analyze_parser()
    args = parser.parse_args(argv)

    if not args.repl and (args.query is None or not args.query.strip()):
        parser.print_usage(sys.stderr)
        print("nl2vis: error: --query is required (and must be non-empty) "
              "unless --repl is given", file=sys.stderr)
        return 2

    try:
        instance = _load_instance(args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.repl:
        return _run_repl(instance, args)

    try:
        spec = instance.analyze_query(args.query, debug=args.debug)
    except EmptyQueryError:
        parser.print_usage(sys.stderr)
        return 2
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(instance, spec, args.output, args.inline_data)
    return 0


if __name__ == "__main__":
    sys.exit(main())
