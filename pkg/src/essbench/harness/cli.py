"""Command-line entry point: ``essbench {ar1,elliptic,analyze,report}``."""

from __future__ import annotations

import argparse
import logging
import sys

from ..errors import EssBenchError
from .analyze import analyze
from .config import load_config
from .elliptic_run import elliptic_synth, run_elliptic
from .ensemble import run_ar1_ensemble
from .report import report


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--seed", type=int, help="master seed (unsigned 64-bit)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--threads", type=int, help="worker threads")
    p.add_argument("--format", choices=("csv", "json"), help="table format")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="essbench",
                                     description="IACT/ESS estimator benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("ar1", help="simulate and analyse an AR(1) ensemble"))

    ell = sub.add_parser("elliptic", help="elliptic inverse problem")
    esub = ell.add_subparsers(dest="action", required=True)
    _common(esub.add_parser("synth", help="synthesise observation data"))
    _common(esub.add_parser("run", help="run pCN or delayed-acceptance chains"))

    an = sub.add_parser("analyze", help="estimator tables from stored chain files")
    _common(an)
    an.add_argument("--input", action="append", help="chain file or directory (repeatable)")

    rep = sub.add_parser("report", help="ensemble summary of a rows table")
    _common(rep)
    rep.add_argument("--input", required=True, help="rows.csv or rows.json")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        overrides = dict(master_seed=args.seed, output_dir=args.out, threads=args.threads,
                         format=args.format)
        if args.command == "elliptic":
            overrides["kind"] = "elliptic_run"
        cfg = load_config(args.config, **overrides)
        if args.command == "ar1":
            result = run_ar1_ensemble(cfg)
        elif args.command == "elliptic" and args.action == "synth":
            result = {"paths": {"data": elliptic_synth(cfg)["path"]}}
        elif args.command == "elliptic":
            result = {"paths": run_elliptic(cfg)["files"]}
        elif args.command == "analyze":
            result = analyze(cfg, inputs=args.input)
        else:
            result = report(args.input, cfg.output_dir, cfg.format)
    except (EssBenchError, OSError) as exc:
        print(f"essbench: error: {exc}", file=sys.stderr)
        return 2
    for name, path in result.get("paths", {}).items():
        print(f"{name}: {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
