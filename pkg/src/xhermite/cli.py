"""Command line entry point: ``xhermite run --config cfg.json`` or one scenario at a time."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .errors import ConfigError
from .lab import SCENARIOS, ScenarioConfig, run


def _int_list(text: str) -> List[int]:
    text = text.strip()
    if not text or text in ("()", "[]"):
        return []
    try:
        return [int(t) for t in text.strip("()[]").split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xhermite", description="Exceptional Hermite zero and Hessian checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run every scenario listed in a JSON config")
    p.add_argument("--config", required=True, help="path to the JSON config")
    p.add_argument("--out", help="override output_dir from the config")

    for name in SCENARIOS:
        p = sub.add_parser(name, help=f"run the {name} scenario")
        p.add_argument("--partition", type=_int_list, default=[], help="parts, e.g. 1,1")
        p.add_argument("--n", type=_int_list, required=True, help="regular-zero counts, e.g. 20,30,40")
        p.add_argument("--precision", type=int, default=192, help="working precision in bits")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default="xhermite-out", help="output directory")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            with open(args.config, encoding="utf-8") as fh:
                cfg = ScenarioConfig.from_json(fh.read())
            if args.out:
                cfg.output_dir = args.out
        else:
            cfg = ScenarioConfig(
                partition=args.partition,
                n_values=args.n,
                precision_bits=args.precision,
                scenarios=[args.command],
                seed=args.seed,
                output_dir=args.out,
            )
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    files = run(cfg)
    summary = json.loads(files["summary.json"])
    for v in summary["verdicts"]:
        print(f"{v['verdict']:6} {v['claim']}  [{v['tolerance']}]")
    for sc, errs in summary["errors"].items():
        for n, msg in errs.items():
            print(f"ERROR  {sc} n={n}: {msg}")
    print(f"wrote {len(files)} files to {cfg.output_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
