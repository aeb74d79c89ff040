"""``starloop`` command: run verification suites and emit JSON reports.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
configuration or usage errors.
"""

import argparse
import sys
import time

from ..errors import ConfigError
from . import report as rpt
from .config import load_config
from .suites import SUITES

COMMANDS = list(SUITES) + ["all"]


def build_parser():
    p = argparse.ArgumentParser(prog="starloop", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="write the report to this path")
    p.add_argument("--json", action="store_true", help="print the report to stdout")
    p.add_argument("--nr", type=int)
    p.add_argument("--ntheta", type=int)
    p.add_argument("--nt", type=int)
    p.add_argument("--order-k", dest="order_k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--spin", type=float)
    p.add_argument("--repeats", type=int)
    return p


def run(command, cfg):
    names = list(SUITES) if command == "all" else [command]
    start = time.perf_counter()
    checks, diags = [], []
    for name in names:
        c, d = SUITES[name](cfg)
        for rec in c + d:
            rec["suite"] = name
        checks += c
        diags += d
    # the output path is I/O only and stays out of the report so reruns compare equal
    config = {k: v for k, v in cfg.to_dict().items() if k != "out"}
    return rpt.make_report(command, config, checks, diags, time.perf_counter() - start)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {k: getattr(args, k) for k in ("jobs", "nr", "ntheta", "nt", "order_k", "seed", "spin", "repeats", "out")}
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"starloop: config error: {exc}", file=sys.stderr)
        return 2
    report = run(args.command, cfg)
    text = rpt.dumps(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    for c in report["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['suite']}/{c['name']}", file=sys.stderr)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
