"""``spectra`` command-line entry point.

    spectra <command> --config FILE [--out FILE] [--format json|csv] [--seed N]

Exit status: 0 when every verdict passes, 2 when a theorem verdict fails,
3 when only hypothesis violations were recorded, 1 on usage or I/O errors
(including invalid configs and computation errors).
"""
from __future__ import annotations

import argparse
import sys

from ._version import __version__
from .errors import SpectraError
from .report import COMMANDS, emit, parse_config, run

EXIT_OK, EXIT_USAGE, EXIT_VERDICT, EXIT_HYPOTHESIS = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text):
    try:
        v = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser():
    ap = _Parser(prog="spectra",
                 description="Spectra of Jacobi matrices under a local perturbation.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, help="scenario file (JSON)")
    ap.add_argument("--out", help="report file; standard output if omitted")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--seed", type=_seed, help="overrides the config seed")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        cfg = cfg.with_overrides(commands=[args.command], seed=args.seed)
        report = run(cfg)
        emit(report, args.format, args.out)
    except (SpectraError, OSError) as exc:
        print(f"spectra: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
