"""Command line entry point ``lefpencil``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .certify.certificate import EXIT_USAGE, STAGES, run_certificate
from .certify.config import ConfigError, load_config, shipped_config_path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lefpencil",
        description="Certify a pencil of surfaces on the symmetric cube of an elliptic curve.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    helps = {
        "all": "run every stage and write the full certificate",
        "base-points": "common zeros of the five sections",
        "base-locus": "smoothness of the base curve of the pencil",
        "critical": "length of the critical scheme",
        "eliminant": "singular members: eliminant degree, squarefreeness, irreducibility",
        "eta": "definedness of the eta map at the critical points",
        "euler": "intersection numbers and Euler characteristic ledger",
    }
    for name in ("all",) + STAGES:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", type=Path, default=None,
                       help="JSON configuration (default: the bundled example)")
        p.add_argument("--out", type=Path, default=None, help="certificate path (default: stdout)")
        p.add_argument("--mode", choices=("rational", "modular"), default=None)
        p.add_argument("--primes", type=int, default=None, help="number of primes in modular mode")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--timings", choices=("sidecar", "embed", "off"), default=None,
                       help="sidecar writes <out>.timings.json; embed breaks byte-determinism")
        p.add_argument("-v", "--verbose", action="store_true", help="log stage progress to stderr")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(message)s", stream=sys.stderr)
    try:
        config = load_config(args.config or shipped_config_path())
        config = config.with_options(mode=args.mode, prime_count=args.primes, seed=args.seed,
                                     timings=args.timings)
    except ConfigError as exc:
        print(f"lefpencil: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stages = STAGES if args.command == "all" else (args.command,)
    cert = run_certificate(config, stages)
    mode = config.options.timings
    text = cert.to_json(embed_timings=(mode == "embed"))
    if args.out:
        try:
            args.out.write_text(text)
            if mode == "sidecar":
                args.out.with_name(args.out.name + ".timings.json").write_text(cert.timings_json())
        except OSError as exc:
            print(f"lefpencil: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
        if mode == "sidecar":
            sys.stderr.write(cert.timings_json())
    print(f"lefpencil: verdict {cert.verdict} (exit {cert.exit_code})", file=sys.stderr)
    return cert.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
