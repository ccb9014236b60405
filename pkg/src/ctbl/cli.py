"""Command-line driver: ``ctbl header|irr|hybrid|verify``.

Exit codes: 0 success, 2 incomplete table (partial output still written),
1 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classes import table_header
from .groups import load_group
from .perm import Permutation

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCOMPLETE = 2


def _dump(data, out) -> None:
    text = json.dumps(data, indent=1, sort_keys=True) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_header(args) -> int:
    G = load_group(args.group)
    _dump(table_header(G).to_json(), args.output)
    return EXIT_OK


def cmd_irr(args) -> int:
    from .pipeline import character_table

    G = load_group(args.group)
    store = args.store or os.environ.get("CTBL_STORE_DIR") or None
    result = character_table(G, method=args.method, jobs=args.jobs, store=store)
    _dump(result.to_json(), args.output)
    print(f"found {len(result.irreducibles)} of {result.expected} irreducibles", file=sys.stderr)
    return EXIT_OK if result.complete else EXIT_INCOMPLETE


def _parse_perm(text: str, degree: int) -> Permutation:
    """Either a JSON image list ``[1,0,2]`` or cycles ``(0 1)(2 3)``."""
    text = text.strip()
    if text.startswith("["):
        return Permutation(json.loads(text))
    cycles = []
    for part in text.replace(")", "").split("("):
        part = part.replace(",", " ").split()
        if part:
            cycles.append(tuple(int(x) for x in part))
    return Permutation.from_cycles(degree, *cycles)


def cmd_hybrid(args) -> int:
    from .hybrid import (
        build_from_perm_group,
        dumps_presentation,
        export_presentation,
        find_seed,
    )

    G = load_group(args.group)
    seed = _parse_perm(args.seed, G.degree) if args.seed else find_seed(G)
    H = build_from_perm_group(G, seed)
    text = dumps_presentation(export_presentation(H))
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(f"hybrid order {H.order} = {H.quotient_order} * {H.radical.order}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Check the record's relations on permutation images of its generators.

    Images come from ``--images`` or, by default, from rebuilding the hybrid
    group from G with the same seed and taking its permutation lifts.
    """
    from .hybrid import HybridError, import_presentation, verify_presentation

    with open(args.presentation, encoding="utf-8") as fh:
        record = json.load(fh)
    G = load_group(args.group)
    try:
        import_presentation(record)
    except HybridError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.images:
        with open(args.images, encoding="utf-8") as fh:
            images = [Permutation(x) for x in json.load(fh)]
    else:
        images = _images_from_group(G, args.seed)
    result = verify_presentation(record, images, G.order())
    if result:
        print(f"presentation verified: order {result.order}", file=sys.stderr)
        return EXIT_OK
    if result.failed_relator is not None:
        print(f"relator {result.failed_relator} ({result.section}) fails", file=sys.stderr)
    else:
        print(f"images generate a group of order {result.order}, expected {G.order()}", file=sys.stderr)
    return EXIT_ERROR


def _images_from_group(G, seed_text):
    from .hybrid import build_from_perm_group, find_seed

    seed = _parse_perm(seed_text, G.degree) if seed_text else find_seed(G)
    H = build_from_perm_group(G, seed)
    return [H.to_permutation(g) for g in H.generators()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctbl", description="Exact character tables of permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("header", help="conjugacy classes, centralizer orders and power maps")
    p.add_argument("group", help="group JSON file")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_header)

    p = sub.add_parser("irr", help="irreducible characters")
    p.add_argument("group")
    p.add_argument("--method", choices=("brauer", "oracle"), default="brauer")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--store", default=None, help="directory for binary character stores")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_irr)

    p = sub.add_parser("hybrid", help="export a hybrid presentation")
    p.add_argument("group")
    p.add_argument("--seed", default=None, help='e.g. "(0 1)(2 3)" or "[1,0,3,2]"')
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_hybrid)

    p = sub.add_parser("verify", help="verify a presentation against a group")
    p.add_argument("presentation")
    p.add_argument("group")
    p.add_argument("--seed", default=None)
    p.add_argument("--images", default=None, help="JSON list of generator images")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
