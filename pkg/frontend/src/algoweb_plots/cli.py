"""The ``render`` command line."""

from __future__ import annotations

import argparse
import sys

from .render import RenderError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render benchmark CSV results as charts "
                    "(time vs m, absolute error with cone, relative error).",
    )
    parser.add_argument("--csv", required=True, help="harness results CSV")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--model", default=None, help="cell filter: model")
    parser.add_argument("--eps", type=float, default=None,
                        help="cell filter: epsilon")
    parser.add_argument("--deg", type=int, default=None,
                        help="cell filter: average degree (2m/n)")
    parser.add_argument("--w", type=int, default=None,
                        help="cell filter: maximum weight")
    args = parser.parse_args(argv)
    try:
        written = render(args.csv, args.out, model=args.model, eps=args.eps,
                         deg=args.deg, w=args.w)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
