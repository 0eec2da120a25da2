#!/usr/bin/env python3
"""Run every bundled experiment and the equilibrium analysis in one go.

Writes all CSV/JSON artifacts (and SVG plots with --svg) under the output
directory.  The grid scan integrates 625 cells over 1000 days and takes a
few minutes sequentially; pass --workers to spread cells over processes.
"""

import argparse
import sys
import time

from fracepi.cli import main as fracepi_main


def run(args: list[str]) -> None:
    started = time.perf_counter()
    print(f"$ fracepi {' '.join(args)}")
    code = fracepi_main(args)
    if code != 0:
        sys.exit(code)
    print(f"  ... done in {time.perf_counter() - started:.1f}s\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results", help="output directory (default: results)")
    parser.add_argument("--svg", action="store_true", help="also write SVG plots")
    parser.add_argument("--workers", type=int, default=1, help="processes for grid-scan cells")
    ns = parser.parse_args()

    svg = ["--svg"] if ns.svg else []
    run(["analyze", "--out", ns.out])
    run(["baseline", "--out", ns.out] + svg)
    run(["sigma-sweep", "--out", ns.out] + svg)
    run(["reinfection-sweep", "--out", ns.out] + svg)
    run(["contour", "--out", ns.out, "--workers", str(ns.workers)] + svg)


if __name__ == "__main__":
    main()
