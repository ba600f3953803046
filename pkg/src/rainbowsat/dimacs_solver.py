"""Minimal competition-format front end to the bundled PySAT solvers.

Usage: ``python -m rainbowsat.dimacs_solver [--solver NAME] FILE.cnf`` (``-`` reads stdin)

Prints ``s SATISFIABLE`` plus ``v`` lines, or ``s UNSATISFIABLE``, and
exits 10 / 20 like standard solvers.
"""

from __future__ import annotations

import argparse
import sys

from .cnf import DEFAULT_SOLVER, solve_dimacs_text


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="rainbowsat.dimacs_solver")
    ap.add_argument("--solver", default=DEFAULT_SOLVER)
    ap.add_argument("path")
    args = ap.parse_args(argv)
    if args.path == "-":
        text = sys.stdin.read()
    else:
        with open(args.path, encoding="ascii") as fh:
            text = fh.read()
    res = solve_dimacs_text(text, args.solver)
    if res.satisfiable:
        print("s SATISFIABLE")
        lits = res.model or []
        for i in range(0, len(lits), 20):
            print("v " + " ".join(map(str, lits[i : i + 20])))
        print("v 0")
        return 10
    print("s UNSATISFIABLE")
    return 20


if __name__ == "__main__":
    sys.exit(main())
