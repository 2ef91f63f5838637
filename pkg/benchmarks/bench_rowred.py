#!/usr/bin/env python3
"""Time the exact row-reduction backends on a real derivation system.

The workload is the d^2-unknown integer Leibniz system for all derivations
of the Borel double of a chosen simple type, eliminated row by row.  Both
backends must produce the same echelon state; the compiled one bails out to
arbitrary precision only when an elimination step would overflow int64, and
those bailouts are counted.
"""

from __future__ import annotations

import argparse
import time

from boreldouble.doubles import build_borel_double
from boreldouble.liealg import leibniz_rows
from boreldouble.linalg import BACKEND
from boreldouble.linalg import _rowred_py as _pure
from boreldouble.rootsys import SimpleType

try:
    from boreldouble.linalg import _rowred as _compiled
except ImportError:  # pure-only build
    _compiled = None


def eliminate(module, ncols: int, rows):
    impl = module.EchelonImpl(ncols)
    bailouts = 0
    for row in rows:
        try:
            impl.add_row(row)
        except OverflowError:
            impl = _pure.EchelonImpl.from_state(ncols, impl.pivot_cols(), impl.rows())
            bailouts += 1
            impl.add_row(row)
    return impl, bailouts


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--type", default="C3", help="simple type for the workload (default C3)")
    parser.add_argument("--repeat", type=int, default=3, help="report the best of N runs")
    args = parser.parse_args()

    st = SimpleType.parse(args.type)
    double = build_borel_double(st)
    rows = list(leibniz_rows(double))
    ncols = double.dim * double.dim
    print("workload: Leibniz system of the %s double, %d rows x %d unknowns" % (st, len(rows), ncols))

    results = {}
    backends = [("pure", _pure)]
    if _compiled is not None:
        backends.append(("compiled", _compiled))
    for name, module in backends:
        best = None
        for _ in range(args.repeat):
            started = time.perf_counter()
            impl, bailouts = eliminate(module, ncols, rows)
            elapsed = time.perf_counter() - started
            best = elapsed if best is None else min(best, elapsed)
        results[name] = (best, impl.rank, tuple(impl.pivot_cols()), bailouts)
        print("  %-9s %8.3fs   rank %-5d int64 bailouts %d" % (name, best, impl.rank, bailouts))

    if len(results) == 2:
        pure_time, pure_rank, pure_pivots, _ = results["pure"]
        fast_time, fast_rank, fast_pivots, _ = results["compiled"]
        if (pure_rank, pure_pivots) != (fast_rank, fast_pivots):
            raise SystemExit("backends disagree on the echelon state")
        print("  backends agree (rank %d); compiled speedup %.1fx" % (pure_rank, pure_time / fast_time))
    else:
        print("  compiled backend not importable; timed the pure backend only")
    print("backend selected at import time: %s" % BACKEND)


if __name__ == "__main__":
    main()
