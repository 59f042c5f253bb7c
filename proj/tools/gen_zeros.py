#!/usr/bin/env python3
"""Regenerate data/zeros_10k.txt: ordinates of the first nontrivial zeta zeros.

Each line holds Im(rho_n) for the n-th zero on the critical line, ascending,
printed with 22 significant digits so the values round-trip exactly through
binary64.  mpmath's zetazero refines each zero to the working precision (25
decimal digits here), well beyond the printed digits.

Takes roughly 1.5 hours for the default 10200 zeros on one core.  The file is
written incrementally and the script resumes where a previous run stopped, so
it is safe to interrupt.

Usage: python3 tools/gen_zeros.py [count] [outfile]
"""
import sys
import time

import mpmath as mp

HEADER = """\
# Imaginary parts of the nontrivial Riemann zeta zeros on the critical
# line: the first {n} ordinates, ascending, one per line, 22 significant
# digits (round-trip exact for double precision).
# Regenerate with tools/gen_zeros.py; verify against data/zeros_10k.txt.sha256.
"""


def main() -> None:
    mp.mp.dps = 25
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 10200
    out = sys.argv[2] if len(sys.argv) > 2 else "data/zeros_10k.txt"

    done = 0
    try:
        with open(out) as f:
            done = sum(1 for line in f if line.strip() and not line.startswith("#"))
    except FileNotFoundError:
        pass

    mode = "a" if done else "w"
    t0 = time.time()
    with open(out, mode, buffering=1) as f:
        if not done:
            f.write(HEADER.format(n=count))
        for n in range(done + 1, count + 1):
            g = mp.zetazero(n).imag
            f.write(mp.nstr(g, 22, strip_zeros=False) + "\n")
            if n % 500 == 0:
                print(f"{n}/{count} zeros, height {mp.nstr(g, 10)}, "
                      f"{time.time() - t0:.0f}s elapsed", flush=True)
    print(f"done: {count} zeros in {out}", flush=True)


if __name__ == "__main__":
    main()
