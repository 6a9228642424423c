"""Time the exact simplex backends against each other.

    python benchmarks/bench_kernels.py                 # default parameter set
    python benchmarks/bench_kernels.py 6,5 9,8 --skip-pure

Every backend must reach the same basis, solution and duals; the script
exits nonzero if they disagree.
"""

import argparse
import sys
import time

from edcs_lp.lp import build_lp
from edcs_lp.profiles import Params
from edcs_lp.simplex import BACKENDS, solve_exact

DEFAULT = ["2,1", "4,3", "5,4", "6,5", "7,6", "8,4"]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("params", nargs="*", default=DEFAULT, help="beta,beta_minus pairs")
    ap.add_argument("--repeat", type=int, default=1, help="runs per backend (best time kept)")
    ap.add_argument("--skip-pure", action="store_true", help="skip the pure-Python backend")
    args = ap.parse_args(argv)

    backends = [b for b in BACKENDS if not (args.skip_pure and b == "pure")]
    print(f"{'params':>8} {'rows':>5} {'cols':>6} {'pivots':>7} "
          + " ".join(f"{b:>11}" for b in backends) + "  speedup")
    ok = True
    for text in args.params:
        b, bm = (int(v) for v in text.split(","))
        lp = build_lp(Params(b, bm))
        times, results = {}, {}
        for backend in backends:
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                results[backend] = solve_exact(lp, backend=backend)
                best = min(best, time.perf_counter() - start)
            times[backend] = best
        ref = results[backends[0]]
        for backend, res in results.items():
            if (res.basis, res.solution, res.duals) != (ref.basis, ref.solution, ref.duals):
                print(f"  mismatch: {backend} disagrees with {backends[0]} on ({b},{bm})")
                ok = False
        slow = times.get("pure", times[backends[-1]])
        print(f"{f'({b},{bm})':>8} {lp.num_rows:>5} {lp.num_vars:>6} {ref.pivots:>7} "
              + " ".join(f"{times[k]:>10.3f}s" for k in backends)
              + f"  {slow / times[backends[0]]:>6.1f}x")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
