#!/usr/bin/env python3
"""Compare all four noise thresholds for one magic state.

Computes, for a chosen state and dimension, the noise rates at which

  * the Gross-Wigner representation turns non-negative (wigner),
  * the state enters the stabilizer polytope (polytope),
  * some Kirkwood-Dirac frame represents the state classically (kd),
  * the best frame over all searched families does so (crit),

and prints them side by side, flagging whether the KD estimate respects
the expected ordering against the Wigner threshold.

Example:
    python3 scripts/threshold_report.py --state strange --restarts 16 --seed 1
"""

import argparse
import json
import sys
import time

from magicnoise import (
    Dimension,
    OptimizerConfig,
    crit_threshold,
    kd_threshold,
    magic_state,
    polytope_threshold,
    wigner_threshold,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=3, help="odd prime dimension")
    ap.add_argument(
        "--state", default="strange", help="magic state kind (strange | norrell)"
    )
    ap.add_argument("--tol", type=float, default=1e-4, help="bisection resolution")
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", help="also write the raw results to this JSON file")
    args = ap.parse_args()

    dim = Dimension(args.d)
    rho = magic_state(args.state, dim)
    config = OptimizerConfig(
        restarts=args.restarts, seed=args.seed, threads=args.threads
    )

    results = {}
    for name, run in (
        ("wigner", lambda: wigner_threshold(rho)),
        ("polytope", lambda: polytope_threshold(rho, tol=args.tol)),
        ("kd", lambda: kd_threshold(rho, config=config, tol=args.tol)),
        ("crit", lambda: crit_threshold(rho, config=config, tol=args.tol)),
    ):
        t0 = time.perf_counter()
        results[name] = run()
        print(
            f"{name:>8s}: p = {results[name].p:.6f}"
            f"   ({time.perf_counter() - t0:.2f}s)"
        )

    p_w = results["wigner"].p
    p_kd = results["kd"].p
    ordered = p_kd <= p_w + args.tol
    print(
        f"\nordering p_kd <= p_wigner: {'holds' if ordered else 'VIOLATED'}"
        f"  (p_kd = {p_kd:.6f}, p_wigner = {p_w:.6f})"
    )
    winner = results["crit"].certificate["family"]
    print(f"best family over the search: {winner}")

    if args.out:
        from magicnoise import dumps, result_to_dict

        doc = {name: result_to_dict(res) for name, res in results.items()}
        with open(args.out, "w") as fh:
            fh.write(dumps(doc))
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
