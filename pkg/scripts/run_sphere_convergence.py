#!/usr/bin/env python3
"""Sphere convergence check.

Runs cuckoo search with default parameters on the d=10 sphere and
reports how many of the seeded trials drive the objective below 1e-5
within the evaluation budget, plus the median evaluations needed.
"""

import argparse

from cuckoo.harness import format_summary, run_experiment, spec_from_dict


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--budget", type=int, default=50_000)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--output", default="results/sphere_convergence")
    args = ap.parse_args()

    spec = spec_from_dict(
        {
            "problems": [{"name": "sphere", "dimension": 10}],
            "algorithms": [{"name": "cuckoo"}],
            "trials": args.trials,
            "base_seed": 0,
            "stop": {"max_evaluations": args.budget, "target_objective": 1e-5},
            "output": args.output,
            "workers": args.workers,
        }
    )
    rows = run_experiment(spec)
    print(format_summary(rows), end="")

    row = rows[0]
    print(
        f"\n{row.success_rate * row.trials:.0f}/{row.trials} trials reached 1e-5"
        f" (median {row.median_evals_to_target} evaluations)"
    )
    print(f"records and summary written to {spec.output}/")


if __name__ == "__main__":
    main()
