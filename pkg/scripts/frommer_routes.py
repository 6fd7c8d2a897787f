"""Compare the eigenbasis and dense focal-value routes on random normalized forms.

    python scripts/frommer_routes.py --samples 200 --prime 29 --seed 1
"""

import argparse
import random
import time

from darboux_eta.frommer import N_PARAMETERS, NormalizedForm, focal_values


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--prime", type=int, default=29)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    timing = {"eigenbasis": 0.0, "dense": 0.0}
    mismatches = 0
    for _ in range(args.samples):
        f = NormalizedForm(args.prime, tuple(rng.randrange(args.prime) for _ in range(N_PARAMETERS)))
        values = {}
        for route in timing:
            start = time.perf_counter()
            values[route] = focal_values(f, route=route).values
            timing[route] += time.perf_counter() - start
        mismatches += values["eigenbasis"] != values["dense"]
    print(f"samples: {args.samples}, prime: {args.prime}, mismatches: {mismatches}")
    for route, total in timing.items():
        print(f"{route}: {1000 * total / args.samples:.1f} ms per form")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
