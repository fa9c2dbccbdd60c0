"""Adaptive versus fixed window sizing on a bursty workload.

Bursts alternate dense full-length scalars with short ones; the controller's
psize trajectory and the total group operations are compared against every
fixed psize that fits the memory budget.

    python3 scripts/simulate.py [--capacity 4000] [--steps 300] [--seed 1]
"""

import argparse
import random
from importlib import resources

from fuzzyecc.adaptive import SimConfig, largest_fitting_psize, simulate
from fuzzyecc.curve import parse_curve_text


def bursty(rng: random.Random, bits: int, steps: int, burst: int = 25) -> list[int]:
    out = []
    while len(out) < steps:
        dense = len(out) // burst % 2 == 0
        for _ in range(burst):
            out.append((1 << bits) - 1 - rng.getrandbits(bits // 8) if dense else rng.getrandbits(bits // 4) | 1)
    return out[:steps]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--curve", default="secp160r1")
    ap.add_argument("--capacity", type=int, default=4000)
    ap.add_argument("--steps", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    spec = parse_curve_text(resources.files("fuzzyecc.data").joinpath(f"{args.curve}.curve").read_text())
    E, G = spec.curve, spec.base
    rng = random.Random(args.seed)
    work = bursty(rng, E.p.bit_length(), args.steps)

    def total(rep):
        t = rep.totals
        return t["doublings"] + t["additions"] + t["table_doublings"] + t["table_additions"]

    top = largest_fitting_psize(args.capacity, E.field.byte_length)
    print(f"{args.steps} steps on {args.curve}, capacity {args.capacity} B (largest psize that fits: {top})")
    for mode in ("full26", "dominant9"):
        _, rep, _ = simulate(work, G, E, SimConfig(args.capacity, mode=mode))
        traj = rep.trajectory()
        print(f"  adaptive {mode:<9} ops={total(rep):>7}  rebuilds={rep.totals['rebuilds']:>3}  "
              f"psize range {min(traj)}-{max(traj)}, final {traj[-1]}")
    for w in range(2, top + 1):
        _, rep, _ = simulate(work, G, E, SimConfig(args.capacity, initial_psize=w, adaptive=False))
        print(f"  fixed psize {w:<6} ops={total(rep):>7}")


if __name__ == "__main__":
    main()
