"""Write controller surface grids as CSV, one file per plotted view.

The four views follow the figure captions: StorageRoom vs PreComputing and
vs Doubling with the third input at 0.5, then PreComputing vs Doubling with
StorageRoom held at 0.4 and at 0.8.

    python3 scripts/surfaces.py --out-dir results/surfaces [--rules dominant9] [--half-weights]
"""

import argparse
from pathlib import Path

from fuzzyecc.fuzzy import HALF_WEIGHT_RULES, ControllerConfig, bundled_rules, surface_grid

VIEWS = {
    "storage_vs_precomputing": dict(free=["storage_room", "pre_computing"]),
    "storage_vs_doubling": dict(free=["storage_room", "doubling"]),
    "storage_0.4": dict(fixed=("storage_room", 0.4)),
    "storage_0.8": dict(fixed=("storage_room", 0.8)),
}


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", type=Path, default=Path("results/surfaces"))
    ap.add_argument("--rules", default="full26", choices=["full26", "dominant9"])
    ap.add_argument("--resolution", type=int, default=51)
    ap.add_argument("--implication", default="product", choices=["product", "clip"])
    ap.add_argument("--half-weights", action="store_true")
    args = ap.parse_args()

    rb = bundled_rules(args.rules)
    if args.half_weights:
        rb = rb.with_weights({i: 0.5 for i in HALF_WEIGHT_RULES if i <= len(rb)})
    cfg = ControllerConfig(implication=args.implication)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, kw in VIEWS.items():
        grid = surface_grid(rb, resolution=args.resolution, config=cfg, **kw)
        path = args.out_dir / f"{args.rules}_{name}.csv"
        path.write_text(grid.to_csv(), newline="")
        zs = [z for _, _, z in grid.rows]
        print(f"{path}: {grid.x_name} x {grid.y_name}, {grid.held[0]}={grid.held[1]}, crisp in [{min(zs):.3f}, {max(zs):.3f}]")


if __name__ == "__main__":
    main()
