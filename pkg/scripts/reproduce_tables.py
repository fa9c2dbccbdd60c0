"""Print the k = 763 operation-count tables and accumulator chains.

    python3 scripts/reproduce_tables.py [--k 763] [--out-dir results/]
"""

import argparse
from pathlib import Path

from fuzzyecc.recoding import ones_complement_recode, predict_cost, sliding_windows
from fuzzyecc.reports import PSIZES, rows_to_csv, table2_rows, table3_rows


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=763)
    ap.add_argument("--out-dir", type=Path)
    args = ap.parse_args()

    print(f"k = {args.k} = ({args.k:b})2\n")
    print("psize  sliding-window chain")
    for w in PSIZES:
        seq = sliding_windows(args.k, w)
        c = predict_cost(seq)
        print(f"{w:>5}  {c.doublings}D/{c.additions}A  " + ", ".join(f"{m}P" for m in seq.chain()))
    print("\npsize  1's-complement chain")
    for w in PSIZES:
        seq = ones_complement_recode(args.k, w)
        c = predict_cost(seq)
        tag = "" if seq.signed else "  (falls back to plain windows)"
        print(f"{w:>5}  {c.doublings}D/{c.additions}A  " + ", ".join(f"{m}P" for m in seq.chain()) + tag)

    t2, t3 = rows_to_csv(table2_rows(args.k)), rows_to_csv(table3_rows(args.k))
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        (args.out_dir / "table2.csv").write_text(t2, newline="")
        (args.out_dir / "table3.csv").write_text(t3, newline="")
        print(f"\nwrote {args.out_dir}/table2.csv and table3.csv")
    else:
        print("\n" + t2.replace("\r\n", "\n") + "\n" + t3.replace("\r\n", "\n"), end="")


if __name__ == "__main__":
    main()
