"""Find how many sampled points cover every unit square on {0..9}^2.

Scans one deterministic sample run (n=2) in stream order and reports,
for each open unit square with integer corners in the 10x10 grid, the
first point index landing inside.  The maximum over squares (plus one)
is the count frozen into the coverage test.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from orderdim.geometry import sample_dn


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=40000, help="points to draw")
    ap.add_argument("--grid", type=int, default=10, help="corners in {0..grid-1}^2")
    args = ap.parse_args()

    cloud = sample_dn(2, args.count, args.seed)
    first_hit: dict[tuple[int, int], int] = {}
    todo = {(i, j) for i in range(args.grid - 1) for j in range(args.grid - 1)}
    for k, (x, y) in enumerate(cloud.points):
        if not todo:
            break
        hit = []
        for (i, j) in todo:
            if i < x < i + 1 and j < y < j + 1:
                first_hit[(i, j)] = k
                hit.append((i, j))
        todo -= set(hit)
    if todo:
        print(f"NOT COVERED after {args.count} points: {sorted(todo)}")
        sys.exit(1)
    worst = max(first_hit.values())
    print(f"squares: {len(first_hit)}")
    print(f"last square covered by point index {worst}")
    print(f"first count covering all squares: {worst + 1}")
    slowest = [sq for sq, k in first_hit.items() if k == worst]
    print(f"slowest square(s): {slowest}")


if __name__ == "__main__":
    main()
