"""Homology ranks of the truncated CY-3 complex for growing windows.

For each model and window W the ranks (H0, H1, H2, H3) per degree are
summed over vertices; ranks inside a smaller window must not change when W
grows, and the first nonzero H1..H3 is reported.
"""
import argparse
import time

from dimerlab import corpus
from dimerlab.cy3 import check_model


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("models", nargs="*", default=["f0", "octahedron", "triangle_torus", "conifold"])
    ap.add_argument("--windows", type=int, nargs="+", default=[7, 8, 9, 10])
    args = ap.parse_args()
    for name in args.models:
        m = corpus.load(name)
        previous = None
        for W in args.windows:
            if W < m.max_face + 2:
                continue
            t = time.perf_counter()
            safe = W - m.max_face
            reports = check_model(m, W, safe)
            total: dict[int, list[int]] = {}
            for rep in reports.values():
                for d, r in rep.ranks.items():
                    acc = total.setdefault(d, [0, 0, 0, 0])
                    for k in range(4):
                        acc[k] += r[k]
            fails = sorted(rep.first_failure[:2] for rep in reports.values() if not rep.exact)
            stable = previous is None or all(total.get(d) == r for d, r in previous.items())
            first = f"first failure H{fails[0][1]} at degree {fails[0][0]}" if fails else "exact"
            print(f"{name:>22}  W={W:<3} safe={safe:<3} {first:<32} stable={stable}  "
                  f"({time.perf_counter() - t:.1f}s)")
            previous = total


if __name__ == "__main__":
    main()
