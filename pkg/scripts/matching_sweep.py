"""Sweep the ray direction and record which perfect matching each angle selects.

Prints, per consistent torus, the angle intervals of each selected matching
and its point in the toric diagram (relative to the first matching).
"""
import argparse
import math

from dimerlab import corpus
from dimerlab.matchings import angle_sweep, enumerate_matchings, is_local_exchange, matching_class
from dimerlab.rcharge import epsilon_of_zigzag, isoradial_embedding, rcharge_from_zigzags
from dimerlab.topology import homology_labeling
from dimerlab.zigzag import check_condition_Z, enumerate_zigzags


def sweep(name: str, samples: int) -> None:
    m = corpus.load(name)
    lab = homology_labeling(m)
    emb = isoradial_embedding(m, lab, rcharge_from_zigzags(m, lab))
    base = enumerate_matchings(m)[0]
    ms = angle_sweep(m, emb, samples, 1)
    print(f"{name}: {len(set(ms))} distinct matchings over {samples} sampled angles")
    runs = []
    for k, P in enumerate(ms):
        if runs and runs[-1][1] == P:
            continue
        runs.append((k, P))
    for (k, P), nxt in zip(runs, runs[1:] + [(samples, None)]):
        lo, hi = 360 * k / samples, 360 * nxt[0] / samples
        print(f"  [{lo:7.2f}, {hi:7.2f}) deg  {{{', '.join(P.ids(m))}}}  class {matching_class(lab, P, base)}")
    local = all(is_local_exchange(m, P, Q) for P, Q in zip(ms, ms[1:] + ms[:1]))
    print(f"  consecutive matchings differ by local exchanges: {local}")
    eps = sorted(math.degrees(epsilon_of_zigzag(emb, z)) for z in enumerate_zigzags(m, lab))
    print("  zigzag angles: " + ", ".join(f"{e:.2f}" for e in eps))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("models", nargs="*")
    ap.add_argument("--samples", type=int, default=720)
    args = ap.parse_args()
    names = args.models or [n for n in corpus.names() if _consistent_torus(n)]
    for name in names:
        sweep(name, args.samples)


def _consistent_torus(name: str) -> bool:
    m = corpus.load(name)
    return len(m.vertices) - len(m.arrows) + len(m.faces) == 0 and check_condition_Z(m).status == "consistent"


if __name__ == "__main__":
    main()
