"""Run every decider on the corpus and compare with the manifest's expectations."""
import argparse
import sys

from dimerlab import corpus
from dimerlab.summary import SummaryConfig, exit_code, render_text, summarize

KEYS = {"cancellation": "cancellation", "rcharge": "rcharge_lp", "algebraic": "algebraic", "cy3": "cy3",
        "order": "order", "nccr": "nccr"}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--window", type=int, default=9, help="CY-3 window")
    args = ap.parse_args()
    cfg = SummaryConfig(cy3_window=args.window)
    expected = corpus.manifest()["models"]
    rows = []
    mismatches = 0
    for name in corpus.names():
        row = summarize(corpus.load(name), cfg)
        rows.append(row)
        for key, col in KEYS.items():
            want = expected[name]["expected"][key]
            got = row.verdicts[col].value
            if got != want:
                mismatches += 1
                print(f"{name}: {col} = {got}, expected {want}", file=sys.stderr)
    print(render_text(rows, cfg))
    print(f"{mismatches} mismatches against the manifest")
    return exit_code(rows) or (2 if mismatches else 0)


if __name__ == "__main__":
    sys.exit(main())
