"""Classify every corpus extension and print its tag, side conditions and central refinement."""
import argparse
from collections import Counter

from minext.catalog import make
from minext.classify import NotCentral, as_embedding, classify_central, classify_minimal_extension, \
    tag_side_conditions
from minext.corpus import PRIME_BASE_EXTENSIONS, select


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int)
    args = ap.parse_args()
    counts = Counter()
    for spec in select(PRIME_BASE_EXTENSIONS, args.max_order):
        emb = as_embedding(make(spec))
        t = classify_minimal_extension(emb)
        try:
            central = classify_central(emb).tag
        except NotCentral:
            central = "-"
        counts[t.tag] += 1
        print(f"{spec:45s} |S|={emb.big.n:4d} {t.tag:3s} side={tag_side_conditions(emb, t.tag)} central={central}")
    print(" ".join(f"{t}={counts[t]}" for t in ("P", "PI", "SR", "SI", "N")))


if __name__ == "__main__":
    main()
