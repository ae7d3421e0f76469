"""Does q encountering p up to reversal imply index(q) <= index(p)?

Binary patterns are read as words over {1, 2}; q encounters p when that
word contains an undirected instance of p. Every pair up to the given
length is tested against the classifier and violations are listed. Nothing
is asserted: the output is data for the open question.

    python scripts/encounter_experiment.py --max-len 6
"""

import argparse
import math
from collections import Counter

from urt.patterns import Pattern, avoids, binary_patterns, classify_binary_pattern


def as_word(q):
    return bytes(1 if c == "x" else 2 for c in q)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=6)
    args = ap.parse_args()

    reps = sorted({Pattern(q).canonical() for q in binary_patterns(args.max_len)})
    index = {q: classify_binary_pattern(q) for q in reps}
    tally, violations = Counter(), []
    for q in reps:
        w = as_word(q)
        for p in reps:
            if len(p) > len(q) or avoids(w, p):
                continue
            tally[(index[q], index[p])] += 1
            if index[q] > index[p]:
                violations.append((q, p))

    show = lambda v: "inf" if v == math.inf else str(v)
    print(f"{len(reps)} patterns up to equivalence, length <= {args.max_len}")
    print("pairs (index q, index p) with q encountering p:")
    for (a, b), n in sorted(tally.items()):
        print(f"  {show(a):>3s} {show(b):>3s}  {n}")
    print(f"violations of index(q) <= index(p): {len(violations)}")
    for q, p in violations[:20]:
        print(f"  {q} encounters {p}: {show(index[q])} > {show(index[p])}")


if __name__ == "__main__":
    main()
