"""Backtracking maxima over two letters for the patterns of the table, plus xxx.

    python scripts/reproduce_table1.py [--jobs 4]
"""

import argparse
import time

from urt.search import longest_pattern_free

PUBLISHED = {"xxxyy": 33, "xxyxy": 30, "xyxxy": 96, "xyyyx": 39, "xxxyxxx": 62, "xxx": 9}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--cap", type=int, default=1000)
    args = ap.parse_args()
    print(f"{'pattern':10s}{'published':>10s}{'found':>8s}{'nodes':>14s}{'seconds':>9s}")
    for p, want in PUBLISHED.items():
        start = time.perf_counter()
        res = longest_pattern_free(p, 2, cap=args.cap, jobs=args.jobs)
        secs = time.perf_counter() - start
        got = "cap" if res.cap_exceeded else res.max_length
        flag = "" if got == want else "  MISMATCH"
        print(f"{p:10s}{want:>10d}{got!s:>8s}{res.nodes_expanded:>14d}{secs:>9.1f}{flag}")


if __name__ == "__main__":
    main()
