"""Probe the construction for xyxyyx, whose listed morphism sends both
letters to 11122212 and therefore has a periodic fixed point.

Keeps 1 -> 11122212 and tries every image of 2 obtained from 11122212 by
complement, reversal or both, reporting whether a prefix avoids xyxyyx.

    python scripts/xyxyyx_variants.py --prefix 500
"""

import argparse

from urt.morphic import MorphicWord, Morphism
from urt.patterns import find_instance_undirected, verify_lemma3_bounded

IMAGE = b"\x01\x01\x01\x02\x02\x02\x01\x02"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prefix", type=int, default=500)
    args = ap.parse_args()

    listed = verify_lemma3_bounded("xyxyyx", args.prefix)
    print(f"listed morphism: avoids={listed.avoids} notes={listed.notes}")
    comp = bytes(3 - a for a in IMAGE)
    variants = {"complement": comp, "reversal": IMAGE[::-1], "reversed complement": comp[::-1]}
    for name, img in variants.items():
        w = MorphicWord(Morphism({1: IMAGE, 2: img}), 1).prefix(args.prefix)
        inst = find_instance_undirected(w, "xyxyyx")
        shown = "".join(map(str, img))
        print(f"2 -> {shown} ({name}): {'avoids' if inst is None else f'instance at {inst.start}'}")


if __name__ == "__main__":
    main()
