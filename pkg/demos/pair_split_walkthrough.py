"""Splitting a colored path into two fair independent sets.

Remove one vertex per color and the survivors can always be divided
into two sets with no path edge inside either one, sizes within one of
each other, and each color's survivors near-halved.  The walkthrough
solves a small path by hand-checkable search, then a larger random one.
"""

import random

from fairsplit import ColoredPath, solve_pair_split, verify_pair_split


def show(path):
    split = solve_pair_split(path)
    print(f"colors   : {list(path.colors)}")
    print(f"removed  : {dict(sorted(split.removed.items()))}")
    print(f"side 1   : {sorted(split.s1)}")
    print(f"side 2   : {sorted(split.s2)}")
    for j, cls in enumerate(path.classes, start=1):
        c1 = sum(1 for v in cls if v in split.s1)
        c2 = sum(1 for v in cls if v in split.s2)
        print(f"color {j}: |V_j|={len(cls)}  split {c1}/{c2}  "
              f"(each side at most {len(cls) // 2})")
    bad = verify_pair_split(path, split)
    print(f"verifier : {'ok' if not bad else bad}")
    print()


def random_path(rng, n):
    colors = []
    relabel = {}
    for _ in range(n):
        c = rng.randint(1, 4)
        colors.append(relabel.setdefault(c, len(relabel) + 1))
    return ColoredPath(tuple(colors))


if __name__ == "__main__":
    print("== four vertices, two colors ==")
    show(ColoredPath((1, 1, 2, 2)))

    print("== alternating colors force the removal to break parity ==")
    show(ColoredPath((1, 2, 1, 2, 1, 2, 1)))

    rng = random.Random(11)
    print("== random 20-vertex path ==")
    show(random_path(rng, 20))
