"""Stable splits for powers of two, and why the general bound is tight.

A q-stable split discards q-1 vertices per color and groups the rest
into q classes with pairwise path distance at least q inside each.  For
q a power of two, composing pair splits does it: split into halves,
then split each half again, distances multiply.  The second part shows
the 7-vertex instance where the natural guess ceil(v/q) - 1 = 2 for the
minimum class size is unreachable and floor((v+1)/q) - 1 = 1 is what
survives.
"""

from fairsplit import (
    ColoredPath,
    enumerate_qstable_splits,
    solve_qstable_power2,
    verify_qstable_split,
)


def show_composed(colors, q):
    path = ColoredPath(colors)
    split = solve_qstable_power2(path, q)
    print(f"path ({path.n} vertices, {path.m} colors), q={q}")
    for j, vs in sorted(split.removed.items()):
        print(f"  removed color {j}: {sorted(vs)}")
    for i, cls in enumerate(split.classes, start=1):
        ordered = sorted(cls)
        gap = min(
            (b - a for a, b in zip(ordered, ordered[1:])), default=None
        )
        print(f"  class {i}: {ordered}  (closest pair {gap})")
    bad = verify_qstable_split(path, q, split, enforce_upper=True)
    print(f"  verifier with upper bound: {'ok' if not bad else bad}")
    print()


def seven_vertex_wall():
    path = ColoredPath((1,) * 7)
    q = 3
    best = -1
    count = 0
    for split in enumerate_qstable_splits(path, q):
        best = max(best, min(len(c) for c in split.classes))
        count += 1
    print(f"7 vertices, one color, q=3: {count} valid splits")
    print(f"  best achievable min class size: {best}")
    print("  ceil(7/3 - 1) = 2 would need 3*2 = 6 survivors,")
    print(f"  but only 7 - 2 = 5 vertices survive the discards")
    print(f"  floor((7+1)/3) - 1 = {(7 + 1) // 3 - 1} matches")


if __name__ == "__main__":
    show_composed((1,) * 8 + (2,) * 8, 4)
    show_composed((1, 2) * 8, 4)
    show_composed((1,) * 9, 2)
    seven_vertex_wall()
