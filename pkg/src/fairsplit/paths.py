"""Fair splitting of vertex-colored paths.

The path on vertices 1..n carries a coloring V_1, ..., V_m.  Two kinds
of splits are computed and verified here:

* pair splits: after removing one vertex per color, the survivors fall
  into two disjoint independent sets S_1, S_2 whose sizes differ by at
  most one and which share each color class almost equally
  (|S_i ^ V_j| between |V_j|/2 - 1 and |V_j|/2).  Such a split always
  exists; ``solve_pair_split`` finds one by enumerating removals and
  alternating the survivors.

* q-stable splits: q classes whose members are pairwise at path
  distance >= q, covering all but q-1 vertices per color, with class
  sizes differing by at most one and every class holding at least
  floor((|V_j|+1)/q) - 1 vertices of each color.  Existence for all q
  is open; ``solve_qstable_bruteforce`` searches exhaustively and
  ``compose_splits`` lifts solvers for q' and q'' to q'q''.

The floor/ceil division identities used by the composition are exposed
as ``floor_ceil_identities`` (floor is toward minus infinity, matching
Python's ``//``).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Mapping, Sequence

from .errors import BudgetExceededError, InternalInvariantError, PreconditionError

logger = logging.getLogger(__name__)

STATE_BUDGET = 10**8


@dataclass(frozen=True)
class ColoredPath:
    """A path on vertices 1..n with colors[i-1] the color of vertex i.

    Colors must be the contiguous range 1..m with every color used.
    """

    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(self.colors))
        if not self.colors:
            raise ValueError("a path needs at least one vertex")
        used = set(self.colors)
        m = max(used)
        if used != set(range(1, m + 1)):
            raise ValueError("colors must be contiguous 1..m with every color used")

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def m(self) -> int:
        return max(self.colors)

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """classes[j-1] = sorted vertices of color j."""
        out: list[list[int]] = [[] for _ in range(self.m)]
        for v, c in enumerate(self.colors, start=1):
            out[c - 1].append(v)
        return tuple(tuple(cls) for cls in out)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(cls) for cls in self.classes)


@dataclass(frozen=True)
class PairSplit:
    """Two independent sets plus one removed vertex per color."""

    removed: Mapping[int, int]
    s1: frozenset[int]
    s2: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "removed", dict(self.removed))
        object.__setattr__(self, "s1", frozenset(self.s1))
        object.__setattr__(self, "s2", frozenset(self.s2))


@dataclass(frozen=True)
class StableSplit:
    """q pairwise-distant classes plus q-1 removed vertices per color."""

    q: int
    removed: Mapping[int, frozenset[int]]
    classes: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "removed", {j: frozenset(vs) for j, vs in dict(self.removed).items()}
        )
        object.__setattr__(self, "classes", tuple(frozenset(c) for c in self.classes))
        if len(self.classes) != self.q:
            raise ValueError("need exactly q classes")


@dataclass(frozen=True)
class CycleSplit:
    """A pair split read cyclically, with the induced cycle-edge counts."""

    split: PairSplit
    induced_edges: tuple[int, int]
    max_extra_edges: int


def solve_pair_split(path: ColoredPath) -> PairSplit:
    """Find a pair split of the colored path.

    Enumerates removal vectors (one vertex per color, in lexicographic
    order over the sorted classes) and, for each, the two alternating
    sign assignments of the surviving vertices; returns the first
    assignment whose per-color counts stay at or below |V_j|/2.  The
    construction makes independence, the size balance and the per-color
    coverage automatic, so that count bound is the only thing checked.
    A valid split always exists, so exhausting the search is an
    internal error.
    """
    classes = path.classes
    sizes = path.class_sizes
    color_of = path.colors
    m = path.m
    for removal in itertools.product(*classes):
        removed = frozenset(removal)
        survivors = [v for v in range(1, path.n + 1) if v not in removed]
        for phase in (1, -1):
            counts = [[0] * m, [0] * m]
            side1: list[int] = []
            side2: list[int] = []
            sign = phase
            for v in survivors:
                side = 0 if sign == 1 else 1
                (side1 if side == 0 else side2).append(v)
                counts[side][color_of[v - 1] - 1] += 1
                sign = -sign
            if all(
                2 * max(counts[0][j], counts[1][j]) <= sizes[j] for j in range(m)
            ):
                return PairSplit(
                    removed={j + 1: removal[j] for j in range(m)},
                    s1=frozenset(side1),
                    s2=frozenset(side2),
                )
    raise InternalInvariantError("no pair split found; one must always exist")


def verify_pair_split(path: ColoredPath, cand: PairSplit) -> list[str]:
    """Check a pair split clause by clause; returns violated clause names."""
    violations: list[str] = []
    classes = path.classes
    n = path.n

    removed_ok = set(cand.removed.keys()) == set(range(1, path.m + 1)) and all(
        v in classes[j - 1] for j, v in cand.removed.items()
    )
    removed_set = set(cand.removed.values())
    parts = [cand.s1, cand.s2, removed_set]
    disjoint = (
        not (cand.s1 & cand.s2)
        and not (cand.s1 & removed_set)
        and not (cand.s2 & removed_set)
    )
    covers = cand.s1 | cand.s2 | removed_set == set(range(1, n + 1))
    per_color_count = all(
        sum(1 for v in cls if v in cand.s1) + sum(1 for v in cls if v in cand.s2)
        == len(cls) - 1
        for cls in classes
    )
    if not (removed_ok and disjoint and covers and per_color_count and len(parts[2]) == path.m):
        violations.append("coverage")

    for s in (cand.s1, cand.s2):
        ordered = sorted(s)
        if any(b - a == 1 for a, b in zip(ordered, ordered[1:])):
            violations.append("independence")
            break

    if abs(len(cand.s1) - len(cand.s2)) > 1:
        violations.append("balance")

    for j, cls in enumerate(classes, start=1):
        v = len(cls)
        c1 = sum(1 for u in cls if u in cand.s1)
        c2 = sum(1 for u in cls if u in cand.s2)
        if 2 * max(c1, c2) > v or 2 * min(c1, c2) < v - 2:
            violations.append("color-balance")
            break

    return violations


def solve_cycle_split(path: ColoredPath) -> CycleSplit:
    """Split a colored cycle by cutting the edge {n, 1} and splitting the path.

    One output class is always independent in the cycle and has size
    floor((n-m)/2); the other induces at most one cycle edge when n-m
    is odd and none when n-m is even.  Both facts are asserted.
    """
    if path.n < 3:
        raise PreconditionError("a cycle needs at least three vertices")
    split = solve_pair_split(path)
    n, m = path.n, path.m
    induced = tuple(_cycle_edges_within(s, n) for s in (split.s1, split.s2))
    k = n - m
    bound = -(-k // 2) - k // 2  # 1 if odd, 0 if even
    small_independent = any(
        induced[i] == 0 and len((split.s1, split.s2)[i]) == k // 2 for i in range(2)
    )
    if not small_independent or max(induced) > bound:
        raise InternalInvariantError("cycle split guarantee failed")
    return CycleSplit(split=split, induced_edges=induced, max_extra_edges=bound)


def _cycle_edges_within(s: frozenset[int], n: int) -> int:
    ordered = sorted(s)
    count = sum(1 for a, b in zip(ordered, ordered[1:]) if b - a == 1)
    if n >= 3 and 1 in s and n in s:
        count += 1
    return count


def verify_cycle_split(path: ColoredPath, cand: CycleSplit) -> list[str]:
    """Check a cycle split clause by clause; returns violated clause names."""
    violations = verify_pair_split(path, cand.split)
    n, m = path.n, path.m
    k = n - m
    bound = -(-k // 2) - k // 2
    sets = (cand.split.s1, cand.split.s2)
    induced = tuple(_cycle_edges_within(s, n) for s in sets)
    if induced != cand.induced_edges or cand.max_extra_edges != bound:
        violations.append("edge-counts")
    if not any(induced[i] == 0 and len(sets[i]) == k // 2 for i in range(2)):
        violations.append("cycle-independence")
    if max(induced) > bound:
        violations.append("cycle-edges")
    return violations


def enumerate_qstable_splits(
    path: ColoredPath,
    q: int,
    *,
    enforce_upper: bool = False,
    require_lower: bool = True,
    force: bool = False,
) -> Iterator[StableSplit]:
    """All q-stable splits, in lexicographic order of the assignment vector.

    Vertices are assigned, in order, a value from (discard, class 1,
    ..., class q); branches violating stability, the discard quota, the
    class-size ceiling or (optionally) the per-color bounds are pruned.
    ``require_lower=False`` drops the per-color lower bound, which is
    useful for enumerating every stability/balance-feasible split.
    """
    if q < 1:
        raise PreconditionError("q must be at least 1")
    n, m = path.n, path.m
    sizes = path.class_sizes
    if any(s < q - 1 for s in sizes):
        raise PreconditionError(f"every color needs at least q-1={q - 1} vertices")
    if (q + 1) ** n > STATE_BUDGET and not force:
        raise BudgetExceededError(
            f"(q+1)^n = {(q + 1) ** n} assignment states exceed the "
            f"{STATE_BUDGET} budget; pass force=True to run anyway"
        )

    color_of = path.colors
    covered = n - (q - 1) * m
    size_hi = -(-covered // q)
    lower = [max(0, (s + 1) // q - 1) for s in sizes]
    upper = [s // q for s in sizes]
    color_last = {j: max(cls) for j, cls in enumerate(path.classes, start=1)}

    assign = [0] * n  # 0 = discarded, 1..q = class
    discards = [0] * m
    counts = [[0] * m for _ in range(q)]
    class_sizes = [0] * q
    last_pos = [-q] * q

    def color_complete_ok(j: int) -> bool:
        if discards[j] != q - 1:
            return False
        if require_lower and any(counts[c][j] < lower[j] for c in range(q)):
            return False
        return True

    def rec(v: int) -> Iterator[StableSplit]:
        if v > n:
            if max(class_sizes) - min(class_sizes) <= 1:
                yield _snapshot(path, q, assign)
            return
        j = color_of[v - 1] - 1
        is_last = color_last[j + 1] == v
        # discard first: lexicographically smallest choice
        if discards[j] < q - 1:
            discards[j] += 1
            assign[v - 1] = 0
            if not is_last or color_complete_ok(j):
                yield from rec(v + 1)
            discards[j] -= 1
        for c in range(q):
            if v - last_pos[c] < q:
                continue
            if class_sizes[c] + 1 > size_hi:
                continue
            if enforce_upper and counts[c][j] + 1 > upper[j]:
                continue
            saved = last_pos[c]
            last_pos[c] = v
            class_sizes[c] += 1
            counts[c][j] += 1
            assign[v - 1] = c + 1
            if not is_last or color_complete_ok(j):
                yield from rec(v + 1)
            counts[c][j] -= 1
            class_sizes[c] -= 1
            last_pos[c] = saved
        assign[v - 1] = 0

    yield from rec(1)


def _snapshot(path: ColoredPath, q: int, assign: Sequence[int]) -> StableSplit:
    classes = [set() for _ in range(q)]
    removed = {j: set() for j in range(1, path.m + 1)}
    for v, a in enumerate(assign, start=1):
        if a == 0:
            removed[path.colors[v - 1]].add(v)
        else:
            classes[a - 1].add(v)
    return StableSplit(
        q=q,
        removed={j: frozenset(vs) for j, vs in removed.items()},
        classes=tuple(frozenset(c) for c in classes),
    )


def solve_qstable_bruteforce(
    path: ColoredPath, q: int, enforce_upper: bool = False, *, force: bool = False
) -> StableSplit | None:
    """First q-stable split in assignment order, or None if none exists.

    A None at any feasible size would falsify the splitting conjecture,
    so it is logged loudly before being returned.
    """
    found = next(
        enumerate_qstable_splits(
            path, q, enforce_upper=enforce_upper, require_lower=True, force=force
        ),
        None,
    )
    if found is None:
        logger.warning(
            "no q-stable split for q=%d, colors=%s -- this is a conjecture "
            "counterexample candidate",
            q,
            list(path.colors),
        )
    return found


def verify_qstable_split(
    path: ColoredPath, q: int, cand: StableSplit, enforce_upper: bool = False
) -> list[str]:
    """Check a q-stable split clause by clause; returns violated clauses."""
    violations: list[str] = []
    classes = path.classes
    n = path.n

    all_sets = list(cand.classes) + [cand.removed.get(j, frozenset()) for j in range(1, path.m + 1)]
    union: set[int] = set()
    total = 0
    for s in all_sets:
        union |= s
        total += len(s)
    removed_ok = set(cand.removed.keys()) == set(range(1, path.m + 1)) and all(
        len(cand.removed[j]) == q - 1 and cand.removed[j] <= set(classes[j - 1])
        for j in range(1, path.m + 1)
    )
    if not (removed_ok and union == set(range(1, n + 1)) and total == n and cand.q == q):
        violations.append("coverage")

    for s in cand.classes:
        ordered = sorted(s)
        if any(b - a < q for a, b in zip(ordered, ordered[1:])):
            violations.append("stability")
            break

    lens = [len(s) for s in cand.classes]
    if lens and max(lens) - min(lens) > 1:
        violations.append("balance")

    for j, cls in enumerate(classes, start=1):
        v = len(cls)
        lo = (v + 1) // q - 1
        if any(sum(1 for u in cls if u in s) < lo for s in cand.classes):
            violations.append("lower-bound")
            break

    if enforce_upper:
        for j, cls in enumerate(classes, start=1):
            v = len(cls)
            if any(q * sum(1 for u in cls if u in s) > v for s in cand.classes):
                violations.append("upper-bound")
                break

    return violations


def pair_split_as_stable(split: PairSplit, path: ColoredPath) -> StableSplit:
    """View a pair split as a 2-stable split (independence = distance >= 2)."""
    return StableSplit(
        q=2,
        removed={j: frozenset({v}) for j, v in split.removed.items()},
        classes=(split.s1, split.s2),
    )


Subsolver = Callable[[ColoredPath, int], StableSplit]


def compose_splits(
    path: ColoredPath, q1: int, q2: int, subsolver: Subsolver
) -> StableSplit:
    """Compose stable splits at q1 and q2 into one at q = q1*q2.

    The subsolver first splits the whole path into q1 classes; each
    class, read in path order, forms a subpath that the subsolver then
    splits into q2 classes.  Distances multiply (two vertices q2 apart
    in a class are q1*q2 apart on the path) and the per-color counts
    chain through floor(floor(a/b)/c) = floor(a/(bc)), so the composed
    split satisfies the q1*q2 bounds.  Every color must have at least
    q1*q2 - 1 vertices.
    """
    q = q1 * q2
    if any(s < q - 1 for s in path.class_sizes):
        raise PreconditionError(f"every color needs at least q-1={q - 1} vertices")
    outer = subsolver(path, q1)
    if len(outer.classes) != q1:
        raise InternalInvariantError("subsolver returned a wrong class count")
    composed: list[frozenset[int]] = []
    for block in outer.classes:
        vertices = sorted(block)
        sub, back = _induced_subpath(path, vertices)
        inner = subsolver(sub, q2)
        if len(inner.classes) != q2:
            raise InternalInvariantError("subsolver returned a wrong class count")
        for cls in inner.classes:
            composed.append(frozenset(back[v] for v in cls))
    covered: set[int] = set()
    for cls in composed:
        covered |= cls
    removed = {
        j: frozenset(v for v in cls if v not in covered)
        for j, cls in enumerate(path.classes, start=1)
    }
    for j, vs in removed.items():
        if len(vs) != q - 1:
            raise InternalInvariantError(
                f"composition left {len(vs)} vertices of color {j} uncovered, "
                f"expected q-1={q - 1}"
            )
    return StableSplit(q=q, removed=removed, classes=tuple(composed))


def _induced_subpath(
    path: ColoredPath, vertices: Sequence[int]
) -> tuple[ColoredPath, dict[int, int]]:
    """Subpath on the given vertices (in order), colors relabeled contiguous."""
    present = sorted({path.colors[v - 1] for v in vertices})
    relabel = {c: i + 1 for i, c in enumerate(present)}
    colors = tuple(relabel[path.colors[v - 1]] for v in vertices)
    back = {i + 1: v for i, v in enumerate(vertices)}
    return ColoredPath(colors), back


def solve_qstable_power2(path: ColoredPath, q: int) -> StableSplit:
    """Stable split for q a power of two, via repeated pair splitting."""
    if q < 1 or q & (q - 1):
        raise PreconditionError(f"q={q} is not a power of two")
    if q == 1:
        return StableSplit(
            q=1,
            removed={j: frozenset() for j in range(1, path.m + 1)},
            classes=(frozenset(range(1, path.n + 1)),),
        )
    if q == 2:
        return pair_split_as_stable(solve_pair_split(path), path)
    return compose_splits(path, 2, q // 2, solve_qstable_power2)


def floor_ceil_identities(a: int, b: int, c: int) -> tuple[bool, bool]:
    """Evaluate floor(floor(a/b)/c) == floor(a/(bc)) and the ceil twin.

    Floor is toward minus infinity (Python's //), so both identities
    hold for every integer a; b and c must be positive.
    """
    if b < 1 or c < 1:
        raise ValueError("b and c must be positive integers")

    def ceildiv(p: int, r: int) -> int:
        return -((-p) // r)

    floor_ok = (a // b) // c == a // (b * c)
    ceil_ok = ceildiv(ceildiv(a, b), c) == ceildiv(a, b * c)
    return floor_ok, ceil_ok


def iter_colorings(n: int, max_m: int) -> Iterator[ColoredPath]:
    """All paths on n vertices with at most max_m colors, every color used."""
    for m in range(1, min(max_m, n) + 1):
        for colors in itertools.product(range(1, m + 1), repeat=n):
            if len(set(colors)) == m:
                yield ColoredPath(colors)
