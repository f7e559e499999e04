"""Necklaces of colored beads and fair division among q thieves.

An open necklace has beads 1..n, bead k occupying the interval
(k-1, k] and carrying a color in 1..m.  A discrete splitting assigns
each bead to a thief; it is fair when every thief holds floor(a_j/q)
or ceil(a_j/q) beads of each color j, where a_j counts the beads of
color j.  The thieves holding the ceiling are the advantaged ones; an
advantage assignment picks, for every color with a_j mod q != 0,
exactly (a_j mod q) advantaged thieves.

A continuous splitting instead cuts the necklace at rational positions
and gives every thief exactly a_j/q of each color.  ``search_continuous``
finds one with at most (q-1)m cuts by exhausting owner patterns and
cut placements; ``search_discrete`` is the independent brute-force
oracle for whole-bead splittings.  All continuous arithmetic is exact
(fractions.Fraction).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil, comb, floor
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import BudgetExceededError, InternalInvariantError, SchemaError
from .linsolve import find_rational_point

CONTINUOUS_BUDGET = 10**6
DISCRETE_BUDGET = 10**8

# slack for the float prefilters; anything this close to feasible goes
# to the exact solver, so the tolerance only affects speed
_EPS = 1e-6


@dataclass(frozen=True)
class Necklace:
    """Bead colors in necklace order plus the thief count q >= 2."""

    beads: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "beads", tuple(self.beads))
        if not self.beads:
            raise ValueError("a necklace needs at least one bead")
        used = set(self.beads)
        m = max(used)
        if used != set(range(1, m + 1)):
            raise ValueError("colors must be contiguous 1..m with every color used")
        if self.q < 2:
            raise ValueError("need at least two thieves")

    @property
    def n(self) -> int:
        return len(self.beads)

    @property
    def m(self) -> int:
        return max(self.beads)

    @cached_property
    def a(self) -> tuple[int, ...]:
        """a[j-1] = number of beads of color j."""
        counts = [0] * self.m
        for c in self.beads:
            counts[c - 1] += 1
        return tuple(counts)

    @property
    def r(self) -> tuple[int, ...]:
        return tuple(aj % self.q for aj in self.a)


def remainders(neck: Necklace) -> dict[int, int]:
    """Per color, the remainder of a_j divided by q."""
    return {j + 1: rj for j, rj in enumerate(neck.r)}


AdvantageSpec = Mapping[int, Iterable[int]]


def normalize_advantages(
    neck: Necklace, advantages: AdvantageSpec | None
) -> dict[int, frozenset[int]]:
    """Validate an advantage assignment against the necklace remainders.

    Colors with r_j = 0 must be absent; every color with r_j != 0 must
    name exactly r_j distinct thieves in 1..q.
    """
    given = {} if advantages is None else dict(advantages)
    r = remainders(neck)
    out: dict[int, frozenset[int]] = {}
    for j, thieves in given.items():
        j = int(j)
        if j not in r:
            raise SchemaError(f"color {j} does not exist")
        if r[j] == 0:
            raise SchemaError(
                f"color {j} has remainder 0 and admits no advantaged thieves"
            )
        listed = [int(t) for t in thieves]
        ts = frozenset(listed)
        if len(ts) != len(listed):
            raise SchemaError(f"duplicate thieves in the advantage list of color {j}")
        if not ts <= set(range(1, neck.q + 1)):
            raise SchemaError(f"advantaged thieves of color {j} must lie in 1..{neck.q}")
        if len(ts) != r[j]:
            raise SchemaError(
                f"color {j} needs exactly r_j={r[j]} advantaged thieves, got {len(ts)}"
            )
        out[j] = ts
    missing = [j for j, rj in r.items() if rj != 0 and j not in out]
    if missing:
        raise SchemaError(f"missing advantaged thieves for colors {missing}")
    return out


@dataclass(frozen=True)
class DiscreteSplitting:
    """owner[k-1] = thief receiving bead k."""

    owner: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "owner", tuple(self.owner))

    @property
    def cuts(self) -> int:
        """Adjacent differently-owned pairs, i.e. physical cuts."""
        return sum(1 for a, b in zip(self.owner, self.owner[1:]) if a != b)

    def counts(self, neck: Necklace) -> dict[int, tuple[int, ...]]:
        """Thief -> per-color bead counts."""
        out = {t: [0] * neck.m for t in range(1, neck.q + 1)}
        for k, t in enumerate(self.owner):
            out[t][neck.beads[k] - 1] += 1
        return {t: tuple(v) for t, v in out.items()}


def verify_discrete(
    neck: Necklace, advantages: AdvantageSpec | None, split: DiscreteSplitting
) -> list[str]:
    """Check a discrete splitting clause by clause; returns violations."""
    adv = normalize_advantages(neck, advantages)
    if len(split.owner) != neck.n or any(
        t < 1 or t > neck.q for t in split.owner
    ):
        return ["owner vector shape"]
    violations: list[str] = []
    counts = split.counts(neck)
    for j in range(1, neck.m + 1):
        lo = neck.a[j - 1] // neck.q
        hi = lo + (1 if neck.r[j - 1] else 0)
        held = {t: counts[t][j - 1] for t in counts}
        if any(c < lo or c > hi for c in held.values()):
            violations.append(f"fairness color {j}")
            continue
        if neck.r[j - 1]:
            ceil_holders = frozenset(t for t, c in held.items() if c == hi)
            if ceil_holders != adv[j]:
                violations.append(f"advantage color {j}")
    if split.cuts > (neck.q - 1) * neck.m:
        violations.append("cut bound")
    return violations


def _owner_patterns(q: int, length: int) -> Iterator[tuple[int, ...]]:
    """All thief sequences of the given length with distinct neighbors, lex order."""
    prefix: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for t in range(1, q + 1):
            if prefix and prefix[-1] == t:
                continue
            prefix.append(t)
            yield from rec()
            prefix.pop()

    yield from rec()


def search_discrete(
    neck: Necklace,
    advantages: AdvantageSpec | None,
    max_cuts: int,
    budget: int = DISCRETE_BUDGET,
) -> DiscreteSplitting | None:
    """First fair whole-bead splitting with at most max_cuts cuts, or None.

    Enumerates cut counts ascending; for each count, owner patterns in
    lexicographic order and, per pattern, cut position sets in
    lexicographic order.  Serves as the independent oracle against
    which the continuous-rounding pipeline is checked.
    """
    adv = normalize_advantages(neck, advantages)
    n, m, q = neck.n, neck.m, neck.q
    top = min(max_cuts, n - 1)
    states = sum(comb(n - 1, c) * q ** (c + 1) for c in range(top + 1))
    if states > budget:
        raise BudgetExceededError(
            f"{states} cutset/owner states exceed the {budget} budget"
        )

    target = np.zeros((q, m), dtype=np.int64)
    for j in range(1, m + 1):
        base = neck.a[j - 1] // q
        for t in range(1, q + 1):
            target[t - 1, j - 1] = base + (1 if t in adv.get(j, ()) else 0)
    prefix = np.zeros((m, n + 1), dtype=np.int64)
    for k, c in enumerate(neck.beads, start=1):
        prefix[:, k] = prefix[:, k - 1]
        prefix[c - 1, k] += 1

    for c in range(top + 1):
        combos = list(itertools.combinations(range(1, n), c))
        # reshape by explicit count: for c=0 the single empty combo has size
        # zero and a -1 row dimension cannot be inferred from it
        cutsets = np.array(combos, dtype=np.int64).reshape(len(combos), c)
        ext = np.hstack(
            [
                np.zeros((len(cutsets), 1), dtype=np.int64),
                cutsets,
                np.full((len(cutsets), 1), n, dtype=np.int64),
            ]
        )
        # piece_counts[i, p, j] = beads of color j+1 in piece p of cutset i
        piece_counts = (
            prefix[:, ext[:, 1:]] - prefix[:, ext[:, :-1]]
        ).transpose(1, 2, 0)
        for pattern in _owner_patterns(q, c + 1):
            present = set(pattern)
            if any(
                target[t - 1].any() for t in range(1, q + 1) if t not in present
            ):
                continue
            ok = np.ones(len(cutsets), dtype=bool)
            for t in present:
                idx = [i for i, o in enumerate(pattern) if o == t]
                got = piece_counts[:, idx, :].sum(axis=1)
                ok &= (got == target[t - 1]).all(axis=1)
                if not ok.any():
                    break
            hits = np.flatnonzero(ok)
            if hits.size:
                cuts = cutsets[hits[0]]
                owner: list[int] = []
                bounds = [0, *cuts.tolist(), n]
                for p, t in enumerate(pattern):
                    owner.extend([t] * (bounds[p + 1] - bounds[p]))
                found = DiscreteSplitting(tuple(owner))
                if verify_discrete(neck, advantages, found):
                    raise InternalInvariantError(
                        "discrete search accepted an unfair candidate"
                    )
                return found
    return None


@dataclass(frozen=True)
class ContinuousSplitting:
    """Cut positions (exact rationals) and the thief owning each segment."""

    cuts: tuple[Fraction, ...]
    owners: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cuts", tuple(Fraction(c) for c in self.cuts))
        object.__setattr__(self, "owners", tuple(self.owners))
        if len(self.owners) != len(self.cuts) + 1:
            raise ValueError("need exactly one owner per segment")

    def allocation(self, neck: Necklace) -> dict[tuple[int, int], Fraction]:
        """(thief, bead) -> amount of the bead the thief receives."""
        alloc: dict[tuple[int, int], Fraction] = {}
        bounds = (Fraction(0), *self.cuts, Fraction(neck.n))
        for owner, lo, hi in zip(self.owners, bounds, bounds[1:]):
            for k in range(floor(lo) + 1, ceil(hi) + 1):
                amt = min(hi, Fraction(k)) - max(lo, Fraction(k - 1))
                if amt > 0:
                    key = (owner, k)
                    alloc[key] = alloc.get(key, Fraction(0)) + amt
        return alloc

    def bead_owner_sequence(self, neck: Necklace) -> dict[int, list[int]]:
        """Bead -> owners of its sub-pieces in left-to-right order."""
        seq: dict[int, list[int]] = {k: [] for k in range(1, neck.n + 1)}
        bounds = (Fraction(0), *self.cuts, Fraction(neck.n))
        for owner, lo, hi in zip(self.owners, bounds, bounds[1:]):
            for k in range(floor(lo) + 1, ceil(hi) + 1):
                if min(hi, Fraction(k)) > max(lo, Fraction(k - 1)):
                    seq[k].append(owner)
        return seq


def verify_continuous(neck: Necklace, cont: ContinuousSplitting) -> list[str]:
    """Exact check of a continuous splitting; returns violated clauses."""
    violations: list[str] = []
    cuts, owners = cont.cuts, cont.owners
    shape_ok = (
        all(0 < c < neck.n for c in cuts)
        and all(a < b for a, b in zip(cuts, cuts[1:]))
        and all(1 <= t <= neck.q for t in owners)
        and all(a != b for a, b in zip(owners, owners[1:]))
    )
    if not shape_ok:
        violations.append("shape")
    if len(cuts) > (neck.q - 1) * neck.m:
        violations.append("cut bound")
    alloc = cont.allocation(neck)
    totals: dict[tuple[int, int], Fraction] = {}
    bead_sum = [Fraction(0)] * neck.n
    for (t, k), amt in alloc.items():
        j = neck.beads[k - 1]
        totals[(t, j)] = totals.get((t, j), Fraction(0)) + amt
        bead_sum[k - 1] += amt
    if any(s != 1 for s in bead_sum):
        violations.append("bead sums")
    for t in range(1, neck.q + 1):
        for j in range(1, neck.m + 1):
            if totals.get((t, j), Fraction(0)) != Fraction(neck.a[j - 1], neck.q):
                violations.append("fairness")
                break
        else:
            continue
        break
    return violations


# Cut-placement cells: a cut either sits strictly inside bead k (cell
# id 2k-1, open interval) or exactly on the boundary at integer b
# (cell id 2b, pinned).  Cells are enumerated nondecreasing; a pinned
# cell cannot repeat (two cuts at one point would leave an empty
# segment), while an open cell can hold several strictly ordered cuts.


@lru_cache(maxsize=None)
def _cut_cells(n: int, ncuts: int) -> np.ndarray:
    rows = [
        combo
        for combo in itertools.combinations_with_replacement(range(1, 2 * n), ncuts)
        if not any(a == b and a % 2 == 0 for a, b in zip(combo, combo[1:]))
    ]
    return np.array(rows, dtype=np.int64).reshape(-1, ncuts)


@lru_cache(maxsize=None)
def _measure_tables(beads: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Per color: least and greatest possible measure between two cells.

    Entry [j, A, B] bounds the color-j content of a segment whose left
    cut lies in cell A and right cut in cell B, using each cell's
    extreme positions.  Summed per thief these give sound interval
    bounds for pruning cut-cell assignments.
    """
    n = len(beads)
    m = max(beads)
    # half-integer grid: grid index g sits at position g/2, so each
    # step crosses half of bead ceil(g/2)
    fgrid = np.zeros((m, 2 * n + 1))
    for g in range(1, 2 * n + 1):
        j = beads[(g + 1) // 2 - 1] - 1
        fgrid[:, g] = fgrid[:, g - 1]
        fgrid[j, g] += 0.5
    ids = np.arange(2 * n + 1)
    inf_g = np.where(ids % 2 == 1, ids - 1, ids)
    sup_g = np.where(ids % 2 == 1, ids + 1, ids)
    lo = np.maximum(0.0, fgrid[:, inf_g][:, None, :] - fgrid[:, sup_g][:, :, None])
    hi = np.maximum(0.0, fgrid[:, sup_g][:, None, :] - fgrid[:, inf_g][:, :, None])
    return lo, hi


@lru_cache(maxsize=None)
def _color_prefix(beads: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """prefix[j][k] = beads of color j+1 among the first k beads."""
    m = max(beads)
    rows = [[0] for _ in range(m)]
    for c in beads:
        for j in range(m):
            rows[j].append(rows[j][-1] + (1 if c - 1 == j else 0))
    return tuple(tuple(r) for r in rows)


def _solve_cells(
    neck: Necklace, pattern: tuple[int, ...], cells: tuple[int, ...]
) -> tuple[Fraction, ...] | None:
    """Exact cut positions for one (pattern, cells) candidate, or None.

    The fairness equations are linear in the positions of cuts lying
    inside beads (boundary cuts are pinned constants).  A float solve
    rejects clearly infeasible systems; anything borderline or
    underdetermined goes to the exact rational solver.
    """
    m, q = neck.m, neck.q
    prefix = _color_prefix(neck.beads)

    var_of: dict[int, int | None] = {i: None for i in range(len(cells))}
    nvars = 0
    for i, cell in enumerate(cells):
        if cell % 2 == 1:
            var_of[i] = nvars
            nvars += 1

    eq_rows: list[tuple[list[Fraction], Fraction]] = []
    for t in range(1, q + 1):
        for j in range(m):
            row = [Fraction(0)] * nvars
            rhs = Fraction(neck.a[j], q)
            if pattern[-1] == t:
                rhs -= neck.a[j]
            for i, cell in enumerate(cells):
                w = (1 if pattern[i] == t else 0) - (1 if pattern[i + 1] == t else 0)
                if w == 0:
                    continue
                if cell % 2 == 0:
                    rhs -= w * prefix[j][cell // 2]
                else:
                    k = (cell + 1) // 2
                    s = 1 if neck.beads[k - 1] - 1 == j else 0
                    rhs -= w * (prefix[j][k - 1] - s * (k - 1))
                    if s:
                        row[var_of[i]] += w
            eq_rows.append((row, rhs))

    ineqs: list[tuple[list[Fraction], Fraction, bool]] = []
    for i, cell in enumerate(cells):
        if cell % 2 == 0:
            continue
        k = (cell + 1) // 2
        v = var_of[i]
        up = [Fraction(0)] * nvars
        up[v] = Fraction(1)
        ineqs.append((up, Fraction(k), True))
        dn = [Fraction(0)] * nvars
        dn[v] = Fraction(-1)
        ineqs.append((dn, Fraction(-(k - 1)), True))
        if i + 1 < len(cells) and cells[i + 1] == cell:
            order = [Fraction(0)] * nvars
            order[v] = Fraction(1)
            order[var_of[i + 1]] = Fraction(-1)
            ineqs.append((order, Fraction(0), True))

    if nvars:
        a_mat = np.array([[float(c) for c in row] for row, _ in eq_rows])
        b_vec = np.array([float(rhs) for _, rhs in eq_rows])
        sol, _, rank, _ = np.linalg.lstsq(a_mat, b_vec, rcond=None)
        if rank == nvars:
            if np.max(np.abs(a_mat @ sol - b_vec)) > _EPS:
                return None
            margins = [
                float(rhs) - sum(float(c) * x for c, x in zip(row, sol))
                for row, rhs, _ in ineqs
            ]
            if margins and min(margins) < -_EPS:
                return None

    point = find_rational_point(eq_rows, ineqs, nvars)
    if point is None:
        return None
    out: list[Fraction] = []
    for i, cell in enumerate(cells):
        out.append(Fraction(cell // 2) if cell % 2 == 0 else point[var_of[i]])
    return tuple(out)


def search_continuous(
    neck: Necklace, budget: int = CONTINUOUS_BUDGET
) -> ContinuousSplitting:
    """Continuous fair splitting with at most (q-1)m cuts.

    Scans cut counts ascending from q-1; within a count, owner patterns
    in lexicographic order, and cut-cell assignments in lexicographic
    order per pattern.  Existence is guaranteed, so exhausting the
    enumeration signals a defect; running past the candidate budget is
    reported as such, never as nonexistence.
    """
    n, m, q = neck.n, neck.m, neck.q
    lo_tab, hi_tab = _measure_tables(neck.beads)
    targets = [neck.a[j] / q for j in range(m)]
    examined = 0
    for ncuts in range(q - 1, (q - 1) * m + 1):
        combos = _cut_cells(n, ncuts)
        if not combos.size and ncuts:
            continue
        ext = np.hstack(
            [
                np.zeros((len(combos), 1), dtype=np.int64),
                combos,
                np.full((len(combos), 1), 2 * n, dtype=np.int64),
            ]
        )
        seg_lo = [lo_tab[j][ext[:, :-1], ext[:, 1:]] for j in range(m)]
        seg_hi = [hi_tab[j][ext[:, :-1], ext[:, 1:]] for j in range(m)]
        thieves = set(range(1, q + 1))
        for pattern in _owner_patterns(q, ncuts + 1):
            if set(pattern) != thieves:
                continue
            examined += len(combos)
            if examined > budget:
                raise BudgetExceededError(
                    f"continuous search passed {budget} candidates without "
                    "finishing; this bounds effort, it does not mean no "
                    "splitting exists"
                )
            mask = np.ones(len(combos), dtype=bool)
            for t in range(1, q + 1):
                idx = [i for i, o in enumerate(pattern) if o == t]
                for j in range(m):
                    lo_sum = seg_lo[j][:, idx].sum(axis=1)
                    hi_sum = seg_hi[j][:, idx].sum(axis=1)
                    mask &= (lo_sum <= targets[j] + _EPS) & (
                        targets[j] <= hi_sum + _EPS
                    )
                if not mask.any():
                    break
            for ci in np.flatnonzero(mask):
                cuts = _solve_cells(neck, pattern, tuple(combos[ci].tolist()))
                if cuts is None:
                    continue
                cont = ContinuousSplitting(cuts=cuts, owners=pattern)
                bad = verify_continuous(neck, cont)
                if bad:
                    raise InternalInvariantError(
                        f"continuous candidate failed verification: {bad}"
                    )
                return cont
    raise InternalInvariantError(
        "continuous search exhausted its enumeration; a fair splitting "
        "always exists"
    )
