"""Rounding a continuous fair splitting into a whole-bead one.

For each color j, the beads shared by two or more thieves form a
bipartite graph G_j between thieves and beads, with edge amounts
u_e in (0,1).  Every thief's amounts sum to alpha_tj + r_j/q for a
nonnegative integer alpha_tj, and every shared bead's amounts sum
to 1.  After cancelling cycles in these graphs (a flow operation
that only moves cuts, never adds any), each graph is a forest and
the fractional assignment can be rounded to whole beads:

* r_j = 0: a b-factor with b(t) = alpha_tj reroutes the flow
  integrally, so every thief keeps exactly a_j/q beads.
* r_j = 1: a b-factor with one extra unit on a chosen thief hands
  that thief the ceiling and everyone else the floor.
* r_j = q-1: the forest shape forces |B_j| = q-1 and alpha = 0, and
  a perfect matching avoiding one designated thief disadvantages
  exactly that thief.

``split_with_advantages`` chains these stages; it realizes any
advantage assignment whose remainders all lie in {0, 1, q-1}.  The
q=4 scenario with r_j = 2 where this rounding provably cannot help
is packaged as ``demonstrate_r2_failure``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import InternalInvariantError, PreconditionError
from .matching import BipartiteGraph, find_b_factor
from .necklace import (
    AdvantageSpec,
    ContinuousSplitting,
    DiscreteSplitting,
    Necklace,
    normalize_advantages,
    remainders,
    search_continuous,
    verify_continuous,
    verify_discrete,
)


@dataclass(frozen=True)
class ColorFlowGraph:
    """Thief/bead sharing graph of one color, with exact edge amounts."""

    color: int
    q: int
    r: int
    split_beads: tuple[int, ...]
    edges: Mapping[tuple[int, int], Fraction]
    alpha: Mapping[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "split_beads", tuple(self.split_beads))
        object.__setattr__(
            self,
            "edges",
            {(t, k): Fraction(u) for (t, k), u in dict(self.edges).items()},
        )
        object.__setattr__(self, "alpha", dict(self.alpha))

    def thief_edges(self, t: int) -> list[tuple[int, int]]:
        return [e for e in self.edges if e[0] == t]

    def bead_edges(self, k: int) -> list[tuple[int, int]]:
        return [e for e in self.edges if e[1] == k]


def flow_equalities_ok(g: ColorFlowGraph) -> bool:
    """Exact check of the per-thief, per-bead and total amount equalities."""
    if sum(g.edges.values()) != len(g.split_beads):
        return False
    for k in g.split_beads:
        if sum(u for (t, kk), u in g.edges.items() if kk == k) != 1:
            return False
    for t in range(1, g.q + 1):
        total = sum(u for (tt, k), u in g.edges.items() if tt == t)
        expected = g.alpha.get(t, 0) + Fraction(g.r, g.q)
        if g.thief_edges(t):
            if total != expected:
                return False
        elif total != 0 or g.alpha.get(t, 0) != 0:
            return False
    return True


def is_forest(g: ColorFlowGraph) -> bool:
    """True when the sharing graph is acyclic."""
    parent: dict[object, object] = {}

    def find(x: object) -> object:
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for t, k in g.edges:
        a, b = find(("t", t)), find(("k", k))
        if a == b:
            return False
        parent[a] = b
    return True


def build_flow_graph(
    cont: ContinuousSplitting, neck: Necklace, j: int
) -> ColorFlowGraph:
    """The sharing graph G_j of a fair continuous splitting.

    Multiple shares of one bead by the same thief are merged by
    summation, so the graph is simple.  Whole beads are excluded;
    each surviving thief amount must then be alpha + r_j/q for an
    integer alpha >= 0, anything else means the input is not fair.
    """
    if j < 1 or j > neck.m:
        raise PreconditionError(f"color {j} does not exist")
    alloc = cont.allocation(neck)
    q = neck.q
    rj = neck.r[j - 1]
    bead_owners: dict[int, list[int]] = {}
    for (t, k), amt in alloc.items():
        if neck.beads[k - 1] == j and amt > 0:
            bead_owners.setdefault(k, []).append(t)
    split_beads = tuple(sorted(k for k, ts in bead_owners.items() if len(ts) >= 2))
    edges = {
        (t, k): alloc[(t, k)] for k in split_beads for t in sorted(bead_owners[k])
    }
    alpha: dict[int, int] = {}
    for t in range(1, q + 1):
        total = sum(u for (tt, _), u in edges.items() if tt == t)
        frac = total - Fraction(rj, q)
        if any(tt == t for tt, _ in edges):
            if frac.denominator != 1 or frac < 0:
                raise PreconditionError(
                    f"thief {t} holds {total} of the split beads of color {j}; "
                    f"that is not an integer plus {rj}/{q}, so the continuous "
                    "splitting is not fair"
                )
            alpha[t] = int(frac)
            if len(g_edges := [e for e in edges if e[0] == t]) < alpha[t] + 1:
                raise InternalInvariantError(
                    f"thief {t} has {len(g_edges)} split-bead edges but "
                    f"alpha={alpha[t]}"
                )
        else:
            whole = sum(
                amt
                for (tt, k), amt in alloc.items()
                if tt == t and neck.beads[k - 1] == j
            )
            if whole != Fraction(neck.a[j - 1], q):
                raise PreconditionError(
                    f"thief {t} shares no bead of color {j} yet holds {whole} "
                    f"instead of {Fraction(neck.a[j - 1], q)}"
                )
            alpha[t] = 0
    return ColorFlowGraph(
        color=j, q=q, r=rj, split_beads=split_beads, edges=edges, alpha=alpha
    )


def _find_cycle(
    adj: dict[tuple[str, int], list[tuple[str, int]]],
) -> list[tuple[str, int]] | None:
    """One cycle as an alternating vertex list, or None.

    Deterministic: roots and neighbors are scanned in sorted order and
    the first back edge closes the cycle.  In an undirected DFS every
    visited non-parent neighbor lies on the current path.
    """
    visited: set[tuple[str, int]] = set()
    path: list[tuple[str, int]] = []

    def dfs(
        node: tuple[str, int], par: tuple[str, int] | None
    ) -> list[tuple[str, int]] | None:
        visited.add(node)
        path.append(node)
        for nxt in sorted(adj[node]):
            if nxt == par:
                continue
            if nxt in visited:
                return path[path.index(nxt) :]
            found = dfs(nxt, node)
            if found is not None:
                return found
        path.pop()
        return None

    for root in sorted(adj):
        if root not in visited:
            found = dfs(root, None)
            if found is not None:
                return list(found)
    return None


def _push_around(
    alloc: dict[tuple[int, int], Fraction], cycle: list[tuple[str, int]]
) -> None:
    """Push flow around one thief/bead cycle until an edge hits 0 or 1.

    The cycle is canonicalized to start at its smallest thief, heading
    toward that thief's smaller cycle bead.  Of the two push
    orientations the one saturating an edge sooner (smaller amount
    moved) wins; on a tie the first edge is increased.
    """
    thieves = [v for v in cycle if v[0] == "t"]
    start = min(thieves)
    i = cycle.index(start)
    cycle = cycle[i:] + cycle[:i]
    if cycle[1][1] > cycle[-1][1]:
        cycle = [cycle[0]] + cycle[1:][::-1]

    edges = []
    for i in range(len(cycle)):
        a, b = cycle[i], cycle[(i + 1) % len(cycle)]
        t = a[1] if a[0] == "t" else b[1]
        k = a[1] if a[0] == "k" else b[1]
        edges.append((t, k))

    def limit(first_plus: bool) -> Fraction:
        deltas = []
        for i, e in enumerate(edges):
            plus = (i % 2 == 0) == first_plus
            deltas.append(1 - alloc[e] if plus else alloc[e])
        return min(deltas)

    d_plus, d_minus = limit(True), limit(False)
    first_plus = d_plus <= d_minus
    delta = d_plus if first_plus else d_minus
    if delta <= 0:
        raise InternalInvariantError("cycle with no pushable amount")
    for i, e in enumerate(edges):
        plus = (i % 2 == 0) == first_plus
        alloc[e] = alloc[e] + delta if plus else alloc[e] - delta
        if alloc[e] == 0:
            del alloc[e]


def cancel_cycles(cont: ContinuousSplitting, neck: Necklace) -> ContinuousSplitting:
    """Remove all cycles from every color's sharing graph.

    Pushing flow around a cycle keeps every thief's and every bead's
    totals, so fairness is untouched; each push zeroes at least one
    edge, so the loop terminates with forests.  The splitting is then
    rebuilt from the amounts, laying each bead's surviving owners in
    their original order, which never increases the number of cuts.
    An input without cycles is returned unchanged.
    """
    alloc = dict(cont.allocation(neck))
    changed = False
    for j in range(1, neck.m + 1):
        while True:
            shared: dict[int, list[int]] = {}
            for (t, k), amt in alloc.items():
                if neck.beads[k - 1] == j and amt > 0:
                    shared.setdefault(k, []).append(t)
            adj: dict[object, list[object]] = {}
            for k, ts in shared.items():
                if len(ts) < 2:
                    continue
                for t in ts:
                    adj.setdefault(("t", t), []).append(("k", k))
                    adj.setdefault(("k", k), []).append(("t", t))
            cycle = _find_cycle(adj)
            if cycle is None:
                break
            changed = True
            _push_around(alloc, [(kind, v) for kind, v in cycle])
    if not changed:
        return cont

    order = cont.bead_owner_sequence(neck)
    layout: list[tuple[int, Fraction]] = []
    for k in range(1, neck.n + 1):
        seen: list[int] = []
        for t in order[k]:
            if t not in seen and alloc.get((t, k), 0) > 0:
                seen.append(t)
        for t in seen:
            layout.append((t, alloc[(t, k)]))
    merged: list[tuple[int, Fraction]] = []
    for t, amt in layout:
        if merged and merged[-1][0] == t:
            merged[-1] = (t, merged[-1][1] + amt)
        else:
            merged.append((t, amt))
    cuts: list[Fraction] = []
    pos = Fraction(0)
    for t, amt in merged[:-1]:
        pos += amt
        cuts.append(pos)
    out = ContinuousSplitting(cuts=tuple(cuts), owners=tuple(t for t, _ in merged))
    if len(out.cuts) > len(cont.cuts):
        raise InternalInvariantError("cycle cancellation added cuts")
    bad = verify_continuous(neck, out)
    if bad:
        raise InternalInvariantError(f"cycle cancellation broke fairness: {bad}")
    return out


def _check_rounding_input(g: ColorFlowGraph, expect_r: int | None = None) -> None:
    if expect_r is not None and g.r != expect_r:
        raise PreconditionError(
            f"this rounding handles r={expect_r}, got r={g.r} for color {g.color}"
        )
    if not flow_equalities_ok(g):
        raise PreconditionError(
            f"color {g.color}: edge amounts do not satisfy the flow equalities"
        )
    if not is_forest(g):
        raise PreconditionError(
            f"color {g.color}: sharing graph has a cycle; cancel cycles first"
        )


def round_color_r0(g: ColorFlowGraph) -> dict[int, int]:
    """Whole-bead assignment for a color with zero remainder."""
    _check_rounding_input(g, expect_r=0)
    left = sorted({t for t, _ in g.edges})
    graph = BipartiteGraph(left=tuple(left), right=g.split_beads, edges=g.edges.keys())
    result = find_b_factor(
        graph,
        b_left={t: g.alpha.get(t, 0) for t in left},
        b_right={k: 1 for k in g.split_beads},
    )
    if result.factor is None:
        raise InternalInvariantError(
            f"no integral rerouting for color {g.color}; witness "
            f"{sorted(result.witness_left)} / {sorted(result.witness_right)}"
        )
    return {k: t for t, k in result.factor}


def round_color_r1(g: ColorFlowGraph, chosen: int) -> dict[int, int]:
    """Whole-bead assignment handing the chosen thief one extra bead."""
    _check_rounding_input(g, expect_r=1)
    if not 1 <= chosen <= g.q:
        raise PreconditionError(f"chosen thief {chosen} not in 1..{g.q}")
    total_alpha = sum(g.alpha.get(t, 0) for t in range(1, g.q + 1))
    if len(g.split_beads) != total_alpha + 1:
        raise PreconditionError(
            f"color {g.color}: expected |B_j| = sum(alpha)+1 = {total_alpha + 1}, "
            f"got {len(g.split_beads)}"
        )
    left = tuple(range(1, g.q + 1))
    graph = BipartiteGraph(left=left, right=g.split_beads, edges=g.edges.keys())
    result = find_b_factor(
        graph,
        b_left={t: g.alpha.get(t, 0) + (1 if t == chosen else 0) for t in left},
        b_right={k: 1 for k in g.split_beads},
    )
    if result.factor is None:
        raise InternalInvariantError(
            f"no b-factor for color {g.color} with chosen thief {chosen}; "
            "one is guaranteed to exist"
        )
    return {k: t for t, k in result.factor}


def round_color_rq1(g: ColorFlowGraph, disadvantaged: int) -> dict[int, int]:
    """Whole-bead assignment leaving only the disadvantaged thief short."""
    _check_rounding_input(g, expect_r=g.q - 1)
    if not 1 <= disadvantaged <= g.q:
        raise PreconditionError(f"thief {disadvantaged} not in 1..{g.q}")
    # acyclicity plus the flow equalities force this shape
    if len(g.split_beads) != g.q - 1 or any(
        g.alpha.get(t, 0) != 0 for t in range(1, g.q + 1)
    ):
        raise InternalInvariantError(
            f"color {g.color}: acyclic r=q-1 graph must have q-1 split beads "
            "and zero alpha"
        )
    left = tuple(t for t in range(1, g.q + 1) if t != disadvantaged)
    edges = [(t, k) for t, k in g.edges if t != disadvantaged]
    graph = BipartiteGraph(left=left, right=g.split_beads, edges=edges)
    result = find_b_factor(
        graph,
        b_left={t: 1 for t in left},
        b_right={k: 1 for k in g.split_beads},
    )
    if result.factor is None:
        raise InternalInvariantError(
            f"no perfect matching avoiding thief {disadvantaged} for color "
            f"{g.color}; the matching condition is guaranteed"
        )
    return {k: t for t, k in result.factor}


def split_with_advantages(
    neck: Necklace,
    advantages: AdvantageSpec | None,
    *,
    continuous: ContinuousSplitting | None = None,
    budget: int | None = None,
) -> DiscreteSplitting:
    """Fair whole-bead splitting realizing the given advantage assignment.

    Requires every color's remainder to lie in {0, 1, q-1}.  Pipeline:
    find a continuous fair splitting (or take the one supplied via
    ``continuous``, which also lets sweeps reuse one search across many
    advantage assignments), cancel cycles, round each color by its
    remainder case, and hand every split bead to its matched thief.
    The result is verified and never uses more cuts than the continuous
    splitting did.
    """
    adv = normalize_advantages(neck, advantages)
    q = neck.q
    bad = {j: rj for j, rj in remainders(neck).items() if rj not in (0, 1, q - 1)}
    if bad:
        offending = ", ".join(f"color {j} has r={rj}" for j, rj in sorted(bad.items()))
        raise PreconditionError(
            f"remainders outside {{0, 1, q-1}}: {offending}"
        )
    if continuous is None:
        continuous = (
            search_continuous(neck)
            if budget is None
            else search_continuous(neck, budget=budget)
        )
    elif verify_continuous(neck, continuous):
        raise PreconditionError("the supplied continuous splitting is not fair")
    cont = cancel_cycles(continuous, neck)

    owner: dict[int, int] = {}
    alloc = cont.allocation(neck)
    for (t, k), amt in alloc.items():
        if amt == 1:
            owner[k] = t
    for j in range(1, neck.m + 1):
        g = build_flow_graph(cont, neck, j)
        rj = neck.r[j - 1]
        if rj == 0:
            assigned = round_color_r0(g)
        elif rj == 1:
            (chosen,) = adv[j]
            assigned = round_color_r1(g, chosen)
        else:
            (disadvantaged,) = set(range(1, q + 1)) - adv[j]
            assigned = round_color_rq1(g, disadvantaged)
        owner.update(assigned)

    if sorted(owner) != list(range(1, neck.n + 1)):
        raise InternalInvariantError("rounding left a bead unassigned")
    split = DiscreteSplitting(tuple(owner[k] for k in range(1, neck.n + 1)))
    violations = verify_discrete(neck, advantages, split)
    if violations:
        raise InternalInvariantError(f"pipeline output failed checks: {violations}")
    if split.cuts > len(cont.cuts):
        raise InternalInvariantError(
            f"rounding increased cuts: {split.cuts} > {len(cont.cuts)}"
        )
    return split


@dataclass(frozen=True)
class ImpossibilityReport:
    """All whole-bead outcomes reachable from one continuous splitting."""

    beads: tuple[int, ...]
    q: int
    cuts: tuple[Fraction, ...]
    owners: tuple[int, ...]
    outcomes: tuple[tuple[tuple[tuple[int, int], ...], frozenset[int]], ...]
    target: frozenset[int]
    target_reachable: bool

    def reachable(self, advantaged: frozenset[int] | set[int]) -> bool:
        want = frozenset(advantaged)
        return any(adv == want for _, adv in self.outcomes)


def demonstrate_r2_failure() -> ImpossibilityReport:
    """Why the rounding technique stops at r_j = 2 when q = 4.

    Two beads of one color among four thieves: the continuous splitting
    gives each thief half a bead, sharing bead 1 between thieves 1 and
    2 and bead 2 between thieves 3 and 4.  Moving cuts within this
    splitting can only hand each bead to one of its two sharers, so of
    the pairs of thieves that could receive the two whole beads only
    four are reachable, and {1, 2} is not among them: those two thieves
    cannot both be advantaged, no matter how the cuts move.
    """
    neck = Necklace(beads=(1, 1), q=4)
    cont = ContinuousSplitting(
        cuts=(Fraction(1, 2), Fraction(1), Fraction(3, 2)),
        owners=(1, 2, 3, 4),
    )
    if verify_continuous(neck, cont):
        raise InternalInvariantError("the fixed scenario must be fair")
    alloc = cont.allocation(neck)
    sharers = {
        k: sorted(t for (t, kk), amt in alloc.items() if kk == k and 0 < amt < 1)
        for k in (1, 2)
    }
    outcomes = []
    for t1, t2 in itertools.product(sharers[1], sharers[2]):
        assignment = ((1, t1), (2, t2))
        outcomes.append((assignment, frozenset({t1, t2})))
    target = frozenset({1, 2})
    return ImpossibilityReport(
        beads=neck.beads,
        q=neck.q,
        cuts=cont.cuts,
        owners=cont.owners,
        outcomes=tuple(outcomes),
        target=target,
        target_reachable=any(adv == target for _, adv in outcomes),
    )
