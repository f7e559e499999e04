"""Fair necklace splitting with a pre-chosen advantaged thief.

When q thieves divide a necklace and a_j is not divisible by q, someone
must end up with the extra bead of color j.  For remainders in
{0, 1, q-1} the extra recipients can be dictated in advance: find a
continuous fair splitting, cancel cycles in the per-color sharing
graphs, then reroute each split bead integrally.  This script walks one
necklace through every stage and prints who gets what for each choice.
"""

from fairsplit import (
    Necklace,
    build_flow_graph,
    cancel_cycles,
    search_continuous,
    split_with_advantages,
    verify_discrete,
)


def stage_by_stage(neck):
    print(f"beads={list(neck.beads)}  q={neck.q}  counts={neck.a}  remainders={neck.r}")
    cont = search_continuous(neck)
    print(f"continuous cuts: {[str(c) for c in cont.cuts]}  owners: {cont.owners}")
    cont = cancel_cycles(cont, neck)
    for j in range(1, neck.m + 1):
        g = build_flow_graph(cont, neck, j)
        print(f"color {j}: split beads {g.split_beads}, "
              f"amounts {{{', '.join(f'{e}: {u}' for e, u in sorted(g.edges.items()))}}}, "
              f"alpha {g.alpha}")
    print()


def every_choice(neck, specs):
    for spec in specs:
        split = split_with_advantages(neck, spec)
        assert verify_discrete(neck, spec, split) == []
        counts = {
            t: sum(1 for o in split.owner if o == t) for t in range(1, neck.q + 1)
        }
        print(f"advantages {spec}: owner={list(split.owner)}  "
              f"cuts={split.cuts}  per-thief counts={counts}")
    print()


if __name__ == "__main__":
    print("== four beads of one color, three thieves (r=1) ==")
    neck = Necklace((1, 1, 1, 1), 3)
    stage_by_stage(neck)
    every_choice(neck, [{1: [1]}, {1: [2]}, {1: [3]}])

    print("== five beads of one color, three thieves (r=2=q-1) ==")
    neck = Necklace((1, 1, 1, 1, 1), 3)
    stage_by_stage(neck)
    every_choice(neck, [{1: [1, 2]}, {1: [1, 3]}, {1: [2, 3]}])

    print("== two colors, two thieves, one remainder each ==")
    neck = Necklace((1, 2, 2, 1, 1, 2), 2)
    stage_by_stage(neck)
    every_choice(neck, [{1: [1], 2: [1]}, {1: [1], 2: [2]},
                        {1: [2], 2: [1]}, {1: [2], 2: [2]}])
