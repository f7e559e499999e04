"""Where cut-moving stops: a remainder-2 color among four thieves.

The rounding pipeline promises any advantage assignment when every
remainder lies in {0, 1, q-1}.  This is the smallest scenario outside
that set: two beads of one color, four thieves, r=2.  The continuous
splitting shares bead 1 between thieves 1 and 2 and bead 2 between
thieves 3 and 4; whole-bead outcomes reachable by moving cuts can only
pick one sharer per bead, so the pair {1, 2} can never be the two
advantaged thieves.
"""

from fairsplit import demonstrate_r2_failure

if __name__ == "__main__":
    report = demonstrate_r2_failure()
    print(f"necklace: beads={list(report.beads)}, q={report.q}")
    print(f"continuous cuts {[str(c) for c in report.cuts]}, owners {report.owners}")
    print()
    print("reachable whole-bead outcomes:")
    for assignment, advantaged in report.outcomes:
        handed = ", ".join(f"bead {k} -> thief {t}" for k, t in assignment)
        print(f"  {handed}   advantaged: {sorted(advantaged)}")
    print()
    target = sorted(report.target)
    print(f"target pair {target}: "
          f"{'reachable' if report.target_reachable else 'NOT reachable'}")
    assert not report.target_reachable
    print("every outcome advantages one sharer of each bead; "
          "thieves 1 and 2 share the same bead, so both cannot gain")
