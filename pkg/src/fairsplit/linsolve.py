"""Exact rational feasibility for small linear systems.

Solves A x = b together with strict or weak inequalities C x < d over
the rationals: Gaussian elimination parametrizes the equality solution
set, Fourier-Motzkin elimination clears the free variables, and back
substitution picks interior (midpoint) values.  Meant for the small
systems that arise when placing necklace cuts, where exactness matters
and the variable count stays in the single digits.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InternalInvariantError

# coefficients, right hand side: sum(c*x) == rhs
Equality = tuple[Sequence[Fraction], Fraction]
# coefficients, right hand side, strict: sum(c*x) < rhs (<= if not strict)
Inequality = tuple[Sequence[Fraction], Fraction, bool]

_FM_BUDGET = 200_000


def find_rational_point(
    equalities: Sequence[Equality],
    inequalities: Sequence[Inequality],
    n_vars: int,
) -> list[Fraction] | None:
    """A rational solution of the system, or None if it is infeasible."""
    eqs = [
        ([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in equalities
    ]
    rows = [coeffs + [rhs] for coeffs, rhs in eqs]
    if any(len(row) != n_vars + 1 for row in rows):
        raise ValueError("equality row length does not match n_vars")

    pivots: list[int] = []
    rank = 0
    for col in range(n_vars):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [v / inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    if any(rows[i][n_vars] != 0 for i in range(rank, len(rows))):
        return None

    pivot_row = {col: rows[r] for r, col in enumerate(pivots)}
    free = [c for c in range(n_vars) if c not in pivot_row]
    free_index = {c: i for i, c in enumerate(free)}

    reduced: list[tuple[list[Fraction], Fraction, bool]] = []
    for coeffs, rhs, strict in inequalities:
        if len(coeffs) != n_vars:
            raise ValueError("inequality row length does not match n_vars")
        coeffs = [Fraction(c) for c in coeffs]
        rhs = Fraction(rhs)
        row = [Fraction(0)] * len(free)
        for col, c in enumerate(coeffs):
            if c == 0:
                continue
            if col in pivot_row:
                prow = pivot_row[col]
                rhs -= c * prow[n_vars]
                for f in free:
                    row[free_index[f]] -= c * prow[f]
            else:
                row[free_index[col]] += c
        reduced.append((row, rhs, bool(strict)))

    assignment = _fourier_motzkin(reduced, len(free))
    if assignment is None:
        return None

    point = [Fraction(0)] * n_vars
    for f, val in zip(free, assignment):
        point[f] = val
    for col in pivots:
        prow = pivot_row[col]
        point[col] = prow[n_vars] - sum(prow[f] * point[f] for f in free)
    return point


def _normalize(
    system: list[tuple[list[Fraction], Fraction, bool]],
) -> list[tuple[list[Fraction], Fraction, bool]] | None:
    """Scale rows to a canonical form and drop duplicates and constants.

    Returns None if a constant row is infeasible.
    """
    seen: set[tuple] = set()
    out: list[tuple[list[Fraction], Fraction, bool]] = []
    for coeffs, rhs, strict in system:
        lead = next((c for c in coeffs if c != 0), None)
        if lead is None:
            if rhs < 0 or (strict and rhs == 0):
                return None
            continue
        scale = abs(lead)
        coeffs = [c / scale for c in coeffs]
        rhs = rhs / scale
        key = (tuple(coeffs), rhs, strict)
        if key not in seen:
            seen.add(key)
            out.append((coeffs, rhs, strict))
    return out


def _fourier_motzkin(
    system: list[tuple[list[Fraction], Fraction, bool]], n_vars: int
) -> list[Fraction] | None:
    """Solve a pure inequality system; returns a point or None."""
    normalized = _normalize(system)
    if normalized is None:
        return None
    system = normalized

    stages: list[list[tuple[list[Fraction], Fraction, bool]]] = []
    for var in range(n_vars):
        involving = [row for row in system if row[0][var] != 0]
        stages.append(involving)
        rest = [row for row in system if row[0][var] == 0]
        lowers = [row for row in involving if row[0][var] < 0]
        uppers = [row for row in involving if row[0][var] > 0]
        combined = rest
        for lc, lr, ls in lowers:
            for uc, ur, us in uppers:
                a_l, a_u = lc[var], uc[var]
                # a_u*lower + (-a_l)*upper cancels var; both multipliers > 0
                coeffs = [a_u * cl - a_l * cu for cl, cu in zip(lc, uc)]
                combined.append((coeffs, a_u * lr - a_l * ur, ls or us))
        if len(combined) > _FM_BUDGET:
            raise InternalInvariantError(
                "inequality blowup during variable elimination"
            )
        system = _normalize(combined)
        if system is None:
            return None
    if _normalize(system) is None:
        return None

    values = [Fraction(0)] * n_vars
    for var in range(n_vars - 1, -1, -1):
        lo = hi = None
        lo_open = hi_open = False
        for coeffs, rhs, strict in stages[var]:
            a = coeffs[var]
            rest = sum(
                c * values[v] for v, c in enumerate(coeffs) if v != var and c != 0
            )
            bound = (rhs - rest) / a
            if a > 0:
                if hi is None or bound < hi:
                    hi, hi_open = bound, strict
                elif bound == hi:
                    hi_open = hi_open or strict
            else:
                if lo is None or bound > lo:
                    lo, lo_open = bound, strict
                elif bound == lo:
                    lo_open = lo_open or strict
        if lo is None and hi is None:
            values[var] = Fraction(0)
        elif lo is None:
            values[var] = hi - 1 if hi_open else hi
        elif hi is None:
            values[var] = lo + 1 if lo_open else lo
        else:
            if lo > hi or (lo == hi and (lo_open or hi_open)):
                raise InternalInvariantError(
                    "back substitution hit an empty interval"
                )
            values[var] = lo if lo == hi else (lo + hi) / 2
    return values
