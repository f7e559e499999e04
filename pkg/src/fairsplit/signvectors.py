"""Sign vectors over {+, -, 0} and the octahedral Tucker machinery.

A sign vector encodes a partial two-coloring of the vertices 1..n of a
path: ``+`` and ``-`` are the two sides, ``0`` marks a vertex left out.
This module provides the combinatorial gadgets used to certify fair
path splittings:

* ``alt`` -- length of the longest alternating subsequence of the
  nonzero entries (equals the number of maximal runs after deleting
  the zeros),
* ``precedes`` -- the specialization order: x precedes y when y agrees
  with x wherever x is nonzero,
* ``compute_J`` -- the colors a vector saturates, either exactly
  balanced at half a class or with one side holding more than half,
* ``compute_t`` and ``lambda_map`` -- an antipodal labeling of the
  nonzero vectors built from ``alt`` and ``compute_J``; the octahedral
  Tucker lemma says any such labeling free of complementary comparable
  pairs needs at least n label magnitudes,
* ``tucker_verify`` -- exhaustive verifier for antipodality and the
  absence of complementary comparable pairs.

Vectors are stored as the two index sets (x+, x-), which turns
``precedes`` into two subset tests.  Enumerative sweeps run over base-3
code tables built with numpy; the scalar functions and the vectorized
tables are kept in lockstep by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import InstanceTooLargeError

PLUS, MINUS, ZERO = 1, -1, 0

# Hard caps: compute_t enumerates 3^n vectors, tucker_verify additionally
# scans the 5^n comparable pairs.
T_ENUMERATION_CAP = 12
PAIR_SCAN_CAP = 8

_CHAR_TO_SIGN = {"+": PLUS, "-": MINUS, "0": ZERO}
_SIGN_TO_CHAR = {PLUS: "+", MINUS: "-", ZERO: "0"}


@dataclass(frozen=True)
class SignVector:
    """A vector in {+,-,0}^n, kept as the index sets of its + and - entries.

    Indices are 1-based, matching path vertices.
    """

    n: int
    plus: frozenset[int] = field(default_factory=frozenset)
    minus: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "plus", frozenset(self.plus))
        object.__setattr__(self, "minus", frozenset(self.minus))
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.plus & self.minus:
            raise ValueError("an index cannot be both + and -")
        for i in self.plus | self.minus:
            if not 1 <= i <= self.n:
                raise ValueError(f"index {i} out of range 1..{self.n}")

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> "SignVector":
        plus = frozenset(i + 1 for i, e in enumerate(entries) if e == PLUS)
        minus = frozenset(i + 1 for i, e in enumerate(entries) if e == MINUS)
        if any(e not in (PLUS, MINUS, ZERO) for e in entries):
            raise ValueError("entries must be +1, -1 or 0")
        return cls(len(entries), plus, minus)

    @classmethod
    def from_string(cls, s: str) -> "SignVector":
        try:
            return cls.from_entries([_CHAR_TO_SIGN[c] for c in s])
        except KeyError as exc:
            raise ValueError(f"bad sign character {exc.args[0]!r}") from None

    @property
    def entries(self) -> tuple[int, ...]:
        out = [ZERO] * self.n
        for i in self.plus:
            out[i - 1] = PLUS
        for i in self.minus:
            out[i - 1] = MINUS
        return tuple(out)

    @property
    def is_zero(self) -> bool:
        return not self.plus and not self.minus

    @property
    def support(self) -> frozenset[int]:
        return self.plus | self.minus

    def sign_of(self, i: int) -> int:
        if i in self.plus:
            return PLUS
        if i in self.minus:
            return MINUS
        return ZERO

    def first_sign(self) -> int:
        """Sign of the first nonzero entry (0 for the zero vector)."""
        if self.is_zero:
            return ZERO
        return self.sign_of(min(self.support))

    def __neg__(self) -> "SignVector":
        return SignVector(self.n, self.minus, self.plus)

    def __str__(self) -> str:
        return "".join(_SIGN_TO_CHAR[e] for e in self.entries)


Partition = Sequence[Sequence[int]]


def check_partition(classes: Partition) -> int:
    """Validate that classes form a partition of 1..n; returns n."""
    seen: set[int] = set()
    total = 0
    for j, cls in enumerate(classes, start=1):
        if len(cls) == 0:
            raise ValueError(f"class {j} is empty")
        seen.update(cls)
        total += len(cls)
    n = total
    if seen != set(range(1, n + 1)):
        raise ValueError("classes do not partition 1..n")
    return n


def alt(x: SignVector) -> int:
    """Longest alternating subsequence of the nonzero entries of x.

    Delete the zeros; the answer is the number of maximal runs of the
    remaining +/- sequence (an alternating subsequence can pick at most
    one entry per run, and picking one per run alternates).
    """
    runs = 0
    last = ZERO
    for e in x.entries:
        if e != ZERO and e != last:
            runs += 1
            last = e
    return runs


def precedes(x: SignVector, y: SignVector) -> bool:
    """x precedes y iff x+ is contained in y+ and x- in y-."""
    if x.n != y.n:
        raise ValueError("sign vectors live in different dimensions")
    return x.plus <= y.plus and x.minus <= y.minus


def compute_J(x: SignVector, classes: Partition) -> frozenset[int]:
    """Colors saturated by x.

    Color j is in J(x) when x splits V_j exactly in half (both sides
    holding |V_j|/2) or when one side holds more than half of V_j.
    """
    n = check_partition(classes)
    if x.n != n:
        raise ValueError("vector length does not match the partition")
    out = []
    for j, cls in enumerate(classes, start=1):
        v = len(cls)
        p = sum(1 for i in cls if i in x.plus)
        mn = sum(1 for i in cls if i in x.minus)
        if (2 * p == v and 2 * mn == v) or 2 * max(p, mn) > v:
            out.append(j)
    return frozenset(out)


def compute_t(classes: Partition) -> int:
    """max alt(x) over all x with J(x) empty, by enumerating all 3^n vectors.

    The zero vector always qualifies, so the maximum exists.  Capped at
    n <= T_ENUMERATION_CAP.
    """
    n = check_partition(classes)
    if n > T_ENUMERATION_CAP:
        raise InstanceTooLargeError(
            f"compute_t enumerates 3^n vectors; n={n} exceeds cap {T_ENUMERATION_CAP}"
        )
    empty = _j_empty_mask(classes, n)
    return int(_alt_table(n)[empty].max())


def lambda_map(x: SignVector, classes: Partition, t: int) -> int:
    """Label of a nonzero sign vector, given t = compute_t(classes).

    If J(x) is nonempty the label is +-(t + j') for j' = max J(x); the
    sign is decided inside V_j': by which side exceeds half, or, in the
    exactly-balanced case, by which side holds the smallest index.
    Otherwise the label is +-alt(x), signed by the first nonzero entry.
    """
    if x.is_zero:
        raise ValueError("the zero vector carries no label")
    J = compute_J(x, classes)
    if J:
        jp = max(J)
        cls = classes[jp - 1]
        v = len(cls)
        p = sorted(i for i in cls if i in x.plus)
        mn = sorted(i for i in cls if i in x.minus)
        if 2 * len(p) == v and 2 * len(mn) == v:
            sign = PLUS if p[0] < mn[0] else MINUS
        else:
            sign = PLUS if 2 * len(p) > v else MINUS
        return sign * (t + jp)
    return x.first_sign() * alt(x)


def enumerate_sign_vectors(n: int, include_zero: bool = False) -> Iterator[SignVector]:
    """All sign vectors of length n in base-3 code order."""
    for code in range(3**n):
        if code == 0 and not include_zero:
            continue
        yield vector_from_code(code, n)


def vector_code(x: SignVector) -> int:
    """Base-3 code of a vector: digit i-1 is 0/1/2 for entry 0/+/-."""
    code = 0
    for i in x.plus:
        code += 3 ** (i - 1)
    for i in x.minus:
        code += 2 * 3 ** (i - 1)
    return code


def vector_from_code(code: int, n: int) -> SignVector:
    plus, minus = [], []
    for i in range(1, n + 1):
        d = code % 3
        code //= 3
        if d == 1:
            plus.append(i)
        elif d == 2:
            minus.append(i)
    return SignVector(n, frozenset(plus), frozenset(minus))


# ---------------------------------------------------------------------------
# vectorized tables, cached per n


@lru_cache(maxsize=None)
def _digit_table(n: int) -> np.ndarray:
    """(3^n, n) array of base-3 digits; digit 0/1/2 encodes entry 0/+/-."""
    codes = np.arange(3**n, dtype=np.int64)
    digits = np.empty((3**n, n), dtype=np.int8)
    for i in range(n):
        digits[:, i] = (codes // 3**i) % 3
    return digits


@lru_cache(maxsize=None)
def _plus_minus_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    d = _digit_table(n)
    return d == 1, d == 2


@lru_cache(maxsize=None)
def _alt_table(n: int) -> np.ndarray:
    d = _digit_table(n)
    runs = np.zeros(3**n, dtype=np.int16)
    last = np.zeros(3**n, dtype=np.int8)
    for i in range(n):
        col = d[:, i]
        new_run = (col != 0) & (col != last)
        runs += new_run
        nz = col != 0
        last = np.where(nz, col, last)
    return runs


@lru_cache(maxsize=None)
def _first_sign_table(n: int) -> np.ndarray:
    """Sign (+1/-1, 0 only for the zero vector) of the first nonzero entry."""
    d = _digit_table(n)
    first = np.zeros(3**n, dtype=np.int8)
    for i in range(n):
        col = d[:, i]
        unset = first == 0
        first = np.where(unset & (col == 1), 1, first)
        first = np.where(unset & (col == 2), -1, first)
    return first


@lru_cache(maxsize=None)
def _negation_table(n: int) -> np.ndarray:
    """neg[code] = code of the entrywise negation (digits 1 and 2 swapped)."""
    d = _digit_table(n)
    swapped = d.copy()
    swapped[d == 1] = 2
    swapped[d == 2] = 1
    powers = 3 ** np.arange(n, dtype=np.int64)
    return swapped.astype(np.int64) @ powers


@lru_cache(maxsize=None)
def _pair_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Codes (x, y) of every comparable pair x precedes y, both nonzero.

    Per coordinate the pair of digits is one of (0,0), (0,+), (+,+),
    (0,-), (-,-); enumerating base-5 codes enumerates exactly the
    comparable pairs, 5^n in total.
    """
    cases_x = np.array([0, 0, 1, 0, 2], dtype=np.int64)
    cases_y = np.array([0, 1, 1, 2, 2], dtype=np.int64)
    codes5 = np.arange(5**n, dtype=np.int64)
    x = np.zeros(5**n, dtype=np.int64)
    y = np.zeros(5**n, dtype=np.int64)
    for i in range(n):
        d = (codes5 // 5**i) % 5
        x += cases_x[d] * 3**i
        y += cases_y[d] * 3**i
    keep = (x != 0) & (y != 0)
    return x[keep].astype(np.int32), y[keep].astype(np.int32)


def _class_condition(classes: Partition, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Per color: the J-membership mask and the label sign, for all codes.

    Returns (cond, sign) arrays of shape (3^n, m).
    """
    P, M = _plus_minus_tables(n)
    m = len(classes)
    cond = np.zeros((3**n, m), dtype=bool)
    sign = np.zeros((3**n, m), dtype=np.int8)
    for j, cls in enumerate(classes):
        cols = [i - 1 for i in sorted(cls)]
        v = len(cols)
        Psub = P[:, cols]
        Msub = M[:, cols]
        p = Psub.sum(axis=1)
        mn = Msub.sum(axis=1)
        balanced = (2 * p == v) & (2 * mn == v)
        unbalanced = 2 * np.maximum(p, mn) > v
        cond[:, j] = balanced | unbalanced
        # balanced rows have p = mn = v/2 >= 1, so argmax finds a real index
        first_plus = Psub.argmax(axis=1)
        first_minus = Msub.argmax(axis=1)
        s_bal = np.where(first_plus < first_minus, 1, -1).astype(np.int8)
        s_unb = np.where(2 * p > v, 1, -1).astype(np.int8)
        sign[:, j] = np.where(balanced, s_bal, s_unb)
    return cond, sign


def _j_empty_mask(classes: Partition, n: int) -> np.ndarray:
    cond, _ = _class_condition(classes, n)
    return ~cond.any(axis=1)


def lambda_table(classes: Partition) -> tuple[np.ndarray, int]:
    """Vectorized ``lambda_map`` over all 3^n codes.

    Returns (labels, t); labels[0] (the zero vector) is 0 and outside
    the labeling's domain.  Scalar lambda_map and this table agree
    entrywise (tested exhaustively for small n).
    """
    n = check_partition(classes)
    if n > T_ENUMERATION_CAP:
        raise InstanceTooLargeError(
            f"lambda_table enumerates 3^n vectors; n={n} exceeds cap {T_ENUMERATION_CAP}"
        )
    cond, sign = _class_condition(classes, n)
    has_j = cond.any(axis=1)
    # j' = max saturated color, as 1-based index; 0 where J is empty
    m = len(classes)
    weights = np.arange(1, m + 1, dtype=np.int32)
    jprime = np.where(cond, weights[None, :], 0).max(axis=1)
    alt_t = _alt_table(n).astype(np.int32)
    t = int(alt_t[~has_j].max())
    rows = np.arange(3**n)
    sign_jp = np.where(has_j, sign[rows, np.maximum(jprime, 1) - 1], 0).astype(np.int32)
    labels = np.where(
        has_j,
        sign_jp * (t + jprime),
        _first_sign_table(n).astype(np.int32) * alt_t,
    )
    labels[0] = 0
    return labels.astype(np.int32), t


@dataclass(frozen=True)
class TuckerReport:
    """Outcome of tucker_verify.

    ``complementary_pair`` holds some (x, y) with x preceding y and
    labels summing to zero, if any exists; ``complementary_pairs`` is
    the total count of such ordered pairs.  ``lemma_contradiction`` is
    set when the labeling is clean yet s < n, which the octahedral
    Tucker lemma rules out; it must never be True.
    """

    n: int
    s: int
    ok: bool
    antipodal: bool
    antipodal_violation: SignVector | None
    complementary_pair: tuple[SignVector, SignVector] | None
    complementary_pairs: int
    lemma_contradiction: bool


Labeling = Union[Mapping[SignVector, int], Callable[[SignVector], int], np.ndarray]


def _labeling_to_array(labeling: Labeling, n: int) -> np.ndarray:
    if isinstance(labeling, np.ndarray):
        if labeling.shape != (3**n,):
            raise ValueError(f"label array must have shape (3^{n},)")
        return labeling.astype(np.int64)
    out = np.zeros(3**n, dtype=np.int64)
    if callable(labeling) and not isinstance(labeling, Mapping):
        for code in range(1, 3**n):
            out[code] = int(labeling(vector_from_code(code, n)))
        return out
    for code in range(1, 3**n):
        x = vector_from_code(code, n)
        try:
            out[code] = int(labeling[x])
        except KeyError:
            raise ValueError(f"partial labeling: no label for {x}") from None
    return out


def tucker_verify(labeling: Labeling, n: int, s: int) -> TuckerReport:
    """Exhaustively check a labeling of the nonzero vectors of {+,-,0}^n.

    Verifies (a) antipodality, label(-x) = -label(x), and (b) absence
    of complementary comparable pairs: no x preceding y with labels
    summing to zero.  Labels must be nonzero integers of magnitude at
    most s.  A labeling accepted with s < n contradicts the octahedral
    Tucker lemma and is flagged as such.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > PAIR_SCAN_CAP:
        raise InstanceTooLargeError(
            f"tucker_verify scans 5^n pairs; n={n} exceeds cap {PAIR_SCAN_CAP}"
        )
    labels = _labeling_to_array(labeling, n)
    body = labels[1:]
    if (body == 0).any():
        code = int(np.nonzero(body == 0)[0][0]) + 1
        raise ValueError(f"label of {vector_from_code(code, n)} is zero")
    if (np.abs(body) > s).any():
        code = int(np.nonzero(np.abs(body) > s)[0][0]) + 1
        raise ValueError(
            f"label of {vector_from_code(code, n)} exceeds magnitude s={s}"
        )

    neg = _negation_table(n)
    anti_bad = np.nonzero(labels[neg[1:]] != -labels[1:])[0]
    antipodal = anti_bad.size == 0
    antipodal_violation = None
    if not antipodal:
        antipodal_violation = vector_from_code(int(anti_bad[0]) + 1, n)

    xc, yc = _pair_tables(n)
    comp = labels[xc] + labels[yc] == 0
    count = int(comp.sum())
    pair = None
    if count:
        k = int(np.nonzero(comp)[0][0])
        pair = (vector_from_code(int(xc[k]), n), vector_from_code(int(yc[k]), n))

    ok = antipodal and count == 0
    return TuckerReport(
        n=n,
        s=s,
        ok=ok,
        antipodal=antipodal,
        antipodal_violation=antipodal_violation,
        complementary_pair=pair,
        complementary_pairs=count,
        lemma_contradiction=bool(ok and s < n),
    )
