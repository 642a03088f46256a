"""The lattice Q(N) of pairs of disjoint coalitions.

A point (A, B) of Q(N) assigns each player a score in {-1, 0, +1}: +1 for
players of A (defenders), -1 for players of B (defeaters), 0 otherwise.
Player sets are stored as n-bit masks with player ``i`` (1-based) at bit
``i - 1``.  Dense storage uses the ternary index, where player ``i`` is the
ternary digit at place ``i - 1`` coded -1 -> 0, 0 -> 1, +1 -> 2.
"""
from __future__ import annotations

import itertools
import os
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

DEFAULT_MAX_N = 20
DENSE_WARN_N = 12


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


def max_players() -> int:
    """Largest supported player count (``BICAP_MAX_N`` overrides the default)."""
    raw = os.environ.get("BICAP_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"BICAP_MAX_N must be an integer, got {raw!r}") from exc


def check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"player count must be an integer, got {n!r}")
    n = int(n)
    if n < 1 or n > max_players():
        raise DomainError(f"player count {n} outside supported range 1..{max_players()}")
    return n


def warn_dense(n: int) -> None:
    if n > DENSE_WARN_N:
        warnings.warn(f"dense storage for n={n} holds {3 ** n} values", RuntimeWarning, stacklevel=3)


# -- player sets as bit masks -------------------------------------------------

def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(players: Iterable[int], n: int) -> int:
    """Bit mask of a collection of 1-based players."""
    mask = 0
    for i in players:
        i = int(i)
        if not 1 <= i <= n:
            raise DomainError(f"player {i} not in 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def players_of(mask: int) -> tuple[int, ...]:
    """Ascending 1-based players in a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_players(mask: int) -> str:
    return ",".join(str(i) for i in players_of(mask))


def parse_players(text: str, n: int) -> int:
    text = text.strip()
    if not text:
        return 0
    try:
        players = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise DomainError(f"bad player list {text!r}") from exc
    if len(set(players)) != len(players):
        raise DomainError(f"repeated player in {text!r}")
    return mask_of(players, n)


# -- BiSet --------------------------------------------------------------------

@dataclass(frozen=True)
class BiSet:
    """A point (pos, neg) of Q(N); both sides are player masks."""

    pos: int
    neg: int
    n: int

    def __post_init__(self):
        check_n(self.n)
        full = full_mask(self.n)
        if self.pos < 0 or self.neg < 0 or self.pos & ~full or self.neg & ~full:
            raise DomainError(f"players outside 1..{self.n}")
        if self.pos & self.neg:
            raise DomainError(
                f"pos and neg overlap on players {format_players(self.pos & self.neg)}")

    @classmethod
    def of(cls, pos: Iterable[int] = (), neg: Iterable[int] = (), *, n: int) -> "BiSet":
        """Build from iterables of 1-based players: ``BiSet.of([1], [2, 3], n=3)``."""
        return cls(mask_of(pos, n), mask_of(neg, n), n)

    @classmethod
    def parse(cls, text: str, n: int) -> "BiSet":
        """Parse the ``"A|B"`` text form, e.g. ``"1,3|2"`` or ``"|"``."""
        if text.count("|") != 1:
            raise DomainError(f"expected exactly one '|' in {text!r}")
        left, right = text.split("|")
        return cls(parse_players(left, n), parse_players(right, n), n)

    def __str__(self) -> str:
        return f"{format_players(self.pos)}|{format_players(self.neg)}"

    @property
    def neutral(self) -> int:
        return full_mask(self.n) & ~(self.pos | self.neg)

    @property
    def index(self) -> int:
        return to_index(self)


def bottom(n: int) -> BiSet:
    return BiSet(0, full_mask(n), n)


def top(n: int) -> BiSet:
    return BiSet(full_mask(n), 0, n)


def origin(n: int) -> BiSet:
    return BiSet(0, 0, n)


def _same_n(*xs: BiSet) -> int:
    n = xs[0].n
    if any(x.n != n for x in xs):
        raise DomainError(f"mismatched player counts {[x.n for x in xs]}")
    return n


# -- ternary coding -----------------------------------------------------------

@lru_cache(maxsize=None)
def _pow3_of_mask(n: int) -> np.ndarray:
    """``t[mask] = sum of 3**(i-1) over players i in mask``."""
    t = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        t[1 << b:1 << (b + 1)] = t[:1 << b] + 3 ** b
    return t


@lru_cache(maxsize=None)
def index_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays ``(pos, neg)`` of masks for every ternary index 0..3**n-1."""
    size = 3 ** n
    digits = np.arange(size, dtype=np.int64)
    pos = np.zeros(size, dtype=np.int64)
    neg = np.zeros(size, dtype=np.int64)
    for b in range(n):
        d = digits % 3
        digits //= 3
        pos |= (d == 2).astype(np.int64) << b
        neg |= (d == 0).astype(np.int64) << b
    pos.flags.writeable = False
    neg.flags.writeable = False
    return pos, neg


def index_of_masks(pos, neg, n: int):
    """Ternary index of (pos, neg); works elementwise on integer arrays."""
    t = _pow3_of_mask(n)
    return (3 ** n - 1) // 2 + t[pos] - t[neg]


def to_index(x: BiSet) -> int:
    return int(index_of_masks(x.pos, x.neg, x.n))


def from_index(i: int, n: int) -> BiSet:
    n = check_n(n)
    if not 0 <= i < 3 ** n:
        raise DomainError(f"index {i} outside 0..{3 ** n - 1}")
    pos = neg = 0
    for b in range(n):
        i, d = divmod(i, 3)
        if d == 2:
            pos |= 1 << b
        elif d == 0:
            neg |= 1 << b
    return BiSet(pos, neg, n)


def enumerate_q(n: int) -> list[BiSet]:
    """All 3**n points of Q(N) in ternary-index order, from (∅,N) to (N,∅)."""
    n = check_n(n)
    pos, neg = index_tables(n)
    return [BiSet(int(a), int(b), n) for a, b in zip(pos, neg)]


# -- order and lattice operations ---------------------------------------------

def leq(x: BiSet, y: BiSet) -> bool:
    _same_n(x, y)
    return x.pos & ~y.pos == 0 and y.neg & ~x.neg == 0


def sup(x: BiSet, y: BiSet) -> BiSet:
    n = _same_n(x, y)
    return BiSet(x.pos | y.pos, x.neg & y.neg, n)


def inf(x: BiSet, y: BiSet) -> BiSet:
    n = _same_n(x, y)
    return BiSet(x.pos & y.pos, x.neg | y.neg, n)


def sup_all(xs: Iterable[BiSet], n: int) -> BiSet:
    """Supremum of a family; the empty family gives the bottom (∅,N)."""
    out = bottom(n)
    for x in xs:
        out = sup(out, x)
    return out


def bilbao_sup(x: BiSet, y: BiSet) -> BiSet:
    """The ⊔' operation of Bilbao et al.  Not a lattice join."""
    n = _same_n(x, y)
    a, b = x.pos | y.pos, x.neg | y.neg
    return BiSet(a & ~b, b & ~a, n)


def bilbao_inf(x: BiSet, y: BiSet) -> BiSet:
    n = _same_n(x, y)
    return BiSet(x.pos & y.pos, x.neg & y.neg, n)


def covers(y: BiSet, x: BiSet) -> bool:
    """True iff y covers x: exactly one score goes up by one step."""
    if not leq(x, y) or x == y:
        return False
    diff = (y.pos & ~x.pos) | (x.neg & ~y.neg)
    if popcount(diff) != 1:
        return False
    # a -1 -> +1 jump on the changed player is two steps, not a cover
    return not (diff & x.neg and diff & y.pos)


def lower_covers(x: BiSet) -> list[BiSet]:
    """Elements covered by x."""
    out = []
    for b in range(x.n):
        bit = 1 << b
        if x.pos & bit:
            out.append(BiSet(x.pos & ~bit, x.neg, x.n))
        elif not x.neg & bit:
            out.append(BiSet(x.pos, x.neg | bit, x.n))
    return out


# -- join-irreducibles, decompositions, layers --------------------------------

def positive_singleton(i: int, n: int) -> BiSet:
    """(i, i^c)."""
    bit = mask_of([i], n)
    return BiSet(bit, full_mask(n) & ~bit, n)


def negative_singleton(i: int, n: int) -> BiSet:
    """(∅, i^c)."""
    bit = mask_of([i], n)
    return BiSet(0, full_mask(n) & ~bit, n)


def join_irreducibles(n: int) -> list[BiSet]:
    n = check_n(n)
    return ([negative_singleton(i, n) for i in range(1, n + 1)]
            + [positive_singleton(i, n) for i in range(1, n + 1)])


def normal_decomposition(x: BiSet) -> frozenset[BiSet]:
    """All join-irreducibles below x."""
    return frozenset(j for j in join_irreducibles(x.n) if leq(j, x))


def irredundant_decomposition(x: BiSet) -> frozenset[BiSet]:
    n = x.n
    return frozenset([positive_singleton(i, n) for i in players_of(x.pos)]
                     + [negative_singleton(j, n) for j in players_of(x.neutral)])


def layer(x: BiSet) -> int:
    return x.n - popcount(x.neg)


def is_vertex(x: BiSet) -> bool:
    return x.pos | x.neg == full_mask(x.n)


# -- intervals ----------------------------------------------------------------

def interval_type(lo: BiSet, hi: BiSet) -> tuple[int, int]:
    """(k, l) such that [lo, hi] is isomorphic to 2^k x 3^l."""
    _same_n(lo, hi)
    if not leq(lo, hi):
        raise DomainError(f"{lo} is not below {hi}")
    c = lo.neg & ~hi.neg
    d = hi.pos & ~lo.pos
    return popcount(c ^ d), popcount(c & d)


def interval(lo: BiSet, hi: BiSet) -> Iterator[BiSet]:
    """All z with lo ⊑ z ⊑ hi, in ternary-index order."""
    interval_type(lo, hi)
    n = lo.n
    c = lo.neg & ~hi.neg
    d = hi.pos & ~lo.pos
    # per free player, the admissible (pos bit, neg bit) choices
    choices = []
    for b in range(n):
        bit = 1 << b
        if c & d & bit:
            choices.append([(0, bit), (0, 0), (bit, 0)])
        elif c & bit:
            choices.append([(0, bit), (0, 0)])
        elif d & bit:
            choices.append([(0, 0), (bit, 0)])
    # itertools.product varies the last factor fastest; reverse so the
    # lowest player is the fastest digit, matching the ternary order
    for combo in itertools.product(*reversed(choices)):
        pos, neg = lo.pos, lo.neg & ~c
        for p, q in combo:
            pos |= p
            neg |= q
        yield BiSet(pos, neg, n)


# -- alternative codings ------------------------------------------------------

def to_qstar(x: BiSet) -> tuple[int, int]:
    """(A, B) -> (A, N∖B); the order becomes the product order."""
    return x.pos, full_mask(x.n) & ~x.neg


def to_qstarstar(x: BiSet) -> tuple[int, int]:
    """(A, B) -> (A, N∖(A∪B))."""
    return x.pos, x.neutral


def leq_qstar(p: tuple[int, int], q: tuple[int, int]) -> bool:
    return p[0] & ~q[0] == 0 and p[1] & ~q[1] == 0


def leq_qstarstar(p: tuple[int, int], q: tuple[int, int]) -> bool:
    return p[0] & ~q[0] == 0 and p[1] & ~(q[0] | q[1]) == 0
