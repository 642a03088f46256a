"""Shapley values and interaction indices, classical and bi-cooperative.

Factorial weights are built as exact fractions and converted to float once
per term.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .derivative import DerivativeSpec, delta
from .game import BiGame, Capacity
from .lattice import (
    BiSet,
    DomainError,
    format_players,
    full_mask,
    index_of_masks,
    index_tables,
    interval,
    players_of,
    popcount,
    subsets,
)
from .moebius import MoebiusRep, classical_moebius, fast_moebius


@lru_cache(maxsize=None)
def shapley_weight(n: int, s: int) -> float:
    """(n-s-1)! s! / n!"""
    return float(Fraction(factorial(n - s - 1) * factorial(s), factorial(n)))


@lru_cache(maxsize=None)
def interaction_weight(m: int, k: int) -> float:
    """(m-k)! k! / (m+1)!  where m counts the free players."""
    return float(Fraction(factorial(m - k) * factorial(k), factorial(m + 1)))


def comb_lemma(n: int, k: int) -> Fraction:
    """Σ_{i=0}^{k} (n-i-1)! k! / (n! (k-i)!), which equals 1/(n-k)."""
    if not 0 <= k < n:
        raise DomainError(f"need 0 <= k < n, got n={n}, k={k}")
    return sum((Fraction(factorial(n - i - 1) * factorial(k), factorial(n) * factorial(k - i))
                for i in range(k + 1)), Fraction(0))


# -- classical games ----------------------------------------------------------

def shapley_classical(nu: Capacity) -> np.ndarray:
    n, full = nu.n, full_mask(nu.n)
    phi = np.zeros(n)
    for i in range(n):
        bit = 1 << i
        phi[i] = sum(shapley_weight(n, popcount(s)) * (nu.values[s | bit] - nu.values[s])
                     for s in subsets(full & ~bit))
    return phi


def interaction_classical(nu: Capacity, s_mask: int) -> float:
    """I(S) as a weighted sum of S-derivatives over T ⊆ N∖S."""
    n, full = nu.n, full_mask(nu.n)
    s = popcount(s_mask)
    total = 0.0
    for t_mask in subsets(full & ~s_mask):
        d = sum((-1) ** (s - popcount(k)) * nu.values[k | t_mask] for k in subsets(s_mask))
        total += interaction_weight(n - s, popcount(t_mask)) * d
    return total


def interaction_classical_moebius(nu: Capacity, s_mask: int) -> float:
    """I(S) = Σ_{T⊇S} m(T) / (|T|-|S|+1)."""
    m = classical_moebius(nu)
    full = full_mask(nu.n)
    return float(sum(m[s_mask | x] / (popcount(x) + 1) for x in subsets(full & ~s_mask)))


# -- bi-cooperative Shapley value ---------------------------------------------

@dataclass(frozen=True, eq=False)
class BiShapley:
    """left[i-1] = φ_{i,∅} (joining the defenders), right[i-1] = φ_{∅,i}."""

    left: np.ndarray
    right: np.ndarray

    @property
    def total(self) -> float:
        return float(self.left.sum() + self.right.sum())

    def as_dict(self) -> dict:
        return {"left": [float(x) for x in self.left], "right": [float(x) for x in self.right]}


def shapley_bi(v: BiGame) -> BiShapley:
    """Bi-Shapley value from marginal contributions along vertices."""
    n, full = v.n, full_mask(v.n)
    left, right = np.zeros(n), np.zeros(n)
    for i in range(n):
        bit = 1 << i
        for s in subsets(full & ~bit):
            w = shapley_weight(n, popcount(s))
            rest = full & ~(s | bit)
            left[i] += w * (v.at(s | bit, rest) - v.at(s, rest))
            right[i] += w * (v.at(s, rest) - v.at(s, rest | bit))
    return BiShapley(left, right)


def shapley_bi_moebius(m: MoebiusRep) -> BiShapley:
    """Bi-Shapley value as weighted sums of Möbius coefficients.

    Left: all (S,T) with i in S.  Right: all (S,T) with i outside S ∪ T.
    Both weighted by 1/(n - |T|).
    """
    n = m.n
    pos, neg = index_tables(n)
    tsize = np.array([popcount(b) for b in neg.tolist()])
    # |T| = n only at (∅,N), which enters neither sum
    w = m.coeffs / np.maximum(n - tsize, 1)
    left, right = np.zeros(n), np.zeros(n)
    for i in range(n):
        bit = 1 << i
        left[i] = w[(pos & bit) != 0].sum()
        right[i] = w[((pos | neg) & bit) == 0].sum()
    return BiShapley(left, right)


# -- bi-cooperative interaction -----------------------------------------------

def _check_pair(n: int, s_mask: int, t_mask: int) -> None:
    if s_mask & t_mask:
        raise DomainError(f"S and T overlap on {format_players(s_mask & t_mask)}")
    if (s_mask | t_mask) & ~full_mask(n):
        raise DomainError(f"players outside 1..{n}")


def interaction_bi(v: BiGame, s_mask: int, t_mask: int) -> float:
    """I_{S,T}: average of Δ_{S,T} v(K, N∖(K∪S)) over K ⊆ N∖(S∪T)."""
    n = v.n
    _check_pair(n, s_mask, t_mask)
    full = full_mask(n)
    free = full & ~(s_mask | t_mask)
    spec = DerivativeSpec(s_mask, t_mask, n)
    return float(sum(interaction_weight(popcount(free), popcount(k))
                     * delta(v, spec, BiSet(k, full & ~(k | s_mask), n))
                     for k in subsets(free)))


def interaction_bi_point(v: BiGame, x: BiSet) -> float:
    """I(S,T) in lattice-point notation: average of Δ_{(S,T)} v(K, N∖(K∪S)), K ⊆ T."""
    full = full_mask(v.n)
    spec = DerivativeSpec.from_point(x)
    t = popcount(x.neg)
    return float(sum(interaction_weight(t, popcount(k))
                     * delta(v, spec, BiSet(k, full & ~(k | x.pos), v.n))
                     for k in subsets(x.neg)))


def interaction_bi_moebius(m: MoebiusRep, s_mask: int, t_mask: int) -> float:
    """I_{S,T} = Σ m(S',T') / (n-s-t-t'+1) over [(S, N∖(S∪T)), (N∖T, ∅)]."""
    n = m.n
    _check_pair(n, s_mask, t_mask)
    full = full_mask(n)
    lo = BiSet(s_mask, full & ~(s_mask | t_mask), n)
    hi = BiSet(full & ~t_mask, 0, n)
    base = n - popcount(s_mask) - popcount(t_mask) + 1
    return float(sum(m[y] / (base - popcount(y.neg)) for y in interval(lo, hi)))


@dataclass(frozen=True, eq=False)
class InteractionRep:
    """All interaction indices, stored in lattice-point notation I(S,T)."""

    n: int
    values: np.ndarray

    def point(self, x: BiSet) -> float:
        return float(self.values[x.index])

    def st(self, s_mask: int, t_mask: int) -> float:
        """I_{S,T} = I(S, N∖(S∪T))."""
        _check_pair(self.n, s_mask, t_mask)
        full = full_mask(self.n)
        return float(self.values[index_of_masks(s_mask, full & ~(s_mask | t_mask), self.n)])


def interaction_table(v: BiGame | MoebiusRep) -> InteractionRep:
    """Every I(S,T) from one Möbius pass.

    A graded upward accumulation: along each player whose score is -1 at the
    target point, coefficients from scores 0 and +1 are pulled in and the
    grade (number of defeaters released) goes up by one.  The final value is
    Σ_grade A[grade] / (grade + 1).
    """
    m = fast_moebius(v) if isinstance(v, BiGame) else v
    n = m.n
    acc = np.zeros((n + 1,) + (3,) * n)
    acc[0] = m.coeffs.reshape((3,) * n)
    for i in range(1, n + 1):
        ax = 1 + n - i
        low = [slice(None)] * (n + 1)
        low[ax] = 0
        up = np.take(acc, [1], axis=ax).squeeze(ax) + np.take(acc, [2], axis=ax).squeeze(ax)
        low_vals = acc[tuple(low)]
        low_vals[1:] += up[:-1]
    grades = np.arange(n + 1).reshape((n + 1,) + (1,) * n)
    return InteractionRep(n, (acc / (grades + 1)).sum(axis=0).reshape(-1))


# -- reduced and restricted games ---------------------------------------------

def _compact(mask: int, keep: int) -> int:
    """Renumber the players of ``mask`` ⊆ ``keep`` onto 0..|keep|-1."""
    out, pos = 0, 0
    for b in range(keep.bit_length()):
        if keep >> b & 1:
            if mask >> b & 1:
                out |= 1 << pos
            pos += 1
    return out


def _expand(mask: int, keep: int) -> int:
    out, pos = 0, 0
    for b in range(keep.bit_length()):
        if keep >> b & 1:
            if mask >> pos & 1:
                out |= 1 << b
            pos += 1
    return out


@dataclass(frozen=True, eq=False)
class ReducedGame:
    """v_[K]: the players of K act as one player [K].

    New players are numbered by ascending smallest original member, so [K]
    takes the label of min(K).  ``groups[j]`` is the original mask behind new
    player j+1.
    """

    base: BiGame
    merged: int
    groups: tuple[int, ...]
    game: BiGame

    @property
    def merged_player(self) -> int:
        return self.groups.index(self.merged) + 1

    def lift(self, mask: int) -> int:
        """η_[K]: new-player mask to original mask."""
        return _lift(self.groups, mask)

    def project(self, mask: int) -> int:
        """Original mask (containing all or none of K) to new-player mask."""
        out = 0
        for j, g in enumerate(self.groups):
            if mask & g == g:
                out |= 1 << j
            elif mask & g:
                raise DomainError(f"{{{format_players(mask)}}} splits the merged coalition")
        return out


def _lift(groups, mask: int) -> int:
    out = 0
    for j, g in enumerate(groups):
        if mask >> j & 1:
            out |= g
    return out


def reduced_game(v: BiGame, k_mask: int) -> ReducedGame:
    full = full_mask(v.n)
    if k_mask == 0 or k_mask & ~full:
        raise DomainError("K must be a nonempty subset of N")
    groups = sorted([k_mask] + [1 << (i - 1) for i in players_of(full & ~k_mask)],
                    key=lambda g: g & -g)
    n2 = len(groups)
    pos, neg = index_tables(n2)
    vals = [v.at(_lift(groups, a), _lift(groups, b)) for a, b in zip(pos.tolist(), neg.tolist())]
    return ReducedGame(v, k_mask, tuple(groups), BiGame(n2, vals))


def _restricted(v: BiGame, k_mask: int, extra_neg: int) -> BiGame:
    full = full_mask(v.n)
    if k_mask == 0 or k_mask & ~full or k_mask == full:
        raise DomainError("K must be a nonempty proper subset of N")
    keep = full & ~k_mask
    n2 = popcount(keep)
    pos, neg = index_tables(n2)
    return BiGame(n2, [v.at(_expand(a, keep), _expand(b, keep) | extra_neg)
                       for a, b in zip(pos.tolist(), neg.tolist())])


def restricted_zero(v: BiGame, k_mask: int) -> BiGame:
    """v_0^{N∖K}(S,T) = v(S,T): players of K stay neutral.  Players renumbered."""
    return _restricted(v, k_mask, 0)


def restricted_minus(v: BiGame, k_mask: int) -> BiGame:
    """v_-^{N∖K}(S,T) = v(S, T∪K): players of K are defeaters.

    Its value at the origin is v(∅, K), so in general it is not a game; it is
    only consumed by the recursion check.
    """
    return _restricted(v, k_mask, k_mask)


@dataclass
class RecursionReport:
    lhs: float
    rhs_plus: float | None
    rhs_minus: float | None

    @property
    def residual(self) -> float:
        rs = [abs(self.lhs - r) for r in (self.rhs_plus, self.rhs_minus) if r is not None]
        return max(rs, default=0.0)


def recursion_check(v: BiGame, s_mask: int, t_mask: int) -> RecursionReport:
    """Evaluate both recursion formulas for I_{S,T} against the closed form."""
    n = v.n
    _check_pair(n, s_mask, t_mask)
    full = full_mask(n)
    lhs = interaction_bi(v, s_mask, t_mask)
    plus = minus = None
    if s_mask:
        red = reduced_game(v, s_mask)
        plus = interaction_bi(red.game, 1 << (red.merged_player - 1), red.project(t_mask))
        for k in subsets(s_mask):
            if k in (0, s_mask):
                continue
            keep = full & ~k
            plus -= interaction_bi(restricted_zero(v, k),
                                   _compact(s_mask & ~k, keep), _compact(t_mask, keep))
    if t_mask:
        red = reduced_game(v, t_mask)
        minus = interaction_bi(red.game, red.project(s_mask), 1 << (red.merged_player - 1))
        for k in subsets(t_mask):
            if k in (0, t_mask):
                continue
            keep = full & ~k
            minus -= interaction_bi(restricted_minus(v, k),
                                    _compact(s_mask, keep), _compact(t_mask & ~k, keep))
    return RecursionReport(lhs, plus, minus)
