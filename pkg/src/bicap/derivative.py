"""Derivatives of bi-cooperative games.

Two notations coexist.  ``DerivativeSpec(S, T)`` is the defender/defeater
form Δ_{S,T}: add S to the defenders, withdraw T from the defeaters.  The
lattice-point form Δ_{(S,T)} is the same operator as Δ_{S, N∖(S∪T)}; use
``DerivativeSpec.from_point`` to go from one to the other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .game import BiGame, Capacity
from .lattice import (
    BiSet,
    DomainError,
    format_players,
    full_mask,
    index_tables,
    interval,
    mask_of,
    players_of,
    popcount,
    subsets,
)
from .moebius import MoebiusRep


@dataclass(frozen=True)
class DerivativeSpec:
    s_set: int
    t_set: int
    n: int

    def __post_init__(self):
        if self.s_set & self.t_set:
            raise DomainError(
                f"S and T overlap on {format_players(self.s_set & self.t_set)}")
        if (self.s_set | self.t_set) & ~full_mask(self.n):
            raise DomainError(f"players outside 1..{self.n}")

    @classmethod
    def of(cls, s=(), t=(), *, n: int) -> "DerivativeSpec":
        return cls(mask_of(s, n), mask_of(t, n), n)

    @classmethod
    def from_point(cls, x: BiSet) -> "DerivativeSpec":
        """Δ_{(S,T)} as Δ_{S, N∖(S∪T)}."""
        return cls(x.pos, x.neutral, x.n)

    def point(self) -> BiSet:
        return BiSet(self.s_set, full_mask(self.n) & ~(self.s_set | self.t_set), self.n)


def _check_at(spec: DerivativeSpec, at: BiSet) -> None:
    if at.n != spec.n:
        raise DomainError(f"point has n={at.n}, derivative has n={spec.n}")
    if (at.pos | at.neg) & spec.s_set:
        raise DomainError(f"{at} is not in Q(N∖S) for S={{{format_players(spec.s_set)}}}")
    if spec.t_set & ~at.neg:
        raise DomainError(f"{at} does not have L ⊇ T for T={{{format_players(spec.t_set)}}}")


def valid_points(spec: DerivativeSpec):
    """Every (K, L) in Q(N∖S) with L ⊇ T, in ternary-index order."""
    free = full_mask(spec.n) & ~(spec.s_set | spec.t_set)
    lo = BiSet(0, spec.t_set | free, spec.n)
    hi = BiSet(free, spec.t_set, spec.n)
    return interval(lo, hi)


def delta_left(v: BiGame, i: int, at: BiSet) -> float:
    """v(S∪i, T) - v(S, T) for (S, T) in Q(N∖i)."""
    spec = DerivativeSpec.of([i], n=v.n)
    _check_at(spec, at)
    return v.at(at.pos | spec.s_set, at.neg) - v.at(at.pos, at.neg)


def delta_right(v: BiGame, i: int, at: BiSet) -> float:
    """v(S, T∖i) - v(S, T) for i in T."""
    spec = DerivativeSpec.of(t=[i], n=v.n)
    _check_at(spec, at)
    return v.at(at.pos, at.neg & ~spec.t_set) - v.at(at.pos, at.neg)


def delta(v: BiGame, spec: DerivativeSpec, at: BiSet) -> float:
    """Δ_{S,T} v(K, L) as the alternating sum over S' ⊆ S, T' ⊆ T."""
    _check_at(spec, at)
    s, t = popcount(spec.s_set), popcount(spec.t_set)
    total = 0.0
    for s2 in subsets(spec.s_set):
        for t2 in subsets(spec.t_set):
            sign = -1.0 if (s - popcount(s2) + t - popcount(t2)) % 2 else 1.0
            total += sign * v.at(at.pos | s2, at.neg & ~t2)
    return total


def delta_recursive(v: BiGame, spec: DerivativeSpec, at: BiSet,
                    order: Sequence[tuple[str, int]] | None = None) -> float:
    """Δ_{S,T} by peeling one left or right derivative at a time.

    ``order`` lists ``("left", i)`` / ``("right", j)`` steps, innermost first;
    it must cover S and T exactly.
    """
    _check_at(spec, at)
    if order is None:
        order = ([("left", i) for i in players_of(spec.s_set)]
                 + [("right", j) for j in players_of(spec.t_set)])
    lefts = mask_of([i for side, i in order if side == "left"], v.n)
    rights = mask_of([j for side, j in order if side == "right"], v.n)
    if len(order) != popcount(spec.s_set) + popcount(spec.t_set) \
            or lefts != spec.s_set or rights != spec.t_set:
        raise DomainError("elimination order does not match the derivative")
    return _peel(v, list(order), at.pos, at.neg)


def _peel(v: BiGame, order: list, k: int, l: int) -> float:
    if not order:
        return v.at(k, l)
    side, i = order[-1]
    bit = 1 << (i - 1)
    rest = order[:-1]
    if side == "left":
        return _peel(v, rest, k | bit, l) - _peel(v, rest, k, l)
    return _peel(v, rest, k, l & ~bit) - _peel(v, rest, k, l)


def delta_from_moebius(m: MoebiusRep, spec: DerivativeSpec, at: BiSet) -> float:
    """Δ_{S,T} v(K, L) as the sum of m over [(S, N∖(S∪T)), (S∪K, L∖T)]."""
    _check_at(spec, at)
    lo = spec.point()
    hi = BiSet(spec.s_set | at.pos, at.neg & ~spec.t_set, m.n)
    return float(sum(m[x] for x in interval(lo, hi)))


def moebius_via_derivative(v: BiGame) -> MoebiusRep:
    """m(S, T) = Δ_{(S,T)} v(∅, N∖S) at every point of Q(N)."""
    full = full_mask(v.n)
    pos, neg = index_tables(v.n)
    out = np.empty(3 ** v.n)
    for k, (a, b) in enumerate(zip(pos.tolist(), neg.tolist())):
        x = BiSet(a, b, v.n)
        out[k] = delta(v, DerivativeSpec.from_point(x), BiSet(0, full & ~a, v.n))
    return MoebiusRep(v.n, out)


def classical_delta(nu: Capacity, s_mask: int, t_mask: int) -> float:
    """Δ_S ν(T) = Σ_{L⊆S} (-1)^{|S∖L|} ν(L ∪ T), for T ⊆ N∖S."""
    if s_mask & t_mask:
        raise DomainError("T must be disjoint from S")
    s = popcount(s_mask)
    return float(sum((-1) ** (s - popcount(sub)) * nu.values[sub | t_mask]
                     for sub in subsets(s_mask)))


def classical_delta_recursive(nu: Capacity, s_mask: int, t_mask: int) -> float:
    """Δ_S ν(T) via Δ_i(Δ_{S∖i} ν), peeling the highest player first."""
    if s_mask & t_mask:
        raise DomainError("T must be disjoint from S")
    if s_mask == 0:
        return float(nu.values[t_mask])
    bit = 1 << (s_mask.bit_length() - 1)
    rest = s_mask & ~bit
    return (classical_delta_recursive(nu, rest, t_mask | bit)
            - classical_delta_recursive(nu, rest, t_mask))
