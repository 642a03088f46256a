"""Classical capacities and bi-cooperative games on Q(N)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import (
    BiSet,
    DomainError,
    check_n,
    format_players,
    from_index,
    full_mask,
    index_of_masks,
    index_tables,
    mask_of,
    popcount,
    warn_dense,
)

TOL = 1e-12


class FormatError(ValueError):
    """Input data has the wrong shape or encoding."""


def _as_values(values, length: int) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != length:
        raise FormatError(f"expected {length} values, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Capacity:
    """A set function on 2^N stored densely by bit mask (player i at bit i-1)."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", check_n(self.n))
        object.__setattr__(self, "values", _as_values(self.values, 1 << self.n))

    def __call__(self, mask: int) -> float:
        return float(self.values[mask])

    @property
    def is_game(self) -> bool:
        return bool(abs(self.values[0]) <= TOL)

    @property
    def is_monotone(self) -> bool:
        v = self.values
        for b in range(self.n):
            lo = np.arange(1 << self.n)
            lo = lo[(lo >> b) & 1 == 0]
            if np.any(v[lo | (1 << b)] < v[lo] - TOL):
                return False
        return True

    @property
    def is_capacity(self) -> bool:
        return self.is_game and self.is_monotone

    @property
    def is_normalized(self) -> bool:
        return self.is_game and bool(abs(self.values[-1] - 1.0) <= TOL)


@dataclass(frozen=True, eq=False)
class BiGame:
    """A real function on Q(N), stored densely in ternary-index order."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", check_n(self.n))
        warn_dense(self.n)
        object.__setattr__(self, "values", _as_values(self.values, 3 ** self.n))

    def at(self, pos: int, neg: int) -> float:
        """Value at the point given by two player masks."""
        if pos & neg:
            raise DomainError(f"({format_players(pos)}|{format_players(neg)}) is not in Q(N)")
        return float(self.values[index_of_masks(pos, neg, self.n)])

    def __getitem__(self, x: BiSet) -> float:
        if x.n != self.n:
            raise DomainError(f"point has n={x.n}, game has n={self.n}")
        return float(self.values[x.index])

    @property
    def is_capacity(self) -> bool:
        return validate(self).is_bicapacity

    @property
    def is_normalized(self) -> bool:
        return validate(self).is_normalized

    @classmethod
    def from_function(cls, n: int, fn) -> "BiGame":
        """Tabulate ``fn(pos_mask, neg_mask)`` over Q(N)."""
        pos, neg = index_tables(n)
        return cls(n, [fn(int(a), int(b)) for a, b in zip(pos, neg)])


# -- validation ---------------------------------------------------------------

@dataclass
class ValidationReport:
    is_game: bool
    is_bicapacity: bool
    is_normalized: bool
    violations: list[tuple[BiSet, BiSet]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "is_game": self.is_game,
            "is_bicapacity": self.is_bicapacity,
            "is_normalized": self.is_normalized,
            "violations": [[str(x), str(y)] for x, y in self.violations],
        }


def covering_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays (lower, upper) of every covering pair of Q(N)."""
    size = 3 ** n
    idx = np.arange(size)
    lows, ups = [], []
    for b in range(n):
        digit = (idx // 3 ** b) % 3
        lo = idx[digit < 2]
        lows.append(lo)
        ups.append(lo + 3 ** b)
    return np.concatenate(lows), np.concatenate(ups)


def validate(v: BiGame, tol: float = TOL) -> ValidationReport:
    """Check the game axiom, monotonicity along covers, and normalization.

    ``v(∅,∅) != 0`` is reported as a violation pairing the origin with itself.
    """
    vals = v.values
    size = 3 ** v.n
    if vals.shape != (size,):
        raise FormatError(f"expected {size} values, got {vals.shape}")
    mid = (size - 1) // 2
    is_game = bool(abs(vals[mid]) <= tol)
    lo, up = covering_pairs(v.n)
    bad = np.nonzero(vals[up] < vals[lo] - tol)[0]
    violations = [(from_index(int(lo[k]), v.n), from_index(int(up[k]), v.n)) for k in bad]
    if not is_game:
        o = from_index(mid, v.n)
        violations.insert(0, (o, o))
    is_norm = is_game and bool(abs(vals[-1] - 1.0) <= tol and abs(vals[0] + 1.0) <= tol)
    return ValidationReport(is_game, is_game and len(bad) == 0, is_norm, violations)


# -- classical capacities -----------------------------------------------------

def unanimity(n: int, b_mask: int) -> Capacity:
    """u_B(A) = 1 iff A ⊇ B.  ``u_∅`` is not a game."""
    masks = np.arange(1 << check_n(n))
    return Capacity(n, ((masks & b_mask) == b_mask).astype(float))


def conjugate(nu: Capacity) -> Capacity:
    """ν̄(A) = 1 - ν(N∖A); defined for normalized capacities."""
    if not nu.is_normalized:
        raise DomainError("conjugate requires a normalized capacity")
    masks = np.arange(1 << nu.n)
    return Capacity(nu.n, 1.0 - nu.values[full_mask(nu.n) & ~masks])


def additive_capacity(weights) -> Capacity:
    w = np.asarray(weights, dtype=float)
    n = len(w)
    masks = np.arange(1 << n)
    bits = (masks[:, None] >> np.arange(n)) & 1
    return Capacity(n, bits @ w)


# -- bi-games -----------------------------------------------------------------

def make_cpt(nu1: Capacity, nu2: Capacity) -> BiGame:
    """v(A, B) = ν1(A) - ν2(B)."""
    if nu1.n != nu2.n:
        raise DomainError(f"mismatched player counts {nu1.n} and {nu2.n}")
    pos, neg = index_tables(nu1.n)
    return BiGame(nu1.n, nu1.values[pos] - nu2.values[neg])


def make_additive(w1, w2) -> BiGame:
    w1 = np.asarray(w1, dtype=float)
    w2 = np.asarray(w2, dtype=float)
    if w1.shape != w2.shape or w1.ndim != 1:
        raise DomainError("weight vectors must have the same length n")
    return make_cpt(additive_capacity(w1), additive_capacity(w2))


def bi_unanimity(center: BiSet) -> BiGame:
    """Indicator of the up-set of ``center``.

    Whenever the center has an empty defender part it lies below (∅,∅), the
    result takes value 1 at the origin and is not a bi-cooperative game.
    """
    pos, neg = index_tables(center.n)
    up = ((pos & center.pos) == center.pos) & ((neg & ~center.neg) == 0)
    return BiGame(center.n, up.astype(float))


def embed_capacity(nu: Capacity, mode: str = "defender") -> BiGame:
    """Bi-game that sees only one side: v(S,T)=ν(S) or v(S,T)=ν(N∖T).

    The defeater-only embedding has v(∅,∅) = ν(N).
    """
    pos, neg = index_tables(nu.n)
    if mode == "defender":
        return BiGame(nu.n, nu.values[pos])
    if mode == "defeater":
        return BiGame(nu.n, nu.values[full_mask(nu.n) & ~neg])
    raise DomainError(f"mode must be 'defender' or 'defeater', got {mode!r}")


def ternary_voting_check(v: BiGame, exempt_origin: bool = True, tol: float = TOL) -> bool:
    """True iff every value is ±1 (the origin is skipped when exempted)."""
    vals = np.array(v.values)
    if exempt_origin:
        vals = np.delete(vals, (3 ** v.n - 1) // 2)
    return bool(np.all(np.abs(np.abs(vals) - 1.0) <= tol))


def majority_voting_game(n: int) -> BiGame:
    """Ternary majority rule: +1 if more yes than no votes, else -1."""
    def rule(a, b):
        if a == 0 and b == 0:
            return 0.0
        return 1.0 if popcount(a) > popcount(b) else -1.0
    return BiGame.from_function(n, rule)


def vertex_capacity(v: BiGame) -> Capacity:
    """The classical game S -> v(S, N∖S) read off the vertices."""
    masks = np.arange(1 << v.n)
    return Capacity(v.n, v.values[index_of_masks(masks, full_mask(v.n) & ~masks, v.n)])


def permute(v: BiGame, sigma) -> BiGame:
    """The game v∘σ^{-1}, where ``sigma[i-1]`` is the image of player i."""
    n = v.n
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{n}")

    def image(mask):
        return mask_of([sigma[i - 1] for i in range(1, n + 1) if mask >> (i - 1) & 1], n)

    pos, neg = index_tables(n)
    out = np.empty(3 ** n)
    for k, (a, b) in enumerate(zip(pos, neg)):
        out[index_of_masks(image(int(a)), image(int(b)), n)] = v.values[k]
    return BiGame(n, out)


# -- seeded generators --------------------------------------------------------

def _ranked_monotone(base: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Monotone values on the product of n chains of length ``base``.

    Each point draws rank + uniform, where rank is its digit sum, and then
    takes the max over its down-set.  The rank offset keeps upper points from
    all collapsing onto the same early maximum.
    """
    shape = (base,) * n
    rank = np.indices(shape).sum(axis=0)
    cube = rank + rng.random(shape)
    for axis in range(n):
        cube = np.maximum.accumulate(cube, axis=axis)
    return cube.reshape(-1)


def random_capacity(n: int, rng: np.random.Generator) -> Capacity:
    """Normalized capacity on 2^N with no fixed algebraic structure."""
    r = _ranked_monotone(2, check_n(n), rng)
    return Capacity(n, (r - r[0]) / (r[-1] - r[0]))


def random_bicapacity(n: int, rng: np.random.Generator) -> BiGame:
    """Normalized bi-capacity: monotone draws shifted so the origin is 0.

    Positives are scaled by the top value and negatives by the bottom one;
    both maps preserve order.
    """
    r = _ranked_monotone(3, check_n(n), rng)
    r = r - r[(3 ** n - 1) // 2]
    return BiGame(n, np.where(r > 0, r / r[-1], r / -r[0]))


def random_game(n: int, rng: np.random.Generator) -> BiGame:
    """Bi-cooperative game with standard normal values and v(∅,∅) = 0."""
    vals = rng.standard_normal(3 ** n)
    vals[(3 ** n - 1) // 2] = 0.0
    return BiGame(n, vals)
