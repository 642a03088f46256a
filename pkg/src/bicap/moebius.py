"""Möbius and zeta transforms on Q(N).

Three independent routes compute the same transform:

* ``moebius`` / ``zeta``: the explicit alternating sums over Q(N), O(5^n)
  resp. O(6^n) terms.  Reference path, refused above ``DIRECT_MAX_N``.
* ``transform_matrix``: the dense 3^n x 3^n matrix of Möbius function values.
* ``fast_moebius`` / ``fast_zeta``: one pass per player along its ternary
  digit, O(n 3^n).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .game import BiGame, Capacity, FormatError, conjugate
from .lattice import (
    BiSet,
    DomainError,
    check_n,
    from_index,
    full_mask,
    index_of_masks,
    index_tables,
    popcount,
    subsets,
    warn_dense,
)

DIRECT_MAX_N = 5
MATRIX_MAX_N = 8
ZERO_TOL = 1e-9

# Möbius function of the 3-chain -1 < 0 < 1, rows = upper element
GENERATOR = np.array([[1, 0, 0],
                      [-1, 1, 0],
                      [0, -1, 1]], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class MoebiusRep:
    """Möbius coefficients m(A, B) in ternary-index order."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", check_n(self.n))
        arr = np.array(self.coeffs, dtype=float)
        if arr.shape != (3 ** self.n,):
            raise FormatError(f"expected {3 ** self.n} coefficients, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def at(self, pos: int, neg: int) -> float:
        return float(self.coeffs[index_of_masks(pos, neg, self.n)])

    def __getitem__(self, x: BiSet) -> float:
        return float(self.coeffs[x.index])

    def support(self, tol: float = ZERO_TOL) -> list[tuple[BiSet, float]]:
        """Nonzero coefficients, sorted by ternary index."""
        return [(from_index(int(k), self.n), float(self.coeffs[k]))
                for k in np.nonzero(np.abs(self.coeffs) >= tol)[0]]


def mu(x: BiSet, y: BiSet) -> int:
    """Möbius function of Q(N) between x = (A, A') and y = (B, B')."""
    if x.n != y.n:
        raise DomainError(f"mismatched player counts {x.n} and {y.n}")
    below = x.pos & ~y.pos == 0 and y.neg & ~x.neg == 0
    if not below or x.neg & y.pos:
        return 0
    return -1 if (popcount(y.pos & ~x.pos) + popcount(x.neg & ~y.neg)) % 2 else 1


def _check_direct(n: int, allow_large: bool) -> None:
    if n > DIRECT_MAX_N and not allow_large:
        raise DomainError(
            f"direct transform refused for n={n} > {DIRECT_MAX_N}; "
            "use fast_moebius/fast_zeta or pass allow_large=True")


@lru_cache(maxsize=16)
def _moebius_terms(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(target, source, sign) for m(A,A') = Σ ±v(B,B'), B⊆A, A'⊆B'⊆A^c."""
    full = full_mask(n)
    pos, neg = index_tables(n)
    rows, cols, signs = [], [], []
    for k, (a, a2) in enumerate(zip(pos.tolist(), neg.tolist())):
        free = full & ~a & ~a2
        for b in subsets(a):
            sb = popcount(a & ~b)
            for extra in subsets(free):
                rows.append(k)
                cols.append(int(index_of_masks(b, a2 | extra, n)))
                signs.append(-1 if (sb + popcount(extra)) % 2 else 1)
    return np.array(rows), np.array(cols), np.array(signs, dtype=float)


@lru_cache(maxsize=16)
def _zeta_terms(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(target, source) for v(A,A') = Σ m(B,B') over (B,B') ⊑ (A,A')."""
    full = full_mask(n)
    pos, neg = index_tables(n)
    rows, cols = [], []
    for k, (a, a2) in enumerate(zip(pos.tolist(), neg.tolist())):
        for b in subsets(a):
            for extra in subsets(full & ~b & ~a2):
                rows.append(k)
                cols.append(int(index_of_masks(b, a2 | extra, n)))
    return np.array(rows), np.array(cols)


def moebius(v: BiGame, allow_large: bool = False) -> MoebiusRep:
    """Möbius transform by the explicit alternating sum."""
    _check_direct(v.n, allow_large)
    rows, cols, signs = _moebius_terms(v.n)
    m = np.zeros(3 ** v.n)
    np.add.at(m, rows, signs * v.values[cols])
    return MoebiusRep(v.n, m)


def zeta(m: MoebiusRep, allow_large: bool = False) -> BiGame:
    """Sum of Möbius coefficients over each principal ideal."""
    _check_direct(m.n, allow_large)
    rows, cols = _zeta_terms(m.n)
    v = np.zeros(3 ** m.n)
    np.add.at(v, rows, m.coeffs[cols])
    return BiGame(m.n, v)


def transform_matrix(n: int) -> np.ndarray:
    """T with T[y, x] = mu(x, y) in ternary order, so that m = T @ v."""
    n = check_n(n)
    if n > MATRIX_MAX_N:
        raise DomainError(f"transform matrix refused for n={n} > {MATRIX_MAX_N}; use fast_moebius")
    size = 3 ** n
    idx = np.arange(size)
    out = np.ones((size, size), dtype=np.int8)
    for b in range(n):
        d = (idx // 3 ** b) % 3
        out *= GENERATOR[d[:, None], d[None, :]].astype(np.int8)
    return out


def _digit_view(values: np.ndarray, n: int) -> np.ndarray:
    # C order: player i (1-based) is axis n - i
    return np.array(values, dtype=float).reshape((3,) * n)


def fast_moebius(v: BiGame) -> MoebiusRep:
    """Per-digit Möbius transform: x[0], x[1]-x[0], x[2]-x[1] along each player."""
    n = v.n
    warn_dense(n)
    t = _digit_view(v.values, n)
    for i in range(1, n + 1):
        t = np.diff(t, axis=n - i, prepend=0.0)
    return MoebiusRep(n, t.reshape(-1))


def fast_zeta(m: MoebiusRep) -> BiGame:
    """Per-digit zeta transform: running sums along each player's digit."""
    n = m.n
    warn_dense(n)
    t = _digit_view(m.coeffs, n)
    for i in range(1, n + 1):
        t = np.cumsum(t, axis=n - i)
    return BiGame(n, t.reshape(-1))


def k_additivity(m: MoebiusRep, tol: float = ZERO_TOL) -> int:
    """Smallest k with m(A, B) = 0 whenever |B| < n - k."""
    _, neg = index_tables(m.n)
    nonzero = np.abs(m.coeffs) >= tol
    if not nonzero.any():
        return 0
    neg_sizes = np.array([popcount(b) for b in neg[nonzero].tolist()])
    return int(m.n - neg_sizes.min())


# -- classical transforms on 2^N ----------------------------------------------

def _subset_pass(values: np.ndarray, n: int, sign: float) -> np.ndarray:
    out = np.array(values, dtype=float)
    for b in range(n):
        masks = np.arange(1 << n)
        hi = masks[(masks >> b) & 1 == 1]
        out[hi] += sign * out[hi & ~(1 << b)]
    return out


def classical_moebius(nu: Capacity) -> np.ndarray:
    """m(A) = Σ_{B⊆A} (-1)^{|A∖B|} ν(B)."""
    return _subset_pass(nu.values, nu.n, -1.0)


def classical_zeta(m, n: int) -> Capacity:
    """ν(A) = Σ_{B⊆A} m(B)."""
    return Capacity(n, _subset_pass(np.asarray(m, dtype=float), n, 1.0))


def co_moebius(nu: Capacity) -> np.ndarray:
    """m̌(A) = Σ_{B⊇N∖A} (-1)^{|N∖B|} ν(B), by direct summation."""
    n = nu.n
    full = full_mask(n)
    out = np.zeros(1 << n)
    for a in range(1 << n):
        comp = full & ~a
        out[a] = sum((-1) ** popcount(full & ~(comp | x)) * nu.values[comp | x]
                     for x in subsets(a))
    return out


def moebius_cpt(nu1: Capacity, nu2: Capacity) -> MoebiusRep:
    """Möbius transform of v(A,B) = ν1(A) - ν2(B) in closed form.

    Nonzero only at the vertices (A, N∖A), A ≠ ∅, where it equals m^{ν1}(A),
    and on the negative axis (∅, B), where it equals m^{ν̄2}(N∖B) for B ≠ N
    and -ν2(N) = -1 at the bottom.
    """
    if nu1.n != nu2.n:
        raise DomainError(f"mismatched player counts {nu1.n} and {nu2.n}")
    n = nu1.n
    full = full_mask(n)
    m1 = classical_moebius(nu1)
    m2bar = classical_moebius(conjugate(nu2))
    masks = np.arange(1 << n)
    out = np.zeros(3 ** n)
    nonempty = masks[1:]
    out[index_of_masks(nonempty, full & ~nonempty, n)] = m1[nonempty]
    proper = masks[:-1]
    out[index_of_masks(np.zeros_like(proper), proper, n)] = m2bar[full & ~proper]
    out[0] = -nu2.values[full]
    return MoebiusRep(n, out)
