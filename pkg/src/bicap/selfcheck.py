"""Seeded oracle suite and timing benchmark behind the ``selfcheck`` and ``bench`` verbs."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import lattice as lat
from .derivative import (
    DerivativeSpec,
    delta,
    delta_from_moebius,
    moebius_via_derivative,
    valid_points,
)
from .game import make_cpt, random_bicapacity, random_capacity, random_game
from .indices import (
    comb_lemma,
    interaction_bi,
    interaction_bi_moebius,
    interaction_table,
    recursion_check,
    shapley_bi,
    shapley_bi_moebius,
)
from .moebius import (
    DIRECT_MAX_N,
    MATRIX_MAX_N,
    fast_moebius,
    fast_zeta,
    moebius,
    moebius_cpt,
    transform_matrix,
    zeta,
)

TOL = 1e-9


@dataclass
class SelfCheckConfig:
    n: int = 3
    seed: int = 42
    trials: int = 20


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {self.detail}".rstrip()


@dataclass
class SelfCheckReport:
    config: SelfCheckConfig
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> dict:
        return {
            "n": self.config.n, "seed": self.config.seed, "trials": self.config.trials,
            "passed": self.passed,
            "results": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                        for r in self.results],
        }


def _err(detail: float) -> str:
    return f"max_err={detail:.3e}"


def _lattice_laws(n: int, rng) -> CheckResult:
    pts = lat.enumerate_q(n)
    triples = itertools.product(pts, repeat=3)
    if len(pts) ** 3 > 20000:
        triples = (tuple(pts[k] for k in rng.integers(len(pts), size=3)) for _ in range(20000))
    for x, y, z in triples:
        ok = (lat.sup(x, y) == lat.sup(y, x) and lat.inf(x, y) == lat.inf(y, x)
              and lat.sup(x, lat.sup(y, z)) == lat.sup(lat.sup(x, y), z)
              and lat.inf(x, lat.sup(x, y)) == x and lat.sup(x, lat.inf(x, y)) == x
              and lat.inf(x, lat.sup(y, z)) == lat.sup(lat.inf(x, y), lat.inf(x, z)))
        if not ok:
            return CheckResult("lattice_laws", False, f"fails at {x}, {y}, {z}")
    return CheckResult("lattice_laws", True)


def run_selfcheck(cfg: SelfCheckConfig) -> SelfCheckReport:
    n = lat.check_n(cfg.n)
    rng = np.random.default_rng(cfg.seed)
    report = SelfCheckReport(cfg)
    add = report.results.append

    add(CheckResult("index_bijection", all(
        lat.from_index(x.index, n) == x for x in lat.enumerate_q(n))))
    add(_lattice_laws(n, rng))
    add(CheckResult("birkhoff", all(
        lat.sup_all(lat.normal_decomposition(x), n) == x
        == lat.sup_all(lat.irredundant_decomposition(x), n) for x in lat.enumerate_q(n))))

    direct = n <= DIRECT_MAX_N
    err_fast = err_inv = err_mat = err_norm = err_cpt = 0.0
    for _ in range(cfg.trials):
        v = random_game(n, rng)
        mf = fast_moebius(v)
        err_inv = max(err_inv, np.abs(fast_zeta(mf).values - v.values).max())
        if direct:
            md = moebius(v)
            err_fast = max(err_fast, np.abs(md.coeffs - mf.coeffs).max())
            err_inv = max(err_inv, np.abs(zeta(md).values - v.values).max())
        if n <= min(MATRIX_MAX_N, 6):
            err_mat = max(err_mat, np.abs(transform_matrix(n) @ v.values - mf.coeffs).max())
        b = fast_moebius(random_bicapacity(n, rng)).coeffs
        pos, _ = lat.index_tables(n)
        err_norm = max(err_norm, abs(b[0] + 1), abs(b.sum() - 1), abs(b[pos == 0].sum()))
        nu1, nu2 = random_capacity(n, rng), random_capacity(n, rng)
        err_cpt = max(err_cpt, np.abs(moebius_cpt(nu1, nu2).coeffs
                                      - fast_moebius(make_cpt(nu1, nu2)).coeffs).max())
    if direct:
        add(CheckResult("fast_vs_direct_moebius", err_fast < 1e-12, _err(err_fast)))
    add(CheckResult("zeta_inverts_moebius", err_inv < TOL, _err(err_inv)))
    if n <= min(MATRIX_MAX_N, 6):
        add(CheckResult("matrix_vs_fast_moebius", err_mat < 1e-12, _err(err_mat)))
    add(CheckResult("normalization_identities", err_norm < TOL, _err(err_norm)))
    add(CheckResult("cpt_moebius_closed_form", err_cpt < TOL, _err(err_cpt)))

    if n <= 4:
        v = random_game(n, rng)
        m = fast_moebius(v)
        err = np.abs(moebius_via_derivative(v).coeffs - m.coeffs).max()
        full = lat.full_mask(n)
        for x in lat.enumerate_q(n):
            spec = DerivativeSpec(x.pos, x.neg, n)
            for at in valid_points(spec):
                err = max(err, abs(delta(v, spec, at) - delta_from_moebius(m, spec, at)))
        add(CheckResult("derivative_vs_moebius", err < TOL, _err(err)))

        sh, shm = shapley_bi(v), shapley_bi_moebius(m)
        err = max(np.abs(sh.left - shm.left).max(), np.abs(sh.right - shm.right).max())
        add(CheckResult("shapley_vertex_formula_vs_moebius", err < TOL, _err(err)))
        eff = abs(sh.total - (v.at(full, 0) - v.at(0, full)))
        add(CheckResult("shapley_efficiency", eff < TOL, _err(eff)))

        table = interaction_table(m)
        err = res = 0.0
        for x in lat.enumerate_q(n):
            s_mask, t_mask = x.pos, x.neutral
            direct_val = interaction_bi(v, s_mask, t_mask)
            err = max(err, abs(direct_val - interaction_bi_moebius(m, s_mask, t_mask)),
                      abs(direct_val - table.point(x)))
            res = max(res, recursion_check(v, s_mask, t_mask).residual)
        add(CheckResult("interaction_routes_agree", err < TOL, _err(err)))
        add(CheckResult("interaction_recursion", res < TOL, _err(res)))

    ok = all(comb_lemma(nn, k) == Fraction(1, nn - k) for nn in range(1, 13) for k in range(nn))
    add(CheckResult("comb_lemma", ok))
    return report


def bench(n: int, trials: int = 3, seed: int = 0) -> dict:
    """Time the transform paths at ``n``; machine-readable result."""
    n = lat.check_n(n)
    rng = np.random.default_rng(seed)
    v = random_game(n, rng)
    out: dict = {"n": n, "trials": trials, "seed": seed, "points": 3 ** n}

    def best(fn):
        times = []
        for _ in range(trials):
            t0 = time.perf_counter()
            res = fn()
            times.append(time.perf_counter() - t0)
        return min(times), res

    t, back = best(lambda: fast_zeta(fast_moebius(v)))
    out["fast_roundtrip_s"] = t
    out["fast_roundtrip_max_err"] = float(np.abs(back.values - v.values).max())
    if n <= DIRECT_MAX_N:
        t, md = best(lambda: moebius(v))
        out["direct_moebius_s"] = t
        out["direct_vs_fast_max_err"] = float(np.abs(md.coeffs - fast_moebius(v).coeffs).max())
    else:
        out["direct_moebius_s"] = f"refused: n > {DIRECT_MAX_N}"
    if n <= MATRIX_MAX_N:
        t, mat = best(lambda: transform_matrix(n))
        out["matrix_build_s"] = t
    else:
        out["matrix_build_s"] = f"refused: n > {MATRIX_MAX_N}"
    t, _ = best(lambda: interaction_table(v))
    out["interaction_table_s"] = t
    return out
