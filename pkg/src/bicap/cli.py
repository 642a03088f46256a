"""Command-line front end.

Exit status: 0 on success, 1 when a validation or self-check fails, 2 on
malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .derivative import DerivativeSpec, delta
from .game import BiGame, Capacity, FormatError, validate
from .indices import (
    interaction_bi,
    interaction_table,
    shapley_bi,
    shapley_bi_moebius,
    shapley_classical,
)
from .lattice import BiSet, DomainError, enumerate_q, layer, parse_players
from .moebius import DIRECT_MAX_N, MoebiusRep, fast_moebius, fast_zeta, k_additivity, moebius, zeta
from .selfcheck import SelfCheckConfig, bench, run_selfcheck

EXIT_OK, EXIT_INVALID, EXIT_FORMAT = 0, 1, 2


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load_bigame(path) -> BiGame:
    obj = io.load(path)
    if not isinstance(obj, BiGame):
        raise FormatError(f"{path}: expected kind 'bigame', got {io.to_document(obj)['kind']!r}")
    return obj


def _table(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows)


def cmd_validate(args) -> int:
    obj = io.load(args.game)
    if isinstance(obj, Capacity):
        report = {"is_game": obj.is_game, "is_capacity": obj.is_capacity,
                  "is_normalized": obj.is_normalized}
        ok = obj.is_capacity
    elif isinstance(obj, MoebiusRep):
        raise FormatError("validate expects a bigame or capacity document")
    else:
        rep = validate(obj)
        report = rep.as_dict()
        ok = rep.is_bicapacity
    _emit(report)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_info(args) -> int:
    v = _load_bigame(args.game)
    rep = validate(v)
    m = fast_moebius(v)
    layers = [0] * (v.n + 1)
    for x in enumerate_q(v.n):
        layers[layer(x)] += 1
    _emit({"n": v.n, "points": 3 ** v.n, "is_game": rep.is_game,
           "is_bicapacity": rep.is_bicapacity, "is_normalized": rep.is_normalized,
           "k_additivity": k_additivity(m), "layer_sizes": layers,
           "moebius_support": len(m.support())})
    return EXIT_OK


def cmd_moebius(args) -> int:
    v = _load_bigame(args.game)
    m = moebius(v) if args.direct else fast_moebius(v)
    if args.json:
        print(json.dumps(io.to_document(m, args.encoding), indent=2))
    else:
        for x, val in m.support(args.tol):
            print(f"{x}: {val!r}")
    return EXIT_OK


def cmd_zeta(args) -> int:
    m = io.load(args.moebius)
    if not isinstance(m, MoebiusRep):
        raise FormatError(f"{args.moebius}: expected kind 'moebius'")
    v = zeta(m) if args.direct else fast_zeta(m)
    print(json.dumps(io.to_document(v, args.encoding), indent=2))
    return EXIT_OK


def cmd_derivative(args) -> int:
    v = _load_bigame(args.game)
    spec = DerivativeSpec(parse_players(args.left, v.n), parse_players(args.right, v.n), v.n)
    at = BiSet.parse(args.at, v.n)
    _emit({"left": args.left, "right": args.right, "at": str(at), "value": delta(v, spec, at)})
    return EXIT_OK


def cmd_shapley(args) -> int:
    obj = io.load(args.game)
    if isinstance(obj, Capacity):
        phi = shapley_classical(obj)
        payload = {"shapley": [float(x) for x in phi]}
    else:
        if isinstance(obj, MoebiusRep):
            sh = shapley_bi_moebius(obj)
        else:
            sh = shapley_bi_moebius(fast_moebius(obj)) if args.moebius_path else shapley_bi(obj)
        payload = sh.as_dict()
    if args.format == "json":
        _emit(payload)
    elif "shapley" in payload:
        print(_table([("player", "phi")] + [(str(i + 1), f"{x:.12g}")
                                              for i, x in enumerate(payload["shapley"])]))
    else:
        print(_table([("player", "left", "right")]
                     + [(str(i + 1), f"{a:.12g}", f"{b:.12g}")
                        for i, (a, b) in enumerate(zip(payload["left"], payload["right"]))]))
    return EXIT_OK


def _pair_key(x: BiSet, notation: str) -> str:
    if notation == "point":
        return str(x)
    return str(BiSet(x.pos, x.neutral, x.n))


def cmd_interaction(args) -> int:
    v = _load_bigame(args.game)
    rows: dict[str, float] = {}
    if args.pair is not None:
        x = BiSet.parse(args.pair, v.n)
        if args.notation == "point":
            s_mask, t_mask = x.pos, x.neutral
        else:
            s_mask, t_mask = x.pos, x.neg
        rows[args.pair] = interaction_bi(v, s_mask, t_mask)
    if args.all or args.pair is None:
        table = interaction_table(v)
        for x in enumerate_q(v.n):
            rows[_pair_key(x, args.notation)] = table.point(x)
    if args.format == "json":
        _emit({"notation": args.notation, "values": rows})
    else:
        head = "S|T" if args.notation == "st" else "(S,T)"
        print(_table([(head, "I")] + [(k, f"{val:.12g}") for k, val in rows.items()]))
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    report = run_selfcheck(SelfCheckConfig(n=args.n, seed=args.seed, trials=args.trials))
    if args.format == "json":
        _emit(report.as_dict())
    else:
        print(f"selfcheck n={args.n} seed={args.seed} trials={args.trials}")
        for r in report.results:
            print(r.line())
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_bench(args) -> int:
    _emit(bench(args.n, args.trials, args.seed))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bicap", description="Bi-capacities on Q(N).")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("validate", cmd_validate, "check game axioms, monotonicity and normalization")
    sp.add_argument("--game", required=True)

    sp = verb("info", cmd_info, "summary of a bi-game")
    sp.add_argument("--game", required=True)

    sp = verb("moebius", cmd_moebius, "Möbius transform")
    sp.add_argument("--game", required=True)
    sp.add_argument("--direct", action="store_true", help=f"explicit sums (n <= {DIRECT_MAX_N})")
    sp.add_argument("--json", action="store_true", help="emit a moebius JSON document")
    sp.add_argument("--encoding", choices=["dense", "sparse"], default="dense")
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = verb("zeta", cmd_zeta, "inverse Möbius transform of a moebius document")
    sp.add_argument("--moebius", "--game", dest="moebius", required=True)
    sp.add_argument("--direct", action="store_true")
    sp.add_argument("--encoding", choices=["dense", "sparse"], default="dense")

    sp = verb("derivative", cmd_derivative, "the (S,T)-derivative at a point")
    sp.add_argument("--game", required=True)
    sp.add_argument("--left", default="", help="players added to the defenders, e.g. 1,2")
    sp.add_argument("--right", default="", help="players withdrawn from the defeaters")
    sp.add_argument("--at", required=True, help='point "K|L"')

    sp = verb("shapley", cmd_shapley, "bi-Shapley value")
    sp.add_argument("--game", required=True)
    sp.add_argument("--moebius-path", action="store_true")
    sp.add_argument("--format", choices=["json", "text"], default="json")

    sp = verb("interaction", cmd_interaction, "bi-interaction indices")
    sp.add_argument("--game", required=True)
    sp.add_argument("--pair", help='"S|T" (defenders|defeaters, or a point with --notation point)')
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--notation", choices=["st", "point"], default="st")
    sp.add_argument("--format", choices=["json", "text"], default="json")

    sp = verb("selfcheck", cmd_selfcheck, "seeded oracle suite")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--format", choices=["json", "text"], default="text")

    sp = verb("bench", cmd_bench, "time fast vs direct transforms")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (FormatError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
