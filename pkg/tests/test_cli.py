import json
import subprocess
import sys

import numpy as np
import pytest

from bicap import game as g
from bicap import io
from bicap.cli import main


@pytest.fixture
def files(tmp_path, rng):
    add = g.make_additive([0.2, 0.3, 0.5], [0.5, 0.3, 0.2])
    cpt = g.make_cpt(g.random_capacity(3, rng), g.random_capacity(3, rng))
    rnd = g.random_game(3, rng)
    out = {}
    for name, obj, enc in [("add", add, "sparse"), ("cpt", cpt, "dense"), ("rnd", rnd, "dense")]:
        out[name] = tmp_path / f"{name}.json"
        io.save(obj, out[name], enc)
    return out


def run(argv, capsys):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_moebius_listing_of_additive(files, capsys):
    code, out = run(["moebius", "--game", files["add"]], capsys)
    assert code == 0
    keys = [line.split(":")[0] for line in out.strip().splitlines()]
    assert keys == ["|1,2,3", "|2,3", "1|2,3", "|1,3", "2|1,3", "|1,2", "3|1,2"]


def test_validate_cpt(files, capsys):
    code, out = run(["validate", "--game", files["cpt"]], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["is_normalized"] and rep["is_bicapacity"]


def test_validate_non_bicapacity_exits_1(files, capsys):
    code, out = run(["validate", "--game", files["rnd"]], capsys)
    assert code == 1 and json.loads(out)["violations"]


def test_round_trip_through_cli(files, tmp_path, capsys):
    code, out = run(["moebius", "--game", files["rnd"], "--json"], capsys)
    assert code == 0
    mpath = tmp_path / "m.json"
    mpath.write_text(out)
    code, out = run(["zeta", "--moebius", mpath], capsys)
    back = io.from_document(json.loads(out))
    assert np.max(np.abs(back.values - io.load(files["rnd"]).values)) < 1e-9


def test_derivative_and_shapley(files, capsys):
    code, out = run(["derivative", "--game", files["add"], "--left", "2", "--at", "1|3"], capsys)
    assert code == 0 and json.loads(out)["value"] == pytest.approx(0.3)
    code, out = run(["shapley", "--game", files["add"]], capsys)
    sh = json.loads(out)
    assert sh["left"] == pytest.approx([0.2, 0.3, 0.5]) and sh["right"] == pytest.approx([0.5, 0.3, 0.2])
    code, out = run(["shapley", "--game", files["add"], "--moebius-path", "--format", "text"], capsys)
    assert out.splitlines()[0].split() == ["player", "left", "right"]


def test_derivative_precondition_exits_2(files, capsys):
    code, _ = run(["derivative", "--game", files["add"], "--left", "1", "--at", "1|"], capsys)
    assert code == 2


def test_interaction(files, capsys):
    code, out = run(["interaction", "--game", files["add"], "--pair", "1|"], capsys)
    assert json.loads(out)["values"]["1|"] == pytest.approx(0.2)
    code, out = run(["interaction", "--game", files["rnd"], "--all", "--notation", "point"], capsys)
    assert len(json.loads(out)["values"]) == 27


def test_info(files, capsys):
    code, out = run(["info", "--game", files["add"]], capsys)
    info = json.loads(out)
    assert info["k_additivity"] == 1 and info["layer_sizes"] == [1, 6, 12, 8]


def test_bad_key_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 2, "kind": "bigame", "encoding": "sparse", "values": {"1|1": 1}}')
    assert main(["validate", "--game", str(p)]) == 2
    assert "'1|1'" in capsys.readouterr().err


def test_selfcheck_and_bench(capsys):
    code, out = run(["selfcheck", "--n", "3", "--seed", "42", "--trials", "5"], capsys)
    assert code == 0 and "seed=42" in out and "FAIL" not in out
    code, out = run(["bench", "--n", "9", "--trials", "1"], capsys)
    rep = json.loads(out)
    assert rep["matrix_build_s"] == "refused: n > 8"
    assert rep["direct_moebius_s"] == "refused: n > 5"


def test_bench_n4_logs_agreement(capsys):
    code, out = run(["bench", "--n", "4", "--trials", "1"], capsys)
    assert json.loads(out)["direct_vs_fast_max_err"] < 1e-12


def test_output_is_deterministic(files):
    cmd = [sys.executable, "-m", "bicap", "interaction", "--game", str(files["rnd"]), "--all"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b


def test_max_n_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("BICAP_MAX_N", "2")
    p = tmp_path / "v.json"
    p.write_text(json.dumps({"n": 3, "kind": "bigame", "values": [0.0] * 27}))
    assert main(["validate", "--game", str(p)]) == 2
