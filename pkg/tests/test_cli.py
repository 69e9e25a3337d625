import json
import subprocess
import sys

import numpy as np
import pytest

from rsalg.cli import main
from rsalg.corpus import builtin
from rsalg.groupoid import build_associated_groupoid
from rsalg.io import (
    groupoid_document,
    parse_function,
    parse_groupoid_rep,
    parse_rep,
    render_function,
    render_groupoid_rep,
    render_rep,
)
from rsalg.representations import rep_to_groupoid
from rsalg.restricted import CFunction, lambda_r
from rsalg.semigroup import parse_semigroup


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.mark.parametrize("name", ["I2", "Z2", "brandt2"])
def test_check_builtin(capsys, name):
    code, out, _ = run(capsys, "check", "--builtin", name)
    assert code == 0 and "valid" in out


def test_check_reports_zero(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "brandt2", "--format", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["valid"] and doc["zero"] == 5


def test_check_out_of_range(capsys, tmp_path):
    bad = write_json(tmp_path / "bad.table", {"n": 2, "table": [[0, 1], [1, 7]], "star": [0, 1], "identity": 0})
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and "out of range" in err


def test_check_axiom_violation(capsys, tmp_path):
    path = write_json(tmp_path / "ax.json", {"n": 2, "table": [[0, 1], [1, 1]], "star": [1, 0], "identity": 0})
    code, out, _ = run(capsys, "check", "--input", path, "--format", "structured")
    assert code == 1
    assert not json.loads(out)["valid"]


def test_syntax_error(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text('{"n": 2,\n "table": [[0, 1], [1, 0]]\n "star": [0, 1]}')
    code, _, err = run(capsys, "check", str(path))
    assert code == 2 and "line 3" in err


def test_unknown_builtin_and_command(capsys):
    assert run(capsys, "check", "--builtin", "Z7")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_missing_source(capsys):
    assert run(capsys, "verify")[0] == 2


def test_construct(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--builtin", "Z2", "--emit", "sr,sa,lambda", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["Z2_lambda.json", "Z2_sa.json", "Z2_sr.json"]
    sr = parse_semigroup((tmp_path / "Z2_sr.json").read_text())
    assert sr.n == 3 and sr.zero is not None
    lam = parse_rep((tmp_path / "Z2_lambda.json").read_text())
    assert np.array_equal(lam.mats, lambda_r(builtin("Z2")).mats)


def test_construct_semilattice_groupoid(capsys, tmp_path):
    run(capsys, "construct", "--builtin", "semilattice2", "--emit", "sa", "--out", str(tmp_path))
    doc = json.loads((tmp_path / "semilattice2_sa.json").read_text())
    assert len(doc["units"]) == 2


@pytest.mark.parametrize("emit", ["", ",", "sr,bogus"])
def test_construct_bad_emit(capsys, emit):
    assert run(capsys, "construct", "--builtin", "Z2", "--emit", emit)[0] == 2


@pytest.mark.parametrize("which, values, expected", [
    ("b", [[1, 0], [1, 0]], 1.0),
    ("sigma_r", [[1, 0], [1, 0]], 2.0),
    ("b", [[0, 0], [0, 0]], 0.0),
])
def test_norm(capsys, tmp_path, which, values, expected):
    fn = write_json(tmp_path / "f.json", {"carrier": "Z2", "values": values})
    code, out, _ = run(capsys, "norm", "--builtin", "Z2", "--function", fn, "--which", which,
                       "--format", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["value"] == pytest.approx(expected)
    if expected == 0:
        assert doc["method"] == "certified_bounds"


def test_norm_length_mismatch(capsys, tmp_path):
    fn = write_json(tmp_path / "f.json", {"values": [[1, 0], [1, 0]]})
    assert run(capsys, "norm", "--builtin", "Z3", "--function", fn, "--which", "b")[0] == 2


def test_groupoid_export(capsys):
    code, out, _ = run(capsys, "groupoid", "export", "--builtin", "I2")
    doc = json.loads(out)
    S = builtin("I2")
    assert code == 0 and doc == groupoid_document(build_associated_groupoid(S))
    assert len(doc["arrows"]) == int(S.admissible.sum())


def test_verify_single_and_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "Z3", "--format", "structured")
    doc = json.loads(out)
    assert doc["schema"] == "rsalg-report/1"
    assert code == (0 if doc["status"] == "pass" else 1)


def test_verify_corrupted_table_stops_at_check(capsys, tmp_path):
    path = write_json(tmp_path / "c.json", {"n": 2, "table": [[0, 1], [1, 1]], "star": [1, 0], "identity": 0})
    code, _, err = run(capsys, "verify", path)
    assert code == 2 and "violates" in err


def test_verify_deterministic(tmp_path):
    outs = []
    for i in range(2):
        target = tmp_path / f"r{i}.json"
        main(["verify", "--builtin", "all", "--seed", "7", "--format", "structured", "--out", str(target)])
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rsalg.cli", "check", "--builtin", "Z2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "Z2: valid" in proc.stdout


def test_function_round_trip(S):
    f = CFunction(np.arange(S.n) * (1 - 0.5j), S.name)
    g = parse_function(render_function(f), S)
    assert np.allclose(f.values, g.values) and g.carrier == S.name


def test_rep_round_trips(S):
    lam = lambda_r(S)
    assert np.array_equal(parse_rep(render_rep(lam)).mats, lam.mats)
    bundle = rep_to_groupoid(S, lam)
    back = parse_groupoid_rep(render_groupoid_rep(bundle))
    assert back.fiber_dims == bundle.fiber_dims
    for a, b in zip(back.mats, bundle.mats):
        assert a.shape == b.shape and np.allclose(a, b)
