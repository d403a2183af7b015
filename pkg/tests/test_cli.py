import json

import pytest

from torsq import cli
from torsq.data import InputError, fixture_path, list_fixtures, load_curve, load_rep


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    lines = [json.loads(x) for x in out.out.splitlines() if x.strip()]
    return code, lines, out.err


def test_fixtures_are_bundled():
    names = list_fixtures()
    for n in ("appc_example1.rep", "appc_example2.rep", "appd_f5.curve", "appd_f11.curve",
              "appd_f13.curve", "appd_f17.curve"):
        assert n in names
    cf = load_curve(fixture_path("appd_f5.curve"))
    assert cf.p == 5 and len(cf.form) == 9


def test_rt_fibered_default(capsys):
    code, lines, _ = _run(capsys, "rt-fibered")
    assert code == 0
    recs, summary = lines[:-1], lines[-1]
    assert [r["input"] for r in recs] == ["appc_example1.rep", "appc_example2.rep"]
    assert summary["summary"] and summary["failed"] == 0


def test_seed_determinism(capsys):
    args = ("spinor", "--field", "F13", "--count", "15", "--seed", "7")
    _, a, _ = _run(capsys, *args)
    _, b, _ = _run(capsys, *args)
    assert a[:-1] == b[:-1]
    _, c, _ = _run(capsys, "spinor", "--field", "F13", "--count", "15", "--seed", "8")
    assert c[:-1] != a[:-1]


def test_q8_verify_example(capsys):
    code, lines, _ = _run(capsys, "q8-verify", "--p", "5", "--q-poly", "2,0,2,0,-4,0,-3,0,-3")
    assert code == 0
    recs = lines[:-1]
    assert {r["alpha_id"] for r in recs} == {"11:1", "13:0"}
    for r in recs:
        assert set(r) >= {"curve", "alpha_id", "L", "central", "central_sqclass", "pairing", "verdict"}


def test_q8_verify_from_curve_file(capsys):
    code, lines, _ = _run(capsys, "q8-verify", "--curve", str(fixture_path("appd_f5.curve")))
    assert code == 0 and len(lines) == 3


@pytest.mark.parametrize("argv", [
    ["q8-verify", "--p", "5", "--q-poly", "1,2,x"],
    ["q8-verify", "--p", "5", "--q-poly", "1,1,0,0,0,0,0,0,1"],
    ["q8-verify", "--p", "5"],
    ["q8-verify", "--p", "5", "--q-poly", "1,0,0,0,0,0,0,0,-1"],
    ["spinor", "--field", "F4"],
    ["q8-search", "--p", "7", "--sweep", "paper"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_malformed_matrix_file(tmp_path, capsys):
    good = fixture_path("appc_example1.rep").read_text()
    bad = tmp_path / "bad.rep"
    bad.write_text(good.replace("b1: -1 0 | 0 -1", "b1: -1 0 | 0"))
    with pytest.raises(InputError) as exc:
        load_rep(bad)
    assert "bad.rep:" in str(exc.value) and "b1" in str(exc.value)
    code, _, err = _run(capsys, "rt-fibered", str(bad))
    assert code == 2 and "b1" in err


def test_wrong_expectation_exits_1(tmp_path, capsys):
    good = fixture_path("appc_example1.rep").read_text()
    wrong = tmp_path / "wrong.rep"
    wrong.write_text(good.replace("expect.det_1_minus_ttilde: 4", "expect.det_1_minus_ttilde: 5"))
    code, lines, _ = _run(capsys, "rt-fibered", str(wrong))
    assert code == 1
    assert lines[0]["checks"]["det_1_minus_ttilde"] is False


def test_report_directory(tmp_path, capsys):
    out = tmp_path / "run"
    code, lines, _ = _run(capsys, "complex-check", "--suite", "chi12", "--field", "F7",
                          "--count", "5", "--out", str(out))
    assert code == 0
    assert (out / "records.jsonl").exists() and (out / "summary.json").exists()
    assert (out / "pass_counts.png").stat().st_size > 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["records"] == 5 and summary["passed"] == 5


def test_circle_in_positive_characteristic_is_informational(capsys):
    code, lines, _ = _run(capsys, "rt-circle", "--field", "F13", "--count", "5")
    assert code == 0
    assert all(r.get("informational") for r in lines[:-1])
