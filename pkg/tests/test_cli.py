import json

import pytest
from click.testing import CliRunner

from ycl.cli import SuiteConfig, build_config, compute, exit_status, main, qstr, run_check, run_suite
from ycl.scalars import Q, TruncationError


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    res = runner.invoke(main, list(args))
    return res.exit_code, res.output


def test_verify_rmatrix_passes(runner):
    code, out = invoke(runner, "verify", "rmatrix", "--g-order", "6")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "ycl-report/1"
    assert report["config"]["g_order"] == 6
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)
    assert all(c["status"] == "pass" for c in report["checks"])
    assert "negative-control" in " ".join(names)


def test_report_body_is_deterministic(runner):
    bodies = []
    for _ in range(2):
        code, out = invoke(runner, "verify", "manin", "--window", "deg=-3..0", "--budget", "m_max=2")
        assert code == 0
        report = json.loads(out)
        report.pop("meta")
        bodies.append(json.dumps(report, sort_keys=True))
    assert bodies[0] == bodies[1]


def test_failing_suite_exits_one(runner):
    code, out = invoke(runner, "verify", "critical-center", "--level", "0", "--window", "deg=-4..0")
    assert code == 1
    statuses = {c["name"]: c["status"] for c in json.loads(out)["checks"]}
    assert statuses["critical-center/invariance shape=(2,) c=0/1"] == "fail"
    assert statuses["critical-center/invariance shape=(1, 1) c=0/1"] == "pass"


@pytest.mark.parametrize("args", [
    ["verify", "nonsense"],
    ["verify", "rmatrix", "--level", "one"],
    ["verify", "rmatrix", "--window", "u=3..1"],
    ["verify", "rmatrix", "--window", "u:1"],
    ["verify", "fusion", "--shape", "1,2"],
    ["verify", "fusion", "--shape", "1,1,1"],
    ["verify", "rmatrix", "--budget", "s_max"],
    ["verify", "rmatrix", "--N", "0"],
    ["compute", "nonsense"],
    ["compute", "idempotent"],
])
def test_bad_configuration_exits_two(runner, args):
    code, _ = invoke(runner, *args)
    assert code == 2


def test_exit_status_rules():
    def rep(*statuses):
        return {"checks": [{"name": str(k), "status": s, "detail": ""} for k, s in enumerate(statuses)]}

    assert exit_status(rep("pass", "pass"), strict=True) == 0
    assert exit_status(rep("pass", "skipped-truncation"), strict=False) == 0
    assert exit_status(rep("pass", "skipped-truncation"), strict=True) == 3
    assert exit_status(rep("fail", "skipped-truncation"), strict=True) == 1


def test_truncation_becomes_skip():
    def boom():
        raise TruncationError("window")

    assert run_check("x", boom).status == "skipped-truncation"
    assert run_check("y", lambda: (False, "no")).status == "fail"


def test_g_series(runner):
    code, out = invoke(runner, "compute", "g-series", "--N", "2", "--g-order", "3")
    assert code == 0
    assert json.loads(out)["value"] == ["1/2", "5/8", "11/16"]


def test_idempotent_output(runner):
    code, out = invoke(runner, "compute", "idempotent", "--shape", "1,1")
    value = json.loads(out)["value"]
    assert value["dimension"] == 4
    entries = {(tuple(r), tuple(c)): v for r, c, v in value["entries"]}
    assert entries == {
        ((1, 2), (1, 2)): "1/2", ((1, 2), (2, 1)): "-1/2",
        ((2, 1), (1, 2)): "-1/2", ((2, 1), (2, 1)): "1/2",
    }


def test_ff_generator_output(runner):
    code, out = invoke(runner, "compute", "ff-generator", "--budget", "r_max=1")
    coeffs = json.loads(out)["value"]["coefficients"]
    assert coeffs == {"u^0": {"E11[-1]": "1/1", "E22[-1]": "1/1"}, "u^1": {"E11[-2]": "1/1", "E22[-2]": "1/1"}}


def test_qdet_and_family_outputs():
    cfg = build_config(2, None, 8, ("u=0..2",), (), (), 0)
    q = compute("qdet", cfg)["value"]
    assert q["floor"] == -3 and q["coefficients"]["u^0"]["1"] == "1/1"
    phi = compute("phi", cfg)["value"]
    assert phi["m"] == 1 and phi["coefficients"]


def test_out_file(runner, tmp_path):
    path = tmp_path / "report.json"
    code, out = invoke(runner, "compute", "g-series", "--g-order", "2", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["value"] == ["1/2", "5/8"]


def test_rationals_always_have_denominator():
    assert qstr(Q(3)) == "3/1"
    assert qstr(Q(-1, 2)) == "-1/2"


def test_config_echo_roundtrip():
    cfg = build_config(3, "-3/2", 5, ("deg=-4..0",), ("2,1",), ("s_max=2",), 4)
    echo = cfg.echo()
    assert echo["level"] == "-3/2" and echo["windows"] == {"deg": [-4, 0]} and echo["shapes"] == [[2, 1]]
    assert cfg.floor(-9) == -4 and SuiteConfig().floor(-9) == -9


def test_run_suite_unknown():
    with pytest.raises(Exception):
        run_suite("nope", SuiteConfig())
