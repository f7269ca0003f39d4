import json
import math
import subprocess
import sys

import pytest

from sublattice_ee import __version__, cli
from sublattice_ee.errors import EigensolverStalled


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_entropy_json(capsys):
    code, out, err = run(capsys, "entropy", "--n", "12", "--p", "2", "--mass-eps", "1.0", "--vacuum")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert len(doc["lambda"]) == 6 and len(doc["per_mode"]) == 6
    assert doc["entropy"] == pytest.approx(sum(doc["per_mode"]), rel=1e-15)
    assert doc["params"] == {"N": 12, "N_A": 6, "beta_m": "inf", "mass_eps": 1, "p": 2}
    assert doc["version"] == __version__


def test_floats_round_trip(capsys):
    _, out, _ = run(capsys, "spectrum", "--n", "8", "--n-sub", "4", "--mass-eps", "0.3", "--beta-m", "1.7")
    from sublattice_ee import LatticeSpec, spectrum
    lam = spectrum(LatticeSpec(8, 2, 0.3, 1.7)).lam
    assert json.loads(out)["lambda"] == lam.tolist()


def test_csv_layout(capsys):
    code, out, _ = run(capsys, "figure", "fig7", "--mass-eps", "1e-6", "--n-max", "64")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith(f"# sublattice-ee v{__version__} figure ")
    assert "mass_eps=9.9999999999999995e-07" in lines[0]
    assert lines[1] == "N,I_AB,S_A,S_AB"
    assert [int(l.split(",")[0]) for l in lines[2:]] == [4, 8, 16, 32, 64]


def test_output_is_deterministic(tmp_path, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--axis", "mass_eps", "--start", "1e-3", "--stop", "10", "--num", "7",
            "--p", "3", "--n-sub", "5", "--beta-m", "2"]
    assert cli.main(args + ["-o", str(a)]) == 0
    monkeypatch.setenv("SUBLATTICE_EE_THREADS", "3")
    assert cli.main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 9


@pytest.mark.parametrize("argv", [
    ["mutual-info", "--n", "8", "--mass-eps", "1", "--vacuum"],
    ["continuum", "--n-sub", "2", "--mass-eps", "0.5", "--beta-m", "3"],
    ["continuum", "--mass-eps", "0.5", "--vacuum", "--format", "csv"],
    ["entropy", "--p", "2", "--n-sub", "3", "--mass-eps", "1", "--beta-m", "1", "--format", "csv"],
    ["spectrum", "--n", "6", "--p", "3", "--mass-eps", "1", "--vacuum", "--format", "csv"],
    ["sweep", "--axis", "n_sub", "--values", "1,2,3", "--p", "2", "--mass-eps", "1"],
    ["sweep", "--axis", "beta_m", "--values", "0.5,1", "--n", "8", "--p", "2", "--mass-eps", "1",
     "--format", "json"],
    ["figure", "fig6", "--resolution", "4"],
    ["figure", "fig4", "--resolution", "3", "--format", "json"],
    ["validate", "--max-n", "6"],
])
def test_commands_succeed(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    fmt = argv[argv.index("--format") + 1] if "--format" in argv else (
        "json" if argv[0] in cli.JSON_DEFAULT else "csv")
    if fmt == "json":
        json.loads(out)
    else:
        assert out.startswith("# sublattice-ee")


@pytest.mark.parametrize("argv", [
    ["entropy", "--n", "12", "--p", "5", "--mass-eps", "1", "--vacuum"],
    ["entropy", "--n", "12", "--mass-eps", "1", "--vacuum"],
    ["entropy", "--n", "12", "--p", "2", "--n-sub", "5", "--mass-eps", "1", "--vacuum"],
    ["entropy", "--n", "12", "--p", "2", "--mass-eps", "1"],
    ["entropy", "--n", "12", "--p", "2", "--mass-eps", "1", "--vacuum", "--beta-m", "2"],
    ["entropy", "--n", "12", "--p", "2", "--mass-eps", "-1", "--vacuum"],
    ["entropy", "--n", "12", "--p", "2", "--mass-eps", "1", "--beta-m", "inf"],
    ["entropy", "--n", "x", "--p", "2", "--mass-eps", "1", "--vacuum"],
    ["mutual-info", "--n", "7", "--mass-eps", "1", "--vacuum"],
    ["sweep", "--axis", "mass_eps", "--p", "2", "--n-sub", "2"],
    ["sweep", "--axis", "mass_eps", "--values", "1,0.5", "--p", "2", "--n-sub", "2"],
    ["sweep", "--axis", "n_sub", "--values", "1.5", "--p", "2", "--mass-eps", "1"],
    ["figure", "fig9"],
    ["figure", "fig4", "--start", "10", "--stop", "1"],
    ["nonsense"],
    [],
])
def test_invalid_arguments_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error: code=") and err.count("\n") == 1


def test_bad_thread_setting_exits_1(capsys, monkeypatch):
    monkeypatch.setenv("SUBLATTICE_EE_THREADS", "zero")
    code, _, err = run(capsys, "mutual-info", "--n", "8", "--mass-eps", "1", "--vacuum")
    assert code == 1 and "SUBLATTICE_EE_THREADS" in err


def test_numerical_failure_exits_2(capsys, monkeypatch):
    def stall(*a, **k):
        raise EigensolverStalled("eigensolver stalled after 100 sweeps")
    monkeypatch.setattr(cli, "cross_validate", stall)
    code, _, err = run(capsys, "validate", "--max-n", "4")
    assert code == 2 and err.startswith("error: code=eigensolver-stalled reason=")


def test_validation_failure_exits_2(capsys):
    code, out, err = run(capsys, "validate", "--max-n", "6", "--tol", "0")
    assert code == 2
    assert "code=validation-failed" in err
    assert out.splitlines()[1] == "N,p,mass_eps,beta_m,S_A,lambda_rel_err,entropy_err,ok"


def test_help_exits_0(capsys):
    assert cli.main(["--help"]) == 0
    assert "entropy" in capsys.readouterr().out


def test_fmt_value():
    assert cli.fmt_value(0.1) == "0.10000000000000001"
    assert cli.fmt_value(math.inf) == "inf"
    assert cli.fmt_value(True) == "true"
    assert cli.fmt_value(3) == "3"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "sublattice_ee", "entropy", "--n", "4", "--p", "2",
                          "--mass-eps", "1", "--vacuum"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["lambda"][1] == 0.5
    out = subprocess.run([sys.executable, "-m", "sublattice_ee", "entropy", "--n", "4", "--p", "3",
                          "--mass-eps", "1", "--vacuum"], capture_output=True, text=True)
    assert out.returncode == 1 and out.stderr.startswith("error: code=invalid-argument")
