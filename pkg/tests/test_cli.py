import io
import json
import subprocess
import sys

import pytest

from conftest import exact_equal, mat
from eigenproj.cli import VERIFY_FAILED, RunConfig, dispatch, main
from eigenproj.errors import EXIT_CODES, ZeroAlpha
from eigenproj.io import format_text, parse_matrix
from eigenproj.numcore import to_float


def run(argv, text, capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eigenprojection_of_diag(capsys, monkeypatch):
    code, out, _ = run(["eigenprojection"], "2\n2 0\n0 0\n", capsys, monkeypatch)
    assert code == 0
    assert exact_equal(parse_matrix(out), mat([[0, 0], [0, 1]]))
    assert "provenance: Z = h(A^u), u=1" in out


def test_verify_nilpotent(capsys, monkeypatch):
    code, out, _ = run(["verify", "--seed", "1"], "2\n0 1\n0 0\n", capsys, monkeypatch)
    assert code == 0
    assert "ok: True" in out and "FAIL" not in out


def test_alpha_zero_is_usage_error(capsys, monkeypatch):
    code, _, err = run(["drazin", "--alpha", "0"], "2\n0 1\n0 0\n", capsys, monkeypatch)
    assert code == 2 and "alpha" in err


def test_error_codes_are_distinct_and_documented(capsys):
    assert len(set(EXIT_CODES.values())) == len(EXIT_CODES)
    with pytest.raises(SystemExit):
        main(["--help"])
    out = capsys.readouterr().out
    for name, code in EXIT_CODES.items():
        assert f"{code:>3}  {name}" in out


@pytest.mark.parametrize("argv,text,code", [
    (["index"], "2\n1 x\n0 0\n", EXIT_CODES["ParseError"]),
    (["index"], "2\n1 2\n", EXIT_CODES["NonSquare"]),
    (["group-inverse"], "2\n0 1\n0 0\n", EXIT_CODES["IndexTooHigh"]),
    (["components"], "2\n0 2\n1 0\n", EXIT_CODES["IrrationalSpectrum"]),
    (["markov"], "2\n1 1\n0 1\n", EXIT_CODES["NotStochastic"]),
    (["forest"], "2\n1 1\n0 0\n", EXIT_CODES["NotLaplacian"]),
    (["eigenprojection", "--u", "1"], "2\n0 1\n0 0\n", EXIT_CODES["InvariantViolation"]),
])
def test_error_exit_codes(argv, text, code, capsys, monkeypatch):
    got, _, err = run(argv, text, capsys, monkeypatch)
    assert got == code and err


def test_matrix_output_round_trips_in_json(capsys, monkeypatch):
    code, out, _ = run(["drazin", "--format", "json"], "3\n0 1 0\n0 0 0\n0 0 2\n", capsys, monkeypatch)
    assert code == 0
    AD = parse_matrix(out)
    assert AD[2, 2] == 1 / 2 and sum(x != 0 for x in AD.flat) == 1
    assert "provenance" in json.loads(out)


def test_components_and_minpoly(capsys, monkeypatch):
    code, out, _ = run(["components"], "3\n0 1 0\n0 0 0\n0 0 2\n", capsys, monkeypatch)
    assert code == 0 and out.count("# Z[") == 3
    code, out, _ = run(["minpoly", "--format", "json"], "3\n0 1 0\n0 0 0\n0 0 2\n", capsys, monkeypatch)
    assert json.loads(out)["minpoly"] == "x^3 - 2*x^2"


def test_matfunc_with_eigenvalue_override(capsys, monkeypatch):
    code, out, _ = run(["matfunc", "--function", "square", "--eigenvalues", "0,2"],
                       "3\n0 1 0\n0 0 0\n0 0 2\n", capsys, monkeypatch)
    assert code == 0
    assert exact_equal(parse_matrix(out), mat([[0, 0, 0], [0, 0, 0], [0, 0, 4]]))


def test_float_backend_flag(capsys, monkeypatch):
    code, out, _ = run(["charpoly", "--backend", "float"], "2\n1 2\n3 4\n", capsys, monkeypatch)
    assert code == 0 and "zero_multiplicity: 0" in out


def test_dispatch_and_config():
    res = dispatch("index", RunConfig(), mat([[0, 1], [0, 0]]))
    assert res.meta["index"] == 2
    with pytest.raises(ZeroAlpha):
        RunConfig(alpha=0)
    with pytest.raises(ValueError):
        RunConfig(u_override=-1)


def test_verify_status_on_suite_sample(suite):
    for case in suite[::16]:
        for A in (case.A, to_float(case.A)):
            assert dispatch("verify", RunConfig(seed=0), A).status == 0


def test_verify_reports_failure(monkeypatch):
    import eigenproj.verify as verify_mod

    def broken(A, u, tau_schedule=None, tol=None):
        return to_float(A) * 0
    monkeypatch.setattr(verify_mod, "oracle_limit", broken)
    assert dispatch("verify", RunConfig(), mat([[0, 1], [0, 0]])).status == VERIFY_FAILED


def test_module_entry_point(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text(format_text(mat([[2, 0], [0, 0]])))
    proc = subprocess.run([sys.executable, "-m", "eigenproj", "index", str(f)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "index: 1" in proc.stdout
