import json
import math

import pytest

from hb_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pair_document(capsys, tmp_path):
    path = tmp_path / "pair.json"
    code, _, _ = run(capsys, "pair", "--alpha", "1.0", "--out", str(path))
    assert code == 0
    diag = json.loads(path.read_text(encoding="utf-8"))["diagnostics"]
    assert diag["corona_min"] >= 0.4472
    assert all(s["ok"] for s in diag["sandwich"])


def test_pair_negative_alpha(capsys):
    code, _, err = run(capsys, "pair", "--alpha", "-1")
    assert code == 2 and "alpha must be positive" in err


def test_pair_refinement_keeps_residual_at_rounding(capsys):
    res = []
    for n in ("4096", "8192"):
        _, out, _ = run(capsys, "pair", "--alpha", "1.0", "--n-points", n)
        res.append(json.loads(out)["diagnostics"]["pyth_residual"])
    assert max(res) < 1e-14


def test_pair_csv(capsys):
    code, out, _ = run(capsys, "pair", "--alpha", "0.5", "--n-points", "256", "--format", "csv")
    lines = out.split("\r\n")
    assert code == 0 and lines[0] == "k,a_re,a_im,b_re,b_im" and len(lines) == 64 + 2


@pytest.mark.parametrize("f,want", [("1", math.sqrt(2)), ("0", 0.0)])
def test_norm_values(capsys, f, want):
    code, out, _ = run(capsys, "norm", "--alpha", "1", "--f", f)
    assert code == 0 and json.loads(out)["hb_norm"] == pytest.approx(want, abs=1e-4)


def test_norm_non_member(capsys):
    code, out, _ = run(capsys, "norm", "--alpha", "1", "--f", "(1-z)^0.1")
    assert code == 0 and json.loads(out)["membership"]["verdict"] == "non-member"


def test_norm_bad_expression(capsys):
    code, _, err = run(capsys, "norm", "--alpha", "1", "--f", "(1-z")
    assert code == 2 and "--f" in err


def test_decompose_documents(capsys):
    code, out, _ = run(capsys, "decompose", "--alpha", "2", "--f", "z^2")
    doc = json.loads(out)
    assert code == 0
    assert doc["poly_coeffs"][0][0] == pytest.approx(-1, abs=1e-6)
    assert doc["poly_coeffs"][1][0] == pytest.approx(2, abs=1e-6)
    assert doc["ma_coeffs"][0][0] == pytest.approx(1, abs=1e-6)
    assert max(abs(c[0]) for c in doc["ma_coeffs"][1:]) < 1e-6

    _, out, _ = run(capsys, "decompose", "--alpha", "0.25", "--f", "1")
    ma = [c[0] for c in json.loads(out)["ma_coeffs"][:3]]
    assert ma == pytest.approx([1, 0.25, 0.15625])

    _, out, _ = run(capsys, "decompose", "--alpha", "1.5", "--f", "1")
    doc = json.loads(out)
    assert not doc["poly_claimed"] and any(abs(c[0]) > 0 for c in doc["an_coeffs"])


def test_decompose_instability_exit(capsys):
    code, _, err = run(capsys, "decompose", "--alpha", "1", "--f", "(1-z)^0.1")
    assert code == 3 and "instability" in err


def test_spectral(capsys):
    code, out, _ = run(capsys, "spectral", "--alpha", "0.25,0.5,1.5,2.5")
    dims = [e["kernel"]["dimension"] for e in json.loads(out)["alphas"]]
    assert code == 0 and dims == [0, 0, 1, 2]


def test_spectral_sigma_floor(capsys):
    _, out, _ = run(capsys, "spectral", "--alpha", "1.2", "--format", "csv")
    rows = [r.split(",") for r in out.split("\r\n")[1:] if r]
    sig = [float(r[3]) for r in rows if r[1] == "sigma_min"]
    assert len(sig) >= 4 and min(sig) > 0.8 and sig[-2] - sig[-1] < 0.01


def test_spectral_empty_alpha(capsys):
    code, _, _ = run(capsys, "spectral", "--alpha", "")
    assert code == 2


def test_regularity_table(capsys):
    code, out, _ = run(capsys, "regularity", "--alpha", "0.3,0.4,0.6,1.5")
    table = {(r["alpha"], r["n"]): r for r in json.loads(out)["table"]}
    assert code == 0
    assert table[(0.6, 1)]["verdict"] == "converges"
    assert table[(0.4, 1)]["verdict"] == "diverges"
    assert table[(1.5, 2)]["verdict"] == "inconclusive"
    assert table[(0.3, 1)]["fitted_exponent"] == pytest.approx(-0.4, abs=0.1)


def test_usage_errors(capsys):
    assert run(capsys, "pair", "--n-points", "abc")[0] == 2
    assert run(capsys, "pair", "--tol-pyth", "0")[0] == 2
    assert run(capsys, "norm", "--resolutions", "2048,1024,4096", "--f", "1")[0] == 2
    assert run(capsys)[0] == 2


def test_help_documents_csv(capsys):
    assert main(["spectral", "--help"]) == 0
    text = capsys.readouterr().out
    assert "CSV columns" in text and "--tol-kernel" in text


def test_check_all_subset(capsys):
    code, out, err = run(capsys, "check-all", "--seed", "7", "--only", "1,5")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 7 and [c["index"] for c in doc["criteria"]] == [1, 5]
    assert err.count("[PASS]") == 2
