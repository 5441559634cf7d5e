"""The `efgc` command-line tool: output document, formats, exit codes."""

import hashlib
import json
from pathlib import Path

import pytest

from efgc.cli import main
from efgc.rings import GroupRing, Z, render_value

SPEC_DIR = Path(__file__).resolve().parents[1] / "specs"
UNIVERSAL = str(SPEC_DIR / "mult_universal_z2.toml")
ADDITIVE = str(SPEC_DIR / "additive_q_z2.toml")
F7 = str(SPEC_DIR / "mult_f7_z2.toml")

ZV = GroupRing(Z, (2,))
V = ZV.generator(0)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_validate_universal_passes(capsys):
    code, doc, _ = run_json(capsys, "validate", UNIVERSAL)
    assert code == 0
    assert doc["schema"] == "efgc/1"
    assert doc["command"] == "validate"
    assert all(row["pass"] for row in doc["results"])
    names = [row["check"] for row in doc["results"]]
    assert "sigma-symmetric" in names and "phi-homomorphism" in names


def test_validate_echoes_input_digest(capsys):
    _, doc, _ = run_json(capsys, "validate", UNIVERSAL)
    want = hashlib.sha256(Path(UNIVERSAL).read_bytes()).hexdigest()
    assert doc["inputs"]["spec"] == UNIVERSAL
    assert doc["inputs"]["sha256"] == want


def test_validate_rejects_inconsistent_model(capsys, tmp_path):
    # phi(1) = 3 is a unit of F7 but not an involution, so phi is not a
    # homomorphism into the unit group; the builder refuses to construct it
    bad = tmp_path / "bad.toml"
    bad.write_text(
        '[model]\nkind = "multiplicative"\ntruncation = 1\n'
        "[group]\nfactors = [2]\n"
        '[base]\nring = "F7"\n'
        '[phi]\n"0" = "1"\n"1" = "3"\n'
    )
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert out == ""
    assert "cannot build model" in err


def test_validate_reports_tampered_model_checks(capsys):
    # a model tampered with after construction is flagged by deep validation
    # with the name of the failing check; the document layer sees exit 1
    from efgc.cli import _document
    from efgc.curves import EFG, build_multiplicative_universal, validate_efg
    from efgc.groups import FinAbGroup
    from efgc.rings import embed

    e = build_multiplicative_universal(FinAbGroup((2,)), 1)
    T = e.sigma.ring
    x0 = embed(e.curve.x(), T)
    x1 = T.gen()
    bad = EFG(e.curve, e.group, x0 + x1 + x0 * x1, e.iota, e.phi, e.norm_unit)
    report = validate_efg(bad, deep=True)
    rows = [{"check": n, "pass": ok, "note": note} for n, ok, note in report]
    doc = _document("validate", {"spec": "<in-memory>"}, rows)
    failing = [r["check"] for r in doc["results"] if not r["pass"]]
    assert "phi-homomorphism" in failing


def test_malformed_toml_is_exit_2(capsys, tmp_path):
    bad = tmp_path / "broken.toml"
    bad.write_text("[model\nkind =")
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_missing_spec_file_is_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.toml"))
    assert code == 2
    assert "no such file" in err


def test_unknown_model_kind_is_exit_2(capsys, tmp_path):
    bad = tmp_path / "kind.toml"
    bad.write_text('[model]\nkind = "nope"\n')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------------
# vn
# ---------------------------------------------------------------------------


def test_vn_table(capsys):
    code, doc, _ = run_json(capsys, "vn", UNIVERSAL, "--max-n", "2")
    assert code == 0
    table = {(row["n"], row["alpha"]): row["value"] for row in doc["results"]["table"]}
    assert table[(2, "1")] == render_value(ZV.one() + V)
    assert table[(1, "1")] == render_value(ZV.one())
    assert table[(2, "0")] == render_value(ZV.from_int(2))
    assert set(n for n, _ in table) == {1, 2}


def test_vn_negative_rows(capsys):
    code, doc, _ = run_json(
        capsys, "vn", UNIVERSAL, "--max-n", "1", "--negative"
    )
    assert code == 0
    table = {(row["n"], row["alpha"]): row["value"] for row in doc["results"]["table"]}
    assert table[(-1, "1")] == render_value(-V)
    assert table[(-1, "0")] == render_value(-ZV.one())


# ---------------------------------------------------------------------------
# transfer / mackey
# ---------------------------------------------------------------------------


def test_transfer_document(capsys):
    code, doc, _ = run_json(capsys, "transfer", UNIVERSAL)
    assert code == 0
    transfers = {row["U"]: row["t"] for row in doc["results"]["transfers"]}
    values = sorted(transfers.values())
    assert render_value(ZV.one() + V) in values
    assert render_value(ZV.one()) in values
    eta = {row["basis"]: row["value"] for row in doc["results"]["eta"]}
    assert any(v == render_value(ZV.one() + V) for v in eta.values())
    assert all(c["pass"] for c in doc["results"]["ring_map_checks"])


@pytest.mark.parametrize("spec", [UNIVERSAL, ADDITIVE, F7])
def test_mackey_passes(capsys, spec):
    code, doc, _ = run_json(capsys, "mackey", spec)
    assert code == 0
    assert doc["results"] and all(r["pass"] for r in doc["results"])


# ---------------------------------------------------------------------------
# divisor / moments
# ---------------------------------------------------------------------------


def test_divisor_double_origin(capsys):
    code, doc, _ = run_json(
        capsys, "divisor", UNIVERSAL, "--expr", "point(0)+point(0)"
    )
    assert code == 0
    res = doc["results"]
    assert res["degree"] == 2
    assert res["gen"] == ["0", "0", "1"]  # generator x^2
    assert res["euler"] == "0"


def test_divisor_full(capsys):
    code, doc, _ = run_json(capsys, "divisor", UNIVERSAL, "--expr", "full")
    assert code == 0
    res = doc["results"]
    assert res["degree"] == 2
    # the f-divisor is cut out by f itself
    assert res["gen"] == [render_value(ZV.zero()), render_value(V - ZV.one()), "1"]


def test_divisor_convolution_of_torsion_points(capsys):
    code, doc, _ = run_json(
        capsys, "divisor", UNIVERSAL, "--expr", "point(1)*point(1)"
    )
    assert code == 0
    res = doc["results"]
    assert res["degree"] == 1
    assert res["gen"] == ["0", "1"]  # [c_1] * [c_1] = [0]


def test_divisor_requires_expr(capsys):
    code, _, err = run(capsys, "divisor", UNIVERSAL)
    assert code == 2
    assert "needs --expr" in err


def test_divisor_bad_expr_is_exit_1(capsys):
    code, _, err = run(capsys, "divisor", UNIVERSAL, "--expr", "blob(1)")
    assert code == 1
    assert "error:" in err


def test_moments_document(capsys):
    code, doc, _ = run_json(
        capsys, "moments", ADDITIVE, "--expr", "full", "--max-n", "4"
    )
    assert code == 0
    assert doc["results"]["degree"] == 2
    entries = doc["results"]["entries"]
    assert entries and all(len(e["beta"]) == 4 for e in entries)


# ---------------------------------------------------------------------------
# residue / duality
# ---------------------------------------------------------------------------


def test_residue_command(capsys):
    code, doc, _ = run_json(
        capsys, "residue", "--ring", "Q", "--num", "1", "--den", "x"
    )
    assert code == 0
    assert doc["results"]["residue"] == "1"
    code, doc, _ = run_json(
        capsys, "residue", "--ring", "F5", "--num", "2*x", "--den", "x^2 - 1"
    )
    assert code == 0
    assert doc["results"]["residue"] == "2"


def test_residue_bad_ring_is_exit_2(capsys):
    code, _, err = run(capsys, "residue", "--ring", "banana", "--den", "x")
    assert code == 2
    assert "bad ring descriptor" in err


def test_residue_nonmonic_denominator_is_exit_1(capsys):
    code, _, err = run(
        capsys, "residue", "--ring", "Q", "--num", "1", "--den", "2*x"
    )
    assert code == 1
    assert "NonMonicDenominator" in err


def test_duality_command(capsys):
    code, doc, _ = run_json(capsys, "duality", "--ring", "Q", "--den", "x^2")
    assert code == 0
    res = doc["results"]
    assert res["theta0_matrix"] == [["0", "1"], ["1", "0"]]
    assert res["det"] == "-1"
    assert all(p["pass"] for p in res["pairing_checks"])


def test_duality_group_ring(capsys):
    code, doc, _ = run_json(
        capsys, "duality", "--ring", "Z[2]", "--den", "x^2 + (v - 1)*x"
    )
    assert code == 0
    assert doc["results"]["det"] in ("1", "-1")
    assert all(p["pass"] for p in doc["results"]["pairing_checks"])


# ---------------------------------------------------------------------------
# output formats and determinism
# ---------------------------------------------------------------------------


def test_csv_and_pretty_formats(capsys):
    code, out, _ = run(capsys, "validate", UNIVERSAL, "--out", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "check,pass,note"
    assert all("," in line for line in lines)

    code, out, _ = run(capsys, "validate", UNIVERSAL, "--out", "pretty")
    assert code == 0
    assert out.startswith("# efgc validate")


def test_repeated_runs_are_byte_identical(capsys):
    _, out1, _ = run(capsys, "vn", UNIVERSAL, "--max-n", "4", "--negative")
    _, out2, _ = run(capsys, "vn", UNIVERSAL, "--max-n", "4", "--negative")
    assert out1 == out2
    _, out1, _ = run(capsys, "selftest", "--suite", "divisor")
    _, out2, _ = run(capsys, "selftest", "--suite", "divisor")
    assert out1 == out2


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("suite", ["vn", "divisor", "counterexample"])
def test_selftest_single_suites_pass(capsys, suite):
    code, doc, _ = run_json(capsys, "selftest", "--suite", suite)
    assert code == 0
    assert doc["results"] and all(r["pass"] for r in doc["results"])
    assert {r["suite"] for r in doc["results"]} == {suite}


def test_selftest_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["selftest", "--suite", "nope"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_selftest_honors_work_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("EFGC_WORK_PRECISION", "16")
    code, doc, _ = run_json(capsys, "selftest", "--suite", "counterexample")
    assert code == 0
    assert all(r["pass"] for r in doc["results"])
