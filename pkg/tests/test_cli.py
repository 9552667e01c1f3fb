import io
import json
from contextlib import redirect_stdout

from cubechar.cli import main


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


# -- char-eval ----------------------------------------------------------------


def test_char_eval_dyadic():
    code, out = run_cli(["char-eval", "--alpha", "1", "--perm", "level=2: 1 0 2 3"])
    assert code == 0 and out == "1/2\n"


def test_char_eval_infinity_identity():
    code, out = run_cli(["char-eval", "--alpha", "inf", "--perm", "identity(3)"])
    assert code == 0 and out == "1\n"
    code, out = run_cli(["char-eval", "--alpha", "inf", "--perm", "odometer(3)"])
    assert out == "0\n"


def test_char_eval_alpha_zero_is_trivial():
    for perm in ("odometer(3)", "level=2: (0 2)(1 3)", "e"):
        code, out = run_cli(["char-eval", "--alpha", "0", "--perm", perm])
        assert code == 0 and out == "1\n"


def test_char_eval_real_alpha_prints_interval():
    code, out = run_cli(["char-eval", "--alpha", "1.5", "--perm", "level=2: 1 0 2 3"])
    assert code == 0
    assert out.startswith("[0.35355339") and out.rstrip().endswith("]")


def test_char_eval_json():
    code, out = run_cli(
        ["char-eval", "--alpha", "2", "--perm", "level=2: 1 0 2 3", "--format", "json"]
    )
    data = json.loads(out)
    assert data["value"] == "1/4" and data["fixed_fraction"] == "1/2"


def test_parse_failure_exit_code(capsys):
    code, _ = run_cli(["char-eval", "--alpha", "1", "--perm", "level=2: 0 0 1 2"])
    assert code == 2
    code, _ = run_cli(["char-eval", "--alpha", "x", "--perm", "identity(2)"])
    assert code == 2


# -- gram ----------------------------------------------------------------------


def test_gram_identity_element():
    code, out = run_cli(["gram", "--alpha", "1", "--elements", "e"])
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "PSD" and data["matrix"] == [["1"]]


def test_gram_psd_exit_codes():
    code, out = run_cli(["gram", "--alpha", "2", "--all-level", "2"])
    assert code == 0 and json.loads(out)["verdict"] == "PSD"
    code, out = run_cli(
        ["gram", "--alpha", "1.5", "--all-level", "2", "--witness", "signs"]
    )
    assert code == 1
    data = json.loads(out)
    assert data["verdict"] == "not PSD"
    assert data["witness"] is not None


def test_gram_rejects_large_level():
    code, _ = run_cli(["gram", "--alpha", "1", "--all-level", "3"])
    assert code == 2


# -- obstruction ---------------------------------------------------------------


def test_obstruction_csv_row():
    code, out = run_cli(["obstruction", "--alpha", "3", "--m", "1..8"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "alpha,m,value_lo,value_hi,sign,method"
    values = [line.split(",")[2] for line in lines[1:]]
    assert values == ["1", "8", "24", "24", "0", "0", "0", "0"]


def test_obstruction_single_m():
    code, out = run_cli(["obstruction", "--alpha", "2", "--m", "2", "--format", "text"])
    assert code == 0 and "= 4" in out


def test_obstruction_witness():
    code, out = run_cli(["obstruction", "--witness", "--alpha", "1.5", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["witness_m"] == 4
    assert data["report"]["sign"] == "negative"


def test_obstruction_witness_rejects_integers():
    code, _ = run_cli(["obstruction", "--witness", "--alpha", "2"])
    assert code == 2


# -- construct-si -----------------------------------------------------------------


def test_construct_si_json():
    code, out = run_cli(["construct-si", "--perm", "odometer(2)", "-r", "2"])
    assert code == 0
    data = json.loads(out)
    assert data["verification"]["ok"] is True
    assert len(data["members"]) == 4
    assert data["family_level"] == 6


def test_construct_si_reports_falsification():
    code, out = run_cli(["construct-si", "--perm", "level=3: (0 1 2 3 4)", "-r", "1"])
    assert code == 1
    data = json.loads(out)
    assert data["verification"]["fix_failures"]


# -- gns-check / verify-all ----------------------------------------------------------


def test_gns_check():
    code, out = run_cli(["gns-check", "--level", "2", "--samples", "10", "--seed", "7"])
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True and data["seed"] == 7


def test_gns_check_accepts_nice_set_literal():
    code, out = run_cli(
        ["gns-check", "--level", "2", "--samples", "5", "--nice-set", "k=2:1010"]
    )
    assert code == 0 and json.loads(out)["ok"] is True


def test_cap_exceeded_exit_code():
    code, _ = run_cli(["char-eval", "--alpha", "1", "--perm", "identity(25)"])
    assert code == 3


def test_verify_all_json_smoke():
    code, out = run_cli(["verify-all", "--seed", "42", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert len(data["criteria"]) == 12


def test_verify_all_determinism():
    first = run_cli(["verify-all", "--seed", "42"])
    second = run_cli(["verify-all", "--seed", "42"])
    assert first == second
    assert first[0] == 0
