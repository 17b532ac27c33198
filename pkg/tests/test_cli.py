import json
import subprocess
import sys


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "paratwist", *args],
                          capture_output=True, text=True)
    return proc


def test_verify_cosets_report(tmp_path):
    report = tmp_path / "cosets.json"
    proc = run_cli("--report", str(report), "verify", "cosets",
                   "--op", "T1", "--ell", "2", "--r", "0")
    assert proc.returncode == 0
    payload = json.loads(report.read_text())
    assert payload["count"] == 15
    assert payload["disjoint"] is True
    assert payload["divisors_ok"] is True


def test_verify_cosets_r1_skips_divisors(tmp_path):
    report = tmp_path / "c.json"
    proc = run_cli("--report", str(report), "verify", "cosets",
                   "--op", "T2", "--ell", "2", "--r", "1")
    assert proc.returncode == 0
    payload = json.loads(report.read_text())
    assert payload["count"] == 24 and payload["divisors_ok"] == "skipped"


def test_usage_error_exit_code():
    proc = run_cli("verify", "cosets", "--op", "T9", "--ell", "2")
    assert proc.returncode == 2


def test_negative_control_consistency(tmp_path):
    report = tmp_path / "neg.json"
    proc = run_cli("--report", str(report), "verify", "consistency",
                   "--p", "3", "--negative-control")
    # the deliberately perturbed family must fail, which the control expects
    assert proc.returncode == 0
    payload = json.loads(report.read_text())
    assert payload["ok"] is True


def test_consistency_small_family(tmp_path):
    report = tmp_path / "cons.json"
    proc = run_cli("--report", str(report), "verify", "consistency",
                   "--p", "3", "--families", "10,9")
    assert proc.returncode == 0
    payload = json.loads(report.read_text())
    assert payload["results"] == {"10": True, "9": True}


def test_twist_zero_input(tmp_path):
    src = tmp_path / "zero.json"
    out = tmp_path / "tw.json"
    src.write_text(json.dumps({
        "format": "paratwist-expansion-v1", "kind": "siegel", "weight": 10,
        "level": 1, "cuspidal": True, "cyclotomic_order": None,
        "coefficients": [], "complete": [[n, r, m] for n in range(3)
                                         for r in range(-2, 3)
                                         for m in range(3)
                                         if 4 * n * m - r * r > 0],
    }))
    proc = run_cli("--report", str(tmp_path / "r.json"), "twist",
                   "--input", str(src), "--p", "3", "--out", str(out),
                   "--window-n", "81", "--window-m", "1")
    assert proc.returncode == 0
    payload = json.loads(out.read_text())
    assert payload["coefficients"] == []


def test_gl2_twist_and_determinism(tmp_path):
    r1 = tmp_path / "a.json"
    r2 = tmp_path / "b.json"
    for rp in (r1, r2):
        proc = run_cli("--report", str(rp), "gl2-twist", "--p", "3",
                       "--trunc", "20")
        assert proc.returncode == 0
    a = json.loads(r1.read_text())
    b = json.loads(r2.read_text())
    a.pop("timestamp")
    b.pop("timestamp")
    assert a == b


def test_make_form_and_eval(tmp_path):
    out = tmp_path / "delta.json"
    proc = run_cli("--report", str(tmp_path / "m.json"), "make-form",
                   "--kind", "delta", "--trunc", "30", "--out", str(out))
    assert proc.returncode == 0
    rep = tmp_path / "e.json"
    proc = run_cli("--report", str(rep), "eval", "--input", str(out),
                   "--z11-im", "1.0")
    assert proc.returncode == 0
    payload = json.loads(rep.read_text())
    # Delta(i) is real and close to 0.0017853
    assert abs(float(payload["value"][0]) - 0.0017853698506) < 1e-9


def test_verify_identities_cli():
    proc = run_cli("verify", "identities", "--p", "3")
    assert proc.returncode == 0
