import json
import subprocess
import sys

import pytest

from yoshida.cli import main
from yoshida.checks import validate_report


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, data_dir):
    code, out, _ = run(capsys, "validate", data_dir / "union.gpd")
    assert code == 0 and "6 objects, 20 morphisms, 3 components" in out


def test_validate_json_input(capsys, data_dir):
    code, out, _ = run(capsys, "validate", data_dir / "c2.json", "--format", "json")
    assert code == 0 and json.loads(out)["morphisms"] == 2


@pytest.mark.parametrize("content, suffix", [
    ("groupoid G { component a { isotropy = cyclic(2); objects = 0; } }", ".gpd"),
    ("groupoid G { component a { isotropy = quaternion; objects = 1; } }", ".gpd"),
    ('{"objects": ["a"], "morphisms": [{"id": "e", "dom": "a", "cod": "a"}], '
     '"identities": {"a": "e"}, "compose": []}', ".json"),
    ("{oops", ".json"),
])
def test_input_errors_exit_2(capsys, tmp_path, content, suffix):
    path = tmp_path / f"bad{suffix}"
    path.write_text(content)
    code, _, err = run(capsys, "validate", path)
    assert code == 2 and err.startswith("error:")


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, _ = run(capsys, "info", tmp_path / "absent.gpd")
    assert code == 2


def test_info(capsys, data_dir):
    code, out, _ = run(capsys, "info", data_dir / "union.gpd", "--format", "json")
    d = json.loads(out)
    assert d["omega_fiber_sizes"] == [3, 3, 4, 1, 1, 1]
    assert d["crossed_burnside_classes"] == 11 and d["dim_yoshida"] == 128


def test_center(capsys, data_dir):
    code, out, _ = run(capsys, "center", data_dir / "union.gpd", "--format", "json",
                       "--primes", "23,29")
    d = json.loads(out)
    assert code == 0 and d["dim"] == 6 and set(d["fingerprint"]) == {"23", "29"}


def test_bad_primes_rejected(capsys, data_dir):
    with pytest.raises(SystemExit):
        main(["center", str(data_dir / "c2.json"), "--primes", "4"])


def test_yoshida(capsys, data_dir):
    code, out, _ = run(capsys, "yoshida", data_dir / "c2_pair2.gpd", "--center",
                       "--format", "json")
    d = json.loads(out)
    assert d["dim"] == 41 and d["algebra"]["dim"] == 41 and d["center"]["dim"] == 2


def test_yoshida_bound(capsys, data_dir):
    code, out, _ = run(capsys, "yoshida", data_dir / "s3_pair2.gpd", "--center")
    assert code == 0 and "skipped" in out
    code, _, _ = run(capsys, "yoshida", data_dir / "s3_pair2.gpd", "--center", "--strict")
    assert code == 3
    code, out, _ = run(capsys, "yoshida", data_dir / "s3_pair2.gpd", "--dim-only")
    assert code == 0 and "17651" in out


def test_burnside(capsys, data_dir):
    code, out, _ = run(capsys, "burnside", data_dir / "c2.json", "--table", "--rho",
                       "--format", "json")
    d = json.loads(out)
    assert len(d["classes"]) == 4 and len(d["table"]) == 4
    assert d["rho"]["rank"] == 2 and d["rho"]["ok"]
    assert sorted(map(json.dumps, d["rho"]["images"])) == sorted(
        map(json.dumps, [{"0": 1}, {"1": 1}, {"0": 2}, {"1": 2}]))


def test_verify_json(capsys, data_dir):
    code, out, _ = run(capsys, "verify", data_dir / "union.gpd", "--format", "json", "--seed", "0")
    assert code == 0
    validate_report(json.loads(out))
    code2, out2, _ = run(capsys, "verify", data_dir / "union.gpd", "--format", "json", "--seed", "0")
    assert out == out2


def test_verify_single_check(capsys, data_dir):
    code, out, _ = run(capsys, "verify", data_dir / "c2.json", "--check", "rho-surjective")
    assert code == 0 and "rho-surjective" in out and "structure-iso" not in out


def test_verify_strict_skip(capsys, data_dir):
    code, out, _ = run(capsys, "verify", data_dir / "s3_pair2.gpd", "--strict",
                       "--check", "yoshida-center-iso")
    assert code == 3 and "SKIPPED" in out


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "yoshida", "validate", str(data_dir / "c2.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "valid" in proc.stdout
