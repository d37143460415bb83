import io
import json
import subprocess
import sys

import pytest

from partalg.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_enumerate_count():
    assert run("enumerate", "--r", "2", "--count-only") == (0, "15\n")
    code, text = run("enumerate", "--r", "1")
    assert code == 0 and len(text.splitlines()) == 2


def test_verify_foulkes():
    code, text = run("verify-lemma", "--which", "foulkes", "--a", "2", "--m", "2", "--field", "Q")
    assert code == 0
    assert json.loads(text)["verdict"] == "pass"


@pytest.mark.parametrize("which", ["psi", "theta", "phi", "foulkes-product"])
def test_verify_class_lemmas(which):
    code, text = run("verify-lemma", "--which", which, "--r", "4", "--l", "3", "--n", "2")
    data = json.loads(text)
    assert code == 0 and len(data["certificates"]) == 2
    code, text = run("verify-lemma", "--which", which, "--r", "4", "--l", "3", "--n", "2", "--class", "1")
    assert code == 0 and json.loads(text)["certificates"][0]["class_index"] == 1


def test_restrict_pass(tmp_path):
    jpath, cpath = tmp_path / "r.json", tmp_path / "r.csv"
    code, text = run("restrict", "--r", "3", "--l", "2", "--n", "1", "--nu", "1", "--delta", "1", "--field", "Q",
                     "--json", str(jpath), "--csv", str(cpath))
    assert code == 0 and "verdict: pass" in text
    assert json.loads(jpath.read_text())["verdict"] == "pass"
    assert cpath.read_text().startswith("schema_version,lambda")


def test_restrict_prime_field_residue():
    code, text = run("restrict", "--r", "4", "--l", "3", "--n", "2", "--nu", "2", "--field", "Fp:5", "--delta", "p:3")
    assert code == 0 and "field=Fp:5" in text


def test_multiply_json():
    code, text = run("multiply", "{1,1'},{2,2'}", "{1,2},{1',2'}", "--r", "2", "--delta", "3", "--json")
    assert code == 0
    assert json.loads(text)["terms"] == [{"blocks": [[1, 2], [3, 4]], "coeff": "1"}]
    code, text = run("multiply", "{1,2},{1',2'}", "{1,2},{1',2'}", "--r", "2", "--delta", "3")
    assert code == 0 and text.startswith("3")


def test_classes_and_characters():
    code, text = run("classes", "--r", "4", "--l", "4", "--n", "2")
    assert code == 0 and len(text.splitlines()) == 5
    code, text = run("characters", "--n", "4")
    assert code == 0 and len(text.strip().splitlines()) == 6


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["restrict", "--r", "3", "--l", "2", "--n", "1", "--nu", "x"], "--nu"),
        (["restrict", "--r", "3", "--l", "2", "--n", "1", "--nu", "1", "--field", "R"], "--field"),
        (["restrict", "--r", "3", "--l", "2", "--n", "1", "--nu", "1", "--delta", "abc"], "--delta"),
        (["enumerate", "--r", "two"], "--r"),
        (["verify-lemma", "--which", "foulkes", "--a", "2"], "--a"),
        (["verify-lemma", "--which", "psi", "--r", "4", "--l", "3", "--n", "2", "--class", "9"], "--class"),
    ],
)
def test_usage_errors_name_the_flag(argv, flag, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv, out=io.StringIO())
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_domain_errors_exit_two(capsys):
    code, _ = run("restrict", "--r", "3", "--l", "2", "--n", "1", "--nu", "1", "--delta", "0")
    assert code == 2
    assert "delta" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "partalg", "enumerate", "--r", "2", "--count-only"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "15\n"
