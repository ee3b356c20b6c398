import json

import pytest

from realword.cli import main
from realword.programs import SIGN_SRC


@pytest.fixture
def sign_file(tmp_path):
    path = tmp_path / "sign.bss"
    path.write_text(SIGN_SRC)
    return str(path)


def test_run_builtin(capsys):
    assert main(["run", "sign", "--input", "2", "--fuel", "100"]) == 0
    out = capsys.readouterr().out
    assert "status=halted" in out


def test_run_file_jsonl(sign_file, capsys):
    assert main(["run", sign_file, "--input", "0", "--fuel", "50",
                 "--format", "jsonl"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["status"] == "out_of_fuel"


def test_paths(capsys):
    assert main(["paths", "sign", "--count", "5"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 5
    assert "d=" in out[0]


def test_wp_and_verify(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    rc = main(["wp", "torus", "--word", "x(1/3) . x(2/3) . x(0)^-1",
               "--fuel", "20000", "--cert-out", str(cert)])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith("PROVED")
    assert cert.exists()
    assert main(["verify", "torus", "--word", "x(1/3) . x(2/3) . x(0)^-1",
                 "--cert", str(cert)]) == 0
    # the same certificate must not verify a different word
    assert main(["verify", "torus", "--word", "x(1/3)",
                 "--cert", str(cert)]) == 1


def test_wp_unknown_exit_code(capsys):
    assert main(["wp", "torus", "--word", "x(1/2)", "--fuel", "500"]) == 1
    assert "UNKNOWN" in capsys.readouterr().out


def test_hnn_reduce(capsys):
    assert main(["hnn-reduce", "--structure", "bs12",
                 "--word", "t . a . t^-1 . a^-2"]) == 0
    out = capsys.readouterr().out
    assert "identity=True" in out


def test_reduce_agreement(capsys):
    assert main(["reduce", "sign", "--input", "2", "--fuel", "2000"]) == 0
    out = capsys.readouterr().out
    assert "agree=True" in out and "group=member" in out


def test_figure1_deterministic(capsys):
    assert main(["figure1", "--row", "add", "--samples", "10", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["figure1", "--row", "add", "--samples", "10", "--seed", "3"]) == 0
    assert capsys.readouterr().out == first
    assert main(["figure1", "--row", "nope"]) == 2


def test_examples(capsys):
    assert main(["examples", "torus", "--word", "x(1/3) . x(2/3)"]) == 0
    assert "identity=True" in capsys.readouterr().out
    assert main(["examples", "circle", "--word", "x(0,1)"]) == 0
    assert "identity=False" in capsys.readouterr().out


def test_selftest_single_check(capsys):
    assert main(["selftest", "--seed", "7", "--only", "action"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS action-laws")


def test_usage_errors(capsys):
    assert main(["wp"]) == 2
    assert main(["run", "/nonexistent/prog.bss"]) == 2
    assert main([]) == 2


def test_wp_accepts_presentation_file(tmp_path, capsys):
    from realword.presentations import save_presentation
    from realword.sample_groups import torus_presentation
    pres = tmp_path / "torus.json"
    save_presentation(torus_presentation(), str(pres))
    cert = tmp_path / "c.json"
    assert main(["wp", str(pres), "--word", "x(1/4) . x(3/4) . x(1)^-1",
                 "--fuel", "20000", "--cert-out", str(cert)]) == 0
    assert "PROVED" in capsys.readouterr().out
    assert main(["verify", str(pres), "--word", "x(1/4) . x(3/4) . x(1)^-1",
                 "--cert", str(cert)]) == 0


def test_reduce_disagreement_exit_code(monkeypatch, capsys):
    # fault injection: a group side that never finds members must disagree
    # with the simulator on a halting input and exit 1
    from realword import reduction

    def broken(self, w, fuel):
        return False

    monkeypatch.setattr(reduction.UHandle, "member_within", broken)
    assert main(["reduce", "sign", "--input", "2", "--fuel", "500"]) == 1
    assert "agree=False" in capsys.readouterr().out
