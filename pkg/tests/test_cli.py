import json
from pathlib import Path

import pytest

from darboux_eta.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
CUSP = str(CONFIGS / "cusp.cfg")
SEXTIC = str(CONFIGS / "sextic_11_2.cfg")


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_solve(capsys):
    code, data = run_json(capsys, "solve", "--config", CUSP, "--degree", "1")
    assert code == 0
    assert data["dimension"] == 1 and data["trivial_dimension"] == 0
    assert set(data["basis"][0]) == {"omega", "P", "Q", "cofactors"}


def test_cofactor(capsys):
    code, data = run_json(capsys, "cofactor", "--config", CUSP, "--curve", "C", "--form", "w")
    assert code == 0 and data["cofactor"] == "6"


def test_eta_in_both_charts(capsys):
    _, data = run_json(capsys, "eta", "--config", CUSP, "--form", "w", "--point", "O")
    assert data["eta"] == [6, 5] and data["chart"] == "affine"
    _, data = run_json(capsys, "eta", "--config", CUSP, "--form", "w", "--point", "A", "--prime-chart")
    assert data["eta_prime"] == [-3, -3, -4]
    assert data["projected"] == [6, 5]


def test_certify_the_sextic(capsys):
    code, data = run_json(capsys, "certify", "--config", SEXTIC)
    assert code == 0
    assert data["kernel"] == [2, 1, 2, -2]
    assert data["rank"] == 3 and data["rank_bound"] == 3
    assert data["exponents"] == ["-1/2", -1]
    assert data["failed_stages"] == ["general position"]
    assert data["verified"] is False
    assert data["rows"][-1]["label"] == "center"


def test_zeros(capsys):
    code, data = run_json(capsys, "zeros", "--config", SEXTIC, "--form", "w")
    assert code == 0
    assert data["outside"] == ["(71:10:51)"]
    assert data["total_with_multiplicity"] == 13


def test_frommer_at_a_zero(capsys):
    code, data = run_json(capsys, "frommer", "--config", SEXTIC, "--form", "w", "--prime", "29", "--at", "(71:10:51)", "--jacobian")
    assert code == 0
    assert data["all_vanish"] and data["jacobian_rank"] == 11
    assert len(data["focal_values"]) == 13


def test_frommer_on_a_literal_form(capsys):
    code = main(["frommer", "--form", "x*dx + y*dy", "--prime", "29", "--count", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "eta_3 = 0" in out and "all vanish: True" in out


def test_flags_after_the_command(capsys):
    code = main(["eta", "--config", CUSP, "--form", "w", "--point", "O", "--json", "--field", "GF(29)"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0 and data["eta"] == ["6", "5"]


def test_paper_command_exit_codes(capsys):
    assert main(["paper", "--construction", "11_25"]) == 0
    assert "all stages passed: True" in capsys.readouterr().out
    assert main(["paper", "--construction", "11_2", "--no-frommer"]) == 1
    capsys.readouterr()


def test_errors_are_reported_with_exit_code_two(capsys):
    assert main(["cofactor", "--config", CUSP, "--curve", "C", "--form", "nope"]) == 2
    assert "unknown form" in capsys.readouterr().err
    assert main(["solve", "--config", "missing.cfg", "--degree", "1"]) == 2
    assert main(["paper", "--construction", "11_99"]) == 2
    assert main(["frommer", "--form", "x*dx + y*dy", "--prime", "23"]) == 2
    capsys.readouterr()


def test_missing_arguments_exit_through_argparse():
    with pytest.raises(SystemExit):
        main(["solve"])
