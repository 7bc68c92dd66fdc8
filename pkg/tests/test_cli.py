"""Command-line interface: argument parsing, table and file output,
machine-readable errors, and byte-identical reruns."""

import json
import math
from fractions import Fraction

import pytest

from wedge_cot.cli import (
    format_pi_fraction,
    main,
    parse_angle,
    parse_delta,
    parse_polarization,
)
from wedge_cot.constants import VERSION
from wedge_cot.errors import ValidationError
from wedge_cot.spectrum import Polarization


# ----------------------------------------------------------------- parsing

def test_parse_angle_pi_fractions():
    value, frac = parse_angle("pi/15")
    assert frac == Fraction(1, 15)
    assert value == float(Fraction(1, 15)) * math.pi
    value, frac = parse_angle("2pi/5")
    assert frac == Fraction(2, 5)
    assert value == float(Fraction(2, 5)) * math.pi
    value, frac = parse_angle("pi")
    assert frac == Fraction(1)
    assert value == math.pi


def test_parse_angle_decimal():
    value, frac = parse_angle("0.25")
    assert value == 0.25
    assert frac is None


def test_parse_angle_rejects_garbage():
    with pytest.raises(ValidationError):
        parse_angle("quarter-turn")
    with pytest.raises(ValidationError):
        parse_angle("pi/0")


@pytest.mark.parametrize("frac, text", [
    (Fraction(0), "0"),
    (Fraction(1), "pi"),
    (Fraction(1, 5), "pi/5"),
    (Fraction(2, 5), "2pi/5"),
    (Fraction(6, 5), "6pi/5"),
    (Fraction(28, 15), "28pi/15"),
])
def test_format_pi_fraction(frac, text):
    assert format_pi_fraction(frac) == text
    # the table syntax parses back to the same exact fraction
    _, parsed = parse_angle(text) if text != "0" else (0.0, Fraction(0))
    assert parsed == frac


def test_parse_polarization():
    assert parse_polarization("x") == Polarization.x()
    assert parse_polarization("z") == Polarization.z()
    pol = parse_polarization("pi/2,pi/4")
    assert pol.theta_L == pytest.approx(math.pi / 2, abs=0)
    assert pol.phi_L == pytest.approx(math.pi / 4, abs=0)
    with pytest.raises(ValidationError):
        parse_polarization("circular")


def test_parse_delta():
    assert parse_delta("hard").delta == math.pi
    assert parse_delta("soft").delta == math.pi / 2
    assert parse_delta("2.5").delta == 2.5


# ------------------------------------------------------------ orbits table

def test_orbits_table_symbolic_angles(capsys):
    assert main(["orbits", "--n", "5", "--beta", "pi/15"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split() == ["label", "phi_out", "phi_ret", "m",
                                "length", "length_a0"]
    body = [line.split() for line in lines[1:]]
    assert len(body) == 9
    assert [row[0] for row in body] == [str(j) for j in range(1, 10)]
    assert body[0][1:5] == ["pi/5", "6pi/5", "1", "2*rho*|sin(2pi/15)|"]
    assert body[8][1:5] == ["pi", "0", "1", "2*rho*|sin(14pi/15)|"]
    # time-reversed partners share the numeric length column exactly
    assert body[1][5] == body[7][5]
    assert body[3][5] == body[5][5]


def test_orbits_decimal_beta_gets_numeric_angles(capsys):
    assert main(["orbits", "--n", "2", "--beta", "0.3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1 + 3


# ------------------------------------------------------------- exit codes

def test_conflicting_wedge_flags_exit_2(capsys):
    assert main(["orbits", "--n", "5", "--alpha", "pi/5"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error[")
    assert err.count("\n") == 1


def test_beta_out_of_range_exit_2(capsys):
    assert main(["orbits", "--n", "5", "--beta", "0"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error[beta-out-of-range]")


def test_below_threshold_exit_2(capsys):
    assert main(["spectrum", "--e-min", "0.1", "--e-max", "1.4",
                 "--steps", "16"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error[below-threshold]")


def test_unknown_flag_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["orbits", "--frequency", "12"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_unwritable_output_exit_3(capsys):
    assert main(["spectrum", "--steps", "2",
                 "-o", "/nonexistent/dir/out.csv"]) == 3
    err = capsys.readouterr().err
    assert err.startswith("error[unwritable-output]")


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == f"wedge-cot {VERSION}"


# ------------------------------------------------------------ file formats

def test_csv_structure_and_precision(tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["spectrum", "--steps", "4", "--e-min", "0.8",
                 "--e-max", "1.2", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == f"# wedge-cot v{VERSION}"
    comments = [ln for ln in lines if ln.startswith("# ")]
    assert any(ln.startswith("# generator=") for ln in comments)
    header_at = len(comments)
    assert lines[header_at] == "E_photon_eV,sigma0_au,sigma_osc_au,sigma_au"
    rows = [ln.split(",") for ln in lines[header_at + 1:]]
    assert len(rows) == 4
    for row in rows:
        e, sigma0, osc, sigma = map(float, row)
        # 17 significant digits round-trip doubles exactly
        assert sigma == sigma0 + osc
    assert float(rows[0][0]) == 0.8
    assert float(rows[-1][0]) == 1.2


def test_json_structure(tmp_path):
    out = tmp_path / "scan.json"
    assert main(["spectrum", "--steps", "3", "--e-min", "0.8",
                 "--e-max", "1.2", "--format", "json", "-o", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["meta"]["tool"] == "wedge-cot"
    assert payload["meta"]["version"] == VERSION
    assert payload["columns"] == ["E_photon_eV", "sigma0_au",
                                  "sigma_osc_au", "sigma_au"]
    assert len(payload["rows"]) == 3
    for row in payload["rows"]:
        assert row[3] == row[1] + row[2]


def test_z_polarization_spectrum_is_flat(tmp_path):
    out = tmp_path / "z.json"
    assert main(["spectrum", "--pol", "z", "--steps", "32",
                 "--format", "json", "-o", str(out)]) == 0
    payload = json.loads(out.read_text())
    osc = payload["columns"].index("sigma_osc_au")
    assert all(row[osc] == 0.0 for row in payload["rows"])


def test_decompose_csv_has_term_columns(tmp_path):
    out = tmp_path / "terms.csv"
    assert main(["decompose", "--n", "3", "--steps", "8",
                 "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    header = next(ln for ln in lines if not ln.startswith("#"))
    names = header.split(",")
    assert names[:2] == ["E_photon_eV", "sigma_osc_total_au"]
    assert names[2:] == [f"term_{j}_au" for j in range(1, 6)]


def test_sweep_and_polmap_commands_run(tmp_path):
    assert main(["sweep-rho", "--rho-min", "50", "--rho-max", "200",
                 "--steps", "8", "-o", str(tmp_path / "r.csv")]) == 0
    assert main(["sweep-beta", "--steps", "8",
                 "-o", str(tmp_path / "b.csv")]) == 0
    assert main(["polmap", "--theta-steps", "3", "--phi-steps", "4",
                 "--format", "json", "-o", str(tmp_path / "p.json")]) == 0
    payload = json.loads((tmp_path / "p.json").read_text())
    assert len(payload["rows"]) == 12


# ------------------------------------------------------------ determinism

def test_same_argv_reruns_are_byte_identical(tmp_path):
    out = tmp_path / "run.csv"
    argv = ["spectrum", "--n", "4", "--beta", "pi/10", "--steps", "64",
            "-o", str(out)]
    assert main(argv) == 0
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first

    out_json = tmp_path / "run.json"
    argv_json = ["polmap", "--theta-steps", "5", "--phi-steps", "4",
                 "--format", "json", "-o", str(out_json)]
    assert main(argv_json) == 0
    first = out_json.read_bytes()
    assert main(argv_json) == 0
    assert out_json.read_bytes() == first
