import json

import pytest

from lattice_entanglement.cli import main, parse_separations


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_separations():
    assert parse_separations("1,2") == ((1,), (2,))
    assert parse_separations("1:0,1:1") == ((1, 0), (1, 1))


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--sites", "3", "--delta", "0")
    assert code == 0
    lines = out.strip().split("\r\n")
    assert lines[0] == "l1,x,omega_l" and len(lines) == 4


def test_negativity_single_point(capsys):
    code, out, _ = run(capsys, "negativity", "--sites", "49", "--delta", "1", "--temp", "0", "--format", "json")
    assert code == 0
    rows = json.loads(out)[1:]
    assert rows[0]["negativity"] == pytest.approx(0.17, abs=0.02)
    assert rows[0]["entangled"] is True


def test_covariance_range_isolates_errors(capsys):
    code, out, _ = run(capsys, "covariance", "--sites", "5", "--delta", "0", "--temp-range", "0.1:1:3")
    assert code == 0
    assert out.count("ZeroModeDivergence") == 3


def test_tcrit(capsys):
    code, out, _ = run(capsys, "tcrit", "--sites", "49", "--delta", "1", "--tol", "1e-5")
    assert code == 0
    assert float(out.split("\r\n")[1].split(",")[1]) == pytest.approx(1.25, abs=0.05)


def test_exit_codes(capsys):
    assert run(capsys, "tcrit", "--sites", "4", "--delta", "1")[0] == 1
    assert run(capsys, "negativity", "--sites", "5", "--delta", "0", "--temp", "1")[0] == 2
    assert run(capsys, "tcrit", "--sites", "51", "--delta", "1e-4", "--r", "2")[0] == 2
    assert run(capsys, "sweep", "--sites", "5", "--delta", "1", "--axis1", "temperature:0.1:1:3", "--observables", "")[0] == 1
    assert run(capsys, "negativity", "--sites", "5")[0] == 1


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--sites", "49", "--delta", "1e-4", "--temp", "0.5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["metadata"]["bound_convention"] == "paper"
    assert payload[1]["verdict"] == "WitnessedEntangled"


def test_sweep_to_file_is_deterministic(tmp_path, capsys):
    outs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        code, _, _ = run(capsys, "sweep", "--sites", "3", "--delta", "1e-4", "--axis1", "sites:3:9:4",
                         "--axis2", "temperature:0.01:3:5", "--r", "1,2", "--out", str(path))
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].count(b"\r\n") == 21


def test_phase_diagram_literature(capsys):
    code, out, _ = run(capsys, "phase-diagram", "--delta-range", "1e-4:1:3:log", "--literature", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert "literature" in payload[0]["metadata"]
    assert all(r["t_ew_paper"] >= r["t_nn"] for r in payload[1:])


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--skip-fock")
    assert code == 0 and out.count("PASS") == 3
