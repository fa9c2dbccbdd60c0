import subprocess
import sys

import pytest

from fuzzyecc import cli
from fuzzyecc.fuzzy import read_surface_csv
from fuzzyecc.reports import rows_from_csv, table2_rows, table3_rows


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def field(out, name):
    for line in out.splitlines():
        if line.startswith(name):
            return line[len(name):].strip()
    raise AssertionError(f"no {name!r} line in output")


def test_mul_chain_psize3(capsys):
    code, out, _ = run(capsys, "mul", "--curve", "small23", "--k", "763", "--strategy", "window", "--psize", "3", "--chain")
    assert code == 0
    assert field(out, "chain") == ", ".join(
        f"{m}P" for m in (5, 10, 20, 40, 47, 94, 188, 376, 381, 762, 763)
    )
    assert "doublings=7 additions=3" in out


def test_mul_zero_is_infinity(capsys):
    code, out, _ = run(capsys, "mul", "--k", "0")
    assert code == 0 and "point at infinity" in field(out, "result")


def test_binary_vs_ones_complement(capsys):
    _, a, _ = run(capsys, "mul", "--curve", "secp160r1", "--k", "763", "--strategy", "binary")
    _, b, _ = run(capsys, "mul", "--curve", "secp160r1", "--k", "763", "--strategy", "ones-complement", "--psize", "3")
    assert field(a, "result") == field(b, "result")
    assert field(a, "cost") != field(b, "cost")
    assert field(b, "cost") == "doublings=8 additions=1"


def test_mul_explicit_point_and_hex(capsys):
    code, out, _ = run(capsys, "mul", "--k", "0x2fb", "--point", "0x5,5", "--strategy", "runs")
    assert code == 0 and field(out, "k") == "763"


def test_mul_timing_table(capsys):
    code, out, _ = run(capsys, "mul", "--curve", "demo64", "--k", "99", "--strategy", "window", "--timing")
    assert code == 0
    assert "not comparable" in out
    rows = [l for l in out.splitlines() if l.strip()[:1].isdigit() and "|" in l]
    assert [int(r.split("|")[0]) for r in rows] == [1, 3, 5, 7, 8]


@pytest.mark.parametrize(
    "argv",
    [
        ["mul", "--k", "5", "--point", "1,1"],
        ["mul", "--k", "5", "--curve", "/no/such.curve"],
        ["mul", "--k", "5", "--psize", "13", "--strategy", "window"],
        ["mul", "--k", "-3"],
        ["modmul", "3", "4", "15"],
        ["surface", "--fix", "memory=0.3"],
        ["surface", "--resolution", "1"],
        ["simulate", "--workload", "/no/such/file"],
    ],
)
def test_validation_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_curve_without_base_point(capsys, tmp_path):
    f = tmp_path / "nobase.curve"
    f.write_text("p=17 a=2 b=5\n")
    code, _, err = run(capsys, "ecdh-demo", "--curve", str(f))
    assert code == 2 and "base point" in err


def test_invariant_violation_exit_3(capsys, monkeypatch):
    from fuzzyecc.curve import INFINITY

    monkeypatch.setattr(cli, "multiply", lambda *a, **k: (INFINITY, None))
    code, _, err = run(capsys, "mul", "--k", "5")
    assert code == 3 and "invariant" in err


def test_table2_csv_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "table2")
    assert code == 0
    rows = rows_from_csv(out)
    assert rows == table2_rows()
    r7 = next(r for r in rows if r.psize == 7)
    assert (r7.doublings, r7.additions) == (3, 1)
    f = tmp_path / "t3.csv"
    run(capsys, "table3", "--out", str(f))
    rows3 = rows_from_csv(f.read_text())
    assert rows3 == table3_rows()
    assert next(r for r in rows3 if r.psize == 5).precomp_actual == 15
    r7 = next(r for r in rows3 if r.psize == 7)
    assert r7.precomp_actual == 63 and "61" in r7.deviation_note


def test_modmul_trace(capsys):
    code, out, _ = run(capsys, "modmul", "26", "24", "17", "--t", "5")
    assert code == 0 and out.rstrip().endswith("raw 29, result 12")
    _, auto, _ = run(capsys, "modmul", "26", "24", "17")
    assert "t = 5" in auto
    _, one, _ = run(capsys, "modmul", "1", "1", "1009")
    assert one.rstrip().endswith("result 1")


def test_surface(capsys, tmp_path):
    code, out, err = run(capsys, "surface", "--fix", "storage=0.4", "--resolution", "2")
    assert code == 0
    assert out.count("\r\n") == 5 and len(read_surface_csv(out)) == 4
    assert "storage_room = 0.4" in err
    f = tmp_path / "surface_s08.csv"
    run(capsys, "surface", "--fix", "storage=0.8", "--out", str(f))
    assert len(read_surface_csv(f.read_text())) == 51 * 51
    code, out, _ = run(capsys, "surface", "--rules", "dominant9", "--free", "pre,doubling", "--resolution", "3", "--half-weights")
    assert code == 0 and len(read_surface_csv(out)) == 9


def test_simulate(capsys, tmp_path):
    wl = tmp_path / "burst.txt"
    wl.write_text("\n".join(["0x" + "f" * 40] * 10 + ["3", "5"] * 5 + [str(2**159 + 1)] * 10) + "\n")
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("capacity = 2000\nalpha = 0.2\nmode = full26\ninitial_psize = 4\n")
    out_csv = tmp_path / "traj.csv"
    code, _, err = run(capsys, "simulate", "--workload", str(wl), "--config", str(cfg), "--out", str(out_csv))
    assert code == 0 and "final_psize" in err
    lines = out_csv.read_bytes().decode().split("\r\n")
    assert lines[0].startswith("step,k,psize")
    assert len([l for l in lines[1:] if l]) == 30

    code, out, _ = run(capsys, "simulate", "--workload", str(wl), "--capacity", "100")
    psizes = {l.split(",")[2] for l in out.split("\r\n")[1:] if l}
    assert code == 0 and psizes == {"2"}

    code, _, err = run(capsys, "simulate", "--workload", str(wl), "--fixed", "--initial-psize", "5")
    assert code == 0 and "fixed" in err and "rebuilds=1" in err


def test_ecdh_demo(capsys):
    code, a, _ = run(capsys, "ecdh-demo", "--seed", "7")
    assert code == 0
    assert field(a, "alice  shared").split(" [")[0] == field(a, "bob    shared").split(" [")[0]
    _, again, _ = run(capsys, "ecdh-demo", "--seed", "7")
    assert again == a
    _, b, _ = run(capsys, "ecdh-demo", "--seed", "7", "--strategy", "binary")
    assert field(a, "match") == field(b, "match")
    assert field(a, "alice  public") != field(b, "alice  public")  # same point, different costs
    assert field(a, "alice  public").split(" [")[0] == field(b, "alice  public").split(" [")[0]
    _, small, _ = run(capsys, "ecdh-demo", "--curve", "small23", "--strategy", "runs")
    assert "match     yes" in small


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "fuzzyecc.cli", "modmul", "26", "24", "17", "--t", "5"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "raw 29, result 12" in res.stdout
