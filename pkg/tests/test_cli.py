import json

import numpy as np
import pytest

from paccodes import CodeSpec, latency_report, load_profile, pac_encode
from paccodes.cli import main

from conftest import G_PAPER


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invpoly_table(capsys):
    code, out, _ = run_cli(capsys, "invpoly", "--g", "1011011", "--n", "16")
    assert code == 0
    assert "(1,0,1,1,1,1,1,1,0,0,1,0,1,0,1,0)" in out
    assert "(1,0,1,1)" in out  # nested shorter rows included


def test_invpoly_validation(capsys):
    code, _, err = run_cli(capsys, "invpoly", "--g", "0111", "--n", "8")
    assert code == 2 and "--g" in err
    code, _, err = run_cli(capsys, "invpoly", "--g", "1011011", "--n", "12")
    assert code == 2 and "--n" in err


def test_encode_decode_roundtrip(tmp_path, capsys):
    data = "1" * 36 + "0" * 36
    code, out, _ = run_cli(
        capsys, "encode", "--profile", "pac_128_72", "--n", "128", "--data", data
    )
    assert code == 0
    cw = np.array([int(ch) for ch in out.strip()], dtype=np.uint8)
    spec = CodeSpec.create(128, load_profile("pac_128_72"), G_PAPER)
    assert np.array_equal(cw, pac_encode(np.array([int(c) for c in data]), spec))

    llr_file = tmp_path / "llr.txt"
    llr_file.write_text("\n".join(f"{v:.6f}" for v in (1.0 - 2.0 * cw) * 20.0))
    code, out, _ = run_cli(
        capsys,
        "decode",
        "--profile",
        "pac_128_72",
        "--n",
        "128",
        "--llr",
        str(llr_file),
        "--decoder",
        "sscl",
    )
    assert code == 0
    assert out.strip() == data


def test_encode_hex_input(tmp_path, capsys):
    prof = tmp_path / "k8.profile"
    prof.write_text("\n".join(str(i) for i in range(8, 16)))
    code, out, _ = run_cli(
        capsys, "encode", "--profile", str(prof), "--n", "16", "--data", "0xa5"
    )
    assert code == 0
    code2, out2, _ = run_cli(
        capsys, "encode", "--profile", str(prof), "--n", "16", "--data", "10100101"
    )
    assert code2 == 0 and out == out2
    # unknown profile fails cleanly
    code, _, err = run_cli(capsys, "encode", "--profile", "nope", "--n", "4", "--data", "1")
    assert code == 2 and "profile" in err


def test_decode_validation(tmp_path, capsys):
    llr_file = tmp_path / "llr.txt"
    llr_file.write_text("1.0\nnot-a-number\n")
    code, _, err = run_cli(
        capsys,
        "decode",
        "--profile",
        "pac_128_72",
        "--n",
        "128",
        "--llr",
        str(llr_file),
    )
    assert code == 2 and "not a decimal LLR" in err


def test_simulate_deterministic_csv(tmp_path, capsys):
    args = [
        "simulate",
        "--profile", "pac_128_72",
        "--n", "128",
        "--snr", "3.0",
        "--max-trials", "60",
        "--min-errors", "3",
        "--seed", "5",
        "--decoder", "scl",
        "--list-size", "4",
    ]
    f1, f2, f3 = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
    assert main(args + ["--out", str(f1)]) == 0
    assert main(args + ["--out", str(f2)]) == 0
    assert main(args + ["--out", str(f3), "--jobs", "2"]) == 0
    assert f1.read_bytes() == f2.read_bytes() == f3.read_bytes()
    body = f1.read_text().splitlines()
    assert body[0].startswith("# paccodes")
    assert body[1].startswith("# config:")
    assert body[2] == "snr_db,trials,block_errors,bler,ci_low,ci_high,decoder,L,Z,seed"
    assert body[3].startswith("3,") and body[3].endswith(",scl,4,4,5")


def test_simulate_snr_sweep_parsing(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    assert (
        main(
            [
                "simulate",
                "--profile", "pac_128_72",
                "--n", "128",
                "--snr", "2.0:3.0:0.5",
                "--max-trials", "10",
                "--min-errors", "1",
                "--out", str(out),
            ]
        )
        == 0
    )
    rows = [l for l in out.read_text().splitlines() if not l.startswith("#")][1:]
    assert [r.split(",")[0] for r in rows] == ["2", "2.5", "3"]


def test_latency_json_and_csv(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys, "latency", "--profile", "pac_128_72", "--n", "128", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    spec = CodeSpec.create(128, load_profile("pac_128_72"), G_PAPER)
    rep = latency_report(spec)
    assert payload["scl_cycles"] == rep.scl_cycles == 326
    assert payload["sscl_cycles"] == rep.sscl_cycles
    assert payload["node_stats"] == {
        str(k): v for k, v in rep.node_stats.by_length().items()
    }

    code, out, _ = run_cli(
        capsys, "latency", "--profile", "pac_128_72", "--n", "128", "--format", "csv"
    )
    assert code == 0
    assert "node_length,rate0,rep,rate1,spc" in out


def test_config_file_defaults_and_overrides(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("g = 1011011\nn = 16\n")
    code, out, _ = run_cli(capsys, "invpoly", "--config", str(cfg))
    assert code == 0 and "(1,0,1,1,1,1,1,1,0,0,1,0,1,0,1,0)" in out
    # explicit flag wins over the file value
    code, out, _ = run_cli(capsys, "invpoly", "--config", str(cfg), "--n", "4")
    assert code == 0 and "(1,0,1,1,1,1,1,1" not in out


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("gee = 1011011\n")
    with pytest.raises(SystemExit):
        main(["invpoly", "--config", str(cfg), "--g", "101", "--n", "4"])


def test_profile_k_mismatch(capsys):
    code, _, err = run_cli(
        capsys, "latency", "--profile", "pac_128_72", "--n", "128", "--k", "64"
    )
    assert code == 2 and "--k" in err


def test_reference_engine_decode(tmp_path, capsys):
    prof = tmp_path / "tiny.profile"
    prof.write_text("3\n5\n6\n7\n")
    spec = CodeSpec.create(8, (3, 5, 6, 7), G_PAPER)
    d = np.array([1, 0, 1, 1], dtype=np.uint8)
    cw = pac_encode(d, spec)
    llr_file = tmp_path / "llr.txt"
    llr_file.write_text("\n".join(f"{v:.3f}" for v in (1.0 - 2.0 * cw) * 8.0))
    code, out, _ = run_cli(
        capsys,
        "decode",
        "--profile", str(prof),
        "--n", "8",
        "--llr", str(llr_file),
        "--engine", "reference",
    )
    assert code == 0 and out.strip() == "1011"
