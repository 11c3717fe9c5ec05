import subprocess
import sys

import numpy as np
import pytest

from amcmodem import AmcPolicy, PassbandParams, Scheme, dqpsk_decode, read_iq, synth_fsk
from amcmodem.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, main
from amcmodem.harness import CSV_HEADER


def run(*argv):
    return main([str(a) for a in argv])


def test_ber_sweep_writes_csv(tmp_path):
    out = tmp_path / "s.csv"
    assert run("ber-sweep", "--scheme", "qpsk", "--ebn0-start", 0, "--ebn0-stop", 4,
               "--ebn0-step", 2, "--bits", "2e4", "--out", out) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert [l.split(",")[2] for l in lines[1:]] == ["0", "2", "4"]
    assert all(l.startswith("QPSK,") for l in lines[1:])


def test_ber_sweep_stdout(capsys):
    assert run("ber-sweep", "--ebn0-stop", 0, "--bits", 10000) == EXIT_OK
    assert capsys.readouterr().out.startswith(CSV_HEADER + "\n")


def test_derive_policy(tmp_path):
    out = tmp_path / "p.txt"
    assert run("derive-policy", "--target-ber", 1e-2, "--seed", 3, "--out", out) == EXIT_OK
    policy = AmcPolicy.from_text(out.read_text())
    assert policy.schemes == tuple(Scheme)
    assert policy.target_ber == 1e-2


def test_range_sim_with_policy_file(tmp_path):
    pol = tmp_path / "p.txt"
    pol.write_text("target-ber = 0.001\nhysteresis = 0\nthreshold.BPSK = 7\n"
                   "threshold.QPSK = 10\nthreshold.QAM16 = 16.5\nthreshold.QAM64 = 22.75\n")
    out = tmp_path / "r.csv"
    assert run("range-sim", "--policy", pol, "--points", 5, "--bits", 12000,
               "--out", out) == EXIT_OK
    rows = out.read_text().splitlines()[1:]
    assert [r.split(",")[0] for r in rows] == ["QAM64", "QAM16", "QPSK", "BPSK", "BPSK"]


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# sweep\nscheme = qam16\nebn0_start = 1\nebn0-stop = 1\nbits = 20000\n")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run("ber-sweep", "--config", cfg, "--out", a) == EXIT_OK
    assert a.read_text().splitlines()[1].startswith("QAM16,")
    assert run("ber-sweep", "--config", cfg, "--scheme", "bpsk", "--out", b) == EXIT_OK
    assert b.read_text().splitlines()[1].startswith("BPSK,1,1,")


@pytest.mark.parametrize("text", ["nonsense = 1\n", "bits = many\n", "no equals sign\n"])
def test_bad_config_file(tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    assert run("ber-sweep", "--config", cfg) == EXIT_CONFIG


def test_missing_config_file_is_io_error(tmp_path):
    assert run("ber-sweep", "--config", tmp_path / "absent.cfg") == EXIT_IO


@pytest.mark.parametrize("argv", [
    ["ber-sweep", "--bits", 100],
    ["ber-sweep", "--ebn0-step", 0],
    ["derive-policy", "--target-ber", 0.3],
    ["derive-policy", "--budget", 10],
    ["range-sim", "--dmin", 0],
    ["synth", "--out", "x.iq"],
    ["synth", "--scheme", "qam16", "--random-bits", 5, "--out", "x.iq"],
    ["synth", "--random-bits", 8, "--sps", 3, "--out", "x.iq"],
])
def test_invalid_configuration_exit_code(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(*argv) == EXIT_CONFIG


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run("ber-sweep", "--scheme", "qam256")
    assert exc.value.code == 2


def test_unwritable_output_exit_3(tmp_path):
    assert run("ber-sweep", "--bits", 10000, "--ebn0-stop", 0,
               "--out", tmp_path / "no" / "x.csv") == EXIT_IO


def test_synth_passband(tmp_path):
    out = tmp_path / "f.iq"
    bits = tmp_path / "bits.txt"
    bits.write_text("0 1 1\n0\n")
    assert run("synth", "--scheme", "fsk", "--bits-file", bits, "--out", out) == EXIT_OK
    f = read_iq(out)
    assert f.kind == 1 and f.sample_rate == 16000.0
    assert np.allclose(f.samples, synth_fsk([0, 1, 1, 0], PassbandParams()).samples, atol=1e-7)


def test_synth_dqpsk_baseband(tmp_path):
    out = tmp_path / "d.iq"
    assert run("synth", "--scheme", "dqpsk", "--random-bits", 64, "--seed", 4,
               "--baseband", "--out", out) == EXIT_OK
    f = read_iq(out)
    assert f.kind == 0 and f.samples.size == 32 and f.sample_rate == 1000.0
    from amcmodem.link import random_bits
    assert np.array_equal(dqpsk_decode(f.samples), random_bits(64, 4))


def test_bad_bits_file(tmp_path):
    bits = tmp_path / "bits.txt"
    bits.write_text("0102")
    assert run("synth", "--bits-file", bits, "--out", tmp_path / "o.iq") == EXIT_CONFIG


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.csv"
    proc = subprocess.run([sys.executable, "-m", "amcmodem", "ber-sweep", "--ebn0-stop", "0",
                           "--bits", "10000", "--out", str(out)], capture_output=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().startswith(CSV_HEADER)
    proc = subprocess.run([sys.executable, "-m", "amcmodem", "derive-policy", "--target-ber", "0.5"],
                          capture_output=True)
    assert proc.returncode == 2
