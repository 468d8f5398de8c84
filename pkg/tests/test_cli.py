"""Command-line interface: argument parsing, file round-trips, exit codes."""

import numpy as np
import pytest

from sparsefourier import read_representation, read_samples
from sparsefourier.cli import main, parse_modes, default_seed


class TestParseModes:
    def test_basic(self):
        modes = parse_modes("5:1+0i,9:2+0i")
        assert [(m.frequency, m.amplitude) for m in modes] == \
            [(5, 1 + 0j), (9, 2 + 0j)]

    def test_complex_amplitudes(self):
        modes = parse_modes("3:-0.5i,7:1.5-2i")
        assert modes[0].amplitude == -0.5j
        assert modes[1].amplitude == 1.5 - 2j

    def test_bad_spec_exits(self):
        with pytest.raises(SystemExit):
            parse_modes("5=1")


class TestDefaultSeed:
    def test_env_var(self, monkeypatch):
        monkeypatch.setenv("SPARSEFOURIER_SEED", "123")
        assert default_seed() == 123

    def test_fallback(self, monkeypatch):
        monkeypatch.delenv("SPARSEFOURIER_SEED", raising=False)
        assert default_seed() == 0

    def test_non_integer_exits(self, monkeypatch):
        monkeypatch.setenv("SPARSEFOURIER_SEED", "abc")
        with pytest.raises(SystemExit):
            default_seed()


class TestGenerate:
    def test_deterministic_output(self, tmp_path):
        args = ["generate", "--n", "1024", "--modes", "5:1+0i,9:2+0i",
                "--p", "0.7", "--sigma", "0", "--seed", "42"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_full_availability_line_count(self, tmp_path):
        out = tmp_path / "s.csv"
        main(["generate", "--n", "64", "--modes", "3:1+0i", "--p", "1",
              "--seed", "0", "--out", str(out)])
        assert len(out.read_text().strip().splitlines()) == 65  # header + 64

    def test_roundtrip_bit_exact(self, tmp_path):
        out = tmp_path / "s.csv"
        main(["generate", "--n", "256", "--modes", "3:1+0i", "--p", "0.5",
              "--sigma", "0.2", "--seed", "7", "--out", str(out)])
        data = read_samples(out)
        idx = data.mask.available_indices()
        from sparsefourier import write_samples
        out2 = tmp_path / "s2.csv"
        write_samples(out2, data)
        assert out.read_bytes() == out2.read_bytes()
        assert np.all(np.isfinite(data.values[idx].real))

    def test_sidecar_has_truth(self, tmp_path):
        out = tmp_path / "s.csv"
        main(["generate", "--n", "64", "--modes", "3:1+0i,9:2+0i", "--p", "1",
              "--seed", "0", "--out", str(out)])
        truth = read_representation(tmp_path / "s.csv.modes")
        assert truth.freqs.tolist() == [3, 9]
        assert truth.coefs.tolist() == [1 + 0j, 2 + 0j]


class TestRecover:
    def run_pair(self, tmp_path, capsys, extra=()):
        s = tmp_path / "s.csv"
        r = tmp_path / "r.csv"
        main(["generate", "--n", "1024", "--modes", "5:1+0i,9:2+0i",
              "--p", "0.8", "--seed", "42", "--out", str(s)])
        code = main(["recover", str(s), "--b", "2", "--seed", "1",
                     "--stop-threshold", "1e-12", "--out", str(r)]
                    + list(extra))
        out = capsys.readouterr().out.strip().splitlines()[-1]
        return code, r, out

    def test_exact_modes_in_output_file(self, tmp_path, capsys):
        code, r, line = self.run_pair(tmp_path, capsys)
        assert code == 0
        rep = read_representation(r)
        assert sorted(rep.freqs.tolist()) == [5, 9]
        assert "success=True" in line
        assert "relative_error=" in line
        assert "iterations=" in line and "samples_touched=" in line

    def test_missing_sidecar_omits_success(self, tmp_path, capsys):
        s = tmp_path / "s.csv"
        main(["generate", "--n", "1024", "--modes", "5:1+0i", "--p", "0.9",
              "--seed", "3", "--out", str(s)])
        (tmp_path / "s.csv.modes").unlink()
        code = main(["recover", str(s), "--b", "1", "--seed", "2",
                     "--stop-threshold", "1e-12",
                     "--out", str(tmp_path / "r.csv")])
        line = capsys.readouterr().out.strip().splitlines()[-1]
        assert code == 0
        assert "success" not in line and "time_total=" in line

    def test_unreadable_file_exits(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["recover", str(tmp_path / "nope.csv"), "--b", "1",
                  "--out", str(tmp_path / "r.csv")])


class TestBench:
    def test_t6_to_stdout(self, capsys):
        assert main(["bench", "--table", "T6-shapes", "--p", "0.9,0.8",
                     "--seed", "0"]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert lines[0] == "p,p_cross,p_diagonal,mc_cross,mc_diagonal"
        assert len(lines) == 3

    def test_t5_small_to_file(self, tmp_path, capsys):
        out = tmp_path / "t5.csv"
        assert main(["bench", "--table", "T5-noise", "--n", "1024",
                     "--b", "2", "--sigma", "0", "--runs-per-cell", "2",
                     "--iter-cap", "50", "--seed", "1",
                     "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("sigma,snr_db,")
        assert len(lines) == 2

    def test_byte_determinism_excluding_timing(self, tmp_path, capsys):
        # compare non-timing columns across two runs of the same spec
        outs = []
        for name in ("x.csv", "y.csv"):
            out = tmp_path / name
            main(["bench", "--table", "T5-noise", "--n", "1024", "--b", "2",
                  "--sigma", "0.5", "--runs-per-cell", "2", "--iter-cap",
                  "50", "--seed", "9", "--out", str(out)])
            outs.append(out.read_text().strip().splitlines())
        header = outs[0][0].split(",")
        keep = [i for i, h in enumerate(header) if not h.startswith("time")]
        for row_a, row_b in zip(*outs):
            a = [row_a.split(",")[i] for i in keep]
            b = [row_b.split(",")[i] for i in keep]
            assert a == b


class TestVerifyLemmas:
    def test_exit_zero_and_report_lines(self, capsys):
        code = main(["verify-lemmas", "--seed", "0"])
        out = capsys.readouterr().out
        lines = [l for l in out.strip().splitlines() if l]
        assert len(lines) == 6
        assert all(l.startswith(("PASS", "FAIL")) for l in lines)
        assert code == (0 if all(l.startswith("PASS") for l in lines) else 1)
