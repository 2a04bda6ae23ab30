"""
Tests d'intégration pour le package Dedek
"""

from unittest.mock import patch

import pytest

import dedek
from dedek.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, main
from dedek.known import DEDEKIND
from dedek.matrix import load_matrix
from dedek.poset import load_level
from dedek.symmetry import load_classes
from dedek.sweep import _save_checkpoint, read_upsets, run_sweep
from dedek.verify import Check


@pytest.mark.integration
class TestPackageIntegration:
    """Tests d'intégration du package complet."""

    def test_package_imports(self):
        assert hasattr(dedek, "__version__")
        assert hasattr(dedek, "__author__")
        assert callable(dedek.generate)
        assert callable(dedek.upset_size_alg1)
        assert callable(dedek.dedekind_number)

    def test_package_metadata(self):
        assert dedek.__version__ == "0.1.0"
        assert isinstance(dedek.__author__, str)
        assert isinstance(dedek.__email__, str)
        assert isinstance(dedek.__all__, list)
        for name in dedek.__all__:
            assert getattr(dedek, name) is not None

    def test_conditional_imports(self):
        if dedek._has_plotting:
            assert dedek.plot_interval_matrix is not None
        else:
            assert dedek.plot_interval_matrix is None

    def test_end_to_end_pipeline(self, temp_dir):
        """Niveau, matrice, classes et balayage enchaînés par l'API publique."""
        level = dedek.generate(3)
        sq = dedek.interval_matrix(level, threads=2)
        dedek.save_matrix(sq, temp_dir / "d3.mxm")
        dedek.save_classes(dedek.enumerate_classes(5), temp_dir / "r5.rn")
        config = dedek.SweepConfig(base_n=3, matrix_path=temp_dir / "d3.mxm",
                                   classes_path=temp_dir / "r5.rn", threads=2)
        assert dedek.run_sweep(config).total == DEDEKIND[6]


@pytest.mark.integration
class TestMainScript:
    """Tests pour le script principal main.py."""

    def test_main_import(self):
        import main as main_script
        assert callable(main_script.main)

    def test_welcome_without_command(self, printed):
        assert main([]) == EXIT_OK
        assert any("Bienvenue" in line for line in printed())

    def test_help_exits(self):
        with pytest.raises(SystemExit) as exc:
            main(["-h"])
        assert exc.value.code == 0

    def test_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["gen"])
        assert exc.value.code == EXIT_USAGE


@pytest.mark.integration
class TestCommands:
    """Tests des sous-commandes."""

    def test_gen(self, temp_dir, printed):
        path = temp_dir / "d4.dn"
        assert main(["gen", "-n", "4", "-o", str(path)]) == EXIT_OK
        assert printed()[-1] == "168"
        assert len(load_level(path)) == 168

    def test_matrix_with_csv(self, temp_dir, printed):
        path = temp_dir / "d3.mxm"
        csv = temp_dir / "d3.csv"
        assert main(["matrix", "-n", "3", "-o", str(path), "--entry-width", "2", "--csv", str(csv)]) == EXIT_OK
        assert printed()[-1] == "20"
        assert load_matrix(path).entries.dtype.itemsize == 2
        assert csv.read_text().count("\n") == 21

    def test_classes(self, temp_dir, printed):
        path = temp_dir / "r4.rn"
        assert main(["classes", "-n", "4", "-o", str(path)]) == EXIT_OK
        assert printed()[-1] == "30"
        assert load_classes(path).total() == 168

    def test_interval(self, temp_dir, printed):
        path = temp_dir / "d2.mxm"
        main(["matrix", "-n", "2", "-o", str(path)])
        assert main(["interval", "--base", "2", "--from", "0000000000000000", "--matrix", str(path)]) == EXIT_OK
        assert printed()[-1] == "168"
        assert main(["interval", "--base", "2", "--from", "0x0", "--to", "0xffff",
                     "--matrix", str(path)]) == EXIT_OK
        assert printed()[-1] == "168"

    def test_interval_errors(self, temp_dir):
        path = temp_dir / "d2.mxm"
        main(["matrix", "-n", "2", "-o", str(path)])
        assert main(["interval", "--base", "2", "--from", "0101", "--matrix", str(path)]) == EXIT_USAGE
        assert main(["interval", "--base", "3", "--from", "0x0", "--matrix", str(path)]) == EXIT_USAGE
        assert main(["interval", "--base", "2", "--from", "0x0", "--matrix", str(temp_dir / "absent.mxm")]) == EXIT_IO

    @pytest.mark.parametrize("method,n", [("direct", 5), ("incidence", 5), ("sumsq", 6), ("classes", 6)])
    def test_dedekind(self, method, n, printed):
        assert main(["dedekind", "--method", method, "-n", str(n)]) == EXIT_OK
        assert printed()[-1] == str(DEDEKIND[n])

    def test_dedekind_from_files(self, sweep_files, printed):
        args = ["dedekind", "--method", "classes", "-n", "6",
                "--matrix", str(sweep_files["mxm3"]), "--classes", str(sweep_files["rn5"])]
        with patch("dedek.cli.run_sweep", wraps=run_sweep) as sweep:
            assert main(args + ["--threads", "2"]) == EXIT_OK
        sweep.assert_called_once()
        assert sweep.call_args.args[0].threads == 2
        assert printed()[-1] == "7828354"

    def test_dedekind_out_of_range(self):
        assert main(["dedekind", "--method", "direct", "-n", "7"]) == EXIT_USAGE

    def test_sweep_with_resume(self, sweep_files, temp_dir, printed):
        base = ["sweep", "--base", "3", "--matrix", str(sweep_files["mxm3"]),
                "--classes", str(sweep_files["rn5"]), "--threads", "2", "--chunk", "20",
                "--checkpoint", str(temp_dir / "cp.json"), "--out", str(temp_dir / "out.bin")]
        assert main(base + ["--max-chunks", "3"]) == EXIT_OK
        assert "partiel" in printed()[-1]
        assert main(base) == EXIT_OK
        assert printed()[-1] == "7828354"
        assert len(read_upsets(temp_dir / "out.bin")) == 210

    def test_sweep_checkpoint_every(self, sweep_files, temp_dir, printed):
        checkpoint = temp_dir / "cp.json"
        args = ["sweep", "--base", "3", "--matrix", str(sweep_files["mxm3"]),
                "--classes", str(sweep_files["rn5"]), "--threads", "1", "--chunk", "10",
                "--checkpoint", str(checkpoint), "--checkpoint-every", "5"]
        with patch("dedek.sweep._save_checkpoint", wraps=_save_checkpoint) as save:
            assert main(args) == EXIT_OK
        # 21 blocs : écritures après 5, 10, 15, 20 blocs, puis en fin de balayage
        assert save.call_count == 5
        assert printed()[-1] == "7828354"
        assert main(args[:-2] + ["--checkpoint-every", "0"]) == EXIT_USAGE

    def test_sweep_corrupted_input(self, sweep_files):
        raw = bytearray(sweep_files["rn4"].read_bytes())
        raw[20] ^= 0xFF
        sweep_files["rn4"].write_bytes(bytes(raw))
        args = ["sweep", "--base", "2", "--matrix", str(sweep_files["mxm2"]),
                "--classes", str(sweep_files["rn4"]), "--threads", "1"]
        assert main(args) == EXIT_IO

    def test_sweep_bad_threads(self, sweep_files):
        args = ["sweep", "--base", "2", "--matrix", str(sweep_files["mxm2"]),
                "--classes", str(sweep_files["rn4"]), "--threads", "0"]
        assert main(args) == EXIT_USAGE

    def test_verify_exit_codes(self):
        with patch("dedek.verify.iter_checks", return_value=iter([Check("d_3", 20, 20)])):
            assert main(["verify"]) == EXIT_OK
        with patch("dedek.verify.iter_checks", return_value=iter([Check("d_3", 20, 19)])):
            assert main(["verify"]) == EXIT_VERIFY_FAILED
        assert main(["verify", "--level", "full"]) == EXIT_USAGE

    @pytest.mark.requires_matplotlib
    def test_plot(self, sweep_files, temp_dir, mock_matplotlib):
        output = temp_dir / "d2.png"
        assert main(["plot", "--matrix", str(sweep_files["mxm2"]), "-o", str(output)]) == EXIT_OK
        assert output.exists()
        assert main(["plot", "-o", str(output)]) == EXIT_USAGE

    @pytest.mark.requires_matplotlib
    def test_plot_upsets(self, sweep_files, temp_dir, mock_matplotlib):
        out = temp_dir / "out.bin"
        main(["sweep", "--base", "2", "--matrix", str(sweep_files["mxm2"]),
              "--classes", str(sweep_files["rn4"]), "--threads", "1", "--out", str(out)])
        output = temp_dir / "upsets.png"
        assert main(["plot", "--upsets", str(out), "--classes", str(sweep_files["rn4"]),
                     "-o", str(output)]) == EXIT_OK
        assert output.exists()
