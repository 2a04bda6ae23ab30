"""
Tests pour les graphiques
"""

import numpy as np
import pytest

from dedek.sweep import weighted_upsets


@pytest.mark.requires_matplotlib
class TestPlotting:
    """Tests des graphiques matplotlib."""

    def test_interval_heatmap(self, levels, squares, temp_dir, mock_matplotlib):
        from dedek.plotting import plot_interval_matrix

        output = temp_dir / "d2.png"
        plot_interval_matrix(squares[2], levels[2], output_filename=str(output))
        assert output.exists()
        assert output.stat().st_size > 0

    def test_large_matrix_is_subsampled(self, temp_dir, mock_matplotlib):
        from dedek.matrix import IntervalMatrix
        from dedek.plotting import plot_interval_matrix

        entries = np.eye(2100, dtype=np.uint32)
        output = temp_dir / "big.png"
        plot_interval_matrix(IntervalMatrix(5, entries), output_filename=str(output))
        assert output.exists()

    def test_upset_distribution(self, levels, squares, classes, temp_dir, mock_matplotlib):
        from dedek.plotting import plot_upset_distribution

        _, counts = weighted_upsets(classes[5], squares[3], levels[3])
        output = temp_dir / "upsets.png"
        plot_upset_distribution(counts, classes[5].gammas, output_filename=str(output), show_plot=True)
        assert output.exists()

    def test_upset_distribution_shape_mismatch(self, temp_dir):
        from dedek.plotting import plot_upset_distribution

        with pytest.raises(ValueError):
            plot_upset_distribution([1, 2, 3], [1, 1], output_filename=str(temp_dir / "x.png"))
