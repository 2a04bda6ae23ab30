"""
Tests unitaires pour les primitives sur les mots
"""

import math

import numpy as np
import pytest

from dedek.bits import (
    coordinate_mask,
    heap_transpositions,
    pack_rows,
    popcount64,
    swap_variables,
    swap_variables_array,
    unpack_rows,
    xor_fold,
)


@pytest.mark.unit
class TestMasks:
    """Tests des masques de coordonnées."""

    def test_coordinate_masks_two_variables(self):
        # x_1 = 0 aux positions 0 et 1, x_2 = 0 aux positions 0 et 2
        assert coordinate_mask(2, 1) == 0b0011
        assert coordinate_mask(2, 2) == 0b0101

    def test_swap_exchanges_variables(self):
        x1 = 0b1100
        x2 = 0b1010
        assert swap_variables(x1, 2, 1, 2) == x2
        assert swap_variables(x2, 2, 2, 1) == x1
        assert swap_variables(x1, 2, 1, 1) == x1

    def test_swap_is_involution(self, levels):
        for f in levels[4]:
            assert swap_variables(swap_variables(f.bits, 4, 1, 3), 4, 1, 3) == f.bits

    def test_vectorized_swap_agrees(self, levels):
        words = levels[4].elements
        swapped = swap_variables_array(words, 4, 2, 4)
        assert swapped.tolist() == [swap_variables(int(w), 4, 2, 4) for w in words]


@pytest.mark.unit
class TestHeapSequence:
    """Tests de la suite de transpositions."""

    @pytest.mark.parametrize("n", range(7))
    def test_visits_every_permutation_once(self, n):
        swaps = heap_transpositions(n)
        assert len(swaps) == max(math.factorial(n) - 1, 0)
        current = list(range(n))
        seen = {tuple(current)}
        for a, b in swaps:
            assert 1 <= a < b <= n or 1 <= b < a <= n
            current[a - 1], current[b - 1] = current[b - 1], current[a - 1]
            seen.add(tuple(current))
        assert len(seen) == math.factorial(n)


@pytest.mark.unit
class TestWordArrays:
    """Tests du popcount, du compactage et de la somme de contrôle."""

    def test_popcount(self):
        rng = np.random.default_rng(7)
        words = rng.integers(0, 2**63, size=500, dtype=np.uint64) * np.uint64(2) + np.uint64(1)
        expected = [bin(int(w)).count("1") for w in words]
        assert popcount64(words).astype(int).tolist() == expected

    def test_pack_unpack(self):
        rng = np.random.default_rng(3)
        rows = rng.random((5, 70)) < 0.5
        packed = pack_rows(rows)
        assert packed.shape == (5, 2)
        assert np.array_equal(unpack_rows(packed, 70), rows)
        assert int(packed[0, 0]) & 1 == int(rows[0, 0])

    def test_xor_fold(self):
        assert xor_fold(b"") == 0
        assert xor_fold(b"\x01" + b"\x00" * 7 + b"\x02") == 3
        words = np.array([5, 6], dtype="<u8")
        assert xor_fold(words) == 3
        assert xor_fold(words.tobytes()) == 3
