"""
Tests unitaires pour la réduction par permutation des variables
"""

import math

import numpy as np
import pytest

from dedek.errors import ArityError, ContractError, FormatError, UnsupportedError
from dedek.known import DEDEKIND, INEQUIVALENT
from dedek.symmetry import (
    ClassTable,
    OrbitRecord,
    PermTable,
    apply_perm,
    canonical,
    canonical_array,
    enumerate_classes,
    gamma,
    load_classes,
    orbit,
    perm_table,
    save_classes,
)
from dedek.truthtable import TruthTable, is_monotone, leq, parse_tt


@pytest.mark.unit
class TestPermutations:
    """Tests de l'action de S_n."""

    def test_swap_two_variables(self):
        x1 = parse_tt("0011")
        assert apply_perm(x1, (2, 1)) == parse_tt("0101")
        assert apply_perm(x1, (1, 2)) == x1

    def test_permutation_table(self):
        table = PermTable(3)
        assert len(table) == 6
        assert table.remaps.shape == (6, 8)
        assert perm_table(3) is perm_table(3)

    def test_invalid_permutation(self):
        with pytest.raises(ContractError):
            apply_perm(parse_tt("0011"), (1, 1))
        with pytest.raises(ContractError):
            apply_perm(parse_tt("0011"), (1, 2, 3))

    def test_preserves_monotonicity(self, levels):
        for f in levels[3]:
            for perm in perm_table(3).perms:
                assert is_monotone(apply_perm(f, perm))

    def test_orbit_matches_all_permutations(self, levels):
        for f in levels[3]:
            images = {apply_perm(f, perm).bits for perm in perm_table(3).perms}
            assert orbit(f) == images

    def test_permutation_is_order_automorphism(self, levels):
        elements = list(levels[3])
        for perm in perm_table(3).perms:
            images = [apply_perm(f, perm) for f in elements]
            for f, pf in zip(elements, images):
                for g, pg in zip(elements, images):
                    assert leq(f, g) == leq(pf, pg)


@pytest.mark.unit
class TestCanonical:
    """Tests du représentant canonique et de γ."""

    def test_constants(self):
        for n in range(7):
            assert gamma(TruthTable.bottom(n)) == 1
            assert gamma(TruthTable.top(n)) == 1

    def test_single_variable(self):
        x1 = parse_tt("00001111")
        assert gamma(x1) == 3
        assert canonical(x1) == parse_tt("01010101")

    def test_canonical_is_orbit_minimum(self, levels):
        for f in levels[4]:
            c = canonical(f)
            assert c.bits == min(orbit(f))
            assert canonical(c) == c

    def test_gamma_divides_group_order(self, levels):
        for f in levels[4]:
            assert math.factorial(4) % gamma(f) == 0

    def test_vectorized_canonical_agrees(self, levels):
        words = levels[4].elements
        expected = [canonical(f).bits for f in levels[4]]
        assert canonical_array(words, 4, threads=2).tolist() == expected

    @pytest.mark.slow
    def test_canonical_constant_on_orbits_at_six_variables(self, d6):
        rng = np.random.default_rng(41)
        perms = perm_table(6).perms
        for i in rng.integers(0, len(d6), size=20):
            f = d6.element(int(i))
            c = canonical(f)
            assert canonical(c) == c
            for k in rng.choice(len(perms), size=60, replace=False):
                assert canonical(apply_perm(f, perms[int(k)])) == c

    def test_vectorized_canonical_guard(self):
        with pytest.raises(UnsupportedError):
            canonical_array(np.zeros(1, dtype=np.uint64), 7)


@pytest.mark.unit
class TestClasses:
    """Tests de l'énumération de R_n."""

    @pytest.mark.parametrize("n", range(6))
    def test_counts(self, classes, n):
        table = classes[n]
        assert len(table) == INEQUIVALENT[n]
        assert table.total() == DEDEKIND[n]
        table.validate()

    def test_representatives_are_sorted_and_canonical(self, classes):
        table = classes[4]
        assert np.all(np.diff(table.reps.astype(np.int64)) > 0)
        for record in table:
            assert isinstance(record, OrbitRecord)
            assert canonical(record.rep) == record.rep
            assert gamma(record.rep) == record.gamma

    def test_independent_of_thread_count(self, classes):
        assert enumerate_classes(5, threads=1) == classes[5]

    def test_guards(self):
        with pytest.raises(UnsupportedError):
            enumerate_classes(7)
        with pytest.raises(ArityError):
            enumerate_classes(8)

    @pytest.mark.slow
    def test_six_variables(self, r6):
        assert len(r6) == INEQUIVALENT[6]
        assert r6.total() == DEDEKIND[6]
        r6.validate()


@pytest.mark.unit
class TestClassPersistence:
    """Tests du format .rn et de la validation à l'ingestion."""

    def test_round_trip(self, classes, temp_dir):
        path = temp_dir / "r5.rn"
        save_classes(classes[5], path)
        assert path.stat().st_size == 16 + 210 * 12 + 8
        assert load_classes(path) == classes[5]
        assert load_classes(path, mmap=True) == classes[5]

    def test_validate_detects_wrong_total(self, classes):
        table = classes[4]
        gammas = np.array(table.gammas, dtype=np.uint32)
        gammas[0] += 1
        with pytest.raises(FormatError):
            ClassTable(4, table.reps, gammas).validate()

    def test_validate_detects_non_divisor(self):
        # Σγ = d_1 = 3 mais 3 ne divise pas 1! = 1
        table = ClassTable(1, np.array([0], dtype=np.uint64), np.array([3], dtype=np.uint32))
        with pytest.raises(FormatError):
            table.validate()

    def test_seven_variable_records(self, temp_dir):
        high = np.array([0, 2**64 - 1], dtype=np.uint64)
        table = ClassTable(7, high.copy(), np.array([1, 1], dtype=np.uint32), reps_high=high)
        path = temp_dir / "tiny7.rn"
        save_classes(table, path)
        assert path.stat().st_size == 16 + 2 * 20 + 8
        loaded = load_classes(path)
        assert loaded.rep(1) == TruthTable.top(7)
        assert loaded.rep(0) == TruthTable.bottom(7)
        # Σγ = 2 ≠ d_7 : fichier refusé
        with pytest.raises(FormatError):
            loaded.validate()

    def test_seven_variables_require_high_words(self):
        with pytest.raises(ContractError):
            ClassTable(7, np.array([0], dtype=np.uint64), np.array([1], dtype=np.uint32))
