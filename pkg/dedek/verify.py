"""
Vérifications de bout en bout contre les valeurs connues de d_n et r_n.

Trois niveaux cumulatifs :

- ``quick``    : équivalences avec les oracles pour n <= 4, d_n et r_n pour n <= 5
- ``standard`` : ajoute d_6 direct, r_6 et d_7 par trois méthodes indépendantes
- ``full``     : ajoute d_8 par balayage d'un fichier R_7 fourni
"""

import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dedekind import dedekind_classes
from .errors import ContractError
from .intervals import interval_size_alg2, oracle_interval_size, upset_size_alg1
from .known import DEDEKIND, INEQUIVALENT
from .matrix import build_incidence, interval_matrix, save_matrix
from .poset import brute_force_level, generate
from .sweep import SweepConfig, run_sweep
from .symmetry import enumerate_classes
from .truthtable import TruthTable, parse_tt


LEVELS = ("quick", "standard", "full")

# D_2 dans l'ordre de lecture usuel, avec M_{D_2} et son carré dans cet ordre
D2_LISTING = ("0000", "0001", "0011", "0101", "0111", "1111")
D2_INCIDENCE = (
    (1, 1, 1, 1, 1, 1),
    (0, 1, 1, 1, 1, 1),
    (0, 0, 1, 0, 1, 1),
    (0, 0, 0, 1, 1, 1),
    (0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 1),
)
D2_INTERVALS = (
    (1, 2, 3, 3, 5, 6),
    (0, 1, 2, 2, 4, 5),
    (0, 0, 1, 0, 2, 3),
    (0, 0, 0, 1, 2, 3),
    (0, 0, 0, 0, 1, 2),
    (0, 0, 0, 0, 0, 1),
)


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def passed(self):
        return self.expected == self.actual

    def __str__(self):
        mark = "✅" if self.passed else "❌"
        line = f"{mark} {self.name}: {self.actual}"
        if not self.passed:
            line += f" (attendu {self.expected})"
        return line


def d2_listing_order(level):
    """Indices dans ``level`` (D_2) des éléments listés dans ``D2_LISTING``."""
    return np.array([level.index_of(parse_tt(tt)) for tt in D2_LISTING])


def _quick(threads):
    for n in range(6):
        yield Check(f"|D_{n}| = d_{n}", DEDEKIND[n], len(generate(n)))
    for n in range(5):
        yield Check(f"D_{n} = filtre exhaustif", True, generate(n) == brute_force_level(n))
    for n in range(6):
        table = enumerate_classes(n, threads=threads)
        yield Check(f"r_{n}", INEQUIVALENT[n], len(table))
        yield Check(f"Σγ sur R_{n}", DEDEKIND[n], table.total())

    d2 = generate(2)
    order = d2_listing_order(d2)
    incidence = build_incidence(d2).to_dense().astype(int)[np.ix_(order, order)]
    yield Check("M_{D_2} lue dans l'ordre usuel", D2_INCIDENCE,
                tuple(tuple(int(v) for v in row) for row in incidence))
    sq2 = interval_matrix(d2, threads=threads)
    intervals = np.asarray(sq2.entries)[np.ix_(order, order)]
    yield Check("(M_{D_2})^2 lue dans l'ordre usuel", D2_INTERVALS,
                tuple(tuple(int(v) for v in row) for row in intervals))

    for n in range(5):
        sq = sq2 if n == 2 else interval_matrix(generate(n), threads=threads)
        yield Check(f"SumSq((M_{{D_{n}}})^2) = d_{n + 2}", DEDEKIND[n + 2], sq.sumsq())

    d4 = generate(4)
    mismatches = sum(upset_size_alg1(x, sq2, d2) != oracle_interval_size(x, None, d4) for x in d4)
    yield Check("algorithme 1 = oracle sur D_4 (base 2)", 0, mismatches)

    sq4 = interval_matrix(d4, threads=threads)
    mismatches = 0
    for i, x in enumerate(d4):
        for j in d4.upset_indices(x):
            y = d4.element(j)
            mismatches += interval_size_alg2(x, y, sq2, d2) != sq4[i, j]
    yield Check("algorithme 2 = (M_{D_4})^2 (base 2)", 0, mismatches)
    yield Check("d_5 par classes de R_4", DEDEKIND[5], dedekind_classes(5, sq=sq2, threads=threads))


def _standard(threads, cache):
    yield Check("|D_6| = d_6", DEDEKIND[6], len(generate(6)))
    table6 = enumerate_classes(6, threads=threads)
    yield Check("r_6", INEQUIVALENT[6], len(table6))
    yield Check("Σγ sur R_6", DEDEKIND[6], table6.total())

    d5 = generate(5)
    sq5 = interval_matrix(d5, threads=threads)
    cache["sq5"] = sq5
    yield Check("d_7 par SumSq((M_{D_5})^2)", DEDEKIND[7], sq5.sumsq())
    yield Check("d_7 par classes de R_6", DEDEKIND[7],
                dedekind_classes(7, classes=table6, threads=threads))
    yield Check("d_7 = #[⊥, ⊤] (algorithme 1, base 5)", DEDEKIND[7],
                upset_size_alg1(TruthTable.bottom(7), sq5, d5))


def _full(threads, cache, classes_path, matrix_path):
    with tempfile.TemporaryDirectory() as tmp:
        if matrix_path is None:
            matrix_path = Path(tmp) / "d5.mxm"
            sq5 = cache.get("sq5") or interval_matrix(generate(5), threads=threads)
            save_matrix(sq5, matrix_path)
        config = SweepConfig(base_n=5, matrix_path=matrix_path, classes_path=classes_path,
                             threads=threads)
        result = run_sweep(config)
    yield Check("d_8 par balayage de R_7", DEDEKIND[8], result.total)


def iter_checks(level="quick", threads=None, classes_path=None, matrix_path=None):
    """
    Produit les vérifications du niveau demandé, au fil du calcul.

    Args:
        level (str): ``quick``, ``standard`` ou ``full``
        threads (int): Workers pour les calculs parallèles
        classes_path: Fichier R_7 (niveau full)
        matrix_path: Fichier de (M_{D_5})^2 (niveau full, calculé sinon)

    Yields:
        Check: Résultat de chaque vérification
    """
    if level not in LEVELS:
        raise ContractError(f"niveau inconnu '{level}' (choix : {', '.join(LEVELS)})")
    if level == "full" and classes_path is None:
        raise ContractError("le niveau full exige un fichier R_7 (--classes)")
    cache = {}
    yield from _quick(threads)
    if level in ("standard", "full"):
        yield from _standard(threads, cache)
    if level == "full":
        yield from _full(threads, cache, classes_path, matrix_path)


def run_verify(level="quick", threads=None, classes_path=None, matrix_path=None):
    """Affiche le rapport de vérification ; renvoie True si tout est conforme."""
    failures = 0
    total = 0
    for check in iter_checks(level, threads, classes_path, matrix_path):
        print(check)
        total += 1
        failures += not check.passed
    if failures:
        print(f"\n❌ {failures}/{total} vérifications en échec")
    else:
        print(f"\n✅ {total} vérifications réussies")
    return failures == 0
