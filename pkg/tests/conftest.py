"""
Configuration des tests pour Dedek
"""

import shutil
import sys
import tempfile
import unittest.mock
from pathlib import Path

import pytest

# Ajouter le chemin du package au Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from dedek.matrix import interval_matrix, save_matrix
from dedek.poset import generate
from dedek.symmetry import enumerate_classes, save_classes


@pytest.fixture
def temp_dir():
    """Fixture pour créer un répertoire temporaire."""
    temp_path = tempfile.mkdtemp()
    yield Path(temp_path)
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture(scope="session")
def levels():
    """D_0 à D_5, générés une fois par session."""
    return {n: generate(n) for n in range(6)}


@pytest.fixture(scope="session")
def squares(levels):
    """(M_{D_n})^2 pour n = 0 à 4."""
    return {n: interval_matrix(levels[n], threads=2) for n in range(5)}


@pytest.fixture(scope="session")
def classes():
    """R_0 à R_5."""
    return {n: enumerate_classes(n, threads=2) for n in range(6)}


@pytest.fixture(scope="session")
def d5_square(levels):
    """(M_{D_5})^2, réservée aux tests marqués slow."""
    return interval_matrix(levels[5])


@pytest.fixture(scope="session")
def d6():
    """D_6 (7828354 éléments), réservé aux tests marqués slow."""
    return generate(6)


@pytest.fixture(scope="session")
def r6():
    """R_6, réservé aux tests marqués slow."""
    return enumerate_classes(6)


@pytest.fixture
def sweep_files(temp_dir, squares, classes):
    """Matrice de base 2 et classes R_4 écrites sur disque, plus R_5 et base 3."""
    paths = {
        "mxm2": temp_dir / "d2.mxm",
        "mxm3": temp_dir / "d3.mxm",
        "rn4": temp_dir / "r4.rn",
        "rn5": temp_dir / "r5.rn",
    }
    save_matrix(squares[2], paths["mxm2"])
    save_matrix(squares[3], paths["mxm3"])
    save_classes(classes[4], paths["rn4"])
    save_classes(classes[5], paths["rn5"])
    return paths


def pytest_collection_modifyitems(config, items):
    """Ignorer les tests graphiques si matplotlib est absent."""
    try:
        import matplotlib  # noqa: F401
        has_matplotlib = True
    except ImportError:
        has_matplotlib = False

    skip_matplotlib = pytest.mark.skip(reason="matplotlib not available")
    for item in items:
        if "requires_matplotlib" in item.keywords and not has_matplotlib:
            item.add_marker(skip_matplotlib)


@pytest.fixture
def mock_matplotlib():
    """Fixture pour mocker l'affichage matplotlib."""
    with unittest.mock.patch("matplotlib.pyplot.show"):
        yield


@pytest.fixture(autouse=True)
def suppress_prints():
    """Supprimer les prints pendant les tests ; le mock reste inspectable."""
    with unittest.mock.patch("builtins.print") as mock_print:
        yield mock_print


@pytest.fixture
def printed(suppress_prints):
    """Fonction renvoyant les textes passés à print depuis le début du test."""
    def lines():
        return [" ".join(str(a) for a in call.args) for call in suppress_prints.call_args_list]
    return lines
