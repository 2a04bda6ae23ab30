"""
Dedek - Tailles d'intervalles dans le treillis D_n des fonctions booléennes monotones

Ce package contient des modules pour :
- Représentation des fonctions monotones par tables de vérité compactées
- Génération de D_n et calcul de la matrice (M_{D_n})^2 des tailles d'intervalles
- Algorithmes de calcul de #[x, ⊤] et #[x, y] dans D_{n+2}
- Réduction par permutation des variables et balayage parallèle des classes
- Calcul des nombres de Dedekind d_n par plusieurs méthodes indépendantes
"""

__version__ = "0.1.0"
__author__ = "Yatoub"
__email__ = "votre.email@example.com"

from .dedekind import dedekind_number
from .errors import DedekError
from .intervals import interval_size_alg2, oracle_interval_size, upset_size_alg1
from .matrix import build_incidence, interval_matrix, load_matrix, save_matrix, square
from .poset import PosetLevel, generate, load_level, save_level
from .sweep import SweepConfig, run_sweep
from .symmetry import ClassTable, canonical, enumerate_classes, gamma, load_classes, save_classes
from .truthtable import TruthTable, format_tt, is_monotone, parse_tt

# Import conditionnel : les graphiques exigent matplotlib
try:
    from .plotting import plot_interval_matrix, plot_upset_distribution
    _has_plotting = True
except ImportError:
    _has_plotting = False
    plot_interval_matrix = None
    plot_upset_distribution = None

# Liste des exports publics
__all__ = [
    "ClassTable",
    "DedekError",
    "PosetLevel",
    "SweepConfig",
    "TruthTable",
    "build_incidence",
    "canonical",
    "dedekind_number",
    "enumerate_classes",
    "format_tt",
    "gamma",
    "generate",
    "interval_matrix",
    "interval_size_alg2",
    "is_monotone",
    "load_classes",
    "load_level",
    "load_matrix",
    "oracle_interval_size",
    "parse_tt",
    "run_sweep",
    "save_classes",
    "save_level",
    "save_matrix",
    "square",
    "upset_size_alg1",
]

if _has_plotting:
    __all__.extend(["plot_interval_matrix", "plot_upset_distribution"])
