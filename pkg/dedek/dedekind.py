"""
Calcul de d_n par plusieurs méthodes indépendantes.

- ``direct``    : cardinal de D_n généré (n <= 6)
- ``incidence`` : somme des coefficients de M_{D_{n-1}} (1 <= n <= 6)
- ``sumsq``     : somme des carrés des coefficients de (M_{D_{n-2}})^2 (2 <= n <= 7)
- ``classes``   : Σ_{x ∈ R_{n-1}} #[x, ⊤] · γ(x) sur la base D_{n-3} (5 <= n <= 8)
"""

import logging

from .errors import ArityError, ContractError
from .matrix import build_incidence, interval_matrix
from .poset import MAX_GENERATED_ARITY, generate
from .symmetry import enumerate_classes
from .sweep import weighted_upsets

logger = logging.getLogger(__name__)

METHODS = ("direct", "incidence", "sumsq", "classes")

# Bornes (incluses) de n pour chaque méthode
METHOD_RANGES = {
    "direct": (0, 6),
    "incidence": (1, 6),
    "sumsq": (2, 7),
    "classes": (5, 8),
}


def check_range(method, n):
    low, high = METHOD_RANGES[method]
    if not low <= n <= high:
        raise ArityError(f"méthode '{method}' : n = {n} hors de [{low}, {high}]")


def dedekind_direct(n):
    check_range("direct", n)
    return len(generate(n))


def dedekind_incidence(n):
    """d_n = nombre de couples comparables de D_{n-1}."""
    check_range("incidence", n)
    return build_incidence(generate(n - 1)).sum()


def dedekind_sumsq(n, sq=None, threads=None):
    """
    d_n = Σ_{x, y} #[x, y]^2 sur D_{n-2}.

    Args:
        n (int): 2 <= n <= 7
        sq (IntervalMatrix): (M_{D_{n-2}})^2 déjà calculée, sinon calculée ici
        threads (int): Workers pour le carré
    """
    check_range("sumsq", n)
    if sq is None:
        sq = interval_matrix(generate(n - 2), threads=threads)
    elif sq.n != n - 2:
        raise ArityError(f"matrice d'arité {sq.n}, {n - 2} attendue pour d_{n}")
    return sq.sumsq()


def dedekind_classes(n, classes=None, sq=None, threads=None):
    """
    d_n = Σ_{x ∈ R_{n-1}} #[x, ⊤] · γ(x).

    Sans ``classes``, R_{n-1} est énuméré (n - 1 <= 6) ; pour d_8 il faut
    fournir R_7 (voir :func:`dedek.sweep.run_sweep` pour le calcul parallèle).

    Returns:
        int: d_n exact
    """
    check_range("classes", n)
    k = n - 1
    base = n - 3
    if classes is None:
        if k > MAX_GENERATED_ARITY:
            raise ContractError(f"R_{k} doit être fourni par un fichier .rn")
        classes = enumerate_classes(k, threads=threads)
    elif classes.n != k:
        raise ArityError(f"classes d'arité {classes.n}, {k} attendue pour d_{n}")
    level = generate(base)
    if sq is None:
        sq = interval_matrix(level, threads=threads)
    elif sq.n != base:
        raise ArityError(f"matrice d'arité {sq.n}, {base} attendue pour d_{n}")
    logger.info("d_%d par %d classes de R_%d sur D_%d", n, len(classes), k, base)
    if k > MAX_GENERATED_ARITY:
        logger.warning("somme sur un seul thread : préférer run_sweep pour R_%d", k)
    total, _ = weighted_upsets(classes, sq, level)
    return total


def dedekind_number(n, method="direct", **kwargs):
    """
    Point d'entrée unique : d_n par la méthode demandée.

    Args:
        n (int): Arité
        method (str): Une des valeurs de ``METHODS``
        **kwargs: Transmis à la méthode (``sq``, ``classes``, ``threads``)
    """
    if method == "direct":
        return dedekind_direct(n)
    if method == "incidence":
        return dedekind_incidence(n)
    if method == "sumsq":
        return dedekind_sumsq(n, **kwargs)
    if method == "classes":
        return dedekind_classes(n, **kwargs)
    raise ContractError(f"méthode inconnue '{method}' (choix : {', '.join(METHODS)})")
