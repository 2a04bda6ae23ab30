"""
Tailles d'intervalles dans D_{n+2} à partir de (M_{D_n})^2.

Une fonction x ∈ D_{n+2} se décompose en quatre quarts (x0, x1, x2, x3) de
D_n avec x0 <= x1 <= x3 et x0 <= x2 <= x3. Un élément y est au-dessus de x
ssi y0 ∈ [x0, ⊤], y3 ∈ [x3, ⊤], y1 ∈ [y0 ∪ x1, y3] et y2 ∈ [y0 ∪ x2, y3] ;
le nombre de choix de y1 et de y2 se lit directement dans le carré de la
matrice d'incidence.
"""

import numpy as np

from .errors import ArityError, MonotonicityError
from .truthtable import TruthTable, format_tt, is_monotone, leq, split

# Taille maximale (en coefficients) d'un bloc extrait de la matrice
_BLOCK_ENTRIES = 1 << 22


def _quarters(f, base_n, what):
    if f.n != base_n + 2:
        raise ArityError(f"{what} a {f.n} variables, {base_n + 2} attendues pour la base D_{base_n}")
    if not is_monotone(f):
        raise MonotonicityError(f"{what} = {format_tt(f)} n'est pas monotone")
    return [np.uint64(p.bits) for p in split(f, 2, check=False)]


def _check_base(sq, level):
    if sq.n != level.n:
        raise ArityError(f"matrice d'arité {sq.n} et niveau D_{level.n} incompatibles")


def _sum_products(entries, a, b, c, d):
    """Σ_{r, s} M[a_r, c_s] · M[b_r, d_s] en arithmétique exacte."""
    if len(a) == 0 or len(c) == 0:
        return 0
    total = 0
    step = max(1, _BLOCK_ENTRIES // len(c))
    cols_c = c[None, :]
    cols_d = d[None, :]
    for start in range(0, len(a), step):
        rows_a = a[start:start + step, None]
        rows_b = b[start:start + step, None]
        left = entries[rows_a, cols_c].astype(np.uint64)
        right = entries[rows_b, cols_d].astype(np.uint64)
        total += int((left * right).sum(dtype=np.uint64))
    return total


def upset_size_alg1(x, sq, level):
    """
    #[x, ⊤] pour x ∈ D_{n+2}.

    Les recherches d'indice de y0 ∪ x1 et y0 ∪ x2 ne dépendent pas de y3 :
    elles sont faites une fois par y0. Chaque terme est au plus d_n^2 et le
    total au plus d_{n+2}, donc les sommes partielles tiennent sur 64 bits
    pour n <= 5.

    Args:
        x (TruthTable): Fonction monotone de n + 2 variables
        sq (IntervalMatrix): (M_{D_n})^2
        level (PosetLevel): D_n

    Returns:
        int: Taille exacte de l'intervalle
    """
    _check_base(sq, level)
    x0, x1, x2, x3 = _quarters(x, level.n, "x")
    elements = level.elements
    y0 = elements[(elements & x0) == x0]
    y3 = np.flatnonzero((elements & x3) == x3)
    a = level.indices_of(y0 | x1)
    b = level.indices_of(y0 | x2)
    return _sum_products(sq.entries, a, b, y3, y3)


def interval_size_alg2(x, y, sq, level):
    """
    #[x, y] pour x, y ∈ D_{n+2} ; vaut 0 si x ≰ y.

    Pour f0 ∈ [x0, y0] et f3 ∈ [x3, y3], le nombre de choix du quart 1 est
    #[f0 ∪ x1, f3 ∩ y1] et celui du quart 2 est #[f0 ∪ x2, f3 ∩ y2].
    """
    _check_base(sq, level)
    x0, x1, x2, x3 = _quarters(x, level.n, "x")
    y0, y1, y2, y3 = _quarters(y, level.n, "y")
    if not leq(x, y):
        return 0
    elements = level.elements
    f0 = elements[((elements & x0) == x0) & ((elements & y0) == elements)]
    f3 = elements[((elements & x3) == x3) & ((elements & y3) == elements)]
    a = level.indices_of(f0 | x1)
    b = level.indices_of(f0 | x2)
    c = level.indices_of(f3 & y1)
    d = level.indices_of(f3 & y2)
    return _sum_products(sq.entries, a, b, c, d)


def downset_size(y, sq, level):
    """#[⊥, y], par l'algorithme 2 avec x = ⊥."""
    return interval_size_alg2(TruthTable.bottom(y.n), y, sq, level)


def oracle_interval_size(x, y, level):
    """
    Oracle par balayage : nombre de h ∈ D_n avec x <= h <= y.

    ``y = None`` désigne ⊤.
    """
    mask = level.upset_mask(x)
    if y is not None:
        mask &= level.downset_mask(y)
    return int(np.count_nonzero(mask))
