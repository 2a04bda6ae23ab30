"""
Valeurs connues des nombres de Dedekind d_n et du nombre r_n de classes
d'équivalence sous permutation des variables.
"""

DEDEKIND = {
    0: 2,
    1: 3,
    2: 6,
    3: 20,
    4: 168,
    5: 7581,
    6: 7828354,
    7: 2414682040998,
    8: 56130437228687557907788,
}

# r_7 est publié avec deux valeurs différentes (490013048 et 490013148) ;
# on ne l'utilise jamais comme référence, seule Σγ = d_7 fait foi.
INEQUIVALENT = {
    0: 2,
    1: 3,
    2: 5,
    3: 10,
    4: 30,
    5: 210,
    6: 16353,
}
