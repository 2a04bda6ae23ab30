"""
Énumération triée de D_n, recherche d'indice et persistance ``.dn``.

D_n est construit par l'isomorphisme D_n = (D_{n-1})^{B^1} : chaque couple
f0 <= f1 de D_{n-1} donne la fonction f = (f0, f1) de D_n. Le tableau trié
des mots sert de système de coordonnées aux matrices d'intervalles.
"""

import logging
import struct
from functools import lru_cache

import numpy as np

from .binio import FORMAT_VERSION, read_header, read_payload, write_artifact
from .bits import table_size
from .errors import ArityError, FormatError, GuardError, NotMemberError, UnsupportedError
from .truthtable import TruthTable, is_monotone_array

logger = logging.getLogger(__name__)

MAX_GENERATED_ARITY = 6
MAX_BRUTE_FORCE_ARITY = 4

DN_MAGIC = b"MBFD"
DN_HEADER = struct.Struct("<4sBB2xQ")


class PosetLevel:
    """
    Énumération complète et triée de D_n (n <= 6).

    Attributes:
        n (int): Arité
        elements (np.ndarray): Mots uint64 strictement croissants, en lecture seule
    """

    def __init__(self, n, elements):
        if not 0 <= n <= MAX_GENERATED_ARITY:
            raise GuardError(f"D_{n} n'est pas matérialisable (n <= {MAX_GENERATED_ARITY})")
        elements = np.asarray(elements, dtype=np.uint64)
        if elements.flags.writeable:
            elements = elements.copy()
            elements.flags.writeable = False
        self.n = n
        self.elements = elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        for w in self.elements:
            yield TruthTable(self.n, int(w))

    def __eq__(self, other):
        if not isinstance(other, PosetLevel):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.elements, other.elements)

    def __repr__(self):
        return f"PosetLevel(n={self.n}, d_n={len(self)})"

    def element(self, index):
        return TruthTable(self.n, int(self.elements[index]))

    @property
    def bottom(self):
        return self.element(0)

    @property
    def top(self):
        return self.element(-1)

    def _check(self, f):
        if f.n != self.n:
            raise ArityError(f"fonction de {f.n} variables interrogée dans D_{self.n}")

    def index_of(self, f):
        """Position de f dans le tableau trié (recherche dichotomique)."""
        self._check(f)
        i = int(np.searchsorted(self.elements, np.uint64(f.bits)))
        if i < len(self.elements) and int(self.elements[i]) == f.bits:
            return i
        raise NotMemberError(f"{f} n'appartient pas à D_{self.n}")

    def indices_of(self, words):
        """Version vectorisée de :meth:`index_of` sur un tableau de mots."""
        words = np.asarray(words, dtype=np.uint64)
        idx = np.searchsorted(self.elements, words)
        clipped = np.minimum(idx, len(self.elements) - 1)
        if not np.array_equal(self.elements[clipped], words):
            missing = words[self.elements[clipped] != words]
            raise NotMemberError(f"{len(missing)} mots hors de D_{self.n} (ex. {int(missing[0]):#x})")
        return idx

    def upset_mask(self, x):
        self._check(x)
        w = np.uint64(x.bits)
        return (self.elements & w) == w

    def downset_mask(self, y):
        self._check(y)
        return (self.elements & np.uint64(y.bits)) == self.elements

    def upset_indices(self, x):
        """Indices i tels que x <= élément_i, par balayage complet."""
        return np.flatnonzero(self.upset_mask(x))

    def downset_indices(self, y):
        return np.flatnonzero(self.downset_mask(y))

    def interval_indices(self, x, y):
        return np.flatnonzero(self.upset_mask(x) & self.downset_mask(y))


def iter_pairs(level):
    """
    Parcourt les couples f0 <= f1 de D_n, un bloc par f0.

    Yields:
        tuple: (f0 en np.uint64, tableau des f1 compatibles)
    """
    elements = level.elements
    for f0 in elements:
        yield f0, elements[(elements & f0) == f0]


def iter_next_level(level):
    """
    Produit D_{n+1} par blocs de mots, sans le matérialiser en entier.

    Pour D_6 les mots de D_7 dépassent 64 bits : utiliser :func:`iter_compositions`.
    """
    if level.n >= MAX_GENERATED_ARITY:
        raise GuardError("les mots de D_7 dépassent 64 bits, utiliser iter_compositions")
    shift = np.uint64(table_size(level.n))
    for f0, f1s in iter_pairs(level):
        yield f0 | (f1s << shift)


def iter_compositions(level):
    """Flux paresseux des fonctions de D_{n+1}, y compris D_7 depuis D_6."""
    width = table_size(level.n)
    for f0, f1s in iter_pairs(level):
        low = int(f0)
        for f1 in f1s:
            yield TruthTable(level.n + 1, low | (int(f1) << width))


@lru_cache(maxsize=None)
def _generated_words(n):
    if n == 0:
        words = np.array([0, 1], dtype=np.uint64)
    else:
        previous = PosetLevel(n - 1, _generated_words(n - 1))
        words = np.sort(np.concatenate(list(iter_next_level(previous))))
    words.flags.writeable = False
    logger.info("D_%d généré : %d fonctions", n, len(words))
    return words


def generate(n):
    """
    Énumère D_n par la construction en couples.

    Args:
        n (int): Arité, 0 <= n <= 6

    Returns:
        PosetLevel: D_n trié, sans doublon
    """
    if n < 0:
        raise ArityError(f"arité négative: {n}")
    if n > MAX_GENERATED_ARITY:
        raise GuardError(f"generate({n}) refusé : D_7 n'existe qu'en flux (iter_compositions)")
    return PosetLevel(n, _generated_words(n))


def brute_force_level(n):
    """Filtre les 2^(2^n) mots par monotonie (oracle, n <= 4)."""
    if not 0 <= n <= MAX_BRUTE_FORCE_ARITY:
        raise GuardError(f"énumération brute limitée à n <= {MAX_BRUTE_FORCE_ARITY}")
    candidates = np.arange(1 << table_size(n), dtype=np.uint64)
    return PosetLevel(n, candidates[is_monotone_array(candidates, n)])


def save_level(level, path):
    header = DN_HEADER.pack(DN_MAGIC, FORMAT_VERSION, level.n, len(level))
    write_artifact(path, header, level.elements.astype("<u8"))


def load_level(path, mmap=False, verify=True):
    """Relit un fichier ``.dn`` écrit par :func:`save_level`."""
    n, count = read_header(path, DN_HEADER, DN_MAGIC)
    if n > MAX_GENERATED_ARITY:
        raise UnsupportedError(f"{path}: D_{n} n'est jamais matérialisé")
    elements = read_payload(path, "<u8", (count,), mmap=mmap, verify=verify)
    if not np.all(elements[1:] > elements[:-1]):
        raise FormatError(f"{path}: éléments non strictement croissants")
    return PosetLevel(n, elements)
