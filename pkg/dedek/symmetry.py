"""
Action de S_n sur D_n par permutation des variables d'entrée.

Le représentant canonique d'une orbite est le plus petit mot compacté de
l'orbite ; γ(f) est la taille de l'orbite de f. Comme #[x, ⊤] ne dépend que
de l'orbite de x, un balayage sur les représentants suffit.
"""

import itertools
import logging
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .binio import FORMAT_VERSION, read_header, read_payload, write_artifact
from .bits import (MAX_ARITY, WORD_BITS, heap_transpositions, swap_variables,
                   swap_variables_array, table_size)
from .config import default_threads
from .errors import ArityError, ContractError, FormatError, UnsupportedError
from .known import DEDEKIND
from .poset import MAX_GENERATED_ARITY, generate
from .truthtable import TruthTable

logger = logging.getLogger(__name__)

RN_MAGIC = b"MBFR"
RN_HEADER = struct.Struct("<4sBB2xQ")
CANONICAL_CHUNK = 1 << 20
VALIDATE_CHUNK = 1 << 24


def _remap(n, perm):
    """Tableau p -> q : g(p) = f(q) pour g = f permutée par ``perm`` (0-indexé)."""
    remap = np.empty(table_size(n), dtype=np.int64)
    for p in range(table_size(n)):
        x = [(p >> (n - 1 - k)) & 1 for k in range(n)]
        q = 0
        for k in range(n):
            q = (q << 1) | x[perm[k]]
        remap[p] = q
    return remap


class PermTable:
    """
    Les n! permutations de S_n et leurs tables de réindexation des positions.

    Attributes:
        n (int): Arité
        perms (list): Permutations 1-indexées (π(1), ..., π(n))
        remaps (np.ndarray): Tableau n! × 2^n, ligne i pour ``perms[i]``
    """

    def __init__(self, n):
        if not 0 <= n <= MAX_ARITY:
            raise ArityError(f"arité {n} hors de [0, {MAX_ARITY}]")
        self.n = n
        zero_based = list(itertools.permutations(range(n)))
        self.perms = [tuple(k + 1 for k in p) for p in zero_based]
        self.remaps = np.stack([_remap(n, p) for p in zero_based])
        self._index = {p: i for i, p in enumerate(self.perms)}

    def __len__(self):
        return len(self.perms)

    def remap(self, perm):
        try:
            return self.remaps[self._index[tuple(perm)]]
        except KeyError:
            raise ContractError(f"{perm!r} n'est pas une permutation de 1..{self.n}") from None

    def apply(self, f, perm):
        if f.n != self.n:
            raise ArityError(f"permutation de S_{self.n} appliquée à une fonction de {f.n} variables")
        bits = 0
        for p, q in enumerate(self.remap(perm)):
            bits |= ((f.bits >> int(q)) & 1) << p
        return TruthTable(f.n, bits)


@lru_cache(maxsize=None)
def perm_table(n):
    """Table des permutations, construite une fois par arité."""
    return PermTable(n)


def apply_perm(f, perm):
    """
    g(x_1, ..., x_n) = f(x_{π(1)}, ..., x_{π(n)}).

    Args:
        f (TruthTable): Fonction
        perm (sequence): π sous la forme (π(1), ..., π(n)), 1-indexée

    Returns:
        TruthTable: La fonction permutée, monotone si f l'est
    """
    return perm_table(f.n).apply(f, perm)


def _walk(bits, n):
    """Parcourt les n! images de ``bits`` par transpositions successives."""
    yield bits
    for a, b in heap_transpositions(n):
        bits = swap_variables(bits, n, a, b)
        yield bits


def orbit(f):
    """Ensemble des mots des fonctions équivalentes à f."""
    return set(_walk(f.bits, f.n))


def canonical(f):
    """Plus petit mot de l'orbite de f."""
    return TruthTable(f.n, min(_walk(f.bits, f.n)))


def gamma(f):
    """Taille de l'orbite de f (nombre d'images distinctes)."""
    return len(orbit(f))


def _canonical_chunk(words, n):
    current = words.copy()
    best = words.copy()
    for a, b in heap_transpositions(n):
        current = swap_variables_array(current, n, a, b)
        np.minimum(best, current, out=best)
    return best


def canonical_array(words, n, threads=None):
    """
    Représentants canoniques d'un tableau de mots (n <= 6), par blocs
    répartis sur un pool de threads.
    """
    words = np.asarray(words, dtype=np.uint64)
    if n > MAX_GENERATED_ARITY:
        raise UnsupportedError("canonisation vectorisée limitée à n <= 6")
    chunks = [words[s:s + CANONICAL_CHUNK] for s in range(0, len(words), CANONICAL_CHUNK)]
    if not chunks:
        return words.copy()
    with ThreadPoolExecutor(max_workers=threads or default_threads()) as pool:
        return np.concatenate(list(pool.map(lambda c: _canonical_chunk(c, n), chunks)))


@dataclass(frozen=True)
class OrbitRecord:
    rep: TruthTable
    gamma: int


class ClassTable:
    """
    R_n : représentants canoniques triés et tailles d'orbite.

    Pour n = 7 les représentants occupent deux mots, ``reps`` contient les
    mots bas et ``reps_high`` les mots hauts.
    """

    def __init__(self, n, reps, gammas, reps_high=None):
        if n == MAX_ARITY and reps_high is None:
            raise ContractError("R_7 exige les mots hauts des représentants")
        self.n = n
        self.reps = reps
        self.reps_high = reps_high
        self.gammas = gammas

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        for i in range(len(self)):
            yield self.record(i)

    def __eq__(self, other):
        if not isinstance(other, ClassTable):
            return NotImplemented
        same_high = (self.reps_high is None and other.reps_high is None) or (
            self.reps_high is not None and other.reps_high is not None
            and np.array_equal(self.reps_high, other.reps_high))
        return (self.n == other.n and same_high
                and np.array_equal(self.reps, other.reps)
                and np.array_equal(self.gammas, other.gammas))

    def __repr__(self):
        return f"ClassTable(n={self.n}, r_n={len(self)})"

    def rep(self, i):
        bits = int(self.reps[i])
        if self.reps_high is not None:
            bits |= int(self.reps_high[i]) << WORD_BITS
        return TruthTable(self.n, bits)

    def record(self, i):
        return OrbitRecord(self.rep(i), int(self.gammas[i]))

    def total(self):
        """Σ γ sur toutes les classes, égale à d_n."""
        return int(np.asarray(self.gammas).sum(dtype=np.uint64))

    def validate(self):
        """Vérifie Σ γ = d_n et γ | n! ; lève FormatError sinon."""
        expected = DEDEKIND.get(self.n)
        total = self.total()
        if expected is not None and total != expected:
            raise FormatError(f"R_{self.n}: Σγ = {total}, d_{self.n} = {expected} attendu")
        order = np.uint32(math.factorial(self.n))
        for start in range(0, len(self), VALIDATE_CHUNK):
            block = np.asarray(self.gammas[start:start + VALIDATE_CHUNK], dtype=np.uint32)
            if np.any(block == 0) or np.any(order % np.maximum(block, 1)):
                raise FormatError(f"R_{self.n}: une taille d'orbite ne divise pas {self.n}!")


def enumerate_classes(n, threads=None):
    """
    Énumère R_n par canonisation de tout D_n.

    Les représentants sont les valeurs canoniques distinctes et γ le nombre
    d'éléments de D_n qui s'y ramènent.

    Args:
        n (int): Arité, n <= 6
        threads (int): Workers pour la canonisation

    Returns:
        ClassTable: r_n classes triées par représentant
    """
    if n == MAX_ARITY:
        raise UnsupportedError("R_7 n'est pas énumérable ici : fournir un fichier .rn externe")
    if not 0 <= n <= MAX_GENERATED_ARITY:
        raise ArityError(f"arité {n} hors de [0, {MAX_GENERATED_ARITY}]")
    level = generate(n)
    canon = canonical_array(level.elements, n, threads)
    reps, counts = np.unique(canon, return_counts=True)
    logger.info("R_%d : %d classes", n, len(reps))
    return ClassTable(n, reps, counts.astype(np.uint32))


def _record_dtype(n):
    if n == MAX_ARITY:
        return np.dtype([("lo", "<u8"), ("hi", "<u8"), ("gamma", "<u4")])
    return np.dtype([("rep", "<u8"), ("gamma", "<u4")])


def save_classes(table, path):
    records = np.empty(len(table), dtype=_record_dtype(table.n))
    if table.n == MAX_ARITY:
        records["lo"] = table.reps
        records["hi"] = table.reps_high
    else:
        records["rep"] = table.reps
    records["gamma"] = table.gammas
    header = RN_HEADER.pack(RN_MAGIC, FORMAT_VERSION, table.n, len(table))
    write_artifact(path, header, records)


def load_classes(path, mmap=False, verify=True):
    """Relit un fichier ``.rn`` (R_7 compris, avec ``mmap=True`` conseillé)."""
    n, count = read_header(path, RN_HEADER, RN_MAGIC)
    if n > MAX_ARITY:
        raise FormatError(f"{path}: arité {n} non supportée")
    records = read_payload(path, _record_dtype(n), (count,), mmap=mmap, verify=verify)
    if n == MAX_ARITY:
        return ClassTable(n, records["lo"], records["gamma"], reps_high=records["hi"])
    return ClassTable(n, records["rep"], records["gamma"])

