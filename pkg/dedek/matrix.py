"""
Matrice d'incidence M_{D_n} en lignes de bits et son carré (M_{D_n})^2.

D'après la proposition classique de l'algèbre d'incidence, le coefficient
(x, y) du carré vaut #[x, y]. La somme des carrés des coefficients donne
d_{n+2} et la somme des coefficients de M_{D_n} donne d_{n+1}.
"""

import logging
import struct
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .binio import FORMAT_VERSION, read_header, read_payload, write_artifact
from .bits import pack_rows, popcount64, unpack_rows
from .config import default_threads
from .errors import ArityError, FormatError, GuardError
from .truthtable import format_tt

logger = logging.getLogger(__name__)

MAX_MATRIX_ARITY = 5
CSV_MAX_DIM = 200
ROW_BLOCK = 256

MXM_MAGIC = b"MBFM"
MXM_HEADER = struct.Struct("<4sBBIB5x")
ENTRY_DTYPES = {2: "<u2", 4: "<u4"}


class IncidenceMatrix:
    """
    M_{D_n} compactée : ligne i, bit j = 1 ssi élément_i <= élément_j.

    Les colonnes sont stockées une seconde fois, transposées, pour que le
    carré se calcule par popcount(ligne AND colonne).
    """

    def __init__(self, n, rows, cols):
        self.n = n
        self.dim = rows.shape[0]
        self.rows = rows
        self.cols = cols

    def bit(self, i, j):
        return bool((int(self.rows[i, j >> 6]) >> (j & 63)) & 1)

    def to_dense(self):
        return unpack_rows(self.rows, self.dim)

    def sum(self):
        """Nombre de couples comparables, égal à d_{n+1}."""
        return int(popcount64(self.rows).sum(dtype=np.uint64))


class IntervalMatrix:
    """
    (M_{D_n})^2 : coefficient (i, j) = #[élément_i, élément_j].

    Attributes:
        n (int): Arité
        dim (int): d_n
        entries (np.ndarray): Tableau dim × dim de compteurs uint32 (ou uint16)
    """

    def __init__(self, n, entries):
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"matrice carrée attendue, forme {entries.shape}")
        self.n = n
        self.dim = entries.shape[0]
        self.entries = entries

    def __getitem__(self, index):
        return int(self.entries[index])

    def __eq__(self, other):
        if not isinstance(other, IntervalMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"IntervalMatrix(n={self.n}, dim={self.dim}, dtype={self.entries.dtype})"

    def entry(self, level, x, y):
        """#[x, y] lu par éléments plutôt que par indices."""
        return self[level.index_of(x), level.index_of(y)]

    def _row_blocks(self):
        for start in range(0, self.dim, ROW_BLOCK):
            yield self.entries[start:start + ROW_BLOCK].astype(np.uint64)

    def sum(self):
        """Somme exacte des coefficients (entier Python)."""
        return sum(int(block.sum(dtype=np.uint64)) for block in self._row_blocks())

    def sumsq(self):
        """Somme exacte des carrés des coefficients ; vaut d_{n+2}."""
        return sum(int((block * block).sum(dtype=np.uint64)) for block in self._row_blocks())

    def with_entry_width(self, width):
        """Copie avec des coefficients de ``width`` octets (2 ou 4)."""
        if width not in ENTRY_DTYPES:
            raise ValueError(f"largeur {width} non supportée (2 ou 4)")
        dtype = np.dtype(ENTRY_DTYPES[width])
        if self.dim and int(self.entries.max()) > np.iinfo(dtype).max:
            raise GuardError(f"coefficients trop grands pour {width} octets")
        return IntervalMatrix(self.n, self.entries.astype(dtype))


def build_incidence(level):
    """
    Construit M_{D_n} par blocs de lignes.

    Args:
        level (PosetLevel): D_n avec n <= 5

    Returns:
        IncidenceMatrix: Lignes et colonnes compactées
    """
    if level.n > MAX_MATRIX_ARITY:
        raise GuardError(f"M_{{D_{level.n}}} est hors de portée (n <= {MAX_MATRIX_ARITY})")
    elements = level.elements
    dim = len(elements)
    words = (dim + 63) // 64
    rows = np.empty((dim, words), dtype="<u8")
    cols = np.empty((dim, words), dtype="<u8")
    for start in range(0, dim, ROW_BLOCK):
        block = elements[start:start + ROW_BLOCK, None]
        rows[start:start + ROW_BLOCK] = pack_rows((block & elements[None, :]) == block)
        cols[start:start + ROW_BLOCK] = pack_rows((elements[None, :] & block) == elements[None, :])
    logger.info("M_{D_%d} construite : %d x %d", level.n, dim, dim)
    return IncidenceMatrix(level.n, rows, cols)


def _square_rows(m, out, start, stop):
    for i in range(start, stop):
        # seuls les j au-dessus de i peuvent donner un coefficient non nul
        above = np.flatnonzero(unpack_rows(m.rows[i:i + 1], m.dim)[0])
        out[i, above] = popcount64(m.rows[i] & m.cols[above]).sum(axis=1)


def square(m, threads=None):
    """
    Calcule (M_{D_n})^2 par popcount des intersections ligne/colonne.

    Les blocs de lignes sont répartis sur un pool de threads ; chaque worker
    écrit des lignes disjointes du résultat.

    Args:
        m (IncidenceMatrix): Matrice d'incidence
        threads (int): Nombre de workers (défaut : $DEDEK_THREADS)

    Returns:
        IntervalMatrix: Coefficients uint32
    """
    threads = threads or default_threads()
    out = np.zeros((m.dim, m.dim), dtype=np.uint32)
    blocks = [(s, min(s + ROW_BLOCK, m.dim)) for s in range(0, m.dim, ROW_BLOCK)]
    logger.info("Carré de M_{D_%d} : %d blocs sur %d threads", m.n, len(blocks), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(lambda b: _square_rows(m, out, *b), blocks))
    return IntervalMatrix(m.n, out)


def square_reference(m):
    """Produit matriciel entier dense, oracle du carré par popcount."""
    dense = m.to_dense().astype(np.int64)
    return IntervalMatrix(m.n, (dense @ dense).astype(np.uint32))


def interval_matrix(level, threads=None):
    """Raccourci : (M_{D_n})^2 directement depuis D_n."""
    return square(build_incidence(level), threads=threads)


def save_matrix(sq, path, entry_width=None):
    if entry_width is not None and entry_width != sq.entries.dtype.itemsize:
        sq = sq.with_entry_width(entry_width)
    width = sq.entries.dtype.itemsize
    if width not in ENTRY_DTYPES:
        raise ValueError(f"largeur {width} non supportée (2 ou 4)")
    header = MXM_HEADER.pack(MXM_MAGIC, FORMAT_VERSION, sq.n, sq.dim, width)
    write_artifact(path, header, sq.entries.astype(ENTRY_DTYPES[width]))


def load_matrix(path, mmap=False, verify=True):
    """
    Relit un fichier ``.mxm``.

    Args:
        path: Chemin du fichier
        mmap (bool): Projeter les coefficients en mémoire (partage entre processus)
        verify (bool): Vérifier la somme de contrôle

    Returns:
        IntervalMatrix: Matrice en lecture seule
    """
    n, dim, width = read_header(path, MXM_HEADER, MXM_MAGIC)
    if width not in ENTRY_DTYPES:
        raise FormatError(f"{path}: largeur de coefficient {width} invalide")
    if n > MAX_MATRIX_ARITY:
        raise FormatError(f"{path}: arité {n} hors de portée")
    entries = read_payload(path, ENTRY_DTYPES[width], (dim, dim), mmap=mmap, verify=verify)
    return IntervalMatrix(n, entries)


def export_csv(sq, path, level=None):
    """
    Exporte la matrice en CSV pour inspection (dim <= 200).

    Avec ``level``, la première ligne contient les tables de vérité des colonnes.
    """
    if sq.dim > CSV_MAX_DIM:
        raise GuardError(f"export CSV limité à dim <= {CSV_MAX_DIM} (dim = {sq.dim})")
    header = ""
    if level is not None:
        if level.n != sq.n:
            raise ArityError(f"D_{level.n} ne correspond pas à une matrice d'arité {sq.n}")
        header = ",".join(format_tt(f) for f in level)
    np.savetxt(path, np.asarray(sq.entries), fmt="%d", delimiter=",", header=header, comments="")
