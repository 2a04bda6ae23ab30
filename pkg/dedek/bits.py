"""
Primitives sur les mots binaires : masques de coordonnées, échange de
variables, popcount vectorisé et somme de contrôle XOR.
"""

from functools import lru_cache

import numpy as np

WORD_BITS = 64
MAX_ARITY = 7

# Constantes SWAR (popcount sans instruction dédiée)
_S55 = np.uint64(0x5555555555555555)
_S33 = np.uint64(0x3333333333333333)
_S0F = np.uint64(0x0F0F0F0F0F0F0F0F)
_S01 = np.uint64(0x0101010101010101)


def table_size(n):
    """Nombre de positions d'une table de vérité à n variables."""
    return 1 << n


@lru_cache(maxsize=None)
def table_mask(n):
    """Masque des 2^n positions valides."""
    return (1 << table_size(n)) - 1


@lru_cache(maxsize=None)
def coordinate_mask(n, k):
    """
    Positions dont la coordonnée x_k vaut 0 (k de 1 à n, x_1 la plus forte).

    Args:
        n (int): Arité
        k (int): Coordonnée, 1 <= k <= n

    Returns:
        int: Masque des positions p telles que le bit (n - k) de p est nul
    """
    shift = n - k
    mask = 0
    for p in range(table_size(n)):
        if not (p >> shift) & 1:
            mask |= 1 << p
    return mask


@lru_cache(maxsize=None)
def swap_masks(n, a, b):
    """
    Masques pour échanger les variables x_a et x_b (a < b) par delta-swap.

    Returns:
        tuple: (keep, low, high, shift) où ``low`` couvre x_a=0, x_b=1 et
        ``high = low << shift`` couvre x_a=1, x_b=0
    """
    if not 1 <= a < b <= n:
        raise ValueError(f"variables invalides ({a}, {b}) pour n={n}")
    stride_a = 1 << (n - a)
    stride_b = 1 << (n - b)
    low = 0
    for p in range(table_size(n)):
        if not p & stride_a and p & stride_b:
            low |= 1 << p
    shift = stride_a - stride_b
    high = low << shift
    keep = table_mask(n) & ~(low | high)
    return keep, low, high, shift


def swap_variables(bits, n, a, b):
    """Échange x_a et x_b dans une table (entier Python)."""
    if a == b:
        return bits
    if a > b:
        a, b = b, a
    keep, low, high, shift = swap_masks(n, a, b)
    return (bits & keep) | ((bits & low) << shift) | ((bits & high) >> shift)


def swap_variables_array(words, n, a, b):
    """Version vectorisée de :func:`swap_variables` sur un tableau uint64 (n <= 6)."""
    if a > b:
        a, b = b, a
    keep, low, high, shift = swap_masks(n, a, b)
    s = np.uint64(shift)
    return ((words & np.uint64(keep))
            | ((words & np.uint64(low)) << s)
            | ((words & np.uint64(high)) >> s))


def heap_transpositions(n):
    """
    Suite des n! - 1 transpositions de l'algorithme de Heap.

    Appliquées successivement à une table, elles font parcourir toutes les
    permutations des variables, chacune une seule fois.

    Returns:
        list: Couples (a, b) de variables 1-indexées
    """
    swaps = []
    counters = [0] * n
    i = 1
    while i < n:
        if counters[i] < i:
            j = 0 if i % 2 == 0 else counters[i]
            swaps.append((j + 1, i + 1))
            counters[i] += 1
            i = 1
        else:
            counters[i] = 0
            i += 1
    return swaps


def popcount64(words):
    """Nombre de bits à 1 de chaque mot d'un tableau uint64."""
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(words)
    x = words - ((words >> np.uint64(1)) & _S55)
    x = (x & _S33) + ((x >> np.uint64(2)) & _S33)
    x = (x + (x >> np.uint64(4))) & _S0F
    return (x * _S01) >> np.uint64(56)


def pack_rows(bool_rows):
    """
    Compacte une matrice booléenne (lignes) en mots uint64 little-endian.

    Le bit j de la ligne i est le bit (j % 64) du mot (j // 64).
    """
    rows = np.atleast_2d(np.asarray(bool_rows, dtype=bool))
    n_words = (rows.shape[1] + WORD_BITS - 1) // WORD_BITS
    packed = np.packbits(rows, axis=1, bitorder="little")
    padded = np.zeros((rows.shape[0], n_words * 8), dtype=np.uint8)
    padded[:, :packed.shape[1]] = packed
    return padded.view("<u8")


def unpack_rows(packed, width):
    """Inverse de :func:`pack_rows`."""
    as_bytes = np.ascontiguousarray(packed, dtype="<u8").view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :width].astype(bool)


def xor_fold(payload):
    """
    Somme de contrôle : XOR des mots little-endian de 64 bits du contenu,
    complété par des zéros jusqu'à un multiple de 8 octets.

    Args:
        payload: ``bytes`` ou tableau numpy contigu

    Returns:
        int: Somme de contrôle sur 64 bits
    """
    if isinstance(payload, (bytes, bytearray, memoryview)):
        buf = np.frombuffer(payload, dtype=np.uint8)
    else:
        buf = np.ascontiguousarray(payload).reshape(-1).view(np.uint8)
    full = (buf.size // 8) * 8
    acc = 0
    if full:
        acc = int(np.bitwise_xor.reduce(buf[:full].view("<u8")))
    if full < buf.size:
        tail = np.zeros(8, dtype=np.uint8)
        tail[:buf.size - full] = buf[full:]
        acc ^= int(tail.view("<u8")[0])
    return acc
