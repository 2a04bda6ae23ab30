"""
Format binaire commun des artefacts ``.dn``, ``.mxm`` et ``.rn``.

Chaque fichier se compose d'un en-tête de 16 octets (little-endian), d'un
contenu brut et d'une somme de contrôle XOR de 8 octets.
"""

import logging
import os
import struct

import numpy as np

from .bits import xor_fold
from .errors import FormatError

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
HEADER_SIZE = 16
TRAILER = struct.Struct("<Q")


def write_artifact(path, header, payload):
    """
    Écrit en-tête, contenu et somme de contrôle.

    Args:
        path: Chemin de sortie
        header (bytes): En-tête de ``HEADER_SIZE`` octets
        payload (np.ndarray): Contenu, déjà dans un dtype little-endian
    """
    if len(header) != HEADER_SIZE:
        raise ValueError(f"en-tête de {len(header)} octets, {HEADER_SIZE} attendus")
    payload = np.ascontiguousarray(payload)
    with open(path, "wb") as f:
        f.write(header)
        payload.tofile(f)
        f.write(TRAILER.pack(xor_fold(payload)))
    logger.debug("%s écrit (%d octets de contenu)", path, payload.nbytes)


def read_header(path, layout, magic):
    """
    Lit et valide l'en-tête d'un artefact.

    Returns:
        tuple: Champs décodés après le magic et la version
    """
    with open(path, "rb") as f:
        raw = f.read(HEADER_SIZE)
    if len(raw) < HEADER_SIZE:
        raise FormatError(f"{path}: fichier tronqué (en-tête incomplet)")
    fields = layout.unpack(raw)
    if fields[0] != magic:
        raise FormatError(f"{path}: magic {fields[0]!r} invalide, {magic!r} attendu")
    if fields[1] != FORMAT_VERSION:
        raise FormatError(f"{path}: version {fields[1]} non supportée")
    return fields[2:]


def read_payload(path, dtype, shape, mmap=False, verify=True):
    """
    Lit le contenu d'un artefact après contrôle de la taille et de la somme.

    Args:
        path: Chemin du fichier
        dtype: dtype numpy (little-endian) d'un élément
        shape (tuple): Forme du contenu
        mmap (bool): Projeter le fichier en mémoire au lieu de le lire
        verify (bool): Vérifier la somme de contrôle

    Returns:
        np.ndarray: Contenu en lecture seule
    """
    dtype = np.dtype(dtype)
    count = int(np.prod(shape, dtype=np.int64))
    expected = HEADER_SIZE + count * dtype.itemsize + TRAILER.size
    actual = os.path.getsize(path)
    if actual != expected:
        raise FormatError(
            f"{path}: taille {actual} octets, {expected} attendus (fichier tronqué ou en-tête incohérent)"
        )
    if mmap:
        data = np.memmap(path, dtype=dtype, mode="r", offset=HEADER_SIZE, shape=shape)
    else:
        data = np.fromfile(path, dtype=dtype, count=count, offset=HEADER_SIZE).reshape(shape)
        data.flags.writeable = False
    if verify:
        with open(path, "rb") as f:
            f.seek(HEADER_SIZE + count * dtype.itemsize)
            (stored,) = TRAILER.unpack(f.read(TRAILER.size))
        if stored != xor_fold(data):
            raise FormatError(f"{path}: somme de contrôle invalide")
    return data
