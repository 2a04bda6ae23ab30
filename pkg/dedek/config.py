"""
Configuration : variables d'environnement et journalisation.
"""

import logging
import os

from .errors import ConfigError

THREADS_ENV = "DEDEK_THREADS"
CHUNK_ENV = "DEDEK_CHUNK"
DEFAULT_CHUNK = 256

LOG_FORMAT = "[%(levelname)s] %(message)s"


def _positive_int_from_env(name, fallback):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} doit être un entier, reçu {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{name} doit être >= 1, reçu {value}")
    return value


def default_threads():
    """Nombre de workers par défaut ($DEDEK_THREADS, sinon nombre de CPU)."""
    return _positive_int_from_env(THREADS_ENV, os.cpu_count() or 1)


def default_chunk():
    """Taille de bloc par défaut pour le balayage des classes ($DEDEK_CHUNK)."""
    return _positive_int_from_env(CHUNK_ENV, DEFAULT_CHUNK)


def setup_logging(verbose=False):
    """
    Installe un handler console au format ``[INFO] message``.

    Args:
        verbose (bool): Niveau DEBUG au lieu de INFO

    Returns:
        logging.Logger: Le logger racine du package
    """
    logger = logging.getLogger("dedek")
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    return logger
