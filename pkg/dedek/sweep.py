"""
Balayage parallèle des classes : Σ_{x ∈ R_k} #[x, ⊤] · γ(x).

Les classes sont découpées en blocs de taille fixe ; un pool de processus
consomme les blocs dans l'ordre où ils se libèrent, ce qui équilibre des
coûts très inégaux d'une classe à l'autre. Chaque bloc renvoie une somme
partielle exacte (entier Python), fusionnée à la fin : le total ne dépend
ni du nombre de workers ni de l'ordre d'exécution.

Un point de reprise JSON enregistre le préfixe contigu de blocs terminés et sa
somme, les blocs terminés hors ordre et l'empreinte SHA-256 des entrées.
"""

import hashlib
import itertools
import json
import logging
import os
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .config import default_chunk, default_threads
from .errors import ArityError, CheckpointError, ConfigError
from .intervals import upset_size_alg1
from .matrix import load_matrix
from .poset import generate
from .symmetry import load_classes

logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 2
# Blocs en vol par worker
SWEEP_WINDOW = 4
MIN_BASE = 2
MAX_BASE = 5
UPSET_DTYPE = np.dtype([("index", "<u8"), ("count", "<u8")])


@dataclass
class SweepConfig:
    """
    Paramètres d'un balayage.

    Attributes:
        base_n (int): Arité de la matrice, de 2 à 5 (classes d'arité base_n + 2)
        matrix_path (Path): Fichier ``.mxm`` de (M_{D_base})^2
        classes_path (Path): Fichier ``.rn`` des classes
        threads (int): Nombre de workers (défaut : $DEDEK_THREADS)
        chunk_size (int): Classes par bloc (défaut : $DEDEK_CHUNK)
        checkpoint_path (Path): Point de reprise optionnel
        out_path (Path): Fichier optionnel des résultats par classe
        checkpoint_every (int): Blocs terminés entre deux écritures du point de reprise
    """

    base_n: int
    matrix_path: Path
    classes_path: Path
    threads: Optional[int] = None
    chunk_size: Optional[int] = None
    checkpoint_path: Optional[Path] = None
    out_path: Optional[Path] = None
    checkpoint_every: int = 1

    def __post_init__(self):
        if self.threads is None:
            self.threads = default_threads()
        if self.chunk_size is None:
            self.chunk_size = default_chunk()
        self.matrix_path = Path(self.matrix_path)
        self.classes_path = Path(self.classes_path)
        if self.checkpoint_path is not None:
            self.checkpoint_path = Path(self.checkpoint_path)
        if self.out_path is not None:
            self.out_path = Path(self.out_path)
        if not MIN_BASE <= self.base_n <= MAX_BASE:
            raise ConfigError(f"base {self.base_n} hors de [{MIN_BASE}, {MAX_BASE}]")
        if self.threads < 1:
            raise ConfigError(f"nombre de workers invalide: {self.threads}")
        if self.chunk_size < 1 or self.checkpoint_every < 1:
            raise ConfigError("taille de bloc et fréquence de reprise doivent être >= 1")
        for path in (self.matrix_path, self.classes_path):
            if not path.is_file():
                raise FileNotFoundError(f"fichier introuvable: {path}")


@dataclass
class SweepResult:
    total: int
    classes: int
    chunks_done: int
    chunks_total: int

    @property
    def complete(self):
        return self.chunks_done == self.chunks_total


def weighted_upsets(classes, sq, level, start=0, stop=None):
    """
    Calcule #[x, ⊤] pour les classes ``start`` à ``stop`` et la somme pondérée par γ.

    Returns:
        tuple: (somme exacte, tableau uint64 des #[x, ⊤])
    """
    stop = len(classes) if stop is None else stop
    counts = np.empty(stop - start, dtype=np.uint64)
    total = 0
    for offset, i in enumerate(range(start, stop)):
        count = upset_size_alg1(classes.rep(i), sq, level)
        counts[offset] = count
        total += count * int(classes.gammas[i])
    return total, counts


class _SweepContext:
    """Données partagées en lecture seule par un worker."""

    def __init__(self, base_n, matrix_path, classes_path, verify=False):
        self.level = generate(base_n)
        self.sq = load_matrix(matrix_path, mmap=True, verify=verify)
        self.classes = load_classes(classes_path, mmap=True, verify=verify)

    def run_chunk(self, chunk, start, stop):
        total, counts = weighted_upsets(self.classes, self.sq, self.level, start, stop)
        return chunk, total, counts


_CONTEXT = None


def _init_worker(base_n, matrix_path, classes_path):
    global _CONTEXT
    _CONTEXT = _SweepContext(base_n, matrix_path, classes_path)


def _run_chunk(chunk, start, stop):
    # fonction de module : doit rester picklable pour le pool de processus
    return _CONTEXT.run_chunk(chunk, start, stop)


class _Progress:
    """
    Blocs terminés : le préfixe contigu [0, prefix) résumé par sa somme, plus
    les blocs terminés hors ordre au-delà du préfixe.
    """

    def __init__(self, prefix=0, prefix_sum=0, extra=None):
        self.prefix = prefix
        self.prefix_sum = prefix_sum
        self.extra = dict(extra or {})
        self._absorb()

    def __len__(self):
        return self.prefix + len(self.extra)

    def __contains__(self, chunk):
        return chunk < self.prefix or chunk in self.extra

    @property
    def total(self):
        return self.prefix_sum + sum(self.extra.values())

    def add(self, chunk, total):
        self.extra[chunk] = total
        self._absorb()

    def _absorb(self):
        while self.prefix in self.extra:
            self.prefix_sum += self.extra.pop(self.prefix)
            self.prefix += 1

    def pending(self, n_chunks):
        return (c for c in range(self.prefix, n_chunks) if c not in self.extra)

    def to_state(self):
        return {
            "prefix": self.prefix,
            "prefix_sum": str(self.prefix_sum),
            "extra": {str(k): str(v) for k, v in sorted(self.extra.items())},
        }

    @classmethod
    def from_state(cls, state):
        return cls(int(state.get("prefix", 0)), int(state.get("prefix_sum", "0")),
                   {int(k): int(v) for k, v in state.get("extra", {}).items()})


def file_sha256(path, block_size=1 << 20):
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(block_size), b""):
            digest.update(block)
    return digest.hexdigest()


def _load_checkpoint(config, fingerprint):
    path = config.checkpoint_path
    if path is None or not path.exists():
        return _Progress(), 0
    try:
        state = json.loads(path.read_text(encoding="utf-8"))
        if state.get("version") != CHECKPOINT_VERSION:
            raise CheckpointError(f"{path}: version de point de reprise non supportée")
        for key, value in fingerprint.items():
            if state.get(key) != value:
                raise CheckpointError(f"{path}: '{key}' ne correspond pas aux entrées actuelles")
        progress = _Progress.from_state(state)
        out_size = int(state.get("out_size", 0))
    except (json.JSONDecodeError, AttributeError, TypeError, ValueError) as e:
        raise CheckpointError(f"{path}: point de reprise illisible ({e})") from None
    logger.info("Reprise : %d blocs déjà terminés", len(progress))
    return progress, out_size


def _save_checkpoint(config, fingerprint, progress, out_size):
    state = dict(fingerprint)
    state["version"] = CHECKPOINT_VERSION
    state.update(progress.to_state())
    state["out_size"] = out_size
    tmp = config.checkpoint_path.with_name(config.checkpoint_path.name + ".tmp")
    tmp.write_text(json.dumps(state, indent=1), encoding="utf-8")
    os.replace(tmp, config.checkpoint_path)


def _open_output(config, out_size, resuming):
    if config.out_path is None:
        return None
    if resuming and config.out_path.exists():
        out = open(config.out_path, "r+b")
        out.truncate(out_size)
        out.seek(out_size)
        return out
    return open(config.out_path, "wb")


def run_sweep(config, max_chunks=None):
    """
    Exécute (ou reprend) le balayage décrit par ``config``.

    Au plus ``SWEEP_WINDOW`` blocs par worker sont en vol ; chaque résultat
    est consommé puis libéré dès qu'il arrive.

    Args:
        config (SweepConfig): Paramètres du balayage
        max_chunks (int): Nombre maximal de nouveaux blocs à traiter dans cet
            appel ; le balayage peut ensuite être repris depuis le point de reprise

    Returns:
        SweepResult: Total exact sur les blocs terminés
    """
    sq = load_matrix(config.matrix_path, mmap=True)
    classes = load_classes(config.classes_path, mmap=True)
    if sq.n != config.base_n:
        raise ArityError(f"matrice d'arité {sq.n}, base {config.base_n} demandée")
    if classes.n != config.base_n + 2:
        raise ArityError(f"classes d'arité {classes.n}, {config.base_n + 2} attendues")
    classes.validate()

    n_chunks = (len(classes) + config.chunk_size - 1) // config.chunk_size
    fingerprint = {
        "base_n": config.base_n,
        "chunk_size": config.chunk_size,
        "chunks_total": n_chunks,
    }
    if config.checkpoint_path is not None:
        fingerprint["matrix_sha256"] = file_sha256(config.matrix_path)
        fingerprint["classes_sha256"] = file_sha256(config.classes_path)
    progress, out_size = _load_checkpoint(config, fingerprint)
    remaining = n_chunks - len(progress)
    todo = remaining if max_chunks is None else min(max_chunks, remaining)
    pending = itertools.islice(progress.pending(n_chunks), todo)
    logger.info("Balayage de R_%d : %d blocs à traiter sur %d, %d workers",
                classes.n, todo, n_chunks, config.threads)

    out = _open_output(config, out_size, resuming=len(progress) > 0)
    since_checkpoint = 0

    def record(chunk, total, counts):
        nonlocal out_size, since_checkpoint
        progress.add(chunk, total)
        if out is not None:
            rows = np.empty(len(counts), dtype=UPSET_DTYPE)
            rows["index"] = np.arange(chunk * config.chunk_size, chunk * config.chunk_size + len(counts))
            rows["count"] = counts
            out.write(rows.tobytes())
            out.flush()
            out_size += rows.nbytes
        since_checkpoint += 1
        if config.checkpoint_path is not None and since_checkpoint >= config.checkpoint_every:
            _save_checkpoint(config, fingerprint, progress, out_size)
            since_checkpoint = 0
        logger.debug("Bloc %d terminé (%d/%d)", chunk, len(progress), n_chunks)

    def bounds(chunk):
        start = chunk * config.chunk_size
        return start, min(start + config.chunk_size, len(classes))

    try:
        if config.threads == 1:
            context = _SweepContext(config.base_n, config.matrix_path, config.classes_path)
            for chunk in pending:
                record(*context.run_chunk(chunk, *bounds(chunk)))
        else:
            with ProcessPoolExecutor(max_workers=config.threads, initializer=_init_worker,
                                     initargs=(config.base_n, str(config.matrix_path),
                                               str(config.classes_path))) as pool:

                def submit(chunk):
                    return pool.submit(_run_chunk, chunk, *bounds(chunk))

                in_flight = {submit(c) for c in itertools.islice(pending, config.threads * SWEEP_WINDOW)}
                while in_flight:
                    finished, in_flight = wait(in_flight, return_when=FIRST_COMPLETED)
                    for future in finished:
                        record(*future.result())
                        following = next(pending, None)
                        if following is not None:
                            in_flight.add(submit(following))
    finally:
        if config.checkpoint_path is not None:
            _save_checkpoint(config, fingerprint, progress, out_size)
        if out is not None:
            out.close()

    result = SweepResult(total=progress.total, classes=len(classes),
                         chunks_done=len(progress), chunks_total=n_chunks)
    if not result.complete:
        logger.warning("Balayage interrompu : %d/%d blocs terminés", result.chunks_done, n_chunks)
    return result


def read_upsets(path):
    """Relit le fichier des résultats par classe (index de classe, #[x, ⊤])."""
    return np.fromfile(path, dtype=UPSET_DTYPE)
