"""
Graphiques : carte de (M_{D_n})^2 et distribution des tailles d'up-sets.
"""

import logging

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm

from .truthtable import format_tt

logger = logging.getLogger(__name__)

# Au-delà, la matrice est sous-échantillonnée avant affichage
MAX_PIXELS = 1024
MAX_LABELS = 32


def plot_interval_matrix(sq, level=None, output_filename="intervals.png", show_plot=False):
    """
    Carte de chaleur de (M_{D_n})^2 en échelle logarithmique.

    Les coefficients nuls (couples non comparables) restent en blanc.

    Args:
        sq (IntervalMatrix): Matrice des tailles d'intervalles
        level (PosetLevel): D_n, pour étiqueter les axes des petites matrices
        output_filename (str): Fichier image de sortie
        show_plot (bool): Afficher la figure au lieu de la fermer
    """
    step = max(1, -(-sq.dim // MAX_PIXELS))
    entries = np.asarray(sq.entries[::step, ::step], dtype=np.float64)
    if step > 1:
        logger.info("Matrice %d x %d affichée avec un pas de %d", sq.dim, sq.dim, step)
    masked = np.ma.masked_equal(entries, 0)

    fig, ax = plt.subplots(figsize=(8, 7))
    image = ax.imshow(masked, cmap="viridis", interpolation="nearest",
                      norm=LogNorm(vmin=1, vmax=max(2.0, float(entries.max()))))
    fig.colorbar(image, ax=ax, label="#[x, y]")
    ax.set_title(f"(M_{{D_{sq.n}}})², {sq.dim} éléments")
    if level is not None and step == 1 and sq.dim <= MAX_LABELS:
        labels = [format_tt(f) for f in level]
        ax.set_xticks(range(sq.dim))
        ax.set_yticks(range(sq.dim))
        ax.set_xticklabels(labels, rotation=90, fontsize=7)
        ax.set_yticklabels(labels, fontsize=7)
    ax.set_xlabel("y")
    ax.set_ylabel("x")

    fig.tight_layout()
    fig.savefig(output_filename, dpi=150)
    logger.info("Graphique sauvegardé: %s", output_filename)
    if show_plot:
        plt.show()
    else:
        plt.close(fig)


def plot_upset_distribution(counts, gammas, output_filename="upsets.png", show_plot=False, bins=50):
    """
    Histogramme de log10 #[x, ⊤] sur un balayage de classes, pondéré par γ.

    La somme des poids vaut d_k : l'histogramme décrit donc D_k entier.
    """
    counts = np.asarray(counts, dtype=np.float64)
    weights = np.asarray(gammas, dtype=np.float64)
    if counts.shape != weights.shape:
        raise ValueError("counts et gammas doivent avoir la même taille")

    fig, ax = plt.subplots(figsize=(9, 5))
    ax.hist(np.log10(counts), bins=bins, weights=weights, color="steelblue", alpha=0.8)
    ax.set_yscale("log")
    ax.set_title("Distribution des tailles d'up-sets")
    ax.set_xlabel("log10 #[x, ⊤]")
    ax.set_ylabel("Nombre de fonctions")
    ax.grid(True)

    fig.tight_layout()
    fig.savefig(output_filename, dpi=150)
    logger.info("Graphique sauvegardé: %s", output_filename)
    if show_plot:
        plt.show()
    else:
        plt.close(fig)
