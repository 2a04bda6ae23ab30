"""
Interface en ligne de commande pour Dedek.
"""

import argparse
import logging
import sys

from .config import setup_logging
from .dedekind import METHODS, check_range, dedekind_number
from .errors import ArityError, ConfigError, ContractError, FormatError, UnsupportedError
from .intervals import interval_size_alg2, upset_size_alg1
from .matrix import ENTRY_DTYPES, export_csv, interval_matrix, load_matrix, save_matrix
from .poset import generate, save_level
from .sweep import SweepConfig, read_upsets, run_sweep
from .symmetry import enumerate_classes, load_classes, save_classes
from .truthtable import parse_tt
from .verify import LEVELS, run_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dedek",
        description="Dedek - Tailles d'intervalles dans D_n et nombres de Dedekind")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="Journalisation détaillée (DEBUG)")

    subparsers = parser.add_subparsers(dest="command", help="Commandes disponibles")

    gen_parser = subparsers.add_parser("gen", help="Générer D_n et l'écrire dans un fichier .dn")
    gen_parser.add_argument("-n", type=int, required=True, help="Arité (0 à 6)")
    gen_parser.add_argument("-o", "--output", required=True, help="Fichier de sortie")

    mat_parser = subparsers.add_parser("matrix", help="Calculer (M_{D_n})^2 et l'écrire dans un fichier .mxm")
    mat_parser.add_argument("-n", type=int, required=True, help="Arité (0 à 5)")
    mat_parser.add_argument("-o", "--output", required=True, help="Fichier de sortie")
    mat_parser.add_argument("--entry-width", type=int, choices=sorted(ENTRY_DTYPES), default=4,
                            help="Largeur des coefficients en octets (défaut: 4)")
    mat_parser.add_argument("--csv", help="Export CSV supplémentaire (dim <= 200)")
    mat_parser.add_argument("--threads", type=int, help="Nombre de threads (défaut: $DEDEK_THREADS)")

    cls_parser = subparsers.add_parser("classes", help="Énumérer R_n et l'écrire dans un fichier .rn")
    cls_parser.add_argument("-n", type=int, required=True, help="Arité (0 à 6)")
    cls_parser.add_argument("-o", "--output", required=True, help="Fichier de sortie")
    cls_parser.add_argument("--threads", type=int, help="Nombre de threads (défaut: $DEDEK_THREADS)")

    int_parser = subparsers.add_parser("interval", help="Calculer #[x, y] dans D_{base+2}")
    int_parser.add_argument("--base", type=int, required=True, help="Arité de la matrice")
    int_parser.add_argument("--from", dest="lower", required=True, help="x (binaire ou 0x...)")
    int_parser.add_argument("--to", dest="upper", default="top", help="y, ou 'top' (défaut)")
    int_parser.add_argument("--matrix", required=True, help="Fichier .mxm de la base")

    ded_parser = subparsers.add_parser(
        "dedekind", help="Calculer d_n",
        description="Avec --method classes, --matrix et --classes, le calcul passe par le "
                    "balayage parallèle (voir aussi la commande sweep, seule à offrir la reprise, "
                    "conseillée pour d_8).")
    ded_parser.add_argument("--method", choices=METHODS, default="direct",
                            help="Méthode de calcul (défaut: direct)")
    ded_parser.add_argument("-n", type=int, required=True, help="Arité")
    ded_parser.add_argument("--matrix", help="Fichier .mxm (sumsq, classes)")
    ded_parser.add_argument("--classes", help="Fichier .rn (classes)")
    ded_parser.add_argument("--threads", type=int, help="Nombre de workers (défaut: $DEDEK_THREADS)")

    sw_parser = subparsers.add_parser("sweep", help="Balayage parallèle Σ #[x, ⊤]·γ sur un fichier de classes")
    sw_parser.add_argument("--base", type=int, required=True, help="Arité de la matrice (2 à 5)")
    sw_parser.add_argument("--matrix", required=True, help="Fichier .mxm")
    sw_parser.add_argument("--classes", required=True, help="Fichier .rn d'arité base + 2")
    sw_parser.add_argument("--threads", type=int, help="Nombre de workers (défaut: $DEDEK_THREADS)")
    sw_parser.add_argument("--chunk", type=int, help="Classes par bloc (défaut: $DEDEK_CHUNK)")
    sw_parser.add_argument("--checkpoint", help="Point de reprise JSON")
    sw_parser.add_argument("--checkpoint-every", type=int, default=1,
                           help="Blocs terminés entre deux écritures du point de reprise (défaut: 1)")
    sw_parser.add_argument("--out", help="Fichier des résultats par classe")
    sw_parser.add_argument("--max-chunks", type=int, help="Arrêter après ce nombre de nouveaux blocs")

    ver_parser = subparsers.add_parser("verify", help="Vérifier les résultats connus")
    ver_parser.add_argument("--level", choices=LEVELS, default="quick", help="Niveau (défaut: quick)")
    ver_parser.add_argument("--classes", help="Fichier R_7 (niveau full)")
    ver_parser.add_argument("--matrix", help="Fichier .mxm de base 5 (niveau full)")
    ver_parser.add_argument("--threads", type=int, help="Nombre de workers (défaut: $DEDEK_THREADS)")

    plot_parser = subparsers.add_parser("plot", help="Tracer une matrice ou une distribution d'up-sets")
    plot_parser.add_argument("--matrix", help="Fichier .mxm à afficher en carte de chaleur")
    plot_parser.add_argument("--upsets", help="Fichier de résultats d'un balayage (avec --classes)")
    plot_parser.add_argument("--classes", help="Fichier .rn du balayage")
    plot_parser.add_argument("-o", "--output", default="dedek.png", help="Fichier image de sortie")
    plot_parser.add_argument("-s", "--show", action="store_true", help="Afficher le graphique (défaut: False)")

    return parser


def _cmd_gen(args):
    level = generate(args.n)
    save_level(level, args.output)
    logger.info("D_%d sauvegardé dans %s", args.n, args.output)
    print(len(level))


def _cmd_matrix(args):
    level = generate(args.n)
    sq = interval_matrix(level, threads=args.threads)
    save_matrix(sq, args.output, entry_width=args.entry_width)
    logger.info("(M_{D_%d})^2 sauvegardée dans %s, SumSq = %d", args.n, args.output, sq.sumsq())
    if args.csv:
        export_csv(sq, args.csv, level)
        logger.info("Export CSV: %s", args.csv)
    print(sq.dim)


def _cmd_classes(args):
    table = enumerate_classes(args.n, threads=args.threads)
    save_classes(table, args.output)
    logger.info("R_%d sauvegardé dans %s", args.n, args.output)
    print(len(table))


def _cmd_interval(args):
    sq = load_matrix(args.matrix, mmap=True)
    if sq.n != args.base:
        raise ArityError(f"{args.matrix} est de base {sq.n}, base {args.base} demandée")
    level = generate(args.base)
    x = parse_tt(args.lower, n=args.base + 2)
    if args.upper == "top":
        print(upset_size_alg1(x, sq, level))
    else:
        y = parse_tt(args.upper, n=args.base + 2)
        print(interval_size_alg2(x, y, sq, level))


def _cmd_dedekind(args):
    if args.method == "classes" and args.matrix and args.classes:
        check_range("classes", args.n)
        config = SweepConfig(base_n=args.n - 3, matrix_path=args.matrix,
                             classes_path=args.classes, threads=args.threads)
        print(run_sweep(config).total)
        return
    kwargs = {}
    if args.method in ("sumsq", "classes"):
        kwargs["threads"] = args.threads
        if args.matrix:
            kwargs["sq"] = load_matrix(args.matrix, mmap=True)
    if args.method == "classes" and args.classes:
        kwargs["classes"] = load_classes(args.classes, mmap=True)
        kwargs["classes"].validate()
    print(dedekind_number(args.n, method=args.method, **kwargs))


def _cmd_sweep(args):
    config = SweepConfig(
        base_n=args.base,
        matrix_path=args.matrix,
        classes_path=args.classes,
        threads=args.threads,
        chunk_size=args.chunk,
        checkpoint_path=args.checkpoint,
        out_path=args.out,
        checkpoint_every=args.checkpoint_every,
    )
    result = run_sweep(config, max_chunks=args.max_chunks)
    if result.complete:
        print(result.total)
    else:
        print(f"{result.total} (partiel : {result.chunks_done}/{result.chunks_total} blocs)")


def _cmd_verify(args):
    ok = run_verify(args.level, threads=args.threads, classes_path=args.classes,
                    matrix_path=args.matrix)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _cmd_plot(args):
    from .plotting import plot_interval_matrix, plot_upset_distribution

    if args.upsets:
        if not args.classes:
            raise ContractError("--upsets exige --classes")
        records = read_upsets(args.upsets)
        classes = load_classes(args.classes, mmap=True)
        gammas = classes.gammas[records["index"].astype("int64")]
        plot_upset_distribution(records["count"], gammas, args.output, show_plot=args.show)
    elif args.matrix:
        sq = load_matrix(args.matrix, mmap=True)
        level = generate(sq.n)
        plot_interval_matrix(sq, level, args.output, show_plot=args.show)
    else:
        raise ContractError("indiquer --matrix ou --upsets")
    print(f"Graphique sauvegardé dans {args.output}")


COMMANDS = {
    "gen": _cmd_gen,
    "matrix": _cmd_matrix,
    "classes": _cmd_classes,
    "interval": _cmd_interval,
    "dedekind": _cmd_dedekind,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "plot": _cmd_plot,
}


def main(argv=None):
    """Fonction principale avec interface en ligne de commande."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        print("Bienvenue dans Dedek!")
        print("Utilisez 'dedek dedekind -n 5' pour calculer d_5")
        print("Utilisez 'dedek verify' pour vérifier les valeurs connues")
        print("Utilisez 'dedek -h' pour plus d'aide")
        return EXIT_OK

    try:
        setup_logging(args.verbose)
        code = COMMANDS[args.command](args)
    except (ContractError, ConfigError, UnsupportedError) as e:
        print(f"❌ Erreur: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, OSError) as e:
        print(f"❌ Erreur d'entrée/sortie: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
