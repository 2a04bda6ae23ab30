"""
Exceptions du package Dedek.
"""


class DedekError(Exception):
    """Erreur de base du package."""


class ContractError(DedekError, ValueError):
    """Précondition violée par l'appelant."""


class ArityError(ContractError):
    """Arités incompatibles."""


class MonotonicityError(ContractError):
    """Fonction non monotone là où une fonction monotone est exigée."""


class NotMemberError(ContractError, KeyError):
    """Élément absent d'une énumération D_n."""

    def __str__(self):
        # KeyError met le message entre guillemets
        return str(self.args[0]) if self.args else ""


class GuardError(ContractError):
    """Garde mémoire : la taille demandée n'est pas supportée."""


class ParseError(ContractError):
    """Table de vérité textuelle invalide."""


class FormatError(DedekError):
    """Fichier binaire invalide (magic, version, taille ou somme de contrôle)."""


class CheckpointError(FormatError):
    """Point de reprise incompatible avec les fichiers d'entrée."""


class ConfigError(DedekError):
    """Configuration invalide (variables d'environnement, options)."""


class UnsupportedError(DedekError):
    """Opération volontairement non supportée."""
