"""
Représentation compacte des fonctions booléennes (monotones).

Une fonction de n variables est stockée comme un mot de 2^n bits : le bit p
contient f(x) pour l'entrée x de rang lexicographique p, avec x_1 la
coordonnée de poids fort. La chaîne "01110111" se lit donc de gauche à
droite comme les positions 0 à 7.

Les opérations d'ordre et de treillis sont des opérations bit à bit :
f <= g ssi f AND g == f, l'union est le OR et l'intersection le AND.
"""

from dataclasses import dataclass

import numpy as np

from .bits import MAX_ARITY, coordinate_mask, table_mask, table_size, WORD_BITS
from .errors import ArityError, ContractError, MonotonicityError, ParseError

_WORD_MASK = (1 << WORD_BITS) - 1


@dataclass(frozen=True)
class TruthTable:
    """
    Table de vérité de ``n`` variables (0 <= n <= 7).

    Attributes:
        n (int): Arité
        bits (int): Mot compacté, bit p = valeur à la position p
    """

    n: int
    bits: int = 0

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise ArityError(f"arité invalide: {self.n!r}")
        if not 0 <= self.n <= MAX_ARITY:
            raise ArityError(f"arité {self.n} hors de [0, {MAX_ARITY}]")
        object.__setattr__(self, "n", int(self.n))
        bits = int(self.bits)
        if bits < 0 or bits > table_mask(self.n):
            raise ContractError(f"bits au-delà de la position {table_size(self.n) - 1} pour n={self.n}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def bottom(cls, n):
        """Fonction constante 0 (⊥)."""
        return cls(n, 0)

    @classmethod
    def top(cls, n):
        """Fonction constante 1 (⊤)."""
        return cls(n, table_mask(n))

    @classmethod
    def from_words(cls, n, words):
        """Construit depuis ``(mot,)`` pour n <= 6 ou ``(bas, haut)`` pour n = 7."""
        words = tuple(int(w) for w in words)
        if n == MAX_ARITY:
            if len(words) != 2:
                raise ContractError("n = 7 exige deux mots (bas, haut)")
            return cls(n, words[0] | (words[1] << WORD_BITS))
        if len(words) != 1:
            raise ContractError(f"n = {n} exige un seul mot")
        return cls(n, words[0])

    @property
    def size(self):
        return table_size(self.n)

    @property
    def words(self):
        """Mots de 64 bits : ``(mot,)`` ou ``(bas, haut)`` pour n = 7."""
        if self.n == MAX_ARITY:
            return (self.bits & _WORD_MASK, self.bits >> WORD_BITS)
        return (self.bits,)

    def __getitem__(self, position):
        if not 0 <= position < self.size:
            raise IndexError(position)
        return (self.bits >> position) & 1

    def evaluate(self, inputs):
        """Valeur f(x_1, ..., x_n) pour un vecteur d'entrées 0/1."""
        if len(inputs) != self.n:
            raise ArityError(f"{len(inputs)} entrées pour une fonction de {self.n} variables")
        position = 0
        for value in inputs:
            position = (position << 1) | (1 if value else 0)
        return self[position]

    def count(self):
        """Nombre d'entrées où f vaut 1."""
        return bin(self.bits).count("1")

    def __le__(self, other):
        return leq(self, other)

    def __lt__(self, other):
        return leq(self, other) and self.bits != other.bits

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersection(self, other)

    def __str__(self):
        return format_tt(self)

    def __repr__(self):
        return f"TruthTable(n={self.n}, '{format_tt(self)}')"


def _same_arity(f, g):
    if f.n != g.n:
        raise ArityError(f"arités différentes: {f.n} et {g.n}")


def leq(f, g):
    """f <= g ssi l'ensemble des bits de f est inclus dans celui de g."""
    _same_arity(f, g)
    return f.bits & g.bits == f.bits


def union(f, g):
    _same_arity(f, g)
    return TruthTable(f.n, f.bits | g.bits)


def intersection(f, g):
    _same_arity(f, g)
    return TruthTable(f.n, f.bits & g.bits)


def is_monotone(f):
    """
    Teste la monotonie par n comparaisons de demi-tables : pour chaque
    coordonnée k, la moitié x_k = 0 décalée sur la moitié x_k = 1 doit être
    incluse dans f.
    """
    for k in range(1, f.n + 1):
        shift = 1 << (f.n - k)
        lower = f.bits & coordinate_mask(f.n, k)
        if (lower << shift) & ~f.bits:
            return False
    return True


def is_monotone_array(words, n):
    """Version vectorisée de :func:`is_monotone` sur un tableau uint64 (n <= 6)."""
    words = np.asarray(words, dtype=np.uint64)
    ok = np.ones(words.shape, dtype=bool)
    for k in range(1, n + 1):
        shift = np.uint64(1 << (n - k))
        lower = words & np.uint64(coordinate_mask(n, k))
        ok &= ((lower << shift) & ~words) == 0
    return ok


def split(f, m, check=True):
    """
    Décompose f ∈ D_{k+m} en 2^m fonctions de D_k (isomorphisme D_{k+m} = (D_k)^{B^m}).

    La partie j regroupe les positions j·2^k à (j+1)·2^k − 1, c'est-à-dire
    les entrées dont les m premières coordonnées valent l'écriture binaire
    de j.

    Args:
        f (TruthTable): Fonction à décomposer
        m (int): Nombre de variables extraites
        check (bool): Vérifier que les parties sont ordonnées sur le cube B^m

    Returns:
        tuple: Les 2^m parties
    """
    if not 0 <= m <= f.n:
        raise ArityError(f"impossible d'extraire {m} variables d'une fonction de {f.n} variables")
    k = f.n - m
    width = table_size(k)
    mask = table_mask(k)
    parts = tuple(TruthTable(k, (f.bits >> (j * width)) & mask) for j in range(1 << m))
    if check:
        _check_cube_order(parts, m)
    return parts


def join(parts, check=True):
    """Inverse de :func:`split`."""
    parts = tuple(parts)
    m = len(parts).bit_length() - 1
    if len(parts) == 0 or len(parts) != 1 << m:
        raise ContractError(f"{len(parts)} parties : une puissance de deux est attendue")
    k = parts[0].n
    for p in parts[1:]:
        _same_arity(parts[0], p)
    if k + m > MAX_ARITY:
        raise ArityError(f"arité {k + m} > {MAX_ARITY}")
    if check:
        _check_cube_order(parts, m)
    width = table_size(k)
    bits = 0
    for j, p in enumerate(parts):
        bits |= p.bits << (j * width)
    return TruthTable(k + m, bits)


def _check_cube_order(parts, m):
    for i in range(1 << m):
        for t in range(m):
            j = i | (1 << t)
            if j != i and not leq(parts[i], parts[j]):
                raise MonotonicityError(
                    f"parties non ordonnées: {format_tt(parts[i])} ≰ {format_tt(parts[j])}"
                )


def decompose2(f, check=True):
    """f ∈ D_n -> (f0, f1) avec f0 = positions x_1 = 0 et f1 = positions x_1 = 1."""
    if f.n < 1:
        raise ArityError("decompose2 exige n >= 1")
    return split(f, 1, check)


def compose2(f0, f1, check=True):
    """Concaténation (f0, f1) ; la variante vérifiée rejette f0 ≰ f1."""
    return join((f0, f1), check)


def decompose4(f, check=True):
    """f ∈ D_n -> (x0, x1, x2, x3) = f(00·), f(01·), f(10·), f(11·)."""
    if f.n < 2:
        raise ArityError("decompose4 exige n >= 2")
    return split(f, 2, check)


def compose4(x0, x1, x2, x3, check=True):
    return join((x0, x1, x2, x3), check)


def parse_tt(text, n=None):
    """
    Lit une table de vérité.

    Args:
        text (str): Chaîne binaire de longueur 2^n (positions 0 à 2^n − 1 de
            gauche à droite) ou hexadécimal préfixé par "0x"
        n (int): Arité attendue, obligatoire pour l'hexadécimal

    Returns:
        TruthTable: La fonction lue
    """
    text = text.strip()
    if text[:2].lower() == "0x":
        if n is None:
            raise ParseError("l'arité n est obligatoire pour une table hexadécimale")
        try:
            bits = int(text[2:], 16)
        except ValueError:
            raise ParseError(f"hexadécimal invalide: {text!r}") from None
        if bits > table_mask(n):
            raise ParseError(f"{text} dépasse 2^{table_size(n)} positions")
        return TruthTable(n, bits)
    if not text:
        raise ParseError("table de vérité vide")
    if set(text) - {"0", "1"}:
        raise ParseError(f"caractères invalides dans {text!r}")
    length = len(text)
    arity = length.bit_length() - 1
    if length != 1 << arity or arity > MAX_ARITY:
        raise ParseError(f"longueur {length} : une puissance de deux <= {table_size(MAX_ARITY)} est attendue")
    if n is not None and arity != n:
        raise ArityError(f"table de {arity} variables, {n} attendues")
    return TruthTable(arity, int(text[::-1], 2))


def format_tt(f):
    """Chaîne binaire, position 0 à gauche."""
    return format(f.bits, f"0{f.size}b")[::-1]


def format_hex(f):
    digits = max(1, f.size // 4)
    return f"0x{f.bits:0{digits}x}"
