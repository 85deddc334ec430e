# Arithmétique exacte dans les corps finis F_{p^n}, p premier impair

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterator, Sequence

import numpy as np
from sympy import isprime, primefactors

from common.errors import InternalInconsistency, InvalidInput

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

DEFAULT_QMAX : int = 50_000 # Limite d'énumération par défaut (surchargée par CDIFF_QMAX)

FIELDS : dict[tuple[int, int], 'FieldSpec'] = {} # Cache des corps construits

Element = int # Index canonique k = sum(coeffs[i] * p^i), 0 <= k < q

# Polynômes sur F_p ------------------------------------------
# Listes de coefficients, terme constant en premier

def _digits(k: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        k, r = divmod(k, p)
        out.append(r)
    return out

def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly

def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    """Reste de la division euclidienne de num par den (unitaire) dans F_p[x]"""
    rem = _trim(list(num))
    deg = len(den) - 1
    while len(rem) - 1 >= deg:
        coef = rem[-1]
        shift = len(rem) - 1 - deg
        for i, d in enumerate(den):
            rem[shift + i] = (rem[shift + i] - coef * d) % p
        _trim(rem)
    return rem

def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Teste l'irréductibilité d'un polynôme unitaire par division par tous les unitaires de degré <= deg/2

    :param poly: Coefficients du polynôme, terme constant en premier
    :param p: Caractéristique
    :return: bool
    """
    degree = len(poly) - 1
    if degree <= 1:
        return degree == 1
    if poly[0] % p == 0:
        return False
    for d in range(1, degree // 2 + 1):
        for k in range(p ** d):
            if not _poly_rem(poly, _digits(k, p, d) + [1], p):
                return False
    return True

def canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    """Retourne le polynôme unitaire irréductible de degré n dont les coefficients non dominants ont le plus petit encodage

    Pour n = 1 on prend x, ce qui identifie les éléments à leurs résidus."""
    if n == 1:
        return (0, 1)
    for k in range(p ** n):
        candidate = _digits(k, p, n) + [1]
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise InternalInconsistency(f"no irreducible polynomial of degree {n} over F_{p}")

def eta_two_rule(p: int, n: int) -> int:
    """Caractère quadratique de 2 par la loi complémentaire (2 est un carré si n est pair ou p = ±1 mod 8)"""
    return 1 if n % 2 == 0 or p % 8 in (1, 7) else -1

# Corps ------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Représente un corps fini F_{p^n} = F_p[x]/(modulus)

    Les éléments sont manipulés par leur index canonique (voir `Element`)."""
    p: int
    n: int
    modulus: tuple[int, ...]

    def __repr__(self) -> str:
        return f"<FieldSpec F_{self.p}^{self.n} modulus={list(self.modulus)}>"

    @cached_property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def minus_one(self) -> Element:
        return self.p - 1

    def to_json(self) -> dict[str, Any]:
        return {'p': self.p, 'n': self.n, 'modulus': list(self.modulus), 'q': self.q}

    # Encodage -------------------------------------------------

    def coeffs(self, a: Element) -> tuple[int, ...]:
        """Retourne les coefficients de l'élément (terme constant en premier)"""
        self.check(a)
        return tuple(_digits(a, self.p, self.n))

    def element(self, coeffs: Sequence[int]) -> Element:
        """Retourne l'index canonique d'une suite de coefficients

        :param coeffs: Au plus n résidus dans [0, p), terme constant en premier
        :return: Element
        """
        if len(coeffs) > self.n:
            raise InvalidInput(f"element of F_{self.q} has at most {self.n} coefficients (got {len(coeffs)})")
        index = 0
        for i, c in enumerate(coeffs):
            if not 0 <= c < self.p:
                raise InvalidInput(f"coefficient {c} is not a residue modulo {self.p}")
            index += c * self.p ** i
        return index

    def from_int(self, m: int) -> Element:
        """Image d'un entier dans le sous-corps premier"""
        return m % self.p

    def check(self, a: Element) -> Element:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise InvalidInput(f"{a!r} is not an element index of F_{self.q} (0 <= index < {self.q})")
        return int(a)

    def elements(self) -> range:
        """Tous les éléments dans l'ordre croissant des index (0, 1, ...)"""
        return range(self.q)

    # Arithmétique -------------------------------------------

    def __mulmod(self, a: list[int], b: list[int]) -> list[int]:
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # Réduction par le polynôme unitaire
        for k in range(2 * n - 2, n - 1, -1):
            coef = prod[k]
            if coef:
                prod[k] = 0
                for i in range(n):
                    prod[k - n + i] = (prod[k - n + i] - coef * self.modulus[i]) % p
        return prod[:n]

    def add(self, a: Element, b: Element) -> Element:
        return self.element([(x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def sub(self, a: Element, b: Element) -> Element:
        return self.element([(x - y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a: Element) -> Element:
        return self.element([-x % self.p for x in self.coeffs(a)])

    def mul(self, a: Element, b: Element) -> Element:
        return self.element(self.__mulmod(list(self.coeffs(a)), list(self.coeffs(b))))

    def pow(self, a: Element, e: int) -> Element:
        """Exponentiation rapide, e >= 0 (0^0 = 1)"""
        if e < 0:
            raise InvalidInput(f"exponent must be nonnegative (got {e})")
        base = list(self.coeffs(a))
        result = [1] + [0] * (self.n - 1)
        while e:
            if e & 1:
                result = self.__mulmod(result, base)
            e >>= 1
            if e:
                base = self.__mulmod(base, base)
        return self.element(result)

    def inv(self, a: Element) -> Element:
        if self.check(a) == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.q}")
        return self.pow(a, self.q - 2)

    def eta(self, a: Element) -> int:
        """Caractère quadratique : 0 en 0, 1 sur les carrés non nuls, -1 sinon (a^((q-1)/2))"""
        if self.check(a) == 0:
            return 0
        r = self.pow(a, (self.q - 1) // 2)
        if r == 1:
            return 1
        if r == self.minus_one:
            return -1
        raise InternalInconsistency(f"{a}^((q-1)/2) = {r} is not ±1 in F_{self.q}")

    def frobenius(self, a: Element, r: int = 1) -> Element:
        return self.pow(a, self.p ** r)

    def subfield_degree(self, a: Element) -> int:
        """Plus petit r >= 1 tel que a^(p^r) = a (degré de F_p(a)), diviseur de n"""
        self.check(a)
        for r in range(1, self.n + 1):
            if self.frobenius(a, r) == a:
                return r
        raise InternalInconsistency(f"{a} is not fixed by the Frobenius of F_{self.q}")

    def primitive_element(self) -> Element:
        """Plus petit index engendrant le groupe multiplicatif"""
        factors = primefactors(self.q - 1)
        for g in range(1, self.q):
            if all(self.pow(g, (self.q - 1) // r) != 1 for r in factors):
                return g
        raise InternalInconsistency(f"no primitive element found in F_{self.q}")

    @cached_property
    def tables(self) -> 'FieldTables':
        """Tables vectorisées, construites au premier usage"""
        return FieldTables(self)


class FieldTables:
    """Tables numpy d'un corps (exp/log d'un générateur, chiffres en base p) pour les énumérations complètes

    Les opérations acceptent des index scalaires ou des tableaux d'index et suivent les règles de broadcast de numpy."""
    def __init__(self, field: FieldSpec):
        self.field = field
        p, n, q = field.p, field.n, field.q
        self.weights = p ** np.arange(n, dtype=np.int64)
        self.all = np.arange(q, dtype=np.int64)
        self.digits = (self.all[:, None] // self.weights[None, :]) % p

        self.generator = field.primitive_element()
        exp = np.empty(q - 1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            x = field.mul(x, self.generator)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self.exp, self.log = exp, log
        self.eta = np.where(log < 0, 0, np.where(log % 2 == 0, 1, -1)).astype(np.int64)
        logger.debug(f"Tables construites pour F_{q} (générateur {self.generator})")

    def __repr__(self) -> str:
        return f"<FieldTables F_{self.field.q}>"

    def add(self, a: Any, b: Any) -> np.ndarray:
        return ((self.digits[a] + self.digits[b]) % self.field.p) @ self.weights

    def sub(self, a: Any, b: Any) -> np.ndarray:
        return ((self.digits[a] - self.digits[b]) % self.field.p) @ self.weights

    def neg(self, a: Any) -> np.ndarray:
        return (-self.digits[a] % self.field.p) @ self.weights

    def mul(self, a: Any, b: Any) -> np.ndarray:
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.field.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def power(self, a: Any, e: int) -> np.ndarray:
        la = self.log[a]
        out = self.exp[(la * (e % (self.field.q - 1))) % (self.field.q - 1)]
        return np.where(la < 0, 0 if e > 0 else 1, out)

    def eta_of(self, a: Any) -> np.ndarray:
        return self.eta[a]

    def sum_eta(self, *factors: np.ndarray) -> int:
        """Somme exacte des produits de caractères (multiplicativité de η)"""
        prod = self.eta[factors[0]]
        for f in factors[1:]:
            prod = prod * self.eta[f]
        return int(prod.sum())

# Construction -----------------------------------------------

def make_field(p: int, n: int, *, limit: int | None = None) -> FieldSpec:
    """Retourne le corps F_{p^n} avec son module canonique

    :param p: Premier impair
    :param n: Degré d'extension >= 1
    :param limit: Borne sur q, par défaut DEFAULT_QMAX
    :return: FieldSpec
    """
    limit = DEFAULT_QMAX if limit is None else limit
    if p < 3 or not isprime(p):
        raise InvalidInput(f"p must be an odd prime (got {p})")
    if n < 1:
        raise InvalidInput(f"n must be >= 1 (got {n})")
    if n > limit.bit_length() or p ** n > limit:
        raise InvalidInput(f"q = {p}^{n} exceeds the enumeration limit {limit}")

    if (p, n) not in FIELDS:
        FIELDS[(p, n)] = FieldSpec(p, n, canonical_modulus(p, n))
        logger.debug(f"Corps F_{p}^{n} construit, module {FIELDS[(p, n)].modulus}")
    return FIELDS[(p, n)]

def iter_fields(q_values: Sequence[int], *, limit: int | None = None) -> Iterator[FieldSpec]:
    """Construit les corps correspondant à une liste de cardinaux (puissances de premiers impairs)"""
    for q in q_values:
        yield make_field(*split_prime_power(q), limit=limit)

def split_prime_power(q: int) -> tuple[int, int]:
    """Décompose q = p^n (p premier impair)"""
    factors = primefactors(q) if q > 1 else []
    if len(factors) != 1:
        raise InvalidInput(f"{q} is not a prime power")
    p = int(factors[0])
    n, rest = 0, q
    while rest > 1:
        rest //= p
        n += 1
    return p, n
