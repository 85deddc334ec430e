# Sommes de caractère quadratique et comptages cyclotomiques

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Literal

import numpy as np

from common.errors import InternalInconsistency, InvalidInput, UnsupportedCase
from common.ffield import Element, FieldSpec

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

SIGNS = (1, -1)
PAIR_KEYS : list[tuple[int, int]] = list(product(SIGNS, repeat=2))
QUAD_KEYS : list[tuple[int, int, int, int]] = list(product(SIGNS, repeat=4)) # Ordre lexicographique (+1 avant -1)

Count = int | Fraction

def format_key(key: tuple[int, ...]) -> str:
    """Clé de motif sous forme texte, ex. (1, -1) -> '+1,-1'"""
    return ','.join('+1' if s == 1 else '-1' for s in key)

def _json_count(value: Count) -> int | str:
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    return int(value)

def _ratio(num: int, den: int) -> Count:
    r = Fraction(num, den)
    return int(r) if r.denominator == 1 else r

# Types ------------------------------------------------------

@dataclass(frozen=True)
class PairCounts:
    """Cardinaux S_{i,j} (x != 0, -1) ou T_{i,j} (b != ±1)"""
    kind: Literal['S', 'T']
    counts: dict[tuple[int, int], Count]

    def __getitem__(self, key: tuple[int, int]) -> Count:
        return self.counts[key]

    def total(self) -> Count:
        return sum(self.counts.values())

    def to_json(self) -> dict[str, int | str]:
        return {format_key(k): _json_count(v) for k, v in self.counts.items()}


@dataclass(frozen=True)
class QuadCounts:
    """Cardinaux S^c_{i,j,u,v} indexés par (η(b-1), η(b+1), η(b-c), η(b+c))"""
    c: Element
    counts: dict[tuple[int, int, int, int], Count]

    def __getitem__(self, key: tuple[int, int, int, int]) -> Count:
        return self.counts[key]

    def total(self) -> Count:
        return sum(self.counts.values())

    @property
    def is_integral(self) -> bool:
        return all(not isinstance(v, Fraction) and v >= 0 for v in self.counts.values())

    def to_json(self) -> dict[str, int | str]:
        return {format_key(k): _json_count(v) for k, v in self.counts.items()}


@dataclass(frozen=True)
class ABCSums:
    """Les trois sommes A, B et C attachées à c"""
    c: Element
    A: int
    B: int
    C: int


@dataclass(frozen=True)
class EtaProfile:
    """Valeurs du caractère quadratique qui pilotent la distinction des cas"""
    minus_one: int
    two: int
    c: int
    two_c: int
    one_minus_c: int
    one_plus_c: int
    one_minus_c2: int
    c_minus_one: int
    c_plus_one: int
    c_square_minus_one: bool

    def to_json(self) -> dict[str, Any]:
        return {
            'eta(-1)': self.minus_one,
            'eta(2)': self.two,
            'eta(c)': self.c,
            'eta(2c)': self.two_c,
            'eta(1-c)': self.one_minus_c,
            'eta(1+c)': self.one_plus_c,
        }

def eta_profile(f: FieldSpec, c: Element) -> EtaProfile:
    two = f.from_int(2)
    c2 = f.mul(c, c)
    return EtaProfile(
        minus_one=f.eta(f.minus_one),
        two=f.eta(two),
        c=f.eta(c),
        two_c=f.eta(f.mul(two, c)),
        one_minus_c=f.eta(f.sub(1, c)),
        one_plus_c=f.eta(f.add(1, c)),
        one_minus_c2=f.eta(f.sub(1, c2)),
        c_minus_one=f.eta(f.sub(c, 1)),
        c_plus_one=f.eta(f.add(c, 1)),
        c_square_minus_one=(c2 == f.minus_one),
    )

def check_generic_c(f: FieldSpec, c: Element) -> None:
    """Vérifie que c n'est pas dans {0, 1, -1}"""
    f.check(c)
    if c in (0, 1, f.minus_one):
        raise InvalidInput(f"c must not be 0, 1 or -1 (got index {c})")

# Sommes de Jacobsthal ---------------------------------------

def jacobsthal_quadratic(f: FieldSpec, a2: Element, a1: Element, a0: Element) -> int:
    """Somme de η(a2 x² + a1 x + a0) par la forme close

    :return: -η(a2) si le discriminant est non nul, (q-1)·η(a2) sinon
    """
    if f.check(a2) == 0:
        raise InvalidInput("leading coefficient a2 must be nonzero")
    disc = f.sub(f.mul(a1, a1), f.mul(f.from_int(4), f.mul(a0, a2)))
    if disc != 0:
        return -f.eta(a2)
    return (f.q - 1) * f.eta(a2)

def jacobsthal_quadratic_brute(f: FieldSpec, a2: Element, a1: Element, a0: Element) -> int:
    """Même somme, par énumération"""
    if f.check(a2) == 0:
        raise InvalidInput("leading coefficient a2 must be nonzero")
    t = f.tables
    x = t.all
    values = t.add(t.add(t.mul(a2, t.mul(x, x)), t.mul(a1, x)), a0)
    return t.sum_eta(values)

# Comptages de paires ----------------------------------------

def _count_patterns(columns: list[np.ndarray], keys: list[tuple[int, ...]]) -> dict[tuple[int, ...], int]:
    counts = {}
    for key in keys:
        mask = np.ones(len(columns[0]), dtype=bool)
        for col, s in zip(columns, key):
            mask &= col == s
        counts[key] = int(mask.sum())
    return counts

def pair_counts_S(f: FieldSpec) -> PairCounts:
    """S_{i,j} = #{x != 0, -1 : η(x+1) = i, η(x) = j}"""
    t = f.tables
    x = t.all[(t.all != 0) & (t.all != f.minus_one)]
    return PairCounts('S', _count_patterns([t.eta[t.add(x, 1)], t.eta[x]], PAIR_KEYS))

def pair_counts_S_predicted(f: FieldSpec, convention: Literal['opening', 'proof'] = 'proof') -> PairCounts:
    """Valeurs annoncées de S_{i,j}

    Pour η(-1) = -1 deux conventions coexistent : 'opening' place (q+1)/4 en S_{1,-1},
    'proof' le place en S_{-1,1} (c'est celle que confirme l'énumération)."""
    q = f.q
    if f.eta(f.minus_one) == 1:
        counts = {k: _ratio(q - 1, 4) for k in PAIR_KEYS}
        counts[(1, 1)] = _ratio(q - 5, 4)
    else:
        counts = {k: _ratio(q - 3, 4) for k in PAIR_KEYS}
        counts[(1, -1) if convention == 'opening' else (-1, 1)] = _ratio(q + 1, 4)
    return PairCounts('S', counts)

def pair_counts_T(f: FieldSpec) -> PairCounts:
    """T_{i,j} = #{b != ±1 : η(b-1) = i, η(b+1) = j}"""
    t = f.tables
    b = t.all[(t.all != 1) & (t.all != f.minus_one)]
    return PairCounts('T', _count_patterns([t.eta[t.sub(b, 1)], t.eta[t.add(b, 1)]], PAIR_KEYS))

def pair_counts_T_closed(f: FieldSpec) -> PairCounts:
    """|T_{i,j}| = (q - ij - 2 - j·η(2) - i·η(-2)) / 4"""
    eta2 = f.eta(f.from_int(2))
    eta_m2 = f.eta(f.from_int(-2))
    return PairCounts('T', {(i, j): _ratio(f.q - i * j - 2 - j * eta2 - i * eta_m2, 4) for i, j in PAIR_KEYS})

# Comptages à quatre signes ----------------------------------

def _shifts(f: FieldSpec, c: Element) -> tuple[Element, Element, Element, Element]:
    return (1, f.minus_one, c, f.neg(c))

def quad_counts(f: FieldSpec, c: Element) -> QuadCounts:
    """S^c_{i,j,u,v} par énumération des b hors de {±1, ±c}"""
    check_generic_c(f, c)
    t = f.tables
    shifts = _shifts(f, c)
    mask = np.ones(f.q, dtype=bool)
    for r in shifts:
        mask &= t.all != r
    b = t.all[mask]
    columns = [t.eta[t.sub(b, r)] for r in shifts]
    return QuadCounts(c, _count_patterns(columns, QUAD_KEYS))

def abc_sums(f: FieldSpec, c: Element) -> ABCSums:
    """A = Σ η((b²-1)(b-c)), B = Σ η((b-1)(b²-c²)), C = Σ η((b²-1)(b²-c²))"""
    check_generic_c(f, c)
    t = f.tables
    b = t.all
    bm1, bp1, bmc, bpc = t.sub(b, 1), t.add(b, 1), t.sub(b, c), t.add(b, c)
    return ABCSums(
        c=c,
        A=t.sum_eta(bm1, bp1, bmc),
        B=t.sum_eta(bm1, bmc, bpc),
        C=t.sum_eta(bm1, bp1, bmc, bpc),
    )

def quartic_reduction_check(f: FieldSpec, c: Element, s: ABCSums | None = None) -> int:
    """Retourne Σ_a η(a(a-1)(a-c²)) après avoir vérifié C = cette somme - 1"""
    check_generic_c(f, c)
    s = s or abc_sums(f, c)
    t = f.tables
    a = t.all
    total = t.sum_eta(a, t.sub(a, 1), t.sub(a, f.mul(c, c)))
    if s.C != total - 1:
        raise InternalInconsistency(f"C = {s.C} but the quartic sum is {total} in F_{f.q}, c = {c}")
    return total

# Formes closes des S^c --------------------------------------

def _printed_numerators(q: int, s: ABCSums, e: EtaProfile) -> dict[tuple[int, int, int, int], int]:
    A, B, C = s.A, s.B, s.C
    g, h = e.two, e.two_c
    al, be, ab = e.one_minus_c, e.one_plus_c, e.one_minus_c2
    cm, cp = e.c_minus_one, e.c_plus_one
    s111m = q - 2*B - C - 2*(1 + g)*(1 - ab) - 2*(1 + al)*(1 + be)
    s1m11 = q - 2*A - C - 2*(1 + al)*(1 + be) - 2*(1 + h)*(1 - ab)
    s1mmm = q + 2*A - C - 2*(1 - al)*(1 - be) - 2*(1 - h)*(1 - ab)
    smm1m = q + 2*B - C - 2*(1 - g)*(1 - ab) - 2*(1 - al)*(1 - be)
    return {
        (1, 1, 1, 1): q - 6 + 2*A + 2*B + C - 2*(2 + g + h)*(1 + al)*(1 + be),
        (1, 1, 1, -1): s111m,
        (1, 1, -1, 1): s111m,
        (1, 1, -1, -1): q + 2 - 2*A + 2*B + C - 2*(1 + g)*(1 - al)*(1 - be) - 2*(1 + al)*(1 + be)*(1 - h),
        (1, -1, 1, 1): s1m11,
        (1, -1, 1, -1): q + 2 + C - (2 - g - h)*(1 + al)*(1 - be) - (2 + g + h)*(1 - al)*(1 + be),
        (1, -1, -1, 1): q + 2 + C - (2 - g - h)*(1 - al)*(1 + be) - (2 + g + h)*(1 + al)*(1 - be),
        (1, -1, -1, -1): s1mmm,
        (-1, 1, 1, 1): s1m11,
        (-1, 1, 1, -1): q + 2 + C - (2 + g + h)*(1 + al)*(1 - al) - (2 - g - h)*(1 - al)*(1 + al),
        (-1, 1, -1, 1): q + 2 + C - (2 + g + h)*(1 - al)*(1 + al) - (2 - g - h)*(1 + al)*(1 - al),
        (-1, 1, -1, -1): s1mmm,
        (-1, -1, 1, 1): q + 2 + 2*A - 2*B + C - 2*(1 - g)*(1 + al)*(1 + be) - 2*(1 - cm)*(1 - cp)*(1 + h),
        (-1, -1, 1, -1): smm1m,
        (-1, -1, -1, 1): smm1m,
        (-1, -1, -1, -1): q - 6 - 2*A - 2*B + C - 2*(2 - g - h)*(1 - al)*(1 - be),
    }

def quad_counts_closed(f: FieldSpec, c: Element, s: ABCSums) -> QuadCounts:
    """Les seize cardinaux tels qu'imprimés (valables pour η(-1) = 1)

    Deux d'entre eux, (-1,1,1,-1) et (-1,1,-1,1), contiennent le facteur (1+η(1-c))(1-η(1-c)) qui est nul :
    ils ne coïncident avec l'énumération que si η(1-c) = η(1+c). Voir quad_counts_predicted."""
    check_generic_c(f, c)
    e = eta_profile(f, c)
    if e.minus_one != 1:
        raise UnsupportedCase(f"the printed S^c forms assume eta(-1) = 1 (F_{f.q} has eta(-1) = -1)")
    return QuadCounts(c, {k: _ratio(v, 16) for k, v in _printed_numerators(f.q, s, e).items()})

def quad_counts_predicted(f: FieldSpec, c: Element, s: ABCSums) -> QuadCounts:
    """Les seize cardinaux par développement de Σ_b Π(1 + s_k η(b - r_k)), pour les deux signes de η(-1)

    Les paires de facteurs valent -1 (Jacobsthal), les triplets A, η(-1)A, B, η(-1)B, le produit complet C,
    et on retire la contribution des quatre points exclus."""
    check_generic_c(f, c)
    shifts = _shifts(f, c)
    e = f.eta(f.minus_one)
    triples = {(0, 1, 2): s.A, (0, 1, 3): e * s.A, (0, 2, 3): s.B, (1, 2, 3): e * s.B}
    # η(b0 - r_k) aux points exclus
    point_signs = [[f.eta(f.sub(b0, r)) for r in shifts] for b0 in shifts]

    counts = {}
    for key in QUAD_KEYS:
        total = f.q
        total -= sum(key[k] * key[l] for k, l in combinations(range(4), 2))
        total += sum(key[i] * key[j] * key[k] * value for (i, j, k), value in triples.items())
        total += key[0] * key[1] * key[2] * key[3] * s.C
        for signs in point_signs:
            contribution = 1
            for sk, eta_k in zip(key, signs):
                contribution *= 1 + sk * eta_k
            total -= contribution
        counts[key] = _ratio(total, 16)
    return QuadCounts(c, counts)
