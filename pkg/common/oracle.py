# Calculs exhaustifs de référence : c-DDT, spectres, uniformité, N4 et moments

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any

import numpy as np

from common.errors import InvalidInput
from common.ffield import Element, FieldSpec
from common.spectrum import Spectrum

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

N4_DIRECT_QMAX : int = 343 # Au-delà, l'énumération cubique est trop lente

def default_exponent(f: FieldSpec) -> int:
    """Exposant étudié, d = (q+1)/2"""
    return (f.q + 1) // 2

@dataclass(frozen=True)
class DdtRow:
    """Ligne a de la c-DDT : counts[b] = #{x : (x+a)^d - c·x^d = b}"""
    a: Element
    c: Element
    d: int
    counts: tuple[int, ...]

    def __getitem__(self, b: Element) -> int:
        return self.counts[b]

    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict[Element, int]:
        """Comptes non nuls"""
        return {b: n for b, n in enumerate(self.counts) if n}


@dataclass(frozen=True)
class MomentReport:
    sum0: int
    sum1: int
    sum2: int
    n4: int | None
    gcd_d: int
    expected_sum2: int | Fraction | None
    consistent: bool

    def to_json(self) -> dict[str, Any]:
        expected = self.expected_sum2
        return {
            'sum0': self.sum0,
            'sum1': self.sum1,
            'sum2': self.sum2,
            'n4': self.n4,
            'gcd_d': self.gcd_d,
            'expected_sum2': str(expected) if isinstance(expected, Fraction) else expected,
            'consistent': self.consistent,
        }

def _check_exponent(d: int) -> int:
    if d < 0:
        raise InvalidInput(f"exponent d must be nonnegative (got {d})")
    return d

def _row_values(f: FieldSpec, powers: np.ndarray, c: Element, a: Element) -> np.ndarray:
    t = f.tables
    return t.sub(powers[t.add(t.all, a)], t.mul(c, powers))

# Lignes de la c-DDT -----------------------------------------

def ddt_row(f: FieldSpec, d: int, c: Element, a: Element) -> DdtRow:
    """Compte les solutions de (x+a)^d - c·x^d = b pour tous les b"""
    _check_exponent(d)
    f.check(c)
    f.check(a)
    powers = f.tables.power(f.tables.all, d)
    counts = np.bincount(_row_values(f, powers, c, a), minlength=f.q)
    return DdtRow(a, c, d, tuple(int(n) for n in counts))

def a0_row(f: FieldSpec, d: int, c: Element) -> DdtRow:
    """Ligne a = 0 : l'équation devient (1-c)x^d = b"""
    if f.check(c) == 1:
        raise InvalidInput("the a = 0 row is degenerate for c = 1")
    return ddt_row(f, d, c, 0)

def scaled_row(f: FieldSpec, d: int, c: Element, a: Element) -> DdtRow:
    """Ligne a != 0 déduite de la ligne 1 par x = a·y, soit b -> a^d·b"""
    if f.check(a) == 0:
        raise InvalidInput("scaling needs a != 0")
    t = f.tables
    base = ddt_row(f, d, c, 1).counts
    counts = np.zeros(f.q, dtype=np.int64)
    counts[t.mul(f.pow(a, d), t.all)] = base
    return DdtRow(a, c, d, tuple(int(n) for n in counts))

def ddt_table(f: FieldSpec, d: int, c: Element) -> list[DdtRow]:
    """c-DDT complète, une ligne par a"""
    _check_exponent(d)
    f.check(c)
    powers = f.tables.power(f.tables.all, d)
    rows = []
    for a in f.elements():
        counts = np.bincount(_row_values(f, powers, c, a), minlength=f.q)
        rows.append(DdtRow(a, c, d, tuple(int(n) for n in counts)))
    return rows

# Spectre et uniformité --------------------------------------

def spectrum_brute(f: FieldSpec, d: int, c: Element) -> Spectrum:
    """Histogramme des comptes de la ligne a = 1, ω_0 compris"""
    row = ddt_row(f, d, c, 1)
    hist = np.bincount(np.asarray(row.counts, dtype=np.int64))
    return Spectrum(f.q, {i: int(w) for i, w in enumerate(hist)})

def c_uniformity(f: FieldSpec, d: int, c: Element) -> int:
    """Plus grand coefficient de la c-DDT (ligne a = 0 exclue seulement pour c = 1)"""
    _check_exponent(d)
    f.check(c)
    powers = f.tables.power(f.tables.all, d)
    best = 0
    for a in f.elements():
        if a == 0 and c == 1:
            continue
        best = max(best, int(np.bincount(_row_values(f, powers, c, a), minlength=f.q).max()))
    return best

# N4 et moments ----------------------------------------------

def n4(f: FieldSpec, d: int, c: Element) -> int:
    """Nombre de quadruplets x1 - x2 + x3 - x4 = 0, x1^d - c·x2^d + c·x3^d - x4^d = 0

    Calculé en O(q²) par N4 = Σ_a Σ_v R_a(v)·S_a(v)."""
    _check_exponent(d)
    f.check(c)
    t = f.tables
    powers = t.power(t.all, d)
    total = 0
    for a in f.elements():
        diff = t.sub(powers[t.add(t.all, a)], powers)
        R = np.bincount(diff, minlength=f.q)
        S = np.bincount(t.mul(c, diff), minlength=f.q)
        total += int(R @ S)
    return total

def n4_direct(f: FieldSpec, d: int, c: Element) -> int:
    """Même nombre par énumération directe de (x1, x2, x3), en O(q³)"""
    if f.q > N4_DIRECT_QMAX:
        raise InvalidInput(f"direct N4 enumeration is limited to q <= {N4_DIRECT_QMAX} (got {f.q})")
    _check_exponent(d)
    f.check(c)
    t = f.tables
    powers = t.power(t.all, d)
    c_powers = t.mul(c, powers)
    total = 0
    for x1 in f.elements():
        for x2 in f.elements():
            x4 = t.add(t.sub(x1, x2), t.all)
            head = t.sub(powers[x1], c_powers[x2])
            lhs = t.sub(t.add(head, c_powers), powers[x4])
            total += int((lhs == 0).sum())
    return total

def n4_closed_cminus1(f: FieldSpec) -> int:
    """N4 pour c = -1 par forme close"""
    q = f.q
    if f.eta(f.minus_one) == 1:
        num = q ** 3 + 9 * q ** 2 - 5 * q + 3
    else:
        num = q ** 3 + 13 * q ** 2 - 9 * q + 3
    return num // 8

def moment_check(s: Spectrum, n4_value: int | None, d: int, f: FieldSpec) -> MomentReport:
    """Vérifie Σω = Σiω = q et, si N4 est connu, Σi²ω = (N4-1)/(q-1) - gcd(d, q-1)"""
    q = f.q
    k = gcd(d, q - 1)
    consistent = s.total() == q and s.weighted() == q
    expected = None
    if n4_value is not None:
        expected = Fraction(n4_value - 1, q - 1) - k
        if expected.denominator == 1:
            expected = int(expected)
        consistent = consistent and s.second_moment() == expected
    return MomentReport(
        sum0=s.total(),
        sum1=s.weighted(),
        sum2=s.second_moment(),
        n4=n4_value,
        gcd_d=k,
        expected_sum2=expected,
        consistent=consistent,
    )
