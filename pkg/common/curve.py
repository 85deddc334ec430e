# Comptage de points et traces de Frobenius des courbes y² = x(x-1)(x-c²)

import logging
from dataclasses import dataclass
from math import isqrt
from typing import Any

from sympy import isprime

from common.errors import InternalInconsistency, InvalidInput
from common.ffield import Element, FieldSpec

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

@dataclass(frozen=True)
class CurveTrace:
    """Nombre de points (infini compris) et traces, avec t = q + 1 - count et s = -t"""
    q: int
    c2: Element
    count: int
    t: int
    s: int
    base_field: int
    lifted: bool

    def to_json(self) -> dict[str, Any]:
        return {
            'q': self.q,
            'c2_index': self.c2,
            'count': self.count,
            't': self.t,
            's': self.s,
            'base_field': self.base_field,
            'lifted': self.lifted,
        }


@dataclass(frozen=True)
class TwoSquares:
    """p = a² + b², b pair et positif, a + b = 1 mod 4"""
    p: int
    a: int
    b: int

# Récurrences entières ---------------------------------------

def hasse_ok(t: int, q: int) -> bool:
    """Borne de Hasse-Weil |t| <= 2√q, sans flottants"""
    return t * t <= 4 * q

def lucas_v(P: int, Q: int, m: int) -> int:
    """Suite de Lucas V_m(P, Q) : V_0 = 2, V_1 = P, V_k = P·V_{k-1} - Q·V_{k-2}"""
    if m < 0:
        raise InvalidInput(f"index must be nonnegative (got {m})")
    prev, cur = 2, P
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, P * cur - Q * prev
    return cur

def trace_lift(t_base: int, q_base: int, m: int) -> int:
    """Trace sur l'extension de degré m : α^m + β^m pour les racines de T² - t·T + q

    :param t_base: Trace sur le corps de base
    :param q_base: Cardinal du corps de base
    :param m: Degré de l'extension (>= 1)
    :return: int
    """
    if m < 1:
        raise InvalidInput(f"extension degree must be >= 1 (got {m})")
    if not hasse_ok(t_base, q_base):
        raise InvalidInput(f"trace {t_base} violates the Hasse bound over F_{q_base}")
    return lucas_v(t_base, q_base, m)

# Comptage ---------------------------------------------------

def _curve_parameter(f: FieldSpec, c: Element) -> Element:
    c2 = f.mul(c, c)
    if c2 in (0, 1):
        raise InvalidInput(f"curve y^2 = x(x-1)(x-c^2) is singular for c = {c} (c^2 in {{0, 1}})")
    return c2

def count_points(f: FieldSpec, c: Element) -> CurveTrace:
    """Compte les points de y² = x(x-1)(x-c²) par la somme de caractère sur F_q"""
    c2 = _curve_parameter(f, c)
    t = f.tables
    x = t.all
    s = t.sum_eta(x, t.sub(x, 1), t.sub(x, c2))
    trace = CurveTrace(q=f.q, c2=c2, count=f.q + 1 + s, t=-s, s=s, base_field=f.q, lifted=False)
    if not hasse_ok(trace.t, f.q):
        raise InternalInconsistency(f"trace {trace.t} violates the Hasse bound over F_{f.q}")
    return trace

def subfield_character_sum(f: FieldSpec, c2: Element, r: int) -> int:
    """Σ_x η_r(x(x-1)(x-c²)) sur le sous-corps F_{p^r}, c² devant y appartenir"""
    t = f.tables
    pr = f.p ** r
    sub = t.all[t.power(t.all, pr) == t.all]
    values = t.mul(t.mul(sub, t.sub(sub, 1)), t.sub(sub, c2))
    chi = t.power(values, (pr - 1) // 2)
    return int((chi == 1).sum()) - int((chi == f.minus_one).sum())

def trace_via_subfield(f: FieldSpec, c: Element) -> CurveTrace:
    """Compte la courbe sur F_p(c²) puis relève la trace jusqu'à F_q"""
    c2 = _curve_parameter(f, c)
    r = f.subfield_degree(c2)
    t_base = -subfield_character_sum(f, c2, r)
    t = trace_lift(t_base, f.p ** r, f.n // r)
    logger.debug(f"F_{f.q}, c² = {c2} : trace {t_base} sur F_{f.p ** r}, relevée en {t}")
    return CurveTrace(q=f.q, c2=c2, count=f.q + 1 - t, t=t, s=-t, base_field=f.p ** r, lifted=r < f.n)

def count_x3_minus_x(f: FieldSpec) -> int:
    """Nombre de points de y² = x³ - x sur f, infini compris"""
    t = f.tables
    x = t.all
    return f.q + 1 + t.sum_eta(x, t.sub(x, 1), t.add(x, 1))

# Courbe y² = x³ - x -----------------------------------------

def cornacchia(p: int) -> TwoSquares:
    """Écrit p = a² + b² (p = 1 mod 4) par l'algorithme de Cornacchia, normalisé b > 0 pair et a + b = 1 mod 4"""
    if not isprime(p) or p % 4 != 1:
        raise InvalidInput(f"p must be a prime congruent to 1 mod 4 (got {p})")
    z = next(z for z in range(2, p) if pow(z, (p - 1) // 2, p) == p - 1)
    r0, r1 = p, pow(z, (p - 1) // 4, p) # r1² = -1 mod p
    bound = isqrt(p)
    while r1 > bound:
        r0, r1 = r1, r0 % r1
    x, y = r1, isqrt(p - r1 * r1)
    if x * x + y * y != p:
        raise InternalInconsistency(f"Cornacchia failed for p = {p}")
    a, b = (x, y) if y % 2 == 0 else (y, x)
    if (a + b) % 4 != 1:
        a = -a
    return TwoSquares(p=p, a=a, b=b)

def trace_x3_minus_x(p: int) -> int:
    """Trace standard p + 1 - #E de y² = x³ - x sur F_p : 0 si p = 3 mod 4, 2a sinon"""
    if p < 3 or not isprime(p):
        raise InvalidInput(f"p must be an odd prime (got {p})")
    if p % 4 == 3:
        return 0
    return 2 * cornacchia(p).a
