# Spectres c-différentiels de x^((q+1)/2) par formes closes

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Any, Iterable

from common.charsum import EtaProfile, QuadCounts, abc_sums, check_generic_c, eta_profile
from common.curve import count_points, cornacchia, lucas_v
from common.errors import InvalidInput, UnsupportedCase
from common.ffield import Element, FieldSpec

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

class FormulaVariant(Enum):
    AS_PRINTED = 'printed' # Énoncés tels qu'imprimés, symbole de trace a := t
    C_PRIMITIVE = 'cprim' # Formules de preuve exprimées avec la somme C

class CaseName(Enum):
    C_ZERO = 'C_ZERO'
    C_MINUS_ONE = 'C_MINUS_ONE'
    GEN_ETA1_I = 'GEN_ETA1_I'
    GEN_ETA1_II = 'GEN_ETA1_II'
    GEN_ETA1_III = 'GEN_ETA1_III'
    GEN_ETAM1_I = 'GEN_ETAM1_I'
    GEN_ETAM1_II = 'GEN_ETAM1_II'
    GEN_ETAM1_III = 'GEN_ETAM1_III'
    C_SQUARE_MINUS1 = 'C_SQUARE_MINUS1'

TRACE_SYMBOLS = ('t', 's', 'C-3')

# Types ------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Multiplicité i -> ω_i, sans les comptes nuls"""
    q: int
    entries: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for i, w in self.entries.items():
            if i < 0 or w < 0:
                raise InvalidInput(f"spectrum entries must be nonnegative (got {i}: {w})")
        object.__setattr__(self, 'entries', {int(i): int(w) for i, w in sorted(self.entries.items()) if w})

    def __getitem__(self, i: int) -> int:
        return self.entries.get(i, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def weighted(self) -> int:
        return sum(i * w for i, w in self.entries.items())

    def second_moment(self) -> int:
        return sum(i * i * w for i, w in self.entries.items())

    @property
    def uniformity(self) -> int:
        """Plus grande multiplicité présente (∆)"""
        return max(self.entries, default=0)

    def to_json(self) -> dict[str, int]:
        return {str(i): w for i, w in self.entries.items()}


@dataclass(frozen=True)
class FormulaInconsistency:
    """Évaluation non entière, négative ou incompatible avec Σω = Σiω = q"""
    case: str
    variant: str
    raw: dict[str, Fraction]
    reason: str

    def to_json(self) -> dict[str, Any]:
        return {
            'case': self.case,
            'variant': self.variant,
            'raw': {k: str(v) for k, v in self.raw.items()},
            'reason': self.reason,
        }


@dataclass(frozen=True)
class CaseTag:
    name: CaseName
    refinement: CaseName | None
    eta: EtaProfile

    @property
    def label(self) -> str:
        if self.refinement:
            return f"{self.name.value}+{self.refinement.value}"
        return self.name.value

    def to_json(self) -> dict[str, Any]:
        return {'tag': self.label, 'signs': self.eta.to_json()}

ClosedResult = Spectrum | FormulaInconsistency

def consistency_of(result: ClosedResult) -> str:
    return 'ok' if isinstance(result, Spectrum) else 'formula-inconsistency'

# Fusion -----------------------------------------------------

def merge_spectrum_indices(raw: Iterable[tuple[int, int]], q: int | None = None) -> Spectrum:
    """Fusion additive des entrées de même indice (ex. ω_{(q+1)/4} = ω_2 pour q = 7)

    :param raw: Couples (indice, compte)
    :param q: Cardinal du corps, par défaut la somme des comptes
    :return: Spectrum
    """
    merged: dict[int, int] = {}
    for i, w in raw:
        if i < 0:
            raise InvalidInput(f"multiplicity index must be nonnegative (got {i})")
        merged[i] = merged.get(i, 0) + w
    return Spectrum(q if q is not None else sum(merged.values()), merged)

def _finalize(q: int, case: str, variant: FormulaVariant, raw: list[tuple[int, Fraction | int]],
              printed_zero: Fraction | None = None) -> ClosedResult:
    """Vérifie les valeurs rationnelles puis complète ω_0 = q - Σ"""
    values = {f'omega_{i}': Fraction(v) for i, v in raw}
    if printed_zero is not None:
        values['omega_0 (printed)'] = Fraction(printed_zero)

    def inconsistency(reason: str) -> FormulaInconsistency:
        logger.debug(f"Incohérence de formule ({case}, {variant.name}, q={q}) : {reason}")
        return FormulaInconsistency(case, variant.name, values, reason)

    bad = [k for k, v in values.items() if v.denominator != 1 or v < 0]
    if bad:
        return inconsistency(f"non-integer or negative value for {', '.join(bad)}")

    merged = merge_spectrum_indices(((i, int(v)) for i, v in raw), q)
    zero = q - merged.total()
    if zero < 0:
        return inconsistency(f"positive multiplicities exceed q ({merged.total()} > {q})")
    if printed_zero is not None and printed_zero != zero:
        return inconsistency(f"printed omega_0 = {printed_zero} differs from q - sum = {zero}")
    spectrum = Spectrum(q, {**merged.entries, 0: zero})
    if spectrum.weighted() != q:
        return inconsistency(f"sum of i*omega_i is {spectrum.weighted()}, expected {q}")
    return spectrum

# Classification ---------------------------------------------

def classify(f: FieldSpec, c: Element) -> CaseTag:
    """Détermine le cas (c = 0, c = -1, cas généraux I/II/III selon η(-1)) et le raffinement c² = -1"""
    f.check(c)
    if c == 1:
        raise UnsupportedCase("c = 1 is out of scope: it is the ordinary differential spectrum")
    e = eta_profile(f, c)
    if c == 0:
        return CaseTag(CaseName.C_ZERO, None, e)
    if c == f.minus_one:
        return CaseTag(CaseName.C_MINUS_ONE, None, e)

    if e.one_minus_c2 == 1:
        branch = 'I'
    elif e.one_minus_c == 1:
        branch = 'II'
    else:
        branch = 'III'
    prefix = 'GEN_ETA1' if e.minus_one == 1 else 'GEN_ETAM1'
    refinement = CaseName.C_SQUARE_MINUS1 if e.c_square_minus_one else None
    return CaseTag(CaseName[f'{prefix}_{branch}'], refinement, e)

# c = 0 et c = -1 --------------------------------------------

def spectrum_c0(f: FieldSpec) -> Spectrum:
    """c = 0 : PcN si η(-1) = 1, APcN sinon"""
    q = f.q
    if f.eta(f.minus_one) == 1:
        return Spectrum(q, {1: q})
    return Spectrum(q, {0: (q - 1) // 2, 1: 1, 2: (q - 1) // 2})

def spectrum_cminus1(f: FieldSpec) -> Spectrum:
    q = f.q
    if f.eta(f.minus_one) == 1:
        raw = [(0, (q - 1) // 2), (1, (q - 3) // 2), ((q + 3) // 4, 2)]
    else:
        raw = [(0, (3 * q - 5) // 4), (2, (q - 3) // 4), ((q + 1) // 4, 1), ((q + 5) // 4, 1)]
    return merge_spectrum_indices(raw, q)

# c différent de 0, ±1 ---------------------------------------

def _cprim_raw(q: int, e: EtaProfile, C: int) -> list[tuple[int, Fraction]]:
    F = Fraction
    g, h = e.two, e.two_c
    if e.minus_one == -1:
        # Multiplicité au plus 2 : ω_0 = ω_2 imposé par Σω = Σiω = q
        return [(1, F(q - C + 4, 4)), (2, F(3 * q + C - 4, 8))]
    if e.one_minus_c2 == 1:
        return [(1, F(3 * q - 2 - C, 4)), (2, F(q + 2 + C, 8))]
    # Cas II : η(1-c) = 1 ; cas III : signes de η(2), η(2c) échangés
    s = 1 if e.one_minus_c == 1 else -1
    return [
        (1, F(q - 2 + C, 4) + F((1 + s * g) + (1 + s * h), 2)),
        (2, F(q - C - 4, 4)),
        (3, F((1 - s * g) + (1 - s * h), 2)),
        (4, F(q + 2 + C - 4 * (2 - s * (g + h)), 16)),
    ]

def _printed_raw(q: int, e: EtaProfile, a: int) -> tuple[list[tuple[int, Fraction]], Fraction | None]:
    F = Fraction
    g, ec = e.two, e.c
    if e.minus_one == -1:
        omega1 = F(q - a + 1, 4)
        if e.one_minus_c2 == 1:
            return [(1, omega1), (2, F(3 * q + a + 1, 8))], F(3 * q + a - 3, 8)
        if e.one_minus_c == 1:
            return [(1, omega1), (2, F(3 * q + a + 19, 8))], F(3 * q + a - 21, 8)
        return [(1, omega1), (2, F(3 * q + a - 5 - 4 * g, 8))], F(3 * q + a + 3 + 4 * g, 8)

    if e.one_minus_c2 == 1:
        return [(1, F(3 * q - a - 5, 4)), (2, F(q + a + 5, 8))], F(q + a + 5, 8)
    if ec == -1:
        extra, omega3 = 1, 1
    elif e.one_minus_c == 1:
        extra, omega3 = (2 if g == 1 else 0), 0
    else:
        extra, omega3 = (0 if g == 1 else 2), (2 if g == 1 else 0)
    sign = -1 if e.one_minus_c == 1 else 1
    return [
        (1, F(q + a + 1, 4) + extra),
        (2, F(q - a - 7, 4)),
        (3, F(omega3)),
        (4, F(q + a - 3 + sign * 4 * g * (1 + ec), 16)),
    ], None

def printed_trace_value(f: FieldSpec, c: Element, trace_symbol: str = 't') -> int:
    """Valeur donnée au symbole de trace des énoncés imprimés

    :param trace_symbol: 't' (q + 1 - #E), 's' (#E - q - 1) ou 'C-3' (C - 3 = -t - 4)
    :return: Entier substitué à a
    """
    if trace_symbol not in TRACE_SYMBOLS:
        raise InvalidInput(f"trace symbol must be one of {', '.join(TRACE_SYMBOLS)} (got '{trace_symbol}')")
    trace = count_points(f, c)
    if trace_symbol == 't':
        return trace.t
    if trace_symbol == 's':
        return trace.s
    return -trace.t - 4

def spectrum_general(f: FieldSpec, c: Element, variant: FormulaVariant, *, trace_symbol: str = 't') -> ClosedResult:
    """Spectre pour c différent de 0, ±1

    :param variant: AS_PRINTED évalue les énoncés généraux avec a := t (ou s, ou C - 3 selon trace_symbol),
        C_PRIMITIVE les formules de preuve avec C calculé directement
    :return: Spectrum ou FormulaInconsistency
    """
    check_generic_c(f, c)
    tag = classify(f, c)
    if variant is FormulaVariant.C_PRIMITIVE:
        C = abc_sums(f, c).C
        return _finalize(f.q, tag.label, variant, _cprim_raw(f.q, tag.eta, C))

    a = printed_trace_value(f, c, trace_symbol)
    raw, printed_zero = _printed_raw(f.q, tag.eta, a)
    return _finalize(f.q, tag.label, variant, raw, printed_zero)

def c2_minus1_trace_term(f: FieldSpec) -> tuple[str, int]:
    """Branche imprimée pour c² = -1 et son terme de trace (entier)

    p = 3 mod 4 (n pair) : 2(-p)^(n/2) ; p = 1 mod 4 : (a+bc)^n + (a-bc)^n = V_n(2a, a²+b²)."""
    p, n = f.p, f.n
    if p % 4 == 3:
        return '(i)', 2 * (-p) ** (n // 2)
    ts = cornacchia(p)
    term = lucas_v(2 * ts.a, ts.a ** 2 + ts.b ** 2, n)
    if p % 8 == 1 or n % 2 == 0:
        return '(ii)(1)', term
    return '(ii)(2)', term

def spectrum_c2_minus1(f: FieldSpec, c: Element, variant: FormulaVariant) -> ClosedResult:
    """Spectre pour c racine carrée de -1"""
    check_generic_c(f, c)
    if f.mul(c, c) != f.minus_one:
        raise InvalidInput(f"c = {c} is not a square root of -1 in F_{f.q}")
    if variant is FormulaVariant.C_PRIMITIVE:
        return spectrum_general(f, c, variant)

    F, q = Fraction, f.q
    label = classify(f, c).label
    branch, T = c2_minus1_trace_term(f)
    if branch == '(ii)(2)':
        raw = [(1, F(q + T + 5, 4)), (2, F(q - T - 7, 4)), (3, F(1)), (4, F(q + T - 3, 16))]
        return _finalize(q, label, variant, raw, F(7 * q - T - 5, 16))
    raw = [(1, F(3 * q - T - 5, 4)), (2, F(q + T + 5, 8))]
    return _finalize(q, label, variant, raw, F(q + T + 5, 8))

def closed_spectrum(f: FieldSpec, c: Element, variant: FormulaVariant) -> ClosedResult:
    """Aiguillage vers la forme close adaptée à c (c != 1)"""
    tag = classify(f, c)
    if tag.name is CaseName.C_ZERO:
        return spectrum_c0(f)
    if tag.name is CaseName.C_MINUS_ONE:
        return spectrum_cminus1(f)
    if tag.refinement is CaseName.C_SQUARE_MINUS1 and variant is FormulaVariant.AS_PRINTED:
        return spectrum_c2_minus1(f, c, variant)
    return spectrum_general(f, c, variant)

def closed_uniformity(f: FieldSpec, d: int, spectrum: Spectrum) -> int:
    """Uniformité c-différentielle : la ligne a = 0 apporte gcd(d, q-1) solutions au plus"""
    return max(spectrum.uniformity, gcd(d, f.q - 1))

def closed_notes(f: FieldSpec, c: Element, variant: FormulaVariant) -> list[str]:
    """Conventions utilisées pour une évaluation, à joindre aux rapports"""
    tag = classify(f, c)
    if tag.name in (CaseName.C_ZERO, CaseName.C_MINUS_ONE):
        return []
    if variant is FormulaVariant.C_PRIMITIVE:
        return [f"C = {abc_sums(f, c).C} computed by enumeration"]
    if tag.refinement is CaseName.C_SQUARE_MINUS1:
        branch, T = c2_minus1_trace_term(f)
        return [f"printed branch {branch} for c^2 = -1, trace term {T}"]
    trace = count_points(f, c)
    return [f"trace symbol evaluated as t = q + 1 - #E = {trace.t} (s = {trace.s})"]

# Distribution par motifs de signes --------------------------

def branch_solutions(signs: tuple[int, int, int, int], minus_one: int, one_minus_c: int, one_plus_c: int) -> int:
    """Solutions x != 0, -1 apportées par les quatre classes (η(x+1), η(x)) pour un motif (η(b-1), η(b+1), η(b-c), η(b+c))

    Une entrée nulle (b parmi ±1, ±c) n'active aucune classe."""
    i, j, u, v = signs
    e, al, be = minus_one, one_minus_c, one_plus_c
    return (
        int(i == al and u == al)                 # η(x+1) = η(x) = 1
        + int(j == -e * al and v == -e * al)     # η(x+1) = η(x) = -1
        + int(i == -be and v == be)              # η(x+1) = 1, η(x) = -1
        + int(j == e * be and u == -e * be)      # η(x+1) = -1, η(x) = 1
    )

def special_points(f: FieldSpec, c: Element) -> dict[Element, int]:
    """Nombre de solutions pour les seconds membres b = 1, -1, c, -c (x = 0 donne b = 1, x = -1 donne b = η(-1)c)"""
    check_generic_c(f, c)
    e = eta_profile(f, c)
    shifts = (1, f.minus_one, c, f.neg(c))
    from_minus_one = c if e.minus_one == 1 else f.neg(c)
    out = {}
    for b0 in shifts:
        signs = tuple(f.eta(f.sub(b0, r)) for r in shifts)
        out[b0] = (branch_solutions(signs, e.minus_one, e.one_minus_c, e.one_plus_c)
                   + int(b0 == 1) + int(b0 == from_minus_one))
    return out

def distribution_spectrum(f: FieldSpec, c: Element, counts: QuadCounts,
                          variant: FormulaVariant = FormulaVariant.C_PRIMITIVE) -> ClosedResult:
    """Spectre assemblé à partir des cardinaux S^c (énumérés ou prédits) et des quatre points spéciaux"""
    check_generic_c(f, c)
    e = eta_profile(f, c)
    raw = [(branch_solutions(key, e.minus_one, e.one_minus_c, e.one_plus_c), Fraction(n))
           for key, n in counts.counts.items()]
    raw += [(m, Fraction(1)) for m in special_points(f, c).values()]
    if any(v.denominator != 1 or v < 0 for _, v in raw):
        values = {f'S{key}': Fraction(n) for key, n in counts.counts.items()}
        return FormulaInconsistency(classify(f, c).label, variant.name, values, "non-integer cyclotomic count")
    return merge_spectrum_indices(((i, int(v)) for i, v in raw), f.q)
