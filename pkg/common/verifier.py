# Vérification des formes closes contre l'oracle exhaustif, pour un couple (F_q, c) ou un balayage

import logging
import multiprocessing
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import yaml
from sympy import primerange

from common.charsum import abc_sums
from common.curve import count_points, trace_via_subfield
from common.dataio import RecordStore
from common.errors import InvalidInput
from common.ffield import DEFAULT_QMAX, FieldSpec, iter_fields, make_field
from common.oracle import default_exponent, moment_check, n4, n4_closed_cminus1, spectrum_brute
from common.spectrum import (CaseName, FormulaVariant, Spectrum, classify, closed_notes, closed_spectrum,
                             closed_uniformity, consistency_of, printed_trace_value, spectrum_general)
from common.utils.pretty import dumps_json, dumps_ndjson

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

N4_QMAX : int = 125 # Au-delà, le contrôle du second moment est omis par défaut
TRACE_S_VARIANT : str = 'AS_PRINTED_S' # Énoncé général, a := s
TRACE_C3_VARIANT : str = 'AS_PRINTED_C3' # Énoncé général, a := C - 3
GENERAL_VARIANT : str = 'AS_PRINTED_GEN' # Énoncé général (a := t) pour c² = -1, en plus de la branche dédiée
C_SELECTIONS = ('all', 'sample', 'list')

@dataclass(frozen=True)
class VerifyRecord:
    """Résultat de vérification d'un couple (F_q, c), entièrement sérialisable en JSON"""
    p: int
    n: int
    modulus: list[int]
    q: int
    c: int
    case: str
    signs: dict[str, int]
    oracle: dict[str, int]
    uniformity: int
    closed: dict[str, dict[str, Any]]
    match: dict[str, bool]
    moments: dict[str, Any]
    curve: dict[str, Any] | None
    notes: list[str] = field(default_factory=list)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.p, self.n, self.c)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'VerifyRecord':
        return cls(**data)


def _closed_entry(result: Spectrum | Any, notes: list[str]) -> dict[str, Any]:
    entry: dict[str, Any] = {'consistency': consistency_of(result), 'notes': notes}
    if isinstance(result, Spectrum):
        entry['spectrum'] = result.to_json()
    else:
        entry['inconsistency'] = result.to_json()
    return entry

def _curve_checks(f: FieldSpec, c: int) -> dict[str, Any]:
    direct = count_points(f, c)
    lifted = trace_via_subfield(f, c)
    C = abc_sums(f, c).C
    report = {
        **direct.to_json(),
        'C': C,
        'bridge_ok': C == direct.s - 1,
        'lift_ok': lifted.count == direct.count,
        'lift_base_field': lifted.base_field,
    }
    if not (report['bridge_ok'] and report['lift_ok']):
        logger.error(f"Contrôles de courbe en échec sur F_{f.q}, c = {c} : {report}")
    return report

def verify_one(f: FieldSpec, c: int, *, n4_qmax: int = N4_QMAX,
               variants: Sequence[FormulaVariant] = tuple(FormulaVariant)) -> VerifyRecord:
    """Compare les formes closes demandées au spectre exhaustif de x^((q+1)/2) pour un c donné

    :param f: Corps fini
    :param c: Indice de c (c != 1)
    :param n4_qmax: Borne sur q pour le contrôle du second moment par N4
    :param variants: Variantes de formules à évaluer
    :return: VerifyRecord
    """
    tag = classify(f, c)
    d = default_exponent(f)
    oracle = spectrum_brute(f, d, c)

    closed: dict[str, dict[str, Any]] = {}
    match: dict[str, bool] = {}
    for variant in variants:
        result = closed_spectrum(f, c, variant)
        closed[variant.name] = _closed_entry(result, closed_notes(f, c, variant))
        match[variant.name] = result == oracle
    generic = tag.name not in (CaseName.C_ZERO, CaseName.C_MINUS_ONE)
    if FormulaVariant.AS_PRINTED in variants and generic:
        readings = [(TRACE_S_VARIANT, 's'), (TRACE_C3_VARIANT, 'C-3')]
        if tag.refinement is not None:
            readings.insert(0, (GENERAL_VARIANT, 't'))
        for name, symbol in readings:
            result = spectrum_general(f, c, FormulaVariant.AS_PRINTED, trace_symbol=symbol)
            value = printed_trace_value(f, c, symbol)
            closed[name] = _closed_entry(result, [f"general statement, trace symbol evaluated as {symbol} = {value}"])
            match[name] = result == oracle

    n4_value = n4(f, d, c) if f.q <= n4_qmax else None
    moments = moment_check(oracle, n4_value, d, f).to_json()
    if tag.name is CaseName.C_MINUS_ONE and n4_value is not None:
        moments['n4_closed'] = n4_closed_cminus1(f)
        moments['n4_closed_ok'] = moments['n4_closed'] == n4_value
        moments['consistent'] = moments['consistent'] and moments['n4_closed_ok']

    notes = []
    for name, ok in match.items():
        if not ok:
            logger.debug(f"F_{f.q}, c = {c} ({tag.label}) : {name} ne coïncide pas avec l'oracle")
            notes.append(f"{name} differs from the enumerated spectrum")

    return VerifyRecord(
        p=f.p,
        n=f.n,
        modulus=list(f.modulus),
        q=f.q,
        c=c,
        case=tag.label,
        signs=tag.eta.to_json(),
        oracle=oracle.to_json(),
        uniformity=closed_uniformity(f, d, oracle),
        closed=closed,
        match=match,
        moments=moments,
        curve=_curve_checks(f, c) if generic else None,
        notes=notes,
    )

# Configuration ----------------------------------------------

def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)

def _field_pairs(fields: Any) -> list[tuple[int, int]]:
    """Liste triée et sans doublon des couples (p, n), chaque couple devant être formé de deux entiers"""
    if not isinstance(fields, (list, tuple)):
        raise InvalidInput(f"fields must be a list of [p, n] pairs (got {fields!r})")
    pairs = set()
    for pair in fields:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2 or not all(_is_int(v) for v in pair):
            raise InvalidInput(f"each field must be a pair of integers [p, n] (got {pair!r})")
        pairs.add((pair[0], pair[1]))
    return sorted(pairs)

def record_profile(n4_qmax: int, variants: Sequence[FormulaVariant]) -> str:
    """Empreinte des réglages qui influent sur le contenu des enregistrements (clé de cache)"""
    return dumps_json({'n4_qmax': n4_qmax, 'variants': [v.name for v in variants],
                       'readings': [GENERAL_VARIANT, TRACE_S_VARIANT, TRACE_C3_VARIANT]})

@dataclass
class SweepConfig:
    """Paramètres d'un balayage : corps, sélection des c, contrôles et sorties"""
    fields: list[tuple[int, int]] = field(default_factory=list)
    c: str = 'all'
    c_values: list[int] = field(default_factory=list)
    sample_size: int = 8
    seed: int = 0
    n4_qmax: int = N4_QMAX
    variants: list[str] = field(default_factory=lambda: [v.name for v in FormulaVariant])
    workers: int = 1
    strict: bool = False
    out: str | None = None
    db: str | None = None
    qmax: int = DEFAULT_QMAX

    def __post_init__(self):
        self.fields = _field_pairs(self.fields)

    def validate(self) -> 'SweepConfig':
        """Vérifie la configuration avant tout calcul (types puis bornes)"""
        for name in ('sample_size', 'seed', 'n4_qmax', 'workers', 'qmax'):
            value = getattr(self, name)
            if not _is_int(value):
                raise InvalidInput(f"{name} must be an integer (got {value!r})")
        if not isinstance(self.c, str) or self.c not in C_SELECTIONS:
            raise InvalidInput(f"c selection must be one of {', '.join(C_SELECTIONS)} or a list of indices (got {self.c!r})")
        if not isinstance(self.c_values, list) or not all(_is_int(v) for v in self.c_values):
            raise InvalidInput(f"c indices must be integers (got {self.c_values!r})")
        if not isinstance(self.strict, bool):
            raise InvalidInput(f"strict must be a boolean (got {self.strict!r})")
        for name in ('out', 'db'):
            value = getattr(self, name)
            if value is not None and not isinstance(value, str):
                raise InvalidInput(f"{name} must be a path (got {value!r})")
        if self.sample_size < 1:
            raise InvalidInput(f"sample_size must be >= 1 (got {self.sample_size})")
        if self.workers < 1:
            raise InvalidInput(f"workers must be >= 1 (got {self.workers})")
        if self.n4_qmax < 0:
            raise InvalidInput(f"n4_qmax must be nonnegative (got {self.n4_qmax})")
        if not isinstance(self.variants, list):
            raise InvalidInput(f"variants must be a list of names (got {self.variants!r})")
        for name in self.variants:
            if name not in FormulaVariant.__members__:
                raise InvalidInput(f"unknown formula variant {name!r}")
        for p, n in self.fields:
            make_field(p, n, limit=self.qmax)
        return self

    @property
    def formula_variants(self) -> list[FormulaVariant]:
        return [FormulaVariant[name] for name in sorted(set(self.variants), key=list(FormulaVariant.__members__).index)]

    @classmethod
    def from_bounds(cls, p_max: int, n_max: int, q_max: int, **kwargs) -> 'SweepConfig':
        """Tous les corps F_{p^n} avec p <= p_max impair, n <= n_max et p^n <= q_max"""
        for name, value in (('p_max', p_max), ('n_max', n_max), ('q_max', q_max)):
            if not _is_int(value):
                raise InvalidInput(f"{name} must be an integer (got {value!r})")
        fields = [(int(p), n) for p in primerange(3, p_max + 1) for n in range(1, n_max + 1) if p ** n <= q_max]
        return cls(fields=fields, **kwargs)

    @classmethod
    def from_q_list(cls, q_values: Iterable[int], **kwargs) -> 'SweepConfig':
        limit = kwargs.get('qmax', DEFAULT_QMAX)
        return cls(fields=[(f.p, f.n) for f in iter_fields(list(q_values), limit=limit)], **kwargs)

    @classmethod
    def from_yaml(cls, path: str | Path, **overrides) -> 'SweepConfig':
        """Charge un fichier YAML (fields, p_max, n_max, q_max, c, ...) puis applique les surcharges non nulles

        :param path: Fichier de configuration
        :param overrides: Valeurs de la ligne de commande, prioritaires
        :return: SweepConfig, à valider
        """
        path = Path(path)
        if not path.exists():
            raise InvalidInput(f"config file '{path}' not found")
        try:
            with path.open(encoding='utf-8') as fp:
                data = yaml.safe_load(fp) or {}
        except yaml.YAMLError as e:
            raise InvalidInput(f"config file '{path}' is not valid YAML: {e}") from e
        if not isinstance(data, dict):
            raise InvalidInput(f"config file '{path}' must contain a mapping")
        data.update({k: v for k, v in overrides.items() if v is not None})

        selection = data.pop('c', 'all')
        if isinstance(selection, list):
            data['c'], data['c_values'] = 'list', selection
        else:
            data['c'] = selection

        bounds = {k: data.pop(k) for k in ('p_max', 'n_max', 'q_max') if k in data}
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise InvalidInput(f"unknown config keys: {', '.join(sorted(map(str, unknown)))}")
        fields = _field_pairs(data.pop('fields', []))
        if bounds:
            fields += cls.from_bounds(bounds.get('p_max', 3), bounds.get('n_max', 1),
                                      bounds.get('q_max', data.get('qmax', DEFAULT_QMAX))).fields
        return cls(fields=fields, **data)

    def c_indices(self, f: FieldSpec) -> list[int]:
        """Indices c retenus pour un corps (c = 1 toujours exclu)"""
        candidates = [c for c in f.elements() if c != 1]
        if self.c == 'list':
            return sorted({c for c in self.c_values if 0 <= c < f.q and c != 1})
        if self.c == 'sample' and self.sample_size < len(candidates):
            rng = random.Random(f'{self.seed}:{f.p}:{f.n}')
            return sorted(rng.sample(candidates, self.sample_size))
        return candidates

    @property
    def profile(self) -> str:
        return record_profile(self.n4_qmax, self.formula_variants)

# Balayage ---------------------------------------------------

@dataclass
class SweepReport:
    records: list[VerifyRecord]
    summary: dict[str, Any]

    def failed(self, strict: bool) -> bool:
        """Échec en mode strict : écart C_PRIMITIVE ou identité interne non vérifiée"""
        return strict and not self.summary['ok']

    def to_ndjson(self) -> str:
        return dumps_ndjson([r.to_dict() for r in self.records] + [{'summary': self.summary}])


def _verify_task(task: tuple[int, int, int, int, int, tuple[str, ...]]) -> dict[str, Any]:
    p, n, c, qmax, n4_qmax, variants = task
    f = make_field(p, n, limit=qmax)
    record = verify_one(f, c, n4_qmax=n4_qmax, variants=[FormulaVariant[v] for v in variants])
    return record.to_dict()

def summarize(records: Sequence[VerifyRecord]) -> dict[str, Any]:
    """Agrège les écarts par (variante, cas) ainsi que les contrôles de moments et de courbe"""
    mismatches: dict[str, Counter] = {}
    inconsistencies: dict[str, Counter] = {}
    for record in records:
        for name, ok in record.match.items():
            mismatches.setdefault(name, Counter())
            inconsistencies.setdefault(name, Counter())
            if not ok:
                mismatches[name][record.case] += 1
            if record.closed[name]['consistency'] != 'ok':
                inconsistencies[name][record.case] += 1
    moment_failures = sum(1 for r in records if not r.moments['consistent'])
    curve_failures = sum(1 for r in records if r.curve and not (r.curve['bridge_ok'] and r.curve['lift_ok']))
    cprim_mismatches = sum(mismatches.get(FormulaVariant.C_PRIMITIVE.name, Counter()).values())
    return {
        'records': len(records),
        'fields': len({(r.p, r.n) for r in records}),
        'mismatches': {name: dict(counts) for name, counts in mismatches.items()},
        'inconsistencies': {name: dict(counts) for name, counts in inconsistencies.items()},
        'cprim_mismatches': cprim_mismatches,
        'moment_failures': moment_failures,
        'curve_failures': curve_failures,
        'ok': cprim_mismatches == 0 and moment_failures == 0 and curve_failures == 0,
    }

def sweep(cfg: SweepConfig) -> SweepReport:
    """Vérifie tous les couples (corps, c) de la configuration, en parallèle si workers > 1

    Les enregistrements sont triés par (p, n, c) : le rapport ne dépend ni de l'ordre d'exécution ni du cache."""
    cfg.validate()
    variants = tuple(v.name for v in cfg.formula_variants)
    store = RecordStore(cfg.db) if cfg.db else None
    done: dict[tuple[int, int, int], dict[str, Any]] = {}
    tasks = []
    try:
        for p, n in cfg.fields:
            f = make_field(p, n, limit=cfg.qmax)
            selected = cfg.c_indices(f)
            cached = store.get_field(p, n, cfg.profile) if store is not None else {}
            hits = 0
            for c in selected:
                if (p, n, c) in cached:
                    done[(p, n, c)] = cached[(p, n, c)]
                    hits += 1
                else:
                    tasks.append((p, n, c, cfg.qmax, cfg.n4_qmax, variants))
            logger.info(f"F_{f.q} : {len(selected)} valeurs de c, {hits} en cache")

        if cfg.workers > 1 and len(tasks) > 1:
            with multiprocessing.Pool(processes=cfg.workers) as pool:
                computed = list(pool.imap_unordered(_verify_task, tasks, chunksize=max(1, len(tasks) // (4 * cfg.workers))))
        else:
            computed = [_verify_task(task) for task in tasks]

        if store is not None:
            store.put_many(computed, cfg.profile)
            logger.info(f"{len(store)} enregistrements dans {store.path} ({store.size} octets)")
    finally:
        if store is not None:
            store.close()

    for data in computed:
        done[(data['p'], data['n'], data['c'])] = data
    records = [VerifyRecord.from_dict(done[key]) for key in sorted(done)]
    summary = summarize(records)
    logger.info(f"Balayage terminé : {summary['records']} enregistrements, {summary['cprim_mismatches']} écarts C_PRIMITIVE")
    return SweepReport(records, summary)

def render_summary(summary: dict[str, Any]) -> str:
    """Résumé seul, en JSON canonique"""
    return dumps_json({'summary': summary}) + '\n'
