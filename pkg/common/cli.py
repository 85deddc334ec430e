# Outils partagés par les sous-commandes : analyse des arguments, configuration et sorties

import argparse
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from dotenv import dotenv_values

from common.errors import InvalidInput
from common.ffield import DEFAULT_QMAX, Element, FieldSpec, make_field
from common.utils.pretty import dumps_csv, dumps_json, key_value_table, table

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

CONFIG_KEYS = ('CDIFF_QMAX', 'CDIFF_WORKERS', 'CDIFF_LOG_LEVEL')
FORMATS = ('json', 'csv', 'table')

@dataclass
class CommandResult:
    """Sortie complète d'une sous-commande, écrite seulement une fois le calcul terminé"""
    text: str
    code: int = 0

Handler = Callable[['CommandLine', argparse.Namespace], CommandResult]

def load_config(path: str | Path = '.env') -> dict[str, str]:
    """Charge le fichier .env puis le surcharge par les variables d'environnement CDIFF_*"""
    config = {k: v for k, v in dotenv_values(path).items() if v is not None}
    config.update({k: v for k, v in os.environ.items() if k in CONFIG_KEYS})
    return config

def _config_int(config: dict[str, str], key: str, default: int) -> int:
    value = config.get(key)
    if value in (None, ''):
        return default
    try:
        return int(value)
    except ValueError:
        raise InvalidInput(f"{key} must be an integer (got '{value}')")


class CommandLine:
    """Analyseur principal et registre des sous-commandes"""
    def __init__(self, config: dict[str, str] | None = None):
        self.config = config if config is not None else {}
        self.parser = argparse.ArgumentParser(
            prog='cdiff',
            description="Spectre c-différentiel de x^((q+1)/2) sur F_{p^n} : formes closes et vérification exhaustive",
        )
        self.parser.add_argument('-v', '--verbose', action='count', default=0, help="Plus de journalisation (-v INFO, -vv DEBUG)")
        self.subparsers = self.parser.add_subparsers(dest='command', metavar='command')
        self.commands : dict[str, argparse.ArgumentParser] = {}

    def __repr__(self) -> str:
        return f"<CommandLine {sorted(self.commands)}>"

    @property
    def qmax(self) -> int:
        """Limite d'énumération (CDIFF_QMAX)"""
        return _config_int(self.config, 'CDIFF_QMAX', DEFAULT_QMAX)

    @property
    def workers(self) -> int:
        return _config_int(self.config, 'CDIFF_WORKERS', 1)

    def add_command(self, name: str, handler: Handler, *, help: str) -> argparse.ArgumentParser:
        """Déclare une sous-commande et retourne son analyseur pour y ajouter des options"""
        if name in self.commands:
            raise ValueError(f"Command '{name}' already registered")
        parser = self.subparsers.add_parser(name, help=help, description=help)
        parser.set_defaults(handler=handler)
        self.commands[name] = parser
        return parser

# Arguments communs ------------------------------------------

def add_field_arguments(parser: argparse.ArgumentParser, *, with_c: bool = True) -> None:
    """--p, --n et, si demandé, --c ou --c-poly"""
    parser.add_argument('--p', type=int, required=True, help="Caractéristique (premier impair)")
    parser.add_argument('--n', type=int, default=1, help="Degré d'extension, par défaut 1")
    if with_c:
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument('--c', type=int, help="Indice canonique de c, 0 <= c < q")
        group.add_argument('--c-poly', help="Coefficients de c séparés par des virgules, terme constant en premier")

def add_output_arguments(parser: argparse.ArgumentParser, *, formats: tuple[str, ...] = FORMATS) -> None:
    parser.add_argument('--format', choices=formats, default='json', help="Format de sortie, par défaut json")
    parser.add_argument('--out', help="Fichier de sortie (sortie standard par défaut)")

def resolve_field(cli: CommandLine, args: argparse.Namespace) -> FieldSpec:
    return make_field(args.p, args.n, limit=cli.qmax)

def resolve_c(f: FieldSpec, args: argparse.Namespace) -> Element:
    """Indice de c à partir de --c ou de --c-poly"""
    if getattr(args, 'c_poly', None):
        try:
            coeffs = [int(x) for x in args.c_poly.split(',')]
        except ValueError:
            raise InvalidInput(f"--c-poly expects comma-separated integers (got '{args.c_poly}')")
        return f.element(coeffs)
    return f.check(args.c)

def parse_int_list(text: str, option: str) -> list[int]:
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise InvalidInput(f"{option} expects comma-separated integers (got '{text}')")

# Rendu ------------------------------------------------------

def render(fmt: str, payload: dict[str, Any], *, header: tuple[str, ...] = (), rows: list[tuple] | None = None) -> str:
    """Rend un résultat en JSON canonique, en CSV (en-tête fixe) ou en tableau

    :param fmt: 'json', 'csv' ou 'table'
    :param payload: Objet JSON complet
    :param header: En-tête des formats tabulaires
    :param rows: Lignes des formats tabulaires, à défaut le tableau clé/valeur du payload
    :return: str
    """
    if fmt == 'json':
        return dumps_json(payload) + '\n'
    if rows is None:
        if fmt == 'csv':
            raise InvalidInput("this command has no CSV form")
        return key_value_table(payload)
    if fmt == 'csv':
        return dumps_csv(header, rows)
    return table(header, rows)

def write_output(text: str, out: str | None, stdout) -> None:
    """Écrit la sortie complète dans --out ou sur la sortie standard"""
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        logger.info(f"Sortie écrite dans {path}")
    else:
        stdout.write(text)
