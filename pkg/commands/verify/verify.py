import argparse
import logging

from common.cli import CommandLine, CommandResult, add_field_arguments, add_output_arguments, render, resolve_c, resolve_field
from common.dataio import RecordStore
from common.ffield import FieldSpec
from common.spectrum import FormulaVariant
from common.verifier import N4_QMAX, VerifyRecord, record_profile, verify_one

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

class VerifyCommand:
    """Vérification d'un couple (F_q, c) : formes closes, oracle, moments et courbe"""
    def __init__(self, cli: CommandLine):
        self.cli = cli
        parser = cli.add_command('verify', self.run, help="Compare les formes closes à l'énumération pour un couple (F_q, c)")
        add_field_arguments(parser)
        parser.add_argument('--n4-qmax', type=int, default=N4_QMAX, help=f"Borne sur q du contrôle par N4, par défaut {N4_QMAX}")
        parser.add_argument('--variant', choices=[v.value for v in FormulaVariant], action='append',
                            help="Variante à évaluer (répétable), par défaut toutes")
        parser.add_argument('--db', help="Base SQLite : réutilise l'enregistrement s'il existe, sinon le stocke")
        parser.add_argument('--strict', action='store_true', help="Code de sortie 1 si C_PRIMITIVE diffère de l'énumération")
        add_output_arguments(parser, formats=('json', 'table'))

    def get_record(self, f: FieldSpec, c: int, args: argparse.Namespace, variants: list[FormulaVariant]) -> VerifyRecord:
        if not args.db:
            return verify_one(f, c, n4_qmax=args.n4_qmax, variants=variants)
        profile = record_profile(args.n4_qmax, variants)
        with RecordStore(args.db) as store:
            cached = store.get((f.p, f.n, c), profile)
            if cached is not None:
                logger.info(f"F_{f.q}, c = {c} : enregistrement lu dans {store.path}")
                return VerifyRecord.from_dict(cached)
            record = verify_one(f, c, n4_qmax=args.n4_qmax, variants=variants)
            store.put(record.to_dict(), profile)
        return record

    def run(self, cli: CommandLine, args: argparse.Namespace) -> CommandResult:
        f = resolve_field(cli, args)
        c = resolve_c(f, args)
        variants = sorted({FormulaVariant(v) for v in args.variant}, key=list(FormulaVariant).index) if args.variant else list(FormulaVariant)
        record = self.get_record(f, c, args, variants)

        failed = (not record.match.get(FormulaVariant.C_PRIMITIVE.name, True)
                  or not record.moments['consistent']
                  or (record.curve is not None and not (record.curve['bridge_ok'] and record.curve['lift_ok'])))
        return CommandResult(render(args.format, record.to_dict()), 1 if args.strict and failed else 0)

def setup(cli: CommandLine):
    VerifyCommand(cli)
