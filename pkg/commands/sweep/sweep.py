import argparse
import logging

from common.cli import CommandLine, CommandResult, parse_int_list, render
from common.errors import InvalidInput
from common.spectrum import FormulaVariant
from common.verifier import C_SELECTIONS, SweepConfig, sweep
from common.utils.pretty import dumps_csv, table

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

class SweepCommand:
    """Balayage exhaustif : un enregistrement JSON par couple (corps, c) puis un résumé"""
    def __init__(self, cli: CommandLine):
        self.cli = cli
        parser = cli.add_command('sweep', self.run, help="Vérifie tous les couples (corps, c) d'une plage ou d'un fichier de configuration")
        parser.add_argument('--config', help="Fichier YAML de configuration")
        parser.add_argument('--p-max', type=int, help="Plus grande caractéristique")
        parser.add_argument('--n-max', type=int, help="Plus grand degré d'extension")
        parser.add_argument('--q-max', type=int, help="Plus grand cardinal")
        parser.add_argument('--q-list', help="Liste explicite de cardinaux, ex. 9,25,27")
        parser.add_argument('--c', dest='c_select', help=f"Sélection des c : {' | '.join(C_SELECTIONS[:2])} | liste d'indices")
        parser.add_argument('--sample-size', type=int, help="Nombre de c tirés par corps avec --c sample")
        parser.add_argument('--seed', type=int, help="Graine du tirage")
        parser.add_argument('--n4-qmax', type=int, help="Borne sur q du contrôle par N4")
        parser.add_argument('--variant', choices=[v.value for v in FormulaVariant], action='append',
                            help="Variante à évaluer (répétable), par défaut toutes")
        parser.add_argument('--workers', type=int, help="Processus de calcul (CDIFF_WORKERS par défaut)")
        parser.add_argument('--db', help="Base SQLite des enregistrements déjà calculés")
        parser.add_argument('--strict', action='store_true', default=None, help="Code de sortie 1 si un écart C_PRIMITIVE est trouvé")
        parser.add_argument('--summary-only', action='store_true', help="N'écrit que le résumé")
        parser.add_argument('--format', choices=('json', 'csv', 'table'), default='json', help="json (NDJSON), csv ou table")
        parser.add_argument('--out', help="Fichier de sortie (sortie standard par défaut)")

    def build_config(self, cli: CommandLine, args: argparse.Namespace) -> SweepConfig:
        overrides = {
            'sample_size': args.sample_size,
            'seed': args.seed,
            'n4_qmax': args.n4_qmax,
            'workers': args.workers,
            'db': args.db,
            'strict': args.strict,
            'out': args.out,
            'qmax': cli.qmax,
        }
        if args.variant:
            overrides['variants'] = [FormulaVariant(v).name for v in args.variant]
        if args.c_select:
            overrides['c'] = args.c_select if args.c_select in C_SELECTIONS else parse_int_list(args.c_select, '--c')
        bounds = {'p_max': args.p_max, 'n_max': args.n_max, 'q_max': args.q_max}

        if args.config:
            cfg = SweepConfig.from_yaml(args.config, **overrides, **bounds)
        else:
            selection = overrides.pop('c', 'all')
            if isinstance(selection, list):
                overrides.update(c='list', c_values=selection)
            elif selection != 'all':
                overrides['c'] = selection
            kwargs = {k: v for k, v in overrides.items() if v is not None}
            if args.p_max is not None:
                q_max = args.q_max if args.q_max is not None else cli.qmax
                cfg = SweepConfig.from_bounds(args.p_max, args.n_max or 1, q_max, **kwargs)
            else:
                cfg = SweepConfig(**kwargs)
        if args.q_list:
            listed = SweepConfig.from_q_list(parse_int_list(args.q_list, '--q-list'), qmax=cli.qmax)
            cfg.fields = sorted(set(cfg.fields) | set(listed.fields))
        if args.workers is None and not args.config:
            cfg.workers = cli.workers
        return cfg.validate()

    def run(self, cli: CommandLine, args: argparse.Namespace) -> CommandResult:
        cfg = self.build_config(cli, args)
        if cfg.out and not args.out:
            args.out = cfg.out
        report = sweep(cfg)
        code = 1 if report.failed(cfg.strict) else 0
        if code:
            logger.warning(f"{report.summary['cprim_mismatches']} écarts C_PRIMITIVE, "
                           f"{report.summary['moment_failures']} échecs de moments, {report.summary['curve_failures']} échecs de courbe")

        if args.format == 'json':
            if args.summary_only:
                return CommandResult(render('json', {'summary': report.summary}), code)
            return CommandResult(report.to_ndjson(), code)
        if args.summary_only and args.format == 'csv':
            raise InvalidInput("--summary-only has no CSV form")
        rows = [(r.p, r.n, r.c, r.case, name, ok, r.closed[name]['consistency'])
                for r in report.records for name, ok in sorted(r.match.items())]
        header = ('p', 'n', 'c', 'case', 'variant', 'match', 'consistency')
        if args.format == 'csv':
            return CommandResult(dumps_csv(header, rows), code)
        text = render('table', report.summary) if args.summary_only else table(header, rows) + render('table', report.summary)
        return CommandResult(text, code)

def setup(cli: CommandLine):
    SweepCommand(cli)
