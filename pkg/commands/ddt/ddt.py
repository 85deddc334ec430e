import argparse

from common.cli import CommandLine, CommandResult, add_field_arguments, add_output_arguments, render, resolve_c, resolve_field
from common.oracle import c_uniformity, ddt_row, ddt_table, default_exponent, scaled_row

class DdtCommand:
    """Ligne ou table complète de la c-DDT de x^d"""
    def __init__(self, cli: CommandLine):
        self.cli = cli
        parser = cli.add_command('ddt', self.run, help="c-DDT de x^d (une ligne avec --a, sinon la table complète)")
        add_field_arguments(parser)
        parser.add_argument('--d', type=int, help="Exposant, par défaut (q+1)/2")
        parser.add_argument('--a', type=int, help="Indice de la ligne a")
        add_output_arguments(parser)

    def run(self, cli: CommandLine, args: argparse.Namespace) -> CommandResult:
        f = resolve_field(cli, args)
        c = resolve_c(f, args)
        d = default_exponent(f) if args.d is None else args.d

        if args.a is not None:
            a = f.check(args.a)
            # ligne a déduite de la ligne 1 par b -> a^d b
            row = scaled_row(f, d, c, a) if a else ddt_row(f, d, c, 0)
            payload = {'q': f.q, 'c': c, 'd': d, 'a': row.a, 'counts': {str(b): n for b, n in row.as_dict().items()}}
            rows = list(enumerate(row.counts))
            return CommandResult(render(args.format, payload, header=('b', 'count'), rows=rows))

        table = ddt_table(f, d, c)
        payload = {
            'q': f.q,
            'c': c,
            'd': d,
            'uniformity': c_uniformity(f, d, c),
            'rows': {str(row.a): {str(b): n for b, n in row.as_dict().items()} for row in table},
        }
        rows = [(row.a, b, n) for row in table for b, n in enumerate(row.counts)]
        return CommandResult(render(args.format, payload, header=('a', 'b', 'count'), rows=rows))

def setup(cli: CommandLine):
    DdtCommand(cli)
