import argparse
from typing import Any

from common.cli import CommandLine, CommandResult, add_field_arguments, add_output_arguments, render, resolve_c, resolve_field
from common.curve import count_points, count_x3_minus_x, cornacchia, trace_lift, trace_via_subfield, trace_x3_minus_x
from common.errors import InvalidInput

CURVES = ('legendre', 'x3-x')

class EcTraceCommand:
    """Nombre de points et trace de y² = x(x-1)(x-c²) ou de y² = x³ - x"""
    def __init__(self, cli: CommandLine):
        self.cli = cli
        parser = cli.add_command('ec-trace', self.run, help="Points et trace de Frobenius de la courbe associée à c")
        add_field_arguments(parser, with_c=False)
        group = parser.add_mutually_exclusive_group()
        group.add_argument('--c', type=int, help="Indice canonique de c, 0 <= c < q")
        group.add_argument('--c-poly', help="Coefficients de c séparés par des virgules, terme constant en premier")
        parser.add_argument('--curve', choices=CURVES, default='legendre', help="Courbe étudiée, par défaut y² = x(x-1)(x-c²)")
        parser.add_argument('--lift', action='store_true', help="Compte sur le sous-corps engendré par c² puis relève la trace")
        add_output_arguments(parser, formats=('json', 'table'))

    def run(self, cli: CommandLine, args: argparse.Namespace) -> CommandResult:
        f = resolve_field(cli, args)
        if args.curve == 'x3-x':
            payload = self.x3_minus_x(f)
        else:
            if args.c is None and not args.c_poly:
                raise InvalidInput("--c or --c-poly is required for the curve y^2 = x(x-1)(x-c^2)")
            c = resolve_c(f, args)
            trace = trace_via_subfield(f, c) if args.lift else count_points(f, c)
            payload = {**trace.to_json(), 'c': c}
        return CommandResult(render(args.format, payload))

    def x3_minus_x(self, f) -> dict[str, Any]:
        count = count_x3_minus_x(f)
        base = trace_x3_minus_x(f.p)
        payload: dict[str, Any] = {
            'q': f.q,
            'count': count,
            't': f.q + 1 - count,
            's': count - f.q - 1,
            'base_trace': base,
            'lifted_trace': trace_lift(base, f.p, f.n),
        }
        if f.p % 4 == 1:
            ts = cornacchia(f.p)
            payload['two_squares'] = {'a': ts.a, 'b': ts.b}
        return payload

def setup(cli: CommandLine):
    EcTraceCommand(cli)
