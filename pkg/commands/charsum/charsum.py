import argparse
from typing import Any

from common.charsum import (abc_sums, eta_profile, format_key, pair_counts_S, pair_counts_S_predicted, pair_counts_T,
                            pair_counts_T_closed, quad_counts, quad_counts_closed, quad_counts_predicted)
from common.cli import CommandLine, CommandResult, add_field_arguments, add_output_arguments, render, resolve_c, resolve_field

class CharsumCommand:
    """Sommes A, B, C et cardinaux S_{i,j}, T_{i,j}, S^c pour un couple (F_q, c)"""
    def __init__(self, cli: CommandLine):
        self.cli = cli
        parser = cli.add_command('charsum', self.run, help="Sommes de caractères et cardinaux associés à c")
        add_field_arguments(parser)
        parser.add_argument('--predicted', action='store_true', help="Ajoute les valeurs prédites par les formes closes")
        add_output_arguments(parser)

    def run(self, cli: CommandLine, args: argparse.Namespace) -> CommandResult:
        f = resolve_field(cli, args)
        c = resolve_c(f, args)
        s = abc_sums(f, c)
        squad = quad_counts(f, c)
        payload: dict[str, Any] = {
            'q': f.q,
            'c': c,
            'A': s.A,
            'B': s.B,
            'C': s.C,
            'S': pair_counts_S(f).to_json(),
            'T': pair_counts_T(f).to_json(),
            'Squad': squad.to_json(),
            'signs': eta_profile(f, c).to_json(),
        }
        if args.predicted:
            payload['S_predicted'] = {conv: pair_counts_S_predicted(f, conv).to_json() for conv in ('opening', 'proof')}
            payload['T_closed'] = pair_counts_T_closed(f).to_json()
            payload['Squad_predicted'] = quad_counts_predicted(f, c, s).to_json()
            if f.eta(f.minus_one) == 1:
                payload['Squad_printed'] = quad_counts_closed(f, c, s).to_json()

        rows = [(format_key(key), n) for key, n in squad.counts.items()]
        return CommandResult(render(args.format, payload, header=('pattern', 'count'), rows=rows))

def setup(cli: CommandLine):
    CharsumCommand(cli)
