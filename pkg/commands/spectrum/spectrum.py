import argparse
import logging
from typing import Any

from common.cli import CommandLine, CommandResult, add_field_arguments, add_output_arguments, render, resolve_c, resolve_field
from common.errors import InvalidInput
from common.oracle import c_uniformity, default_exponent, spectrum_brute
from common.spectrum import (FormulaVariant, Spectrum, classify, closed_notes, closed_spectrum,
                             closed_uniformity, consistency_of)
from common.utils.pretty import spectrum_table

logger = logging.getLogger(f'CDiff.{__name__.capitalize()}')

METHODS = ('closed', 'brute', 'both')

class SpectrumCommand:
    """Spectre c-différentiel de x^d par forme close, par énumération ou les deux"""
    def __init__(self, cli: CommandLine):
        self.cli = cli
        parser = cli.add_command('spectrum', self.run, help="Spectre c-différentiel de x^((q+1)/2)")
        add_field_arguments(parser)
        parser.add_argument('--d', type=int, help="Exposant (méthode brute uniquement), par défaut (q+1)/2")
        parser.add_argument('--method', choices=METHODS, default='both', help="Méthode de calcul, par défaut both")
        parser.add_argument('--variant', choices=[v.value for v in FormulaVariant], default=FormulaVariant.C_PRIMITIVE.value,
                            help="Variante des formules closes, par défaut cprim")
        add_output_arguments(parser)

    def closed_payload(self, f, c: int, variant: FormulaVariant) -> tuple[Spectrum | None, dict[str, Any]]:
        result = closed_spectrum(f, c, variant)
        payload: dict[str, Any] = {
            'variant': variant.name,
            'consistency': consistency_of(result),
            'notes': closed_notes(f, c, variant),
        }
        if isinstance(result, Spectrum):
            payload['spectrum'] = result.to_json()
            return result, payload
        payload['spectrum'] = None
        payload['inconsistency'] = result.to_json()
        return None, payload

    def run(self, cli: CommandLine, args: argparse.Namespace) -> CommandResult:
        f = resolve_field(cli, args)
        c = resolve_c(f, args)
        default_d = default_exponent(f)
        d = default_d if args.d is None else args.d
        if d != default_d and args.method != 'brute':
            raise InvalidInput(f"--d only applies to --method brute (closed forms are for d = {default_d})")
        variant = FormulaVariant(args.variant)
        case = classify(f, c).label if args.method != 'brute' or c != 1 else None

        payload: dict[str, Any] = {'q': f.q, 'c': c, 'd': d, 'case': case}
        if args.method == 'brute':
            spectrum = spectrum_brute(f, d, c)
            payload.update(spectrum=spectrum.to_json(), uniformity=c_uniformity(f, d, c), consistency='ok', notes=[])
        else:
            closed, closed_data = self.closed_payload(f, c, variant)
            if args.method == 'closed':
                spectrum = closed
                payload.update(closed_data)
                payload['uniformity'] = closed_uniformity(f, d, closed) if closed else None
            else:
                spectrum = spectrum_brute(f, d, c)
                payload.update(
                    spectrum=spectrum.to_json(),
                    uniformity=closed_uniformity(f, d, spectrum),
                    consistency=closed_data['consistency'],
                    notes=closed_data['notes'],
                    closed=closed_data,
                    match=closed == spectrum,
                )
                if closed != spectrum:
                    logger.info(f"F_{f.q}, c = {c} : {variant.name} diffère de l'énumération")

        rows = sorted(spectrum.entries.items()) if spectrum else []
        if args.format == 'table':
            return CommandResult(spectrum_table(spectrum.entries if spectrum else {}, f.q))
        return CommandResult(render(args.format, payload, header=('i', 'omega_i'), rows=rows))

def setup(cli: CommandLine):
    SpectrumCommand(cli)
