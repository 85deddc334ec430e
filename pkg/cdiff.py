import importlib
import logging
import os
import sys
from pathlib import Path

from common.cli import CommandLine, CommandResult, load_config, write_output
from common.errors import CDiffError, InternalInconsistency

LOG_FORMAT = "[%(asctime)s] %(levelname)s (%(name)s %(module)s) %(message)s"
COMMANDS_DIR = Path(__file__).parent / 'commands'

logger = logging.getLogger('CDiff.Main')

def setup_logging(verbosity: int, config: dict[str, str]) -> None:
    """Journalisation sur la sortie d'erreur : WARNING par défaut, -v INFO, -vv DEBUG"""
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(config.get('CDIFF_LOG_LEVEL', 'WARNING').upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger('CDiff').setLevel(level)

def load_commands(cli: CommandLine) -> list[str]:
    """Charge chaque module commands/<nom>/<nom>.py et appelle son setup()"""
    loaded = []
    for folder in sorted(os.listdir(COMMANDS_DIR)):
        if not (COMMANDS_DIR / folder / f'{folder}.py').exists():
            continue
        try:
            module = importlib.import_module(f'commands.{folder}.{folder}')
            module.setup(cli)
            loaded.append(folder)
        except Exception as e:
            logger.error(f"Erreur {folder} > {type(e).__name__}: {e}")
    logger.debug(f"Commandes chargées : {', '.join(loaded)}")
    return loaded

def run(argv: list[str] | None = None, *, stdout=None, stderr=None) -> int:
    """Analyse argv, exécute la sous-commande et retourne le code de sortie

    0 succès, 1 écart C_PRIMITIVE en mode strict (ou identité interne violée), 2 entrée invalide."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    config = load_config()
    cli = CommandLine(config)
    load_commands(cli)

    try:
        args = cli.parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    setup_logging(args.verbose, config)
    if not getattr(args, 'handler', None):
        cli.parser.print_usage(stderr)
        return 2

    try:
        result: CommandResult = args.handler(cli, args)
        write_output(result.text, getattr(args, 'out', None), stdout)
    except InternalInconsistency as e:
        logger.error(f"Identité interne violée : {e}", exc_info=True)
        stderr.write(f"Erreur · {e}\n")
        return 1
    except (CDiffError, ValueError, ZeroDivisionError) as e:
        stderr.write(f"Erreur · {e}\n")
        return 2
    except OSError as e:
        stderr.write(f"Erreur · {e}\n")
        return 2
    return result.code

def main() -> None:
    sys.exit(run())

if __name__ == '__main__':
    main()
