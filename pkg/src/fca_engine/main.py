# src/fca_engine/main.py
import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from fca_engine.commands import COMMANDS
from fca_engine.config import LOG_LEVEL
from fca_engine.errors import FcaError
from fca_engine.models import BaseCommand, CommandResult

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    """One subparser per command; arguments come from the command model's fields."""
    parser = CliParser(prog="fca-engine", description="Formal concept analysis and Galois connection engine.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    for name, command in sorted(COMMANDS.items()):
        sub = subparsers.add_parser(name, help=command.__doc__, description=command.__doc__)
        for field_name, info in command.model_fields.items():
            extra = info.json_schema_extra if isinstance(info.json_schema_extra, dict) else {}
            if extra.get("positional"):
                sub.add_argument(field_name, nargs=None if info.is_required() else "?", help=info.description)
            else:
                flag = "--" + field_name.replace("_", "-")
                sub.add_argument(flag, dest=field_name, default=None, help=info.description)
    return parser


def parse_command(argv: list[str]) -> BaseCommand:
    args = vars(build_parser().parse_args(argv))
    command = COMMANDS[args.pop("command")]
    values = {key: value for key, value in args.items() if value is not None}
    try:
        return command.model_validate(values)
    except ValidationError as e:
        raise UsageError("; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())) from None


def emit(result: CommandResult, out: str | None) -> None:
    if out and result.exit_code == EXIT_OK:
        Path(out).write_text(result.output)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(result.output)


async def dispatch(argv: list[str]) -> int:
    try:
        command = parse_command(argv)
    except UsageError as e:
        sys.stderr.write(f"fca-engine: {e}\n")
        return EXIT_USAGE

    try:
        result = await command.run()
    except FcaError as e:
        logger.warning(f"{type(e).__name__}: {e.message}")
        sys.stdout.write(json.dumps(e.to_witness(), indent=2, default=str) + "\n")
        return EXIT_VIOLATION
    except (FileNotFoundError, IsADirectoryError) as e:
        sys.stderr.write(f"fca-engine: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        sys.stderr.write(f"fca-engine: {e}\n")
        return EXIT_USAGE

    emit(result, command.out)
    return result.exit_code


def run(argv: list[str] | None = None) -> int:
    return asyncio.run(dispatch(sys.argv[1:] if argv is None else argv))


def main():
    logging.basicConfig(
        level=LOG_LEVEL,
        format="%(asctime)s.%(msecs)03d - %(levelname)s - %(message)s",
        datefmt="%H:%M:%S",
    )
    sys.exit(run())


if __name__ == "__main__":
    main()
