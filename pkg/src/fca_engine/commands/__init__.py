import importlib
import logging
import os

from fca_engine.models import BaseCommand

logger = logging.getLogger(__name__)


def load_commands() -> dict[str, type[BaseCommand]]:
    commands = {}
    current_dir = os.path.dirname(os.path.abspath(__file__))
    for filename in sorted(os.listdir(current_dir)):
        if filename.endswith(".py") and filename != "__init__.py":
            module_name = filename[:-3]
            module = importlib.import_module(f"fca_engine.commands.{module_name}")
            for name, obj in module.__dict__.items():
                if (
                    isinstance(obj, type)
                    and issubclass(obj, BaseCommand)
                    and obj != BaseCommand
                    and obj.__module__ == module.__name__
                ):
                    commands[obj.command_name] = obj
    logger.debug("Commands: %s", sorted(commands))
    return commands


# Load all commands
COMMANDS: dict[str, type[BaseCommand]] = load_commands()
