from pydantic import Field

from fca_engine.formats import emit_dot, load_lattice
from fca_engine.models import BaseCommand, CommandResult


class LatticeDot(BaseCommand):
    """Write the Hasse diagram of a concept lattice as Graphviz DOT."""

    command_name = "lattice-dot"

    input: str = Field(
        ..., description="Context file, or a concept lattice JSON bundle.", json_schema_extra={"positional": True}
    )

    async def run(self) -> CommandResult:
        return CommandResult(exit_code=0, output=emit_dot(load_lattice(self.input)))
