from pydantic import Field

from fca_engine.concept_lattice import clg
from fca_engine.formats import dump_bundle, emit_dot, encode_lattice, load_context
from fca_engine.models import BaseCommand, CommandResult, OutputFormat


class Clg(BaseCommand):
    """Build the concept lattice of a context."""

    command_name = "clg"

    input: str = Field(..., description="Context file (.cxt or .json).", json_schema_extra={"positional": True})
    format: OutputFormat = Field(default=OutputFormat.JSON, description="json or dot.")

    async def run(self) -> CommandResult:
        lattice = clg(load_context(self.input))
        if self.format is OutputFormat.DOT:
            return CommandResult(exit_code=0, output=emit_dot(lattice))
        if self.format is OutputFormat.CXT:
            raise ValueError("clg output is a lattice; use --format json or dot")
        return CommandResult(exit_code=0, output=dump_bundle(encode_lattice(lattice)))
