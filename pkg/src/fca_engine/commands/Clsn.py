from pydantic import Field

from fca_engine.concept_lattice import clsn
from fca_engine.formats import dump_bundle, emit_cxt, encode_context, load_lattice
from fca_engine.models import BaseCommand, CommandResult, OutputFormat


class Clsn(BaseCommand):
    """Recover the classification of a concept lattice: x |= y iff iota(x) <= tau(y)."""

    command_name = "clsn"

    input: str = Field(
        ..., description="Concept lattice JSON bundle, or a context file.", json_schema_extra={"positional": True}
    )
    format: OutputFormat = Field(default=OutputFormat.CXT, description="cxt or json.")

    async def run(self) -> CommandResult:
        context = clsn(load_lattice(self.input))
        if self.format is OutputFormat.JSON:
            return CommandResult(exit_code=0, output=dump_bundle(encode_context(context)))
        if self.format is OutputFormat.DOT:
            raise ValueError("clsn output is a context; use --format cxt or json")
        return CommandResult(exit_code=0, output=emit_cxt(context))
