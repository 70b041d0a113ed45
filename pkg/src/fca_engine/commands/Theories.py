from pydantic import Field

from fca_engine.concept_lattice import theories
from fca_engine.formats import dump_bundle, encode_theories, load_lattice
from fca_engine.models import BaseCommand, CommandResult


class Theories(BaseCommand):
    """Theories of a concept lattice with their closures and the entailment order."""

    command_name = "theories"

    input: str = Field(
        ..., description="Concept lattice JSON bundle, or a context file.", json_schema_extra={"positional": True}
    )

    async def run(self) -> CommandResult:
        lattice = load_lattice(self.input)
        return CommandResult(exit_code=0, output=dump_bundle(encode_theories(theories(lattice), lattice.types)))
