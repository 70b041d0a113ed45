from pydantic import Field

from fca_engine.concept_lattice import roundtrip_iso
from fca_engine.formats import dump_bundle, encode_concepts, load_lattice
from fca_engine.models import BaseCommand, CommandResult, RoundTripModel


class Roundtrip(BaseCommand):
    """Check that clg(clsn(L)) is isomorphic to L and print both directions of the isomorphism."""

    command_name = "roundtrip"

    input: str = Field(
        ..., description="Concept lattice JSON bundle, or a context file.", json_schema_extra={"positional": True}
    )

    async def run(self) -> CommandResult:
        result = roundtrip_iso(load_lattice(self.input))
        model = RoundTripModel(
            concepts=encode_concepts(result.rebuilt),
            forward=result.forward.tolist(),
            backward=result.backward.tolist(),
        )
        return CommandResult(exit_code=0, output=dump_bundle(model))
