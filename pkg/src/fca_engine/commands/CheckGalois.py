import json

from pydantic import Field

from fca_engine.formats import decode_galois, decode_quartet, read_any_bundle
from fca_engine.galois import classify_connection
from fca_engine.models import BaseCommand, CommandResult, GaloisConnectionModel, QuartetModel


class CheckGalois(BaseCommand):
    """Validate a Galois connection bundle, or a quartet bundle of four connections."""

    command_name = "check-galois"

    input: str = Field(
        ..., description="Galois connection or quartet JSON bundle.", json_schema_extra={"positional": True}
    )

    async def run(self) -> CommandResult:
        bundle = read_any_bundle(self.input, GaloisConnectionModel, QuartetModel)
        if isinstance(bundle, QuartetModel):
            decode_quartet(bundle)
            summary = {"valid": True, "law": "quartet condition"}
        else:
            kind = classify_connection(decode_galois(bundle))
            summary = {
                "valid": True,
                "law": "fundamental adjointness",
                "reflection": kind.reflection,
                "coreflection": kind.coreflection,
            }
        return CommandResult(exit_code=0, output=json.dumps(summary, indent=2) + "\n")
