import json

from pydantic import Field

from fca_engine.formats import decode_infomorphism, read_bundle
from fca_engine.models import BaseCommand, CommandResult, InfomorphismModel


class CheckInfo(BaseCommand):
    """Validate an infomorphism bundle against the fundamental condition."""

    command_name = "check-info"

    input: str = Field(..., description="Infomorphism JSON bundle.", json_schema_extra={"positional": True})

    async def run(self) -> CommandResult:
        f = decode_infomorphism(read_bundle(self.input, InfomorphismModel))
        summary = {
            "valid": True,
            "law": "fundamental condition",
            "instances": [len(f.target.instances), len(f.source.instances)],
            "types": [len(f.source.types), len(f.target.types)],
        }
        return CommandResult(exit_code=0, output=json.dumps(summary, indent=2) + "\n")
