import asyncio
import json

from pydantic import Field

from fca_engine.concept_lattice import concepts
from fca_engine.formats import encode_concept, load_context
from fca_engine.models import BaseCommand, CommandResult
from fca_engine.utils.decorators import timeit_decorator


class Concepts(BaseCommand):
    """List every formal concept of a context, sorted by extent."""

    command_name = "concepts"

    input: str = Field(..., description="Context file (.cxt or .json).", json_schema_extra={"positional": True})

    @timeit_decorator
    async def run(self) -> CommandResult:
        context = load_context(self.input)
        payload = [
            encode_concept(context.instances, context.types, c.extent, c.intent).model_dump()
            for c in concepts(context)
        ]
        return CommandResult(exit_code=0, output=json.dumps(payload, indent=2) + "\n")


if __name__ == "__main__":
    command = Concepts(input="K1.cxt")
    print(asyncio.run(command.run()).output)
