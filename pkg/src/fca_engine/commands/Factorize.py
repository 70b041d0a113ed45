from pydantic import Field

from fca_engine.formats import decode_galois, dump_bundle, encode_polar, read_bundle
from fca_engine.galois import polar_factorize
from fca_engine.models import BaseCommand, CommandResult, GaloisConnectionModel


class Factorize(BaseCommand):
    """Polar factorization of a Galois connection through its axis of bipoles."""

    command_name = "factorize"

    input: str = Field(..., description="Galois connection JSON bundle.", json_schema_extra={"positional": True})

    async def run(self) -> CommandResult:
        g = decode_galois(read_bundle(self.input, GaloisConnectionModel))
        return CommandResult(exit_code=0, output=dump_bundle(encode_polar(polar_factorize(g))))
