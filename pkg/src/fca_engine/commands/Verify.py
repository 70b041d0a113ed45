import asyncio
from enum import StrEnum

from pydantic import Field

from fca_engine.config import DEFAULT_SEED, VERIFY_BATCH_SIZE, VERIFY_MAX_SIDE
from fca_engine.formats import dump_bundle, load_context
from fca_engine.models import BaseCommand, CommandResult
from fca_engine.verify import render_table, verify_suite


class ReportFormat(StrEnum):
    TABLE = "table"
    JSON = "json"


class Verify(BaseCommand):
    """Run the law battery on a context, or on a seeded batch of random contexts."""

    command_name = "verify"

    input: str | None = Field(
        default=None, description="Context file; omit to generate cases.", json_schema_extra={"positional": True}
    )
    seed: int = Field(default=DEFAULT_SEED, ge=0, description="Seed for generated cases.")
    batch_size: int = Field(default=VERIFY_BATCH_SIZE, ge=1, description="Number of generated contexts.")
    max_side: int = Field(default=VERIFY_MAX_SIDE, ge=0, description="Largest instance or type count generated.")
    format: ReportFormat = Field(default=ReportFormat.TABLE, description="table or json.")

    async def run(self) -> CommandResult:
        context = load_context(self.input) if self.input else None
        report = await verify_suite(
            context,
            seed=self.seed,
            batch_size=self.batch_size,
            max_side=self.max_side,
            source=self.input or "generated",
        )
        output = dump_bundle(report) if self.format is ReportFormat.JSON else render_table(report)
        return CommandResult(exit_code=0 if report.passed else 1, output=output)


if __name__ == "__main__":
    command = Verify(batch_size=10)
    print(asyncio.run(command.run()).output)
