# src/fca_engine/models.py
from dataclasses import dataclass
from enum import StrEnum
from typing import ClassVar

from pydantic import BaseModel, ConfigDict, Field


class OutputFormat(StrEnum):
    JSON = "json"
    CXT = "cxt"
    DOT = "dot"


class LawStatus(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class Bundle(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PreorderModel(Bundle):
    elements: list[str]
    leq: list[tuple[int, int]] = Field(..., description="Pairs [i, j] meaning elements[i] <= elements[j].")


class MonotoneMapModel(Bundle):
    source: PreorderModel
    target: PreorderModel
    map: list[int]


class GaloisConnectionModel(Bundle):
    source: PreorderModel
    target: PreorderModel
    left: list[int]
    right: list[int]


class PolarFactorizationModel(Bundle):
    bipoles: list[tuple[int, int]]
    axis: PreorderModel
    refl: GaloisConnectionModel
    corefl: GaloisConnectionModel


class ContextModel(Bundle):
    instances: list[str]
    types: list[str]
    incidence: list[tuple[int, int]] = Field(..., description="Pairs [x, y] meaning instance x has type y.")


class InfomorphismModel(Bundle):
    source: ContextModel
    target: ContextModel
    inst_map: list[int]
    typ_map: list[int]


class QuartetModel(Bundle):
    g1: GaloisConnectionModel
    g2: GaloisConnectionModel
    a: GaloisConnectionModel
    b: GaloisConnectionModel


class ConceptModel(Bundle):
    extent: list[str]
    intent: list[str]


class ConceptLatticeModel(Bundle):
    context: ContextModel
    concepts: list[ConceptModel]
    order: list[tuple[int, int]]
    iota: list[int]
    tau: list[int]


class TheoryModel(Bundle):
    theory: list[str]
    closure: list[str]


class TheoryLatticeModel(Bundle):
    types: list[str]
    theories: list[TheoryModel]
    entailment: list[tuple[int, int]]


class RoundTripModel(Bundle):
    concepts: list[ConceptModel]
    forward: list[int]
    backward: list[int]


class LawResult(Bundle):
    law: str
    anchor: str
    status: LawStatus
    cases: int
    detail: str = ""


class VerifyReport(Bundle):
    source: str
    seed: int
    laws: list[LawResult]

    @property
    def passed(self) -> bool:
        return all(law.status is not LawStatus.FAIL for law in self.laws)


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    output: str


class BaseCommand(BaseModel):
    """A CLI subcommand. Fields become flags; fields marked ``positional`` become arguments."""

    command_name: ClassVar[str]

    out: str | None = Field(default=None, description="Write the result to this path instead of stdout.")

    async def run(self) -> CommandResult:
        raise NotImplementedError
