"""Burmeister CXT, JSON bundles and DOT export."""

import logging
from collections.abc import Sequence
from pathlib import Path
from typing import TypeVar, Union

import numpy as np
from pydantic import BaseModel, TypeAdapter, ValidationError

from fca_engine.classification import Classification, Infomorphism
from fca_engine.concept_lattice import ConceptLattice, TheoryLattice, clg, clsn, make_concept_lattice
from fca_engine.errors import BadBundle, BadChar, BadHeader, BadRowLength, CountMismatch
from fca_engine.galois import GaloisConnection, PolarFactorization
from fca_engine.models import (
    ConceptLatticeModel,
    ConceptModel,
    ContextModel,
    GaloisConnectionModel,
    InfomorphismModel,
    MonotoneMapModel,
    PolarFactorizationModel,
    PreorderModel,
    QuartetModel,
    TheoryLatticeModel,
    TheoryModel,
)
from fca_engine.order_core import MonotoneMap, Preorder, covers, validate_preorder
from fca_engine.quartet import Quartet, check_quartet
from fca_engine.utils.bitsets import iter_bits

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)

# Header is "B", the name line, then the two counts.
CXT_HEADER_LINES = 4


def _count(line: str, line_no: int, what: str) -> int:
    try:
        value = int(line.strip())
    except ValueError:
        raise BadHeader(f"Line {line_no}: expected the number of {what}, got '{line}'", line=line_no) from None
    if value < 0:
        raise BadHeader(f"Line {line_no}: negative number of {what}", line=line_no)
    return value


def parse_cxt(text: str) -> Classification:
    text = text.replace("\r\n", "\n")
    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    if lines[0] != "B":
        raise BadHeader("Line 1: expected 'B'", line=1)
    if len(lines) < CXT_HEADER_LINES:
        raise BadHeader("Header is truncated", line=len(lines))
    n_objects = _count(lines[2], 3, "objects")
    n_attributes = _count(lines[3], 4, "attributes")

    body, first_body_line = lines[CXT_HEADER_LINES:], CXT_HEADER_LINES + 1
    expected = 2 * n_objects + n_attributes
    if len(body) == expected + 1 and body[0] == "":
        body, first_body_line = body[1:], first_body_line + 1
    if len(body) != expected:
        raise CountMismatch(
            f"Expected {expected} lines after the header, found {len(body)}",
            expected=expected,
            actual=len(body),
        )

    objects = body[:n_objects]
    attributes = body[n_objects : n_objects + n_attributes]
    incidence = np.zeros((n_objects, n_attributes), dtype=bool)
    for x, row in enumerate(body[n_objects + n_attributes :]):
        line_no = first_body_line + n_objects + n_attributes + x
        if len(row) != n_attributes:
            raise BadRowLength(
                f"Line {line_no}: row has {len(row)} entries, expected {n_attributes}",
                line=line_no,
                length=len(row),
            )
        for col, char in enumerate(row, start=1):
            if char not in ".X":
                raise BadChar(f"Line {line_no}, column {col}: unexpected '{char}'", line=line_no, col=col)
        incidence[x] = [char == "X" for char in row]
    return Classification(objects, attributes, incidence)


def emit_cxt(context: Classification) -> str:
    lines = ["B", "", str(len(context.instances)), str(len(context.types))]
    lines += context.instances
    lines += context.types
    lines += ["".join("X" if cell else "." for cell in row) for row in context.incidence]
    return "\n".join(lines) + "\n"


def _dot_label(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def emit_dot(lattice: ConceptLattice) -> str:
    """Hasse diagram with reduced labelling; edges run from a concept to its upper covers."""
    lines = ["digraph concepts {"]
    for c in range(len(lattice)):
        insts = ",".join(lattice.instances[x] for x in np.flatnonzero(lattice.iota == c))
        types = ",".join(lattice.types[y] for y in np.flatnonzero(lattice.tau == c))
        label = f"{insts} / {types}" if insts or types else ""
        lines.append(f'  c{c} [label="{_dot_label(label)}"];')
    for lower, upper in covers(lattice.order):
        lines.append(f"  c{lower} -> c{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _bad_bundle(path: str | Path, expected: str, e: ValidationError) -> BadBundle:
    return BadBundle(
        f"{path} is not a valid {expected} bundle",
        path=str(path),
        errors=[f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()],
    )


def read_bundle(path: str | Path, model: type[ModelT]) -> ModelT:
    text = Path(path).read_text()
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise _bad_bundle(path, model.__name__, e) from None


def read_any_bundle(path: str | Path, *models: type[BaseModel]) -> BaseModel:
    """Validate against whichever of ``models`` the top-level fields match; bundles forbid extra fields."""
    text = Path(path).read_text()
    try:
        return TypeAdapter(Union[models]).validate_json(text)
    except ValidationError as e:
        raise _bad_bundle(path, " or ".join(model.__name__ for model in models), e) from None


def dump_bundle(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


def _pair_matrix(pairs: Sequence[tuple[int, int]], rows: int, cols: int, name: str) -> np.ndarray:
    matrix = np.zeros((rows, cols), dtype=bool)
    for i, j in pairs:
        if not (0 <= i < rows and 0 <= j < cols):
            raise BadBundle(f"{name} pair [{i}, {j}] is out of range", field=name, pair=[i, j])
        matrix[i, j] = True
    return matrix


def encode_preorder(preorder: Preorder) -> PreorderModel:
    return PreorderModel(elements=list(preorder.labels), leq=preorder.pairs())


def decode_preorder(model: PreorderModel) -> Preorder:
    n = len(model.elements)
    return validate_preorder(Preorder(model.elements, _pair_matrix(model.leq, n, n, "leq")))


def decode_monotone_map(model: MonotoneMapModel) -> MonotoneMap:
    return MonotoneMap(decode_preorder(model.source), decode_preorder(model.target), model.map)


def encode_galois(g: GaloisConnection) -> GaloisConnectionModel:
    return GaloisConnectionModel(
        source=encode_preorder(g.source),
        target=encode_preorder(g.target),
        left=g.left.tolist(),
        right=g.right.tolist(),
    )


def decode_galois(model: GaloisConnectionModel) -> GaloisConnection:
    return GaloisConnection(decode_preorder(model.source), decode_preorder(model.target), model.left, model.right)


def encode_polar(factorization: PolarFactorization) -> PolarFactorizationModel:
    return PolarFactorizationModel(
        bipoles=[(int(a), int(b)) for a, b in factorization.bipoles],
        axis=encode_preorder(factorization.axis),
        refl=encode_galois(factorization.refl),
        corefl=encode_galois(factorization.corefl),
    )


def encode_context(context: Classification) -> ContextModel:
    return ContextModel(instances=list(context.instances), types=list(context.types), incidence=context.pairs())


def decode_context(model: ContextModel) -> Classification:
    incidence = _pair_matrix(model.incidence, len(model.instances), len(model.types), "incidence")
    return Classification(model.instances, model.types, incidence)


def encode_infomorphism(f: Infomorphism) -> InfomorphismModel:
    return InfomorphismModel(
        source=encode_context(f.source),
        target=encode_context(f.target),
        inst_map=f.inst_map.tolist(),
        typ_map=f.typ_map.tolist(),
    )


def decode_infomorphism(model: InfomorphismModel) -> Infomorphism:
    return Infomorphism(decode_context(model.source), decode_context(model.target), model.inst_map, model.typ_map)


def decode_quartet(model: QuartetModel) -> Quartet:
    return check_quartet(
        decode_galois(model.g1),
        decode_galois(model.g2),
        decode_galois(model.a),
        decode_galois(model.b),
    )


def encode_concept(labels_x: Sequence[str], labels_y: Sequence[str], extent: int, intent: int) -> ConceptModel:
    return ConceptModel(
        extent=[labels_x[x] for x in iter_bits(extent)],
        intent=[labels_y[y] for y in iter_bits(intent)],
    )


def encode_concepts(lattice: ConceptLattice) -> list[ConceptModel]:
    return [encode_concept(lattice.instances, lattice.types, c.extent, c.intent) for c in lattice.concepts]


def encode_lattice(lattice: ConceptLattice) -> ConceptLatticeModel:
    return ConceptLatticeModel(
        context=encode_context(clsn(lattice)),
        concepts=encode_concepts(lattice),
        order=lattice.order.pairs(),
        iota=lattice.iota.tolist(),
        tau=lattice.tau.tolist(),
    )


def decode_lattice(model: ConceptLatticeModel) -> ConceptLattice:
    n = len(model.concepts)
    order = validate_preorder(Preorder(range(n), _pair_matrix(model.order, n, n, "order")))
    context = decode_context(model.context)
    lattice = make_concept_lattice(order, context.instances, context.types, model.iota, model.tau)
    if clsn(lattice) != context:
        raise BadBundle("Context does not match the incidence iota(x) <= tau(y) of the lattice")
    if encode_concepts(lattice) != model.concepts:
        raise BadBundle("Concept extents and intents do not match iota and tau")
    return lattice


def encode_theories(theories: TheoryLattice, types: Sequence[str]) -> TheoryLatticeModel:
    return TheoryLatticeModel(
        types=list(types),
        theories=[
            TheoryModel(
                theory=[types[y] for y in iter_bits(theory)],
                closure=[types[y] for y in iter_bits(int(theories.closure[theory]))],
            )
            for theory in range(len(theories.carrier))
        ],
        entailment=theories.entailment.pairs(),
    )


def load_context(path: str | Path) -> Classification:
    path = Path(path)
    if path.suffix.lower() == ".json":
        return decode_context(read_bundle(path, ContextModel))
    return parse_cxt(path.read_text())


def load_lattice(path: str | Path) -> ConceptLattice:
    """A lattice bundle, or the concept lattice of a context file."""
    path = Path(path)
    if path.suffix.lower() != ".json":
        return clg(parse_cxt(path.read_text()))
    bundle = read_any_bundle(path, ConceptLatticeModel, ContextModel)
    if isinstance(bundle, ConceptLatticeModel):
        return decode_lattice(bundle)
    return clg(decode_context(bundle))
