from typing import Any


class FcaError(Exception):
    """Base error carrying the violated law and a JSON-serialisable witness."""

    law = "fca"
    anchor = "unanchored"

    def __init__(self, message: str, **witness: Any):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_witness(self) -> dict:
        return {
            "error": type(self).__name__,
            "law": self.law,
            "anchor": self.anchor,
            "message": self.message,
            "witness": self.witness,
        }


class InvariantError(FcaError):
    """An asserted postcondition failed; this is a bug, not bad input."""

    law = "postcondition"


def ensure(condition: bool, law: str, message: str, **witness: Any) -> None:
    if not condition:
        error = InvariantError(message, **witness)
        error.law = law
        raise error


# Orders


class OrderError(FcaError):
    anchor = "§2.1 Monotonic Functions"


class DuplicateLabel(OrderError):
    law = "unique labels"


class UnknownLabel(OrderError):
    law = "known labels"


class NotReflexive(OrderError):
    law = "reflexivity"
    anchor = "§2.1 preorder"


class NotTransitive(OrderError):
    law = "transitivity"
    anchor = "§2.1 preorder"


class NotMonotone(OrderError):
    law = "monotonicity"


class NoBound(OrderError):
    law = "bounds exist"
    anchor = "§4 Old Definition, meet and join"


class NotPoset(OrderError):
    law = "antisymmetry"
    anchor = "§2.1 preorder"


class CapacityExceeded(OrderError):
    law = "capacity"


# Galois connections


class GaloisError(FcaError):
    anchor = "§2.2 Galois Connections"


class AdjointnessViolated(GaloisError):
    law = "fundamental adjointness"


class BoundaryMismatch(GaloisError):
    law = "composable boundaries"
    anchor = "§2.2 the category Adj"


class NotReflection(GaloisError):
    law = "reflection"
    anchor = "§2.2 Reflections and Coreflections"


class NotCoreflection(GaloisError):
    law = "coreflection"
    anchor = "§2.2 Reflections and Coreflections"


class NotComplete(GaloisError):
    law = "complete lattice"
    anchor = "Theorem induce:lattice"


class SquareNotCommuting(GaloisError):
    law = "quartet condition"
    anchor = "§2.3 Quartets of Galois Connections"


# Classifications and concept lattices


class ClassificationError(FcaError):
    anchor = "§3.1 Classifications"


class FundamentalConditionViolated(ClassificationError):
    law = "fundamental condition"
    anchor = "§3.2 Infomorphisms"


class ConceptError(FcaError):
    anchor = "§4.2 Old Definition, concept morphisms"


class NotAdjoint(ConceptError):
    law = "concept morphism adjointness"
    anchor = "§3.2 Concept Morphisms"


class InstanceNotPreserved(ConceptError):
    law = "instance preservation"


class TypeNotPreserved(ConceptError):
    law = "type preservation"


# File formats


class FormatError(FcaError):
    anchor = "Burmeister CXT and JSON interchange"


class BadHeader(FormatError):
    law = "cxt header"


class CountMismatch(FormatError):
    law = "cxt counts"


class BadRowLength(FormatError):
    law = "cxt row length"


class BadChar(FormatError):
    law = "cxt row alphabet"


class BadBundle(FormatError):
    law = "json bundle"
