from fca_engine.classification import Classification, Infomorphism, Side, make_classification, make_infomorphism
from fca_engine.concept_lattice import ConceptLattice, ConceptMorphism, FormalConcept, clg, clsn, concepts
from fca_engine.errors import FcaError
from fca_engine.galois import GaloisConnection, make_galois, polar_factorize
from fca_engine.order_core import MonotoneMap, Preorder, make_preorder

__all__ = [
    "Classification",
    "ConceptLattice",
    "ConceptMorphism",
    "FcaError",
    "FormalConcept",
    "GaloisConnection",
    "Infomorphism",
    "MonotoneMap",
    "Preorder",
    "Side",
    "clg",
    "clsn",
    "concepts",
    "make_classification",
    "make_galois",
    "make_infomorphism",
    "make_preorder",
    "polar_factorize",
]
