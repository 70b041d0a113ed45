"""Law battery: every algebraic law of the engine, run over one context or a seeded batch."""

import asyncio
import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from fca_engine.classification import (
    Classification,
    Infomorphism,
    Side,
    closure,
    compose_infomorphisms,
    derivation_connection,
    derive,
    epsilon_naturality,
    eta_naturality,
    ext_naturality,
    fundamental_condition,
    identity_infomorphism,
    int_naturality,
    transpose,
    unit_counit,
)
from fca_engine.concept_lattice import (
    ConceptLattice,
    FormalConcept,
    clg,
    clg_morphism,
    clsn,
    compose_concept_morphisms,
    concepts,
    density_check,
    extent_intent_adjunctions,
    extent_quartet,
    identity_concept_morphism,
    intent_quartet,
    lattice_extremum,
    roundtrip_iso,
    theories,
    theory_morphism,
)
from fca_engine.config import (
    CONTINUITY_LIMIT,
    DIAGONAL_SEARCH_LIMIT,
    INDUCED_LATTICE_LIMIT,
    MAX_POWERSET_BASE,
    VERIFY_BATCH_SIZE,
    VERIFY_MAX_SIDE,
)
from fca_engine.errors import CapacityExceeded, FcaError, ensure
from fca_engine.formats import emit_cxt, emit_dot, parse_cxt
from fca_engine.galois import (
    check_induced_lattice,
    compose_galois,
    connection_mismatch,
    enumerate_galois,
    kernel_factorize,
    polar_factorize,
)
from fca_engine.generators import candidate_maps, random_context, random_infomorphism
from fca_engine.models import LawResult, LawStatus, VerifyReport
from fca_engine.order_core import Extremum, is_order_isomorphism
from fca_engine.quartet import axis_morphism, factor_coreflection_quartet, factor_reflection_quartet
from fca_engine.utils.bitsets import indices_of, is_subset
from fca_engine.utils.decorators import timeit_decorator
from fca_engine.utils.log_utils import log_law_result

logger = logging.getLogger(__name__)

CANDIDATES_PER_CASE = 5
# pairwise subset sweeps are quadratic in the powerset
PAIRWISE_SWEEP_SIDE = 6


class LawSkipped(Exception):
    pass


def skip_unless(condition: bool, reason: str) -> None:
    if not condition:
        raise LawSkipped(reason)


class Case:
    """One context plus lazily derived structures shared by the laws."""

    def __init__(self, context: Classification, seed: int, index: int):
        self.context = context
        self.index = index
        self.seed = seed

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, self.index, salt])

    @cached_property
    def lattice(self) -> ConceptLattice:
        return clg(self.context)

    @cached_property
    def small(self) -> bool:
        return max(len(self.context.instances), len(self.context.types)) <= MAX_POWERSET_BASE

    @cached_property
    def infomorphism(self) -> Infomorphism:
        return random_infomorphism(self.rng(1), self.context, max(VERIFY_MAX_SIDE, 1))


@dataclass(frozen=True)
class Law:
    name: str
    anchor: str
    check: Callable[[Case], None]


LAWS: list[Law] = []


def law(name: str, anchor: str):
    def register(check: Callable[[Case], None]) -> Callable[[Case], None]:
        LAWS.append(Law(name, anchor, check))
        return check

    return register


def _brute_force_concepts(context: Classification) -> list[FormalConcept]:
    found = []
    for x in range(1 << len(context.instances)):
        for y in range(1 << len(context.types)):
            if derive(context, Side.INSTANCES, x) == y and derive(context, Side.TYPES, y) == x:
                found.append(FormalConcept(x, y))
    return sorted(found)


@law("concept enumeration matches brute force", "§3.1 Formal Concepts")
def _concepts_oracle(case: Case) -> None:
    skip_unless(max(len(case.context.instances), len(case.context.types)) <= 8, "brute force too large")
    ensure(concepts(case.context) == _brute_force_concepts(case.context), "concept oracle", "Enumeration differs")


@law("derivation laws", "§3.1 Derivation")
def _derivation_laws(case: Case) -> None:
    skip_unless(
        max(len(case.context.instances), len(case.context.types)) <= PAIRWISE_SWEEP_SIDE, "too many subset pairs"
    )
    A = case.context
    for side, size in ((Side.INSTANCES, len(A.instances)), (Side.TYPES, len(A.types))):
        primes = [derive(A, side, s) for s in range(1 << size)]
        for s in range(1 << size):
            ensure(is_subset(s, closure(A, side, s)), "closure extensive", "X is not inside its closure", subset=s)
            ensure(derive(A, side, closure(A, side, s)) == primes[s], "triple derivation", "X*** differs from X*")
            for t in range(1 << size):
                if is_subset(s, t):
                    ensure(is_subset(primes[t], primes[s]), "derivation antitone", "Derivation is not antitone")
                ensure(primes[s | t] == primes[s] & primes[t], "union to intersection", "(X u Z)* differs")


@law("derivation connection agrees with derive", "§3.1 Derivation, Galois connection")
def _derivation_connection(case: Case) -> None:
    skip_unless(case.small, "powerset too large")
    A = case.context
    g = derivation_connection(A)
    ensure(
        g.left.tolist() == [derive(A, Side.INSTANCES, s) for s in range(1 << len(A.instances))],
        "left adjoint is derivation",
        "Left adjoint differs from instance derivation",
    )
    ensure(
        g.right.tolist() == [derive(A, Side.TYPES, s) for s in range(1 << len(A.types))],
        "right adjoint is derivation",
        "Right adjoint differs from type derivation",
    )


@law("transpose duality", "§3.1 Examples, transpose")
def _transpose_duality(case: Case) -> None:
    A = case.context
    flipped = transpose(A)
    ensure(transpose(flipped) == A, "transpose involution", "Transpose is not involutive")
    if len(A.types) <= MAX_POWERSET_BASE:
        ensure(
            all(derive(flipped, Side.INSTANCES, s) == derive(A, Side.TYPES, s) for s in range(1 << len(A.types))),
            "transpose derivation",
            "Derivation in the transpose differs",
        )
    ensure(clsn(clg(flipped)) == transpose(clsn(case.lattice)), "clsn commutes with transpose", "clsn of transpose differs")


@law("clsn(clg(A)) = A", "§4.1 Classifications")
def _clsn_clg(case: Case) -> None:
    ensure(clsn(case.lattice) == case.context, "clsn of clg", "Classification is not recovered")


@law("round trip isomorphism", "§Equivalence")
def _roundtrip(case: Case) -> None:
    roundtrip_iso(case.lattice)


@law("iota join-dense and tau meet-dense", "§3.1 Formal Concepts, density")
def _density(case: Case) -> None:
    report = density_check(case.lattice)
    ensure(report.holds, "density", "Density fails", join=report.join_dense_failures, meet=report.meet_dense_failures)


@law("meet and join formulas", "§3.1 Formal Concepts, meet and join")
def _extremum_formulas(case: Case) -> None:
    L = case.lattice
    skip_unless(len(L) <= CONTINUITY_LIMIT, "too many concepts")
    for mask in range(1 << len(L)):
        for kind in (Extremum.MEET, Extremum.JOIN):
            lattice_extremum(L, indices_of(mask), kind)


@law("extent reflection and intent coreflection", "§4.1 Facts")
def _adjunctions(case: Case) -> None:
    skip_unless(case.small, "powerset too large")
    extent_intent_adjunctions(case.lattice)


@law("theory lattice", "§4.2 Intent Factorization")
def _theories(case: Case) -> None:
    skip_unless(case.small, "powerset too large")
    th = theories(case.lattice)
    A = case.context
    ensure(
        all(int(th.closure[y]) == closure(A, Side.TYPES, y) for y in range(1 << len(A.types))),
        "theory closure",
        "clo(Y) differs from Y**",
    )


@law("polar factorization of derivation", "§2.2 Polar Factorization")
def _polar(case: Case) -> None:
    skip_unless(case.small, "powerset too large")
    A, L = case.context, case.lattice
    polar = polar_factorize(derivation_connection(A))
    mapping = [L.by_extent(a) for a, _ in polar.bipoles]
    ensure(None not in mapping, "bipoles are concepts", "Bipole extent is not a concept extent")
    ensure(is_order_isomorphism(polar.axis, L.order, mapping), "axis is concept lattice", "Axis is not the concept order")


@law("kernel factorization", "Fig. Combined Factorization of Galois Connections")
def _kernel(case: Case) -> None:
    skip_unless(case.small, "powerset too large")
    kernel_factorize(derivation_connection(case.context))


@law("induced lattice identities", "Theorem induce:lattice")
def _induced(case: Case) -> None:
    skip_unless(case.small, "powerset too large")
    polar = polar_factorize(derivation_connection(case.context))
    skip_unless(len(polar.axis) <= INDUCED_LATTICE_LIMIT, "axis too large")
    for g in (polar.refl, polar.corefl):
        try:
            report = check_induced_lattice(g)
        except CapacityExceeded as e:
            raise LawSkipped(e.message) from e
        ensure(report.holds, "induced lattice", "Bound transfer fails", failures=report.failures[:3])


@law("unit and counit naturality", "§3.2 Unit and Counit")
def _unit_counit(case: Case) -> None:
    skip_unless(case.small, "powerset too large")
    unit_counit(case.context)
    f = case.infomorphism
    skip_unless(len(f.target.instances) <= MAX_POWERSET_BASE, "powerset too large")
    ensure(eta_naturality(f), "eta naturality", "eta square does not commute")
    ensure(epsilon_naturality(f), "epsilon naturality", "epsilon square does not commute")


@law("infomorphism predicates agree", "§3.2 Infomorphisms")
def _predicates(case: Case) -> None:
    f, rng = case.infomorphism, case.rng(2)
    for _ in range(CANDIDATES_PER_CASE):
        inst_map, typ_map = candidate_maps(rng, f)
        verdicts = {
            fundamental_condition(f.source, f.target, inst_map, typ_map),
            ext_naturality(f.source, f.target, inst_map, typ_map),
            int_naturality(f.source, f.target, inst_map, typ_map),
        }
        ensure(len(verdicts) == 1, "predicates agree", "Fundamental condition and naturality disagree")


@law("infomorphism category laws", "§3.2 composite infomorphism")
def _category(case: Case) -> None:
    f = case.infomorphism
    ensure(compose_infomorphisms(identity_infomorphism(f.source), f) == f, "left identity", "id o f differs from f")
    ensure(compose_infomorphisms(f, identity_infomorphism(f.target)) == f, "right identity", "f o id differs from f")
    g = random_infomorphism(case.rng(3), f.target, max(VERIFY_MAX_SIDE, 1))
    k = random_infomorphism(case.rng(4), g.target, max(VERIFY_MAX_SIDE, 1))
    ensure(
        compose_infomorphisms(compose_infomorphisms(f, g), k) == compose_infomorphisms(f, compose_infomorphisms(g, k)),
        "associativity",
        "Infomorphism composition is not associative",
    )


@law("concept morphisms from infomorphisms", "§3.2 Concept Morphisms")
def _concept_morphisms(case: Case) -> None:
    f = case.infomorphism
    h = clg_morphism(f, source=case.lattice)
    identity = clg_morphism(identity_infomorphism(case.context), case.lattice, case.lattice)
    reference = identity_concept_morphism(case.lattice)
    ensure(
        connection_mismatch(identity.adjunction, reference.adjunction) is None,
        "identity functoriality",
        "clg of the identity is not the identity",
    )
    g = random_infomorphism(case.rng(3), f.target, max(VERIFY_MAX_SIDE, 1))
    composite = clg_morphism(compose_infomorphisms(f, g), source=case.lattice)
    pasted = compose_concept_morphisms(h, clg_morphism(g, source=h.target))
    ensure(
        connection_mismatch(composite.adjunction, pasted.adjunction) is None,
        "composition functoriality",
        "clg of a composite differs from the composite of clg",
    )
    if case.small:
        eta, epsilon = unit_counit(case.context)
        clg_morphism(eta, source=case.lattice)
        clg_morphism(epsilon, target=case.lattice)


@law("quartet factorization", "§2.3 Morphisms of Reflections and Coreflections")
def _quartets(case: Case) -> None:
    f = case.infomorphism
    skip_unless(case.small and max(len(f.target.instances), len(f.target.types)) <= MAX_POWERSET_BASE, "powerset too large")
    h = clg_morphism(f, source=case.lattice)
    source, target = extent_intent_adjunctions(h.source), extent_intent_adjunctions(h.target)
    factor_reflection_quartet(extent_quartet(h, source, target))
    d = factor_coreflection_quartet(intent_quartet(h, source, target))
    th = theory_morphism(h, theories(h.source, source), theories(h.target, target))
    ensure(connection_mismatch(d, th) is None, "theory morphism", "Coreflection factor differs from th(h)")


@law("diagonal fill-in is unique", "§2.2 Lemma, diagonal fill-in")
def _diagonal(case: Case) -> None:
    f = case.infomorphism
    skip_unless(case.small and max(len(f.target.instances), len(f.target.types)) <= MAX_POWERSET_BASE, "powerset too large")
    h = clg_morphism(f, source=case.lattice)
    skip_unless(max(len(h.source), len(h.target)) <= DIAGONAL_SEARCH_LIMIT, "axes too large for exhaustive search")
    q = extent_quartet(h)
    split = axis_morphism(q)
    polar1, polar2 = polar_factorize(q.g1), polar_factorize(q.g2)
    r = compose_galois(q.a, polar2.refl)
    s = compose_galois(polar1.corefl, q.b)
    solutions = [
        candidate
        for candidate in enumerate_galois(polar1.axis, polar2.axis)
        if connection_mismatch(compose_galois(polar1.refl, candidate), r) is None
        and connection_mismatch(compose_galois(candidate, polar2.corefl), s) is None
    ]
    ensure(len(solutions) == 1, "diagonal uniqueness", f"Found {len(solutions)} diagonal(s)")
    ensure(connection_mismatch(solutions[0], split.axis_map) is None, "diagonal fill", "Computed diagonal differs")


@law("cxt round trip", "Burmeister CXT interchange")
def _cxt(case: Case) -> None:
    ensure(parse_cxt(emit_cxt(case.context)) == case.context, "cxt round trip", "Parsed context differs")


@law("dot is the Hasse diagram", "Graphviz DOT interchange")
def _dot(case: Case) -> None:
    L = case.lattice
    n = len(L)
    reach = np.eye(n, dtype=bool)
    for line in emit_dot(L).splitlines():
        if "->" in line and "[label" not in line:
            lower, upper = (int(part.strip(" ;c")) for part in line.split("->"))
            reach[lower, upper] = True
    for k in range(n):
        reach |= np.outer(reach[:, k], reach[k, :])
    ensure(np.array_equal(reach, L.order.leq), "dot closure", "Transitive closure of edges differs from the order")


def _run_law(rule: Law, cases: list[Case]) -> LawResult:
    ran, detail = 0, ""
    status = LawStatus.PASS
    for case in cases:
        try:
            rule.check(case)
        except LawSkipped:
            continue
        except FcaError as e:
            ran += 1
            if status is not LawStatus.FAIL:
                status, detail = LawStatus.FAIL, f"case {case.index}: {e.message}"
            continue
        ran += 1
    if ran == 0:
        status, detail = LawStatus.SKIP, "no applicable case"
    log_law_result(rule.name, status, ran, detail)
    return LawResult(law=rule.name, anchor=rule.anchor, status=status, cases=ran, detail=detail)


def make_cases(context: Classification | None, seed: int, batch_size: int, max_side: int) -> list[Case]:
    if context is not None:
        return [Case(context, seed, 0)]
    rng = np.random.default_rng(seed)
    return [Case(random_context(rng, max_side), seed, i) for i in range(batch_size)]


@timeit_decorator
async def verify_suite(
    context: Classification | None = None,
    seed: int = 0,
    batch_size: int = VERIFY_BATCH_SIZE,
    max_side: int = VERIFY_MAX_SIDE,
    source: str = "generated",
) -> VerifyReport:
    cases = make_cases(context, seed, batch_size, max_side)
    # cached properties are filled before the laws fan out across threads
    for case in cases:
        case.lattice, case.infomorphism
    results = await asyncio.gather(*(asyncio.to_thread(_run_law, rule, cases) for rule in LAWS))
    return VerifyReport(source=source, seed=seed, laws=list(results))


def render_table(report: VerifyReport) -> str:
    width = max((len(r.law) for r in report.laws), default=0)
    lines = [f"verify {report.source} (seed {report.seed})"]
    for r in report.laws:
        line = f"{r.status.value:<4}  {r.law:<{width}}  [{r.anchor}]  {r.cases} case(s)"
        if r.detail:
            line += f"  {r.detail}"
        lines.append(line)
    passed = sum(r.status is LawStatus.PASS for r in report.laws)
    failed = sum(r.status is LawStatus.FAIL for r in report.laws)
    skipped = sum(r.status is LawStatus.SKIP for r in report.laws)
    lines.append(f"{passed} passed, {failed} failed, {skipped} skipped")
    return "\n".join(lines) + "\n"