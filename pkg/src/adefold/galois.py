"""Galois groups of contractions as products of folded Weyl groups.

A contraction is described by its components: each has an ADE fiber
type, the image of its monodromy in the diagram automorphisms, and
optionally the classes ``e_1..e_k`` of the folded divisors inside an
ambient lattice.  The Galois group is the product of the Weyl groups of
the folded types.

For ``A_{2k}`` folded by its flip the middle orbit consists of two
adjacent nodes; its projection ``e`` is rescaled to ``2e``.  The Weyl
group is that of ``B_k`` (equivalently ``C_k``) and the two lattices
spanned with ``e`` and with ``2e`` together carry a non-reduced root
system of type ``BC_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from . import intmat
from .dynkin import (
    DiagramAutGroup,
    SimplyLacedDiagram,
    automorphism_group,
    build_diagram,
    subgroup_from_generators,
)
from .folding import FoldedRootSystem, _assemble, fold
from .lattice import (
    BilinearLattice,
    IsometryCandidate,
    LatticeError,
    SublatticeEmbedding,
    bb_reflection,
    coroot_covector,
    definiteness,
    scaled_reflection_coefficient,
    verify_galois_form,
)
from .rootsys import (
    DEFAULT_ENUMERATION_CAP,
    FundamentalGroup,
    RootLattice,
    RootSet,
    _fundamental_group_from_pairing,
    enumerate_roots,
    generate_weyl,
    matrix_closure,
    simple_reflections,
)


class GaloisError(ValueError):
    pass


@dataclass(frozen=True)
class ComponentSpec:
    name: str
    kind: str
    rank: int
    monodromy_generators: tuple[tuple[int, ...], ...] = ()
    # one ambient vector per folded simple root, in orbit order
    divisor_classes: tuple[tuple[int, ...], ...] | None = None
    fiber_classes: tuple[tuple[int, ...], ...] | None = None
    expected: dict = field(default_factory=dict, compare=False)

    @property
    def diagram(self) -> SimplyLacedDiagram:
        return build_diagram(self.kind, self.rank)

    @property
    def has_embedding(self) -> bool:
        return self.divisor_classes is not None

    def gamma(self) -> DiagramAutGroup:
        return subgroup_from_generators(automorphism_group(self.diagram), self.monodromy_generators)

    @classmethod
    def from_json(cls, data: dict) -> "ComponentSpec":
        emb = data.get("embedding") or {}
        div = emb.get("divisor_classes")
        fib = emb.get("fiber_classes")
        return cls(
            name=data["name"],
            kind=data["type"]["kind"],
            rank=int(data["type"]["rank"]),
            monodromy_generators=tuple(tuple(g) for g in data.get("monodromy_generators", [])),
            divisor_classes=None if div is None else tuple(tuple(v) for v in div),
            fiber_classes=None if fib is None else tuple(tuple(v) for v in fib),
            expected=dict(data.get("expected", {})),
        )

    def to_json(self) -> dict:
        doc = {
            "name": self.name,
            "type": {"kind": self.kind, "rank": self.rank},
            "monodromy_generators": [list(g) for g in self.monodromy_generators],
        }
        if self.has_embedding:
            emb = {"divisor_classes": [list(v) for v in self.divisor_classes]}
            if self.fiber_classes is not None:
                emb["fiber_classes"] = [list(v) for v in self.fiber_classes]
            doc["embedding"] = emb
        if self.expected:
            doc["expected"] = dict(self.expected)
        return doc


@dataclass(frozen=True)
class ContractionSpec:
    components: tuple[ComponentSpec, ...]
    ambient: BilinearLattice | None = None
    expected: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_json(cls, data: dict) -> "ContractionSpec":
        amb = data.get("ambient")
        return cls(
            tuple(ComponentSpec.from_json(c) for c in data.get("components", [])),
            None if amb is None else BilinearLattice.from_gram(amb["gram"]),
            dict(data.get("expected", {})),
        )

    def to_json(self) -> dict:
        doc = {"components": [c.to_json() for c in self.components]}
        if self.ambient is not None:
            doc["ambient"] = {"gram": [[int(x) for x in row] for row in self.ambient.gram]}
        if self.expected:
            doc["expected"] = dict(self.expected)
        return doc


# --- folding a component -----------------------------------------------------

def _is_bc(d: SimplyLacedDiagram, gamma: DiagramAutGroup) -> bool:
    return d.kind == "A" and d.rank % 2 == 0 and not gamma.is_trivial()


def bc_label(k: int) -> str:
    return f"B{k} (= C{k}), root data BC{k}"


def fold_component(c: ComponentSpec) -> tuple[FoldedRootSystem, bool]:
    """Folded root system of a component and whether it is the BC case.

    In the BC case the middle projection is doubled before assembling.
    """
    d = c.diagram
    gamma = c.gamma()
    plain = fold(d, gamma)
    if not _is_bc(d, gamma):
        return plain, False
    roots = [
        tuple(2 * x for x in v) if o.orbit_type == 2 else v
        for v, o in zip(plain.projected_roots, plain.orbits)
    ]
    k = plain.rank
    note = f"middle orbit rescaled to twice its projection; unrescaled lattice has type {plain.folded_type}"
    return _assemble(d, gamma, plain.orbits, tuple(roots), label=bc_label(k), notes=(note,)), True


def weyl_type(f: FoldedRootSystem, bc: bool) -> str:
    return f"B{f.rank}" if bc else f.folded_type


def _bc_fundamental_group(c: ComponentSpec) -> FundamentalGroup:
    """Pairing of the coroots of the rescaled lattice with the unrescaled roots."""
    d = c.diagram
    plain = fold(d, c.gamma())
    g = intmat.to_fraction_matrix(plain.gram)
    n = len(g)
    # <e~_j^vee, e_i> = 2 (e~_j, e_i) / (e~_j, e~_j) with e~_j = s_j e_j
    s = [2 if o.orbit_type == 2 else 1 for o in plain.orbits]
    m = [[2 * s[j] * g[j][i] / (s[j] * s[j] * g[j][j]) for i in range(n)] for j in range(n)]
    return _fundamental_group_from_pairing(m)


def bc_root_union(c: ComponentSpec) -> RootSet:
    """Roots of the unrescaled and rescaled lattices in the unrescaled basis."""
    d = c.diagram
    plain = fold(d, c.gamma())
    L = RootLattice.from_folded(plain)
    W = generate_weyl(L)
    n = plain.rank
    seeds = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seeds += [tuple(2 * int(i == j) for j in range(n)) for i, o in enumerate(plain.orbits) if o.orbit_type == 2]
    return enumerate_roots(L, W, seeds)


# --- reports -----------------------------------------------------------------

@dataclass(frozen=True)
class ComponentResult:
    name: str
    source_type: str
    gamma_order: int
    folded: FoldedRootSystem
    bc: bool
    weyl_order: int
    pi: FundamentalGroup

    @property
    def folded_type(self) -> str:
        return self.folded.folded_type

    @property
    def weyl_type(self) -> str:
        return weyl_type(self.folded, self.bc)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "type": self.source_type,
            "gamma_order": self.gamma_order,
            "folded_type": self.folded_type,
            "bc": self.bc,
            "weyl_type": self.weyl_type,
            "weyl_order": self.weyl_order,
            "pi_invariant_factors": list(self.pi.invariant_factors),
            "pi_order": self.pi.order,
            "cartan": [list(r) for r in self.folded.cartan],
        }


@dataclass(frozen=True)
class GaloisReport:
    components: tuple[ComponentResult, ...]

    @property
    def total_order(self) -> int:
        return prod(c.weyl_order for c in self.components)

    @property
    def structure(self) -> list[str]:
        return [f"W({c.weyl_type})" for c in self.components]

    def to_json(self) -> dict:
        return {
            "components": [c.to_json() for c in self.components],
            "structure": self.structure,
            "total_order": self.total_order,
        }


def component_result(c: ComponentSpec, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> ComponentResult:
    gamma = c.gamma()
    f, bc = fold_component(c)
    W = generate_weyl(RootLattice.from_folded(f), enumeration_cap)
    pi = _bc_fundamental_group(c) if bc else RootLattice.from_folded(f).fundamental_group()
    return ComponentResult(c.name, c.diagram.label, gamma.order, f, bc, W.order, pi)


def compute_galois(spec, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> GaloisReport:
    """Per-component folded Weyl groups and their product.

    ``spec`` is a ContractionSpec or a list of ComponentSpec. Embedded
    components must span pairwise orthogonal sublattices.
    """
    if not isinstance(spec, ContractionSpec):
        spec = ContractionSpec(tuple(spec))
    if spec.ambient is not None:
        check_orthogonal(spec)
    return GaloisReport(tuple(component_result(c, enumeration_cap) for c in spec.components))


# --- ambient realisation ------------------------------------------------------

@dataclass(frozen=True)
class RealizedComponent:
    name: str
    roots: tuple[tuple[int, ...], ...]  # classes reflected in (2E for the BC middle)
    coroots: tuple[tuple[int, ...], ...]  # fiber covectors, with e_j^vee(x) the coroot coefficient
    generators: tuple[tuple[tuple[int, ...], ...], ...]


def _embedded_roots(c: ComponentSpec, amb: BilinearLattice, f: FoldedRootSystem, bc: bool):
    if len(c.divisor_classes) != f.rank:
        raise GaloisError(f"{c.name}: expected {f.rank} divisor classes, got {len(c.divisor_classes)}")
    roots, coroots = [], []
    for v, o in zip(c.divisor_classes, f.orbits):
        middle = bc and o.orbit_type == 2
        roots.append(scaled_reflection_coefficient(amb, v, middle).root)
        coroots.append(coroot_covector(amb, v, scale=2 if middle else 1))
    if c.fiber_classes is not None:
        given = tuple(tuple(int(x) for x in v) for v in c.fiber_classes)
        if given != tuple(coroots):
            raise GaloisError(f"{c.name}: fiber classes {given} do not match -2(e, .)/(e, e) = {tuple(coroots)}")
    return tuple(roots), tuple(coroots)


def check_embedding_shape(c: ComponentSpec, amb: BilinearLattice) -> None:
    """The divisor classes must be independent, negative definite and of the folded shape.

    The Cartan numbers of the classes are compared with the folded Cartan
    matrix up to transposition (a lattice and its dual have transposed
    Cartan matrices), so only the shape is fixed, not the scale.
    """
    f, bc = fold_component(c)
    try:
        sub = SublatticeEmbedding(amb, c.divisor_classes)
    except LatticeError as exc:
        raise GaloisError(f"{c.name}: {exc}") from exc
    if definiteness(sub) != "negative":
        raise GaloisError(f"{c.name}: divisor classes span a {definiteness(sub)} sublattice, expected negative definite")
    roots, _ = _embedded_roots(c, amb, f, bc)
    g = [[amb.pairing(u, v) for v in roots] for u in roots]
    cart = tuple(tuple(2 * g[i][j] / g[j][j] for j in range(len(g))) for i in range(len(g)))
    want = tuple(tuple(Fraction(x) for x in row) for row in f.cartan)
    if cart != want and cart != tuple(zip(*want)):
        shown = [[str(x) for x in row] for row in cart]
        raise GaloisError(f"{c.name}: Cartan numbers {shown} of the classes do not match {f.folded_type}")


def check_orthogonal(spec: ContractionSpec) -> None:
    amb = spec.ambient
    embedded = [c for c in spec.components if c.has_embedding]
    for i, a in enumerate(embedded):
        for b in embedded[i + 1:]:
            for u in a.divisor_classes:
                for v in b.divisor_classes:
                    if amb.pairing(u, v) != 0:
                        raise GaloisError(
                            f"components {a.name!r} and {b.name!r} are not orthogonal: "
                            f"({list(u)}, {list(v)}) = {amb.pairing(u, v)}"
                        )


def realize_component(c: ComponentSpec, amb: BilinearLattice) -> RealizedComponent:
    if not c.has_embedding:
        raise GaloisError(f"{c.name}: no embedding given")
    check_embedding_shape(c, amb)
    f, bc = fold_component(c)
    roots, coroots = _embedded_roots(c, amb, f, bc)
    gens = tuple(bb_reflection(amb, r) for r in roots)
    return RealizedComponent(c.name, roots, coroots, gens)


def realize_on_ambient(spec, amb: BilinearLattice | None = None) -> list[tuple[tuple[int, ...], ...]]:
    """One ambient reflection matrix per folded simple root, component by component."""
    if not isinstance(spec, ContractionSpec):
        spec = ContractionSpec(tuple(spec), amb)
    elif amb is not None and spec.ambient is None:
        spec = ContractionSpec(spec.components, amb, spec.expected)
    amb = spec.ambient
    if not spec.components:
        return []
    if amb is None:
        raise GaloisError("realisation needs an ambient lattice")
    check_orthogonal(spec)
    out = []
    for c in spec.components:
        out.extend(realize_component(c, amb).generators)
    return out


def realized_group(generators, limit: int = DEFAULT_ENUMERATION_CAP):
    """All elements generated by ambient matrices, as an int64 array."""
    if not generators:
        return None
    return matrix_closure(generators, limit=limit)


def unfolded_simple_reflections(c: ComponentSpec):
    """Reflections of the folded lattice in its own simple-root basis."""
    f, _ = fold_component(c)
    return simple_reflections(RootLattice.from_folded(f))


def check_candidate(amb: BilinearLattice, matrix, rc: RealizedComponent, pi: FundamentalGroup | None = None):
    return verify_galois_form(IsometryCandidate(amb, matrix), rc.roots, rc.coroots, pi)
