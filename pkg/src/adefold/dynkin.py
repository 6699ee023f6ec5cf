"""Simply-laced Dynkin diagrams and their automorphism groups.

Node numbering follows Bourbaki:

* ``A_r``: the path 1 - 2 - ... - r.
* ``D_r``: the path 1 - 2 - ... - (r-1) with node r attached to r-2.
  For ``D_4`` the branch node is 2 and the leaves are 1, 3, 4.
* ``E_r``: the path 1 - 3 - 4 - ... - r with node 2 attached to 4.

Permutations of nodes are stored as tuples of 1-based images, so
``p[i - 1]`` is the image of node ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Perm = tuple[int, ...]


class DiagramError(ValueError):
    """Invalid diagram data or a permutation that is not an automorphism."""


def _canonical_edges(kind: str, rank: int) -> frozenset[frozenset[int]]:
    if kind == "A":
        if rank < 1:
            raise DiagramError(f"A_r needs r >= 1, got r={rank}")
        pairs = [(i, i + 1) for i in range(1, rank)]
    elif kind == "D":
        if rank < 4:
            raise DiagramError(f"D_r needs r >= 4, got r={rank}")
        pairs = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    elif kind == "E":
        if rank not in (6, 7, 8):
            raise DiagramError(f"E_r needs r in {{6, 7, 8}}, got r={rank}")
        pairs = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, rank)]
    else:
        raise DiagramError(f"kind must be one of A, D, E; got {kind!r}")
    return frozenset(frozenset(p) for p in pairs)


@dataclass(frozen=True)
class SimplyLacedDiagram:
    kind: str
    rank: int
    edges: frozenset[frozenset[int]] = field(repr=False)

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def neighbours(self, i: int) -> list[int]:
        return sorted(j for j in self.nodes if self.adjacent(i, j))

    def degree(self, i: int) -> int:
        return len(self.neighbours(i))

    def to_json(self) -> dict:
        return {"kind": self.kind, "rank": self.rank}

    @classmethod
    def from_json(cls, data: dict) -> "SimplyLacedDiagram":
        return build_diagram(data["kind"], int(data["rank"]))


def build_diagram(kind: str, rank: int) -> SimplyLacedDiagram:
    """The canonical ADE diagram of the given kind and rank."""
    return SimplyLacedDiagram(kind, rank, _canonical_edges(kind, rank))


def parse_type(label: str) -> tuple[str, int]:
    """Split a label like ``"D4"`` into ``("D", 4)``."""
    label = label.strip().replace("_", "")
    if len(label) < 2 or not label[1:].isdigit():
        raise DiagramError(f"cannot parse type label {label!r}")
    return label[0].upper(), int(label[1:])


def cartan_matrix(d: SimplyLacedDiagram) -> tuple[tuple[int, ...], ...]:
    """Pairing of simple roots: 2 on the diagonal, -1 on edges, 0 elsewhere."""
    return tuple(
        tuple(2 if i == j else (-1 if d.adjacent(i, j) else 0) for j in d.nodes)
        for i in d.nodes
    )


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, image in enumerate(p, start=1):
        out[image - 1] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_automorphism(d: SimplyLacedDiagram, p: Sequence[int]) -> bool:
    if len(p) != d.rank or sorted(p) != list(d.nodes):
        return False
    return all(frozenset(p[i - 1] for i in e) in d.edges for e in d.edges)


def closure(gens: Iterable[Perm], n: int) -> frozenset[Perm]:
    """All products of the generators (the generated group)."""
    gens = [tuple(g) for g in gens]
    seen = {identity_perm(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class DiagramAutGroup:
    diagram: SimplyLacedDiagram
    generators: tuple[Perm, ...]
    elements: frozenset[Perm] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def orbit(self, node: int) -> frozenset[int]:
        return frozenset(g[node - 1] for g in self.elements)

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    def to_json(self) -> dict:
        return {
            "diagram": self.diagram.to_json(),
            "generators": [list(g) for g in self.generators],
            "order": self.order,
        }


def _search_automorphisms(d: SimplyLacedDiagram) -> list[Perm]:
    """Backtracking search over adjacency-preserving bijections."""
    n = d.rank
    nbrs = {i: set(d.neighbours(i)) for i in d.nodes}
    found: list[Perm] = []
    image = [0] * (n + 1)
    used = [False] * (n + 1)

    def extend(i: int) -> None:
        if i > n:
            found.append(tuple(image[1:]))
            return
        for c in d.nodes:
            if used[c] or len(nbrs[c]) != len(nbrs[i]):
                continue
            # already-placed nodes must keep their adjacency to i
            if all((image[j] in nbrs[c]) == (j in nbrs[i]) for j in range(1, i)):
                image[i] = c
                used[c] = True
                extend(i + 1)
                used[c] = False

    extend(1)
    return found


def automorphism_group(d: SimplyLacedDiagram) -> DiagramAutGroup:
    """Full automorphism group of the diagram, found by exhaustive search."""
    elements = frozenset(_search_automorphisms(d))
    identity = identity_perm(d.rank)
    gens = tuple(sorted(g for g in elements if g != identity))
    # a minimal generating set is enough for display; keep the smallest prefix that generates
    minimal: list[Perm] = []
    for g in gens:
        if closure(minimal, d.rank) == elements:
            break
        if g not in closure(minimal, d.rank):
            minimal.append(g)
    return DiagramAutGroup(d, tuple(minimal), elements)


def subgroup_from_generators(g: DiagramAutGroup, gens: Iterable[Sequence[int]]) -> DiagramAutGroup:
    """The subgroup of ``g`` generated by ``gens``."""
    d = g.diagram
    checked = []
    for p in gens:
        p = tuple(int(x) for x in p)
        if not is_automorphism(d, p):
            raise DiagramError(f"{list(p)} is not an automorphism of {d.label}")
        if p not in g.elements:
            raise DiagramError(f"{list(p)} is not an element of the given group")
        checked.append(p)
    return DiagramAutGroup(d, tuple(checked), closure(checked, d.rank))


def all_subgroups(g: DiagramAutGroup) -> list[DiagramAutGroup]:
    """Every subgroup of a (small) automorphism group.

    Subgroups of the groups arising here (orders 1, 2, 6) need at most two
    generators, so closures of all pairs cover them.
    """
    elements = g.sorted_elements()
    found: dict[frozenset[Perm], DiagramAutGroup] = {}
    candidates = [()] + [(a,) for a in elements] + list(combinations(elements, 2))
    for gens in candidates:
        sub = subgroup_from_generators(g, gens)
        found.setdefault(sub.elements, sub)
    return sorted(found.values(), key=lambda s: (s.order, sorted(s.elements)))


def all_diagrams(max_rank: int = 8) -> list[SimplyLacedDiagram]:
    out = [build_diagram("A", r) for r in range(1, max_rank + 1)]
    out += [build_diagram("D", r) for r in range(4, max_rank + 1)]
    out += [build_diagram("E", r) for r in (6, 7, 8) if r <= max_rank]
    return out
