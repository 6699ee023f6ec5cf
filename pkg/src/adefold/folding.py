"""Folding simply-laced diagrams by groups of diagram automorphisms.

Given ``Gamma`` acting on the simple roots ``f_1..f_r`` of an ADE root
lattice, each orbit ``j`` yields the projection ``e_j`` (the orbit average)
onto the ``Gamma``-invariant subspace.  The folded Cartan matrix uses the
convention

    cartan[i][j] = e_j^vee(e_i) = 2 (e_i, e_j) / (e_j, e_j),

so that folding ``D_4`` by a group of order 3 gives ``[[2, -1], [-3, 2]]``.
Type labels follow Bourbaki: ``B_n`` has one short simple root (the last),
``C_n`` has one long simple root (the last).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from . import intmat
from .dynkin import (
    DiagramAutGroup,
    DiagramError,
    SimplyLacedDiagram,
    automorphism_group,
    build_diagram,
    cartan_matrix,
    is_automorphism,
)
from .jsonio import int_matrix_to_json, rational_matrix_to_json


class NotFiniteType(ValueError):
    """The matrix is not the Cartan matrix of a finite root system."""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        super().__init__(f"not finite type ({check})" + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class OrbitInfo:
    members: frozenset[int]
    orbit_type: int

    @property
    def representative(self) -> int:
        return min(self.members)

    def to_json(self) -> dict:
        return {"members": sorted(self.members), "type": self.orbit_type}


def classify_orbit(d: SimplyLacedDiagram, gamma: DiagramAutGroup, node: int) -> OrbitInfo:
    """The Gamma-orbit of ``node`` and its type (1 or 2).

    Type 2 is the pair of adjacent middle nodes of ``A_{2n}`` under the
    order-2 group; every other orbit consists of pairwise non-adjacent nodes.
    """
    members = gamma.orbit(node)
    r = d.rank
    if d.kind == "A" and r % 2 == 0 and gamma.order == 2 and members == {r // 2, r // 2 + 1}:
        return OrbitInfo(members, 2)
    if any(d.adjacent(a, b) for a in members for b in members if a < b):
        raise DiagramError(f"orbit {sorted(members)} of {d.label} has adjacent nodes")
    return OrbitInfo(members, 1)


def orbits(d: SimplyLacedDiagram, gamma: DiagramAutGroup) -> list[OrbitInfo]:
    """All orbits, sorted by their smallest node."""
    seen: set[int] = set()
    out = []
    for node in d.nodes:
        if node not in seen:
            info = classify_orbit(d, gamma, node)
            seen |= info.members
            out.append(info)
    return out


def _gram_of(vectors, pairing) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(intmat.bilinear(u, pairing, v) for v in vectors) for u in vectors)


def cartan_from_gram(gram) -> tuple[tuple, ...]:
    """Entries 2 (e_i, e_j) / (e_j, e_j); integral for root data."""
    n = len(gram)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = Fraction(2) * gram[i][j] / gram[j][j]
            row.append(int(x) if x.denominator == 1 else x)
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class FoldedRootSystem:
    source: SimplyLacedDiagram
    gamma: DiagramAutGroup
    orbits: tuple[OrbitInfo, ...]
    projected_roots: tuple[tuple[Fraction, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    folded_type: str
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.orbits)

    def closed_form_cartan(self) -> tuple[tuple[int, ...], ...]:
        """Cartan matrix from orbit sums of the simple-root pairing.

        ``cartan[i][j]`` is 2 on the diagonal, otherwise the sum of
        ``(f_k, f_i~)`` over ``f_k`` in orbit ``j`` (doubled for a type-2 orbit).
        """
        c = cartan_matrix(self.source)
        out = []
        for i, oi in enumerate(self.orbits):
            rep = oi.representative
            row = []
            for j, oj in enumerate(self.orbits):
                if i == j:
                    row.append(2)
                    continue
                s = sum(c[k - 1][rep - 1] for k in oj.members)
                row.append(2 * s if oj.orbit_type == 2 else s)
            out.append(tuple(row))
        return tuple(out)

    def has_type2_orbit(self) -> bool:
        return any(o.orbit_type == 2 for o in self.orbits)

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "gamma_order": self.gamma.order,
            "gamma_generators": [list(g) for g in self.gamma.generators],
            "orbits": [o.to_json() for o in self.orbits],
            "projected_roots": rational_matrix_to_json(self.projected_roots),
            "gram": rational_matrix_to_json(self.gram),
            "cartan": int_matrix_to_json(self.cartan),
            "folded_type": self.folded_type,
        }


def _check_gamma(d: SimplyLacedDiagram, gamma: DiagramAutGroup) -> None:
    if gamma.diagram != d:
        raise DiagramError(f"group acts on {gamma.diagram.label}, not on {d.label}")
    for g in gamma.elements:
        if not is_automorphism(d, g):
            raise DiagramError(f"{list(g)} is not an automorphism of {d.label}")


def fold(d: SimplyLacedDiagram, gamma: DiagramAutGroup) -> FoldedRootSystem:
    """Fold ``d`` by ``gamma``; the trivial group gives back ``d`` itself."""
    _check_gamma(d, gamma)
    orbs = tuple(orbits(d, gamma))
    r = d.rank
    roots = []
    for o in orbs:
        w = Fraction(1, len(o.members))
        roots.append(tuple(w if k in o.members else Fraction(0) for k in range(1, r + 1)))
    return _assemble(d, gamma, orbs, tuple(roots))


def _assemble(d, gamma, orbs, roots, label: str | None = None, notes=()) -> FoldedRootSystem:
    gram = _gram_of(roots, cartan_matrix(d))
    cartan_q = cartan_from_gram(gram)
    if any(isinstance(x, Fraction) for row in cartan_q for x in row):
        raise ArithmeticError(f"non-integral folded Cartan matrix {cartan_q}")
    if label is None:
        label = _folded_label(d, gamma, orbs, gram, cartan_q)
    return FoldedRootSystem(d, gamma, orbs, roots, gram, cartan_q, label, tuple(notes))


def _folded_label(d, gamma, orbs, gram, cartan) -> str:
    if gamma.is_trivial():
        return d.label
    if len(orbs) == 1 and orbs[0].orbit_type == 2:
        return "B1"
    label = recognize_type(cartan)
    if label == "B2":
        # rank 2 is symmetric under relabelling; name it by which end is short
        return "B2" if gram[1][1] < gram[0][0] else "C2"
    return label


# --- catalog of finite types -------------------------------------------------

def catalog_gram(label: str) -> tuple[tuple[Fraction, ...], ...]:
    """Gram matrix of the Bourbaki simple roots of a finite irreducible type.

    Long roots have squared length 2.
    """
    fam, n = label[0], int(label[1:])
    h = Fraction(1, 2)
    if fam in "ADE":
        return tuple(tuple(Fraction(x) for x in row) for row in cartan_matrix(build_diagram(fam, n)))
    g = [[Fraction(0)] * n for _ in range(n)]
    if fam == "B":
        if n < 1:
            raise ValueError(label)
        for i in range(n):
            g[i][i] = Fraction(2) if i < n - 1 else Fraction(1)
        for i in range(n - 1):
            g[i][i + 1] = g[i + 1][i] = Fraction(-1)
    elif fam == "C":
        if n < 1:
            raise ValueError(label)
        for i in range(n):
            g[i][i] = Fraction(1) if i < n - 1 else Fraction(2)
        for i in range(n - 1):
            g[i][i + 1] = g[i + 1][i] = -h if i < n - 2 else Fraction(-1)
    elif fam == "F" and n == 4:
        for i, x in enumerate((2, 2, 1, 1)):
            g[i][i] = Fraction(x)
        g[0][1] = g[1][0] = Fraction(-1)
        g[1][2] = g[2][1] = Fraction(-1)
        g[2][3] = g[3][2] = -h
    elif fam == "G" and n == 2:
        g = [[Fraction(2, 3), Fraction(-1)], [Fraction(-1), Fraction(2)]]
    else:
        raise ValueError(f"no finite type {label!r}")
    return tuple(tuple(row) for row in g)


def catalog_cartan(label: str) -> tuple[tuple[int, ...], ...]:
    return cartan_from_gram(catalog_gram(label))


def catalog_labels(max_rank: int = 8) -> list[str]:
    out = [f"A{n}" for n in range(1, max_rank + 1)]
    out += [f"B{n}" for n in range(2, max_rank + 1)]
    out += [f"C{n}" for n in range(3, max_rank + 1)]
    out += [f"D{n}" for n in range(4, max_rank + 1)]
    out += [f"E{n}" for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        out.append("F4")
    if max_rank >= 2:
        out.append("G2")
    return out


def _components(cartan) -> list[list[int]]:
    n = len(cartan)
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def symmetrize(cartan) -> list[list[Fraction]]:
    """A Gram matrix with ``cartan[i][j] = 2 g_ij / g_jj``, longest root length 2.

    Raises NotFiniteType when no such symmetric matrix exists.
    """
    n = len(cartan)
    length: list[Fraction | None] = [None] * n
    for comp in _components(cartan):
        length[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in comp:
                if cartan[i][j] != 0 and length[j] is None:
                    # g_ij = cartan[i][j] g_jj / 2 = cartan[j][i] g_ii / 2
                    length[j] = length[i] * Fraction(cartan[j][i], cartan[i][j])
                    stack.append(j)
        top = max(length[i] for i in comp)
        for i in comp:
            length[i] = 2 * length[i] / top
    gram = [[Fraction(cartan[i][j]) * length[j] / 2 for j in range(n)] for i in range(n)]
    if not intmat.is_symmetric(gram):
        raise NotFiniteType("symmetrizable", "no diagonal rescaling makes the matrix symmetric")
    return gram


def _structural_guess(cartan, comp: list[int], gram) -> str:
    n = len(comp)
    if n == 1:
        return "A1"
    edges = [(i, j) for a, i in enumerate(comp) for j in comp[a + 1:] if cartan[i][j] != 0]
    if len(edges) != n - 1:
        raise NotFiniteType("tree", "the Dynkin graph has a cycle")
    mult = {e: cartan[e[0]][e[1]] * cartan[e[1]][e[0]] for e in edges}
    if any(m not in (1, 2, 3) for m in mult.values()):
        raise NotFiniteType("bond", f"bond products {sorted(set(mult.values()))}")
    deg = {i: sum(1 for e in edges if i in e) for i in comp}
    if 3 in mult.values():
        return "G2"
    if 2 in mult.values():
        if n == 2:
            return "B2"
        if n == 4 and all(deg[i] <= 2 for i in comp):
            (a, b), = [e for e, m in mult.items() if m == 2]
            if deg[a] == 2 and deg[b] == 2:
                return "F4"
        (a, b), = [e for e, m in mult.items() if m == 2]
        end = a if deg[a] == 1 else b
        other = b if end == a else a
        return f"B{n}" if gram[end][end] < gram[other][other] else f"C{n}"
    branch = [i for i in comp if deg[i] == 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1:
        raise NotFiniteType("tree", "more than one branch node")
    arms = sorted(_arm_length(edges, branch[0], nb) for nb in _nbrs(edges, branch[0]))
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    raise NotFiniteType("classification", f"branch arms {arms}")


def _nbrs(edges, i):
    return [b if a == i else a for a, b in edges if i in (a, b)]


def _arm_length(edges, centre, start):
    length, prev, cur = 1, centre, start
    while True:
        nxt = [x for x in _nbrs(edges, cur) if x != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def _isomorphic(a, b) -> bool:
    """True when b equals a up to a simultaneous permutation of rows and columns."""
    n = len(a)
    if len(b) != n:
        return False
    if n <= 6:
        return any(
            all(a[p[i]][p[j]] == b[i][j] for i in range(n) for j in range(n))
            for p in permutations(range(n))
        )
    perm = [-1] * n
    used = [False] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        for c in range(n):
            if used[c] or a[c][c] != b[i][i]:
                continue
            if all(a[c][perm[k]] == b[i][k] and a[perm[k]][c] == b[k][i] for k in range(i)):
                perm[i] = c
                used[c] = True
                if place(i + 1):
                    return True
                used[c] = False
        return False

    return place(0)


def recognize_type(cartan: Sequence[Sequence[int]]) -> str:
    """Finite type of a Cartan matrix, up to relabelling of the simple roots.

    Reducible matrices give labels joined by ``x``, e.g. ``"A1xA1"``.
    Rank-2 double bonds are reported as ``"B2"`` (equal to ``C2``).
    """
    n = len(cartan)
    if n == 0 or any(len(row) != n for row in cartan):
        raise NotFiniteType("square", "matrix is empty or not square")
    for i in range(n):
        if cartan[i][i] != 2:
            raise NotFiniteType("diagonal", f"entry ({i + 1},{i + 1}) is {cartan[i][i]}")
        for j in range(n):
            x = Fraction(cartan[i][j])
            if x.denominator != 1:
                raise NotFiniteType("integral", f"entry ({i + 1},{j + 1}) is {x}")
            if i != j and x > 0:
                raise NotFiniteType("off-diagonal sign", f"entry ({i + 1},{j + 1}) is {x}")
            if i != j and (cartan[i][j] == 0) != (cartan[j][i] == 0):
                raise NotFiniteType("zero pattern", f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1})")
    gram = symmetrize(cartan)
    pos, _, _ = intmat.signature(gram)
    if pos != n:
        raise NotFiniteType("positive definite", "the symmetrization is not positive definite")
    labels = []
    for comp in _components(cartan):
        guess = _structural_guess(cartan, comp, gram)
        sub = [[cartan[i][j] for j in comp] for i in comp]
        if not _isomorphic(catalog_cartan(guess), sub):
            raise NotFiniteType("catalog", f"no catalog match for component guessed as {guess}")
        labels.append(guess)
    return "x".join(sorted(labels, key=lambda s: (s[0], int(s[1:]))))


def fold_table(max_rank: int = 8) -> list[tuple[SimplyLacedDiagram, DiagramAutGroup, FoldedRootSystem]]:
    """Fold every ADE diagram up to ``max_rank`` by every subgroup of its automorphisms."""
    from .dynkin import all_diagrams, all_subgroups

    out = []
    for d in all_diagrams(max_rank):
        for sub in all_subgroups(automorphism_group(d)):
            out.append((d, sub, fold(d, sub)))
    return out
