"""Weyl groups, root sets and fundamental groups of root lattices.

Vectors are written in the basis of simple roots ``e_1..e_n`` and matrices
act on column vectors, so every Weyl group element is an integer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

import numpy as np

from . import intmat
from .folding import FoldedRootSystem, catalog_gram, symmetrize

DEFAULT_ENUMERATION_CAP = 100_000
_INT_BOUND = 1 << 40


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class RootLattice:
    """Span of simple roots with a rational Gram matrix.

    ``sign`` records whether the pairing is positive definite (+1, folded
    systems) or negative definite (-1, geometric lattices).
    """

    gram: tuple[tuple[Fraction, ...], ...]
    coroot_matrix: tuple[tuple[int, ...], ...]
    sign: int = 1

    @property
    def rank(self) -> int:
        return len(self.gram)

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence]) -> "RootLattice":
        g = tuple(tuple(Fraction(x) for x in row) for row in gram)
        if not intmat.is_symmetric(g):
            raise RootSystemError("Gram matrix is not symmetric")
        n = len(g)
        if any(g[i][i] == 0 for i in range(n)):
            raise RootSystemError("a simple root is isotropic")
        co = []
        for j in range(n):
            row = []
            for i in range(n):
                x = 2 * g[j][i] / g[j][j]
                if x.denominator != 1:
                    raise RootSystemError(f"coroot pairing e_{j + 1}^vee(e_{i + 1}) = {x} is not integral")
                row.append(int(x))
            co.append(tuple(row))
        pos, neg, _ = intmat.signature(g)
        sign = 1 if pos == n else (-1 if neg == n else 0)
        return cls(g, tuple(co), sign)

    @classmethod
    def from_cartan(cls, cartan: Sequence[Sequence[int]]) -> "RootLattice":
        """Lattice whose Cartan matrix (``cartan[i][j] = e_j^vee(e_i)``) is given."""
        return cls.from_gram(symmetrize(cartan))

    @classmethod
    def from_type(cls, label: str) -> "RootLattice":
        return cls.from_gram(catalog_gram(label))

    @classmethod
    def from_folded(cls, f: FoldedRootSystem) -> "RootLattice":
        return cls.from_gram(f.gram)

    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """``cartan[i][j] = e_j^vee(e_i)``, the transpose of ``coroot_matrix``."""
        return tuple(zip(*self.coroot_matrix))

    def pairing(self, u: Sequence, v: Sequence) -> Fraction:
        return intmat.bilinear(u, self.gram, v)

    def dual(self, sign: int = -1) -> "RootLattice":
        """Lattice of the coroots ``sign * 2 e_i / (e_i, e_i)``.

        The sign drops out of the Gram matrix; dualising twice gives back
        the original Gram matrix.
        """
        g = self.gram
        n = self.rank
        dual_gram = [[sign * sign * 4 * g[i][j] / (g[i][i] * g[j][j]) for j in range(n)] for i in range(n)]
        return RootLattice.from_gram(dual_gram)

    def fundamental_group(self) -> "FundamentalGroup":
        """Weight lattice modulo coroot lattice, from the coroot pairings."""
        return _fundamental_group_from_pairing(self.coroot_matrix)

    def to_json(self) -> dict:
        from .jsonio import int_matrix_to_json, rational_matrix_to_json

        return {
            "gram": rational_matrix_to_json(self.gram),
            "coroot_matrix": int_matrix_to_json(self.coroot_matrix),
            "sign": self.sign,
        }


def simple_reflection(L: RootLattice, j: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of x -> x - e_j^vee(x) e_j in the simple-root basis (``j`` is 1-based)."""
    if not 1 <= j <= L.rank:
        raise IndexError(f"simple root index {j} out of range 1..{L.rank}")
    n = L.rank
    m = intmat.identity(n)
    for i in range(n):
        m[j - 1][i] -= L.coroot_matrix[j - 1][i]
    return tuple(tuple(row) for row in m)


def simple_reflections(L: RootLattice) -> list[tuple[tuple[int, ...], ...]]:
    return [simple_reflection(L, j) for j in range(1, L.rank + 1)]


@dataclass(frozen=True)
class WeylGroup:
    lattice: RootLattice
    generators: tuple[tuple[tuple[int, ...], ...], ...]
    order: int
    elements: np.ndarray | None = field(default=None, compare=False, repr=False)

    @property
    def enumerated(self) -> bool:
        return self.elements is not None

    def element_matrices(self) -> list[list[list[int]]]:
        if self.elements is None:
            raise RootSystemError("elements were not enumerated (order above the cap)")
        return self.elements.tolist()

    def to_json(self, include_elements: bool = False) -> dict:
        doc = {
            "rank": self.lattice.rank,
            "order": self.order,
            "generators": [[list(r) for r in g] for g in self.generators],
        }
        if include_elements:
            doc["elements"] = self.element_matrices()
        return doc


def matrix_closure(generators: Sequence[Sequence[Sequence[int]]], limit: int | None = None) -> np.ndarray:
    """Breadth-first closure of integer matrices under left multiplication.

    Returns every element of the generated group, identity first, in BFS
    order with each level sorted. Raises RootSystemError past ``limit``.
    """
    gens = np.array(generators, dtype=np.int64)
    if gens.ndim != 3:
        raise RootSystemError("generators must be square matrices")
    n = gens.shape[1]
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes()}
    levels = [ident[None]]
    frontier = ident[None]
    total = 1
    while len(frontier):
        prods = np.einsum("gij,njk->gnik", gens, frontier).reshape(-1, n, n)
        if np.abs(prods).max() > _INT_BOUND:
            raise OverflowError("matrix entries grew too large; the group is probably infinite")
        flat = np.unique(prods.reshape(len(prods), -1), axis=0)
        fresh = []
        for row in flat:
            key = row.reshape(n, n).tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(row)
        total += len(fresh)
        if limit is not None and total > limit:
            raise RootSystemError(f"closure exceeded {limit} elements")
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, n, n)
        if len(frontier):
            levels.append(frontier)
    return np.concatenate(levels)


def _weight_orbit_size(coroot, subset: tuple[int, ...], k: int) -> int:
    """Size of the W_S-orbit of the fundamental weight dual to e_k.

    Weights are stored by their pairings c_i = e_i^vee(lambda), i in S.
    """
    pos = {s: a for a, s in enumerate(subset)}
    start = tuple(int(s == k) for s in subset)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for j in subset:
                cj = c[pos[j]]
                if cj == 0:
                    continue
                d = tuple(c[pos[i]] - cj * coroot[i][j] for i in subset)
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    return len(seen)


def stabilizer_chain_order(L: RootLattice) -> int:
    """|W| as a product of orbit sizes of fundamental weights.

    The stabilizer of a dominant fundamental weight is the parabolic
    subgroup on the remaining simple roots, so
    |W_S| = |W_S . omega_k| * |W_{S - k}|, applied recursively.
    """
    co = L.coroot_matrix
    memo: dict[tuple[int, ...], int] = {(): 1}

    def order(subset: tuple[int, ...]) -> int:
        if subset in memo:
            return memo[subset]
        # leaves of the sub-diagram have the smallest orbits
        leaves = [k for k in subset if sum(1 for j in subset if j != k and co[k][j]) <= 1]
        k = min(leaves, key=lambda x: _weight_orbit_size(co, subset, x))
        rest = tuple(s for s in subset if s != k)
        memo[subset] = _weight_orbit_size(co, subset, k) * order(rest)
        return memo[subset]

    return order(tuple(range(L.rank)))


def generate_weyl(L: RootLattice, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> WeylGroup:
    """Weyl group generated by the simple reflections of ``L``.

    The order always comes from the stabilizer chain; when it is at most
    ``enumeration_cap`` the elements are also enumerated by closure and the
    two counts must agree.
    """
    if L.sign == 0:
        raise RootSystemError("pairing is not definite; the reflection group may be infinite")
    gens = tuple(simple_reflections(L))
    order = stabilizer_chain_order(L)
    elements = None
    if order <= enumeration_cap:
        elements = matrix_closure(gens, limit=enumeration_cap)
        if len(elements) != order:
            raise AssertionError(f"closure found {len(elements)} elements, stabilizer chain {order}")
    return WeylGroup(L, gens, order, elements)


def classical_weyl_order(label: str) -> int:
    """Textbook order of the Weyl group of an irreducible finite type."""
    fam, n = label[0], int(label[1:])
    if fam == "A":
        return factorial(n + 1)
    if fam in "BC":
        return 2**n * factorial(n)
    if fam == "D":
        return 2 ** (n - 1) * factorial(n)
    return {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}[label]


def braid_order(L: RootLattice, i: int, j: int) -> int:
    """Order of s_i s_j (1-based), by repeated multiplication."""
    a = np.array(simple_reflection(L, i), dtype=np.int64)
    b = np.array(simple_reflection(L, j), dtype=np.int64)
    ab = a @ b
    cur = ab.copy()
    ident = np.eye(L.rank, dtype=np.int64)
    for m in range(1, 13):
        if np.array_equal(cur, ident):
            return m
        cur = cur @ ab
    raise RootSystemError(f"s_{i} s_{j} has order > 12")


def expected_braid_order(cartan_ij: int, cartan_ji: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[cartan_ij * cartan_ji]


# --- roots -------------------------------------------------------------------

def _direction(v: Sequence[int]) -> tuple[int, ...]:
    p = intmat.primitive(v)
    first = next(x for x in p if x)
    return p if first > 0 else tuple(-x for x in p)


@dataclass(frozen=True)
class RootSet:
    roots: tuple[tuple[int, ...], ...]
    is_reduced: bool

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, v) -> bool:
        return tuple(v) in set(self.roots)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]]) -> "RootSet":
        roots = tuple(sorted({tuple(int(x) for x in v) for v in vectors}))
        return cls(roots, check_reduced(roots))

    def to_json(self) -> dict:
        return {"count": len(self.roots), "is_reduced": self.is_reduced, "roots": [list(r) for r in self.roots]}


def check_reduced(roots: Iterable[Sequence[int]]) -> bool:
    """True iff the only multiples of a root in the set are +-1 times it."""
    by_dir: dict[tuple[int, ...], set] = {}
    for r in roots:
        by_dir.setdefault(_direction(r), set()).add(tuple(r))
    return all(len(v) <= 2 for v in by_dir.values())


def enumerate_roots(L: RootLattice, W: WeylGroup, seeds: Iterable[Sequence[int]] | None = None) -> RootSet:
    """Union of the W-orbits of the seeds (the simple roots by default)."""
    n = L.rank
    if seeds is None:
        seeds = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    gens = [np.array(g, dtype=np.int64) for g in W.generators]
    seen: set[tuple[int, ...]] = set()
    frontier = [tuple(int(x) for x in s) for s in seeds]
    seen.update(frontier)
    while frontier:
        nxt = []
        for v in frontier:
            vec = np.array(v, dtype=np.int64)
            for g in gens:
                w = tuple(int(x) for x in g @ vec)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return RootSet.from_vectors(seen)


# --- fundamental group -------------------------------------------------------

@dataclass(frozen=True)
class FundamentalGroup:
    """Finite abelian group Lambda* / Lambda^vee given by invariant factors.

    ``_transform`` maps an element of Lambda* (written through its integer
    pairings with the basis of Lambda) to Smith coordinates.
    """

    invariant_factors: tuple[int, ...]
    _transform: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)
    _diag: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return self.order == 1

    def class_of(self, pairings: Sequence[int]) -> tuple[int, ...]:
        """Class in the quotient of the functional with pairings ``z_j = <x, e_j>``."""
        z = [int(Fraction(x)) for x in pairings]
        zv = [sum(z[i] * self._transform[i][j] for i in range(len(z))) for j in range(len(self._diag))]
        return tuple(zv[j] % d for j, d in enumerate(self._diag) if d > 1)

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "order": self.order}


def _fundamental_group_from_pairing(m: Sequence[Sequence]) -> FundamentalGroup:
    m = intmat.as_int_matrix(m)
    if intmat.det(m) == 0:
        raise RootSystemError("pairing between the lattice and its dual is degenerate")
    diag, _, V = intmat.smith_normal_form(m)
    factors = tuple(d for d in diag if d > 1)
    return FundamentalGroup(factors, tuple(tuple(r) for r in V), tuple(diag))


def fundamental_group(
    Lambda: Sequence[Sequence], Lambda_dual: Sequence[Sequence], pairing: Sequence[Sequence]
) -> FundamentalGroup:
    """Invariant factors of Lambda*/Lambda^vee.

    ``Lambda`` rows are a basis of the lattice, ``Lambda_dual`` rows a basis
    of the coroot lattice, and ``pairing`` the matrix P with
    ``<w, v> = w^T P v``. The pairings ``<e_i^vee, e_j>`` must be integers.
    """
    m = intmat.matmul(intmat.matmul(Lambda_dual, pairing), intmat.transpose(Lambda))
    for row in m:
        for x in row:
            if Fraction(x).denominator != 1:
                raise RootSystemError(f"pairing between coroots and roots is not integral ({x})")
    return _fundamental_group_from_pairing(m)


FUNDAMENTAL_GROUP_TABLE = {
    "E6": (3,),
    "E7": (2,),
    "E8": (),
    "F4": (),
    "G2": (),
}


def expected_fundamental_group(label: str) -> tuple[int, ...]:
    """Invariant factors of the fundamental group, from the classification."""
    fam, n = label[0], int(label[1:])
    if fam == "A":
        return (n + 1,) if n >= 1 else ()
    if fam in "BC":
        return (2,)
    if fam == "D":
        return (4,) if n % 2 else (2, 2)
    return FUNDAMENTAL_GROUP_TABLE[label]
