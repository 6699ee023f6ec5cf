"""Integral lattices with a symmetric pairing.

Lattices are ``Z^n`` with a Gram matrix; sublattices are given by integer
row vectors in ambient coordinates.  Classes of curves (coroots) live in
the dual group ``Hom(Z^n, Z)`` and are written as integer covectors, so
``c(x) = sum(c_i * x_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, prod
from typing import Sequence

from . import intmat

Vector = Sequence[int]


class LatticeError(ValueError):
    pass


class IsotropicVectorError(LatticeError):
    pass


class NonIntegralReflectionError(LatticeError):
    """The reflection does not preserve the lattice; ``witness`` is a basis vector it moves off Z^n."""

    def __init__(self, root, witness, coefficient):
        self.root = tuple(root)
        self.witness = tuple(witness)
        self.coefficient = coefficient
        super().__init__(
            f"reflection in {list(self.root)} is not integral: "
            f"2(x,e)/(e,e) = {coefficient} for x = {list(self.witness)}"
        )


@dataclass(frozen=True)
class BilinearLattice:
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        if not intmat.is_symmetric(g):
            raise LatticeError("Gram matrix is not symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def from_gram(cls, gram) -> "BilinearLattice":
        return cls(tuple(tuple(row) for row in gram))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def signature(self) -> tuple[int, int]:
        p, q, _ = intmat.signature(self.gram)
        return p, q

    @property
    def determinant(self) -> Fraction:
        return intmat.det(self.gram)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row)

    def is_nondegenerate(self) -> bool:
        return self.determinant != 0

    def is_unimodular(self) -> bool:
        return self.is_integral() and abs(self.determinant) == 1

    def pairing(self, u: Vector, v: Vector) -> Fraction:
        return intmat.bilinear(u, self.gram, v)

    def dual_of(self, v: Vector) -> list[Fraction]:
        """The covector x -> (v, x)."""
        return intmat.matvec(self.gram, v)

    def to_json(self) -> dict:
        from .jsonio import int_matrix_to_json, rational_matrix_to_json

        if self.is_integral():
            return {"gram": int_matrix_to_json(self.gram)}
        return {"gram": rational_matrix_to_json(self.gram)}

    @classmethod
    def from_json(cls, data: dict) -> "BilinearLattice":
        from .jsonio import frac_from_json

        return cls.from_gram([[frac_from_json(x) for x in row] for row in data["gram"]])


@dataclass(frozen=True)
class SublatticeEmbedding:
    ambient: BilinearLattice
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b = tuple(tuple(int(x) for x in v) for v in self.basis)
        if any(len(v) != self.ambient.rank for v in b):
            raise LatticeError("basis vectors must have the ambient rank as length")
        if b and intmat.rank(b) != len(b):
            raise LatticeError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", b)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(self.ambient.pairing(u, v) for v in self.basis) for u in self.basis)

    def to_json(self) -> dict:
        return {"basis": [list(v) for v in self.basis]}


def span(ambient: BilinearLattice, vectors) -> SublatticeEmbedding:
    return SublatticeEmbedding(ambient, tuple(tuple(v) for v in vectors))


# --- reflections -------------------------------------------------------------

def coroot_covector(amb: BilinearLattice, e: Vector, scale: int = 1) -> tuple[int, ...]:
    """The covector x -> -2 (e, x) / (scale * (e, e)), which must be integral.

    ``scale = 2`` gives the fiber class of the middle divisor in the folded
    A_{2k} case.
    """
    ee = amb.pairing(e, e)
    if ee == 0:
        raise IsotropicVectorError(f"(e, e) = 0 for e = {list(e)}")
    ge = amb.dual_of(e)
    out = []
    for k, x in enumerate(ge):
        c = Fraction(-2) * x / (scale * ee)
        if c.denominator != 1:
            witness = [int(i == k) for i in range(amb.rank)]
            raise NonIntegralReflectionError(e, witness, -c)
        out.append(int(c))
    return tuple(out)


def bb_reflection(amb: BilinearLattice, e: Vector) -> tuple[tuple[int, ...], ...]:
    """Matrix of x -> x - 2 (x, e)/(e, e) e on the ambient lattice.

    Raises IsotropicVectorError for (e, e) = 0 and NonIntegralReflectionError
    (carrying a witness basis vector) when the result leaves the lattice.
    """
    cov = coroot_covector(amb, e)
    n = amb.rank
    return tuple(tuple(int(i == k) + e[i] * cov[k] for k in range(n)) for i in range(n))


@dataclass(frozen=True)
class ScaledRoot:
    """Class to reflect in, with the factor turning (x, E) into the coroot value."""

    root: tuple[int, ...]
    factor: Fraction

    def coefficient(self, amb: BilinearLattice, x: Vector, E: Vector) -> Fraction:
        """-2 (x, root)/(root, root), expressed through E."""
        return self.factor * amb.pairing(x, E)


def scaled_reflection_coefficient(amb: BilinearLattice, E: Vector, is_middle_A2k: bool) -> ScaledRoot:
    """Root to reflect in for the divisor class E.

    In the middle orbit of a folded A_{2k} the reflection is taken in 2E, and
    the fiber pairing becomes -(x, E)/(E, E) instead of -2(x, E)/(E, E).
    """
    ee = amb.pairing(E, E)
    if ee == 0:
        raise IsotropicVectorError(f"(E, E) = 0 for E = {list(E)}")
    if is_middle_A2k:
        return ScaledRoot(tuple(2 * x for x in E), Fraction(-1) / ee)
    return ScaledRoot(tuple(E), Fraction(-2) / ee)


# --- saturation and complements ----------------------------------------------

def saturation(sub: SublatticeEmbedding) -> SublatticeEmbedding:
    """Smallest sublattice containing ``sub`` with torsion-free quotient."""
    if not sub.basis:
        return sub
    # vectors of Z^n in the rational span: kill the Euclidean annihilator of the span
    ann = intmat.nullspace(sub.basis)
    if not ann:
        return SublatticeEmbedding(sub.ambient, tuple(map(tuple, intmat.identity(sub.ambient.rank))))
    sat = intmat.integer_kernel(ann)
    return SublatticeEmbedding(sub.ambient, tuple(tuple(v) for v in sat))


def saturation_index(sub: SublatticeEmbedding) -> int:
    """|saturation(sub) / sub| from the Smith invariants of the basis matrix.

    Cross-checked against the ratio of Euclidean Gram determinants.
    """
    if not sub.basis:
        return 1
    idx = prod(intmat.invariant_factors(sub.basis))
    sat = saturation(sub).basis
    b = sub.basis
    ratio = intmat.det(intmat.matmul(b, intmat.transpose(b))) / intmat.det(intmat.matmul(sat, intmat.transpose(sat)))
    if ratio != idx * idx:
        raise AssertionError(f"saturation index mismatch: Smith {idx}, determinant ratio {ratio}")
    return idx


def is_saturated(sub: SublatticeEmbedding) -> bool:
    return all(d == 1 for d in intmat.invariant_factors(sub.basis)) if sub.basis else True


def orthogonal_complement(sub: SublatticeEmbedding) -> SublatticeEmbedding:
    """All ambient vectors orthogonal to ``sub``; always saturated."""
    amb = sub.ambient
    if not amb.is_nondegenerate():
        raise LatticeError("orthogonal complement needs a nondegenerate ambient pairing")
    if not sub.basis:
        return SublatticeEmbedding(amb, tuple(map(tuple, intmat.identity(amb.rank))))
    rows = [amb.dual_of(v) for v in sub.basis]
    ker = intmat.integer_kernel(rows, ncols=amb.rank)
    return SublatticeEmbedding(amb, tuple(tuple(v) for v in ker))


def definiteness(sub: SublatticeEmbedding) -> str:
    """One of ``positive``, ``negative``, ``indefinite``, ``degenerate``."""
    p, q, z = intmat.signature(sub.gram)
    if z:
        return "degenerate"
    if q == 0:
        return "positive"
    if p == 0:
        return "negative"
    return "indefinite"


def gram_determinant(sub: SublatticeEmbedding) -> Fraction:
    return intmat.det(sub.gram) if sub.basis else Fraction(1)


@dataclass(frozen=True)
class SplitReport:
    split: bool
    complement: SublatticeEmbedding
    glue_order: int
    det_sub: Fraction
    det_complement: Fraction
    det_ambient: Fraction
    reason: str = ""

    def to_json(self) -> dict:
        from .jsonio import fmt_rational

        return {
            "split": self.split,
            "complement_rank": self.complement.rank,
            "glue_order": self.glue_order,
            "det_sub": fmt_rational(self.det_sub),
            "det_complement": fmt_rational(self.det_complement),
            "det_ambient": fmt_rational(self.det_ambient),
            "reason": self.reason,
        }


def direct_sum_split(amb: BilinearLattice, sub: SublatticeEmbedding) -> SplitReport:
    """Decide whether ``amb = sub + sub^perp`` as an orthogonal direct sum.

    The glue order is the index of ``sub + sub^perp`` in the ambient, found
    from the determinant of the stacked bases and checked against
    |det G_sub * det G_perp / det G_amb| = glue^2.
    """
    if sub.ambient != amb:
        raise LatticeError("sublattice lives in a different ambient")
    comp = orthogonal_complement(sub)
    d_sub, d_comp, d_amb = gram_determinant(sub), gram_determinant(comp), amb.determinant
    if d_sub == 0:
        return SplitReport(False, comp, 0, d_sub, d_comp, d_amb, "sublattice is degenerate")
    if not is_saturated(sub):
        return SplitReport(False, comp, 0, d_sub, d_comp, d_amb, "sublattice is not saturated")
    stacked = list(sub.basis) + list(comp.basis)
    glue = abs(intmat.det(stacked))
    sq = abs(d_sub * d_comp / d_amb)
    if sq != glue * glue:
        raise AssertionError(f"glue order {glue} disagrees with determinant ratio {sq}")
    glue = int(glue)
    reason = "" if glue == 1 else f"glue group of order {glue}"
    return SplitReport(glue == 1, comp, glue, d_sub, d_comp, d_amb, reason)


# --- the flag Lambda^vee < L^vee < L* < Lambda* -------------------------------

@dataclass(frozen=True)
class FlagReport:
    dual_index: int  # |L^vee / Lambda^vee|
    index: int  # |L / Lambda|
    discriminant: int  # |L* / L^vee|
    pi_order: int  # |Lambda* / Lambda^vee|
    expected_pi_order: int | None
    passed: bool

    @property
    def orders(self) -> tuple[int, int, int]:
        return self.dual_index, self.index, self.discriminant

    def to_json(self) -> dict:
        return {
            "dual_index": self.dual_index,
            "index": self.index,
            "discriminant": self.discriminant,
            "product": self.dual_index * self.index * self.discriminant,
            "pi_order": self.pi_order,
            "expected_pi_order": self.expected_pi_order,
            "passed": self.passed,
        }


def _covector_rows(Lambda: SublatticeEmbedding, Lambda_dual) -> tuple[tuple[int, ...], ...]:
    if Lambda_dual is None:
        return tuple(coroot_covector(Lambda.ambient, e) for e in Lambda.basis)
    rows = Lambda_dual.basis if isinstance(Lambda_dual, SublatticeEmbedding) else Lambda_dual
    return tuple(tuple(int(x) for x in r) for r in rows)


def flag_identity_check(Lambda: SublatticeEmbedding, Lambda_dual=None, Pi_order: int | None = None) -> FlagReport:
    """Orders of the three steps of the flag and their product.

    ``Lambda_dual`` holds integer covectors (a SublatticeEmbedding whose
    basis rows are read as covectors, or a plain list); by default the
    coroots -2(e, .)/(e, e) of the basis of ``Lambda``.
    """
    cov = _covector_rows(Lambda, Lambda_dual)
    if len(cov) != Lambda.rank:
        raise LatticeError("Lambda and Lambda_dual must have the same rank")
    n = Lambda.ambient.rank
    dual_sub = SublatticeEmbedding(BilinearLattice(tuple(map(tuple, intmat.identity(n)))), cov)
    a = saturation_index(dual_sub)
    b = saturation_index(Lambda)
    L = saturation(Lambda).basis
    Lv = saturation(dual_sub).basis
    c = abs(intmat.det(intmat.matmul(Lv, intmat.transpose(L))))
    pi = abs(intmat.det(intmat.matmul(cov, intmat.transpose(Lambda.basis))))
    if pi == 0:
        raise LatticeError("coroots pair degenerately with the lattice")
    consistent = a * b * c == pi
    passed = consistent and (Pi_order is None or pi == Pi_order)
    return FlagReport(a, b, int(c), int(pi), Pi_order, passed)


# --- Galois candidates -------------------------------------------------------

@dataclass(frozen=True)
class IsometryCandidate:
    ambient: BilinearLattice
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", intmat.as_int_matrix(self.matrix))
        if len(self.matrix) != self.ambient.rank or any(len(r) != self.ambient.rank for r in self.matrix):
            raise LatticeError("candidate matrix does not match the ambient rank")


@dataclass(frozen=True)
class GaloisFormReport:
    has_form: bool
    coefficients: tuple[tuple[Fraction, ...], ...] | None
    nonnegative_integral: bool
    preserves_gram: bool
    trivial_on_pi: bool
    trivial_on_complement: bool

    @property
    def trivial_on_pi_and_complement(self) -> bool:
        return self.trivial_on_pi and self.trivial_on_complement

    @property
    def passed(self) -> bool:
        return (
            self.has_form
            and self.nonnegative_integral
            and self.preserves_gram
            and self.trivial_on_pi_and_complement
        )

    def to_json(self) -> dict:
        from .jsonio import fmt_rational

        return {
            "has_form": self.has_form,
            "coefficients": None
            if self.coefficients is None
            else [[fmt_rational(x) for x in row] for row in self.coefficients],
            "nonnegative_integral": self.nonnegative_integral,
            "preserves_gram": self.preserves_gram,
            "trivial_on_pi": self.trivial_on_pi,
            "trivial_on_complement": self.trivial_on_complement,
            "passed": self.passed,
        }


def verify_galois_form(cand: IsometryCandidate, e_list, e_dual_list, Pi=None) -> GaloisFormReport:
    """Test a candidate against the shape id + sum a_ij e_i (x) e_j^vee.

    Checks: (i) the candidate minus the identity factors through the e_i
    and e_j^vee; (ii) the a_ij are non-negative integers; (iii) the Gram
    matrix is preserved; (iv) the action on Lambda*/Lambda^vee and on the
    orthogonal complement of the e_i is trivial. ``Pi`` (a FundamentalGroup)
    is optional and only cross-checks the order of Lambda*/Lambda^vee.
    """
    amb = cand.ambient
    n = amb.rank
    E = [tuple(int(x) for x in v) for v in e_list]
    C = [tuple(int(x) for x in c) for c in e_dual_list]
    if len(E) != len(C):
        raise LatticeError("need as many covectors as vectors")
    if any(len(v) != n for v in E + C):
        raise LatticeError("vectors and covectors must have the ambient rank as length")
    k = len(E)
    M = cand.matrix
    D = [[M[i][j] - int(i == j) for j in range(n)] for i in range(n)]

    # (i) solve D = E^T A C with E^T the n x k matrix of columns e_i
    coeffs = None
    has_form = False
    if k == 0:
        has_form = all(x == 0 for row in D for x in row)
        coeffs = ()
    else:
        Et = intmat.transpose(E)
        left = intmat.matmul(intmat.inverse(intmat.matmul(E, Et)), E)  # k x n, left inverse of Et
        right = intmat.matmul(intmat.transpose(C), intmat.inverse(intmat.matmul(C, intmat.transpose(C))))
        A = intmat.matmul(intmat.matmul(left, D), right)
        if intmat.matmul(intmat.matmul(Et, A), C) == [[Fraction(x) for x in row] for row in D]:
            has_form = True
            coeffs = tuple(tuple(Fraction(x) for x in row) for row in A)

    # (ii)
    nonneg = has_form and all(x.denominator == 1 and x >= 0 for row in coeffs for x in row)

    # (iii)
    G = amb.gram
    preserves = intmat.matmul(intmat.matmul(intmat.transpose(M), G), M) == [list(r) for r in G]

    # (iv) complement
    comp = orthogonal_complement(SublatticeEmbedding(amb, tuple(E)))
    trivial_comp = all(tuple(intmat.matvec(M, v)) == v for v in comp.basis)

    # (iv) fundamental group Lambda*/Lambda^vee, read through restriction to Lambda
    trivial_pi = True
    if k:
        CE = intmat.matmul(C, intmat.transpose(E))  # CE[j][i] = e_j^vee(e_i)
        if intmat.det(CE) == 0:
            raise LatticeError("covectors pair degenerately with the vectors")
        if Pi is not None and abs(intmat.det(CE)) != Pi.order:
            raise LatticeError(f"|Lambda*/Lambda^vee| = {abs(intmat.det(CE))} but Pi has order {Pi.order}")
        images = [intmat.matvec(M, e) for e in E]
        # M must preserve Lambda for the action on Pi to make sense
        coords = [intmat.solve_left(E, img) for img in images]
        if any(c is None or any(Fraction(t).denominator != 1 for t in c) for c in coords):
            trivial_pi = False
        else:
            # a weight lam in Lambda* moves to lam o M; the difference must be a restricted coroot
            for m in range(k):
                moved = [c[m] - int(i == m) for i, c in enumerate(coords)]
                y = intmat.solve_left(CE, moved)
                if y is None or any(Fraction(t).denominator != 1 for t in y):
                    trivial_pi = False
                    break

    return GaloisFormReport(has_form, coeffs, nonneg, preserves, trivial_pi, trivial_comp)


# --- small standard lattices -------------------------------------------------

def hyperbolic_plane() -> list[list[int]]:
    return [[0, 1], [1, 0]]


def e8_negative() -> list[list[int]]:
    """E_8(-1): minus the E_8 Cartan matrix."""
    from .dynkin import build_diagram, cartan_matrix

    return [[-x for x in row] for row in cartan_matrix(build_diagram("E", 8))]


def orthogonal_sum(*grams) -> list[list[int]]:
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    at = 0
    for g in grams:
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                out[at + i][at + j] = x
        at += len(g)
    return out


def k3_lattice() -> list[list[int]]:
    """U^3 + E_8(-1)^2: even unimodular of signature (3, 19)."""
    u = hyperbolic_plane()
    return orthogonal_sum(u, u, u, e8_negative(), e8_negative())


def is_perfect_square(x: int) -> bool:
    return x >= 0 and isqrt(x) ** 2 == x
