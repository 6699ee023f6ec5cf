"""Self-checks run on contraction and lattice documents.

Each check is a named pass/fail line with a short detail; a document
verifies when every check passes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .galois import (
    ContractionSpec,
    check_embedding_shape,
    check_orthogonal,
    component_result,
    realize_component,
)
from .lattice import (
    BilinearLattice,
    IsometryCandidate,
    SublatticeEmbedding,
    definiteness,
    direct_sum_split,
    flag_identity_check,
    verify_galois_form,
)
from .rootsys import DEFAULT_ENUMERATION_CAP, classical_weyl_order, matrix_closure

DEFAULT_WORDS = 50


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f": {self.detail}" if self.detail else "")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def random_words(generators, count: int, rng: random.Random, max_length: int = 12):
    """Products of ``count`` random words in the generators, as int64 arrays."""
    gens = [np.array(g, dtype=np.int64) for g in generators]
    n = gens[0].shape[0]
    for _ in range(count):
        m = np.eye(n, dtype=np.int64)
        for _ in range(rng.randint(0, max_length)):
            m = gens[rng.randrange(len(gens))] @ m
        yield m


def _split_detail(rep) -> str:
    glue = f"glue order {rep.glue_order}" if rep.glue_order else rep.reason
    return f"complement rank {rep.complement.rank}, {glue}"


def _flag_check(name, sub, coroots, pi_order, expected):
    rep = flag_identity_check(sub, coroots, pi_order)
    a, b, c = rep.orders
    ok = rep.passed and (expected is None or list(rep.orders) == list(expected))
    detail = f"{a}·{b}·{c} = {rep.pi_order}, |Pi| = {pi_order}"
    if expected is not None:
        detail += f", expected orders {tuple(expected)}"
    return Check(f"{name}: flag identity", ok, detail)


def verify_contraction(
    spec: ContractionSpec,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    seed: int = 0,
    words: int = DEFAULT_WORDS,
) -> list[Check]:
    rng = random.Random(seed)
    checks: list[Check] = []
    results = [component_result(c, enumeration_cap) for c in spec.components]
    for c, r in zip(spec.components, results):
        want = classical_weyl_order(r.weyl_type)
        checks.append(Check(f"{c.name}: Weyl order", r.weyl_order == want, f"|W({r.weyl_type})| = {r.weyl_order}, classical {want}"))
        exp = c.expected
        if "folded_type" in exp:
            checks.append(Check(f"{c.name}: folded type", exp["folded_type"] == r.folded_type, f"{r.folded_type}, expected {exp['folded_type']}"))
        if "weyl_order" in exp:
            checks.append(Check(f"{c.name}: expected Weyl order", exp["weyl_order"] == r.weyl_order, f"{r.weyl_order}, expected {exp['weyl_order']}"))
        if "pi_order" in exp:
            checks.append(Check(f"{c.name}: |Pi|", exp["pi_order"] == r.pi.order, f"{r.pi.order}, expected {exp['pi_order']}"))
    total = 1
    for r in results:
        total *= r.weyl_order
    if "total_order" in spec.expected:
        checks.append(Check("total order", total == spec.expected["total_order"], f"{total}, expected {spec.expected['total_order']}"))

    amb = spec.ambient
    embedded = [(c, r) for c, r in zip(spec.components, results) if c.has_embedding]
    if not embedded:
        return checks
    if amb is None:
        return checks + [Check("ambient", False, "embeddings given without an ambient lattice")]
    check_orthogonal(spec)
    checks.append(Check("components pairwise orthogonal", True))
    all_gens = []
    realized = []
    for c, r in embedded:
        check_embedding_shape(c, amb)
        rc = realize_component(c, amb)
        realized.append(rc)
        all_gens.extend(rc.generators)
        checks.append(Check(f"{c.name}: integral reflections", True, f"{len(rc.generators)} generator" + ("s" if len(rc.generators) != 1 else "")))
        pi = None if r.bc else r.pi
        if r.weyl_order <= enumeration_cap:
            elements = matrix_closure(rc.generators, limit=enumeration_cap)
            checks.append(Check(f"{c.name}: realized group order", len(elements) == r.weyl_order, f"{len(elements)}, expected {r.weyl_order}"))
            sample, what = elements, "all"
        else:
            sample, what = list(random_words(rc.generators, words, rng)), f"{words} random"
        bad = [
            i for i, m in enumerate(sample)
            if not verify_galois_form(IsometryCandidate(amb, m.tolist()), rc.roots, rc.coroots, pi).passed
        ]
        checks.append(Check(f"{c.name}: Galois form", not bad, f"{what} {len(sample)} elements, {len(bad)} rejected"))
        sub = SublatticeEmbedding(amb, c.divisor_classes)
        checks.append(_flag_check(c.name, sub, rc.coroots, r.pi.order, c.expected.get("flag_orders")))
        if "split" in c.expected:
            rep = direct_sum_split(amb, sub)
            detail = _split_detail(rep)
            checks.append(Check(f"{c.name}: orthogonal split", rep.split == c.expected["split"], detail))
    if len(realized) > 1:
        commute = all(
            np.array_equal(np.array(a) @ np.array(b), np.array(b) @ np.array(a))
            for i, x in enumerate(realized)
            for y in realized[i + 1:]
            for a in x.generators
            for b in y.generators
        )
        checks.append(Check("generators of distinct components commute", commute))
    if total <= enumeration_cap and len(embedded) == len(spec.components):
        n = len(matrix_closure(all_gens, limit=enumeration_cap))
        checks.append(Check("realized product order", n == total, f"{n}, expected {total}"))
    return checks


def verify_lattice(doc: dict) -> list[Check]:
    amb = BilinearLattice.from_gram(doc["ambient"]["gram"])
    sub = SublatticeEmbedding(amb, tuple(tuple(v) for v in doc["sublattice"]["basis"]))
    coroots = doc["sublattice"].get("coroots")
    exp = doc.get("expected", {})
    checks = []
    kind = definiteness(sub)
    if "definiteness" in exp:
        checks.append(Check("definiteness", kind == exp["definiteness"], f"{kind}, expected {exp['definiteness']}"))
    rep = flag_identity_check(sub, coroots, exp.get("pi_order"))
    a, b, c = rep.orders
    ok = rep.passed and ("flag_orders" not in exp or list(rep.orders) == list(exp["flag_orders"]))
    checks.append(Check("flag identity", ok, f"{a}·{b}·{c} = {rep.pi_order}"))
    if "split" in exp:
        s = direct_sum_split(amb, sub)
        checks.append(Check("orthogonal split", s.split == exp["split"], _split_detail(s)))
    return checks
