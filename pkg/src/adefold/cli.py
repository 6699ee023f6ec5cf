"""Command-line front end.

Verbs: ``fold``, ``weyl``, ``roots`` (driven by ``--type`` and ``--gamma``)
and ``lattice``, ``galois``, ``verify`` (driven by a JSON document given as
a path or inline). Exit codes: 0 success, 1 a verification failed,
2 unreadable input, 3 schema violation, 4 mathematical precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import jsonschema

from .dynkin import DiagramError, automorphism_group, build_diagram, parse_type, subgroup_from_generators
from .folding import NotFiniteType, catalog_labels, fold
from .galois import ContractionSpec, GaloisError, compute_galois
from .jsonio import dumps, fmt_rational
from .lattice import (
    BilinearLattice,
    LatticeError,
    SublatticeEmbedding,
    definiteness,
    direct_sum_split,
    flag_identity_check,
    saturation_index,
)
from .rootsys import (
    DEFAULT_ENUMERATION_CAP,
    RootLattice,
    RootSystemError,
    classical_weyl_order,
    enumerate_roots,
    generate_weyl,
)
from .schemas import CONTRACTION_SCHEMA, LATTICE_SCHEMA, kind_of, validate
from .verify import DEFAULT_WORDS, verify_contraction, verify_lattice

EXIT_OK, EXIT_FAILED, EXIT_UNREADABLE, EXIT_SCHEMA, EXIT_MATH = 0, 1, 2, 3, 4

MATH_ERRORS = (DiagramError, NotFiniteType, LatticeError, RootSystemError, GaloisError, ArithmeticError)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


# --- input -------------------------------------------------------------------

def load_document(arg: str) -> dict:
    """Parse inline JSON or read a file; ``examples/NAME.json`` falls back to the bundled copy."""
    text = arg.strip()
    if not text.startswith("{"):
        path = Path(arg)
        try:
            if path.exists():
                text = path.read_text()
            elif path.parent.name == "examples":
                text = resources.files(__package__).joinpath("examples", path.name).read_text()
            else:
                raise FileNotFoundError(arg)
        except (OSError, UnicodeDecodeError) as exc:
            raise CliError(EXIT_UNREADABLE, f"cannot read {arg}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_UNREADABLE, f"invalid JSON in {arg if len(arg) < 60 else 'input'}: {exc}") from exc


def _schema_checked(doc, schema) -> dict:
    try:
        validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "document"
        raise CliError(EXIT_SCHEMA, f"schema violation at {where}: {exc.message}") from exc
    return doc


def _gamma(d, text: str):
    full = automorphism_group(d)
    if text == "full":
        return full
    if text == "trivial":
        return subgroup_from_generators(full, [])
    try:
        gens = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_SCHEMA, f"--gamma must be full, trivial or a JSON list of permutations: {exc}") from exc
    if not (isinstance(gens, list) and all(isinstance(g, list) and all(isinstance(x, int) for x in g) for g in gens)):
        raise CliError(EXIT_SCHEMA, "--gamma must be a JSON list of permutations such as [[3,2,1]]")
    return subgroup_from_generators(full, gens)


def _type_label(text: str) -> str:
    try:
        kind, rank = parse_type(text)
    except DiagramError as exc:
        raise CliError(EXIT_SCHEMA, str(exc)) from exc
    label = f"{kind}{rank}"
    if label not in catalog_labels(max(rank, 2)) and label not in ("B1", "C1", "C2"):
        raise CliError(EXIT_SCHEMA, f"{label} is not a finite irreducible type")
    return label


def _lattice_for(args):
    """Root lattice named by --type, folded by --gamma when given."""
    label = _type_label(args.type)
    if args.gamma is None:
        return label, RootLattice.from_type(label)
    if label[0] not in "ADE":
        raise CliError(EXIT_SCHEMA, "--gamma needs a simply-laced --type")
    d = build_diagram(label[0], int(label[1:]))
    f = fold(d, _gamma(d, args.gamma))
    return f.folded_type, RootLattice.from_folded(f)


# --- rendering ---------------------------------------------------------------

def _matrix_lines(m, indent: str = "  ") -> list[str]:
    cells = [[fmt_rational(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return [indent + "[" + ", ".join(c.rjust(width) for c in row) + "]" for row in cells]


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.output == "json":
        sys.stdout.write(dumps(doc))
    else:
        sys.stdout.write("\n".join(lines) + "\n")


# --- verbs -------------------------------------------------------------------

def cmd_fold(args) -> int:
    label = _type_label(args.type)
    if label[0] not in "ADE":
        raise CliError(EXIT_SCHEMA, "fold needs a simply-laced --type")
    d = build_diagram(label[0], int(label[1:]))
    f = fold(d, _gamma(d, args.gamma or "full"))
    lines = [f"source: {d.label}    |Gamma| = {f.gamma.order}"]
    for i, o in enumerate(f.orbits, 1):
        lines.append(f"  orbit {i}: nodes {sorted(o.members)}  (type {o.orbit_type})")
    lines.append("projected roots:")
    lines += _matrix_lines(f.projected_roots)
    lines.append("gram:")
    lines += _matrix_lines(f.gram)
    lines.append("cartan:")
    lines += _matrix_lines(f.cartan)
    lines.append(f"type: {f.folded_type}")
    _emit(args, f.to_json(), lines)
    return EXIT_OK


def cmd_weyl(args) -> int:
    label, L = _lattice_for(args)
    W = generate_weyl(L, args.cap)
    classical = classical_weyl_order(label) if "x" not in label else None
    doc = {
        "type": label,
        "order": W.order,
        "classical_order": classical,
        "enumerated": W.enumerated,
        "generators": [[list(r) for r in g] for g in W.generators],
    }
    lines = [f"type: {label}", f"|W| = {W.order}" + ("" if classical is None else f"  (classical {classical})")]
    lines.append("closure: " + ("enumerated, orders agree" if W.enumerated else f"skipped, order above cap {args.cap}"))
    for j, g in enumerate(W.generators, 1):
        lines.append(f"s_{j}:")
        lines += _matrix_lines(g, "    ")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_roots(args) -> int:
    label, L = _lattice_for(args)
    W = generate_weyl(L, args.cap)
    R = enumerate_roots(L, W)
    doc = {"type": label, **R.to_json()}
    lines = [f"type: {label}", f"roots: {len(R)}  reduced: {R.is_reduced}"]
    lines += ["  " + " ".join(f"{x:>2}" for x in r) for r in R.roots]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_lattice(args) -> int:
    doc = _schema_checked(load_document(args.input), LATTICE_SCHEMA)
    amb = BilinearLattice.from_gram(doc["ambient"]["gram"])
    sub = SublatticeEmbedding(amb, tuple(tuple(v) for v in doc["sublattice"]["basis"]))
    p, q = amb.signature
    split = direct_sum_split(amb, sub) if amb.is_nondegenerate() else None
    out = {
        "ambient": {"rank": amb.rank, "signature": [p, q], "determinant": fmt_rational(amb.determinant)},
        "sublattice": {
            "rank": sub.rank,
            "gram": [[fmt_rational(x) for x in row] for row in sub.gram],
            "definiteness": definiteness(sub),
            "saturation_index": saturation_index(sub),
        },
    }
    lines = [
        f"ambient: rank {amb.rank}, signature ({p}, {q}), det {fmt_rational(amb.determinant)}",
        f"sublattice: rank {sub.rank}, {definiteness(sub)}, saturation index {saturation_index(sub)}",
        "gram:",
        *_matrix_lines(sub.gram),
    ]
    if split is not None:
        out["split"] = split.to_json()
        why = f"glue order {split.glue_order}" if split.glue_order else split.reason
        lines.append(f"complement: rank {split.complement.rank}; split {split.split}, {why}")
    try:
        flag = flag_identity_check(sub, doc["sublattice"].get("coroots"))
    except LatticeError as exc:
        out["flag"] = None
        lines.append(f"flag: not available ({exc})")
    else:
        out["flag"] = flag.to_json()
        a, b, c = flag.orders
        lines.append(f"flag identity: {a}·{b}·{c} = {flag.pi_order}")
    _emit(args, out, lines)
    return EXIT_OK


def cmd_galois(args) -> int:
    doc = _schema_checked(load_document(args.input), CONTRACTION_SCHEMA)
    spec = ContractionSpec.from_json(doc)
    rep = compute_galois(spec, args.cap)
    lines = [f"components: {len(rep.components)}"]
    for c in rep.components:
        lines.append(
            f"  {c.name}: {c.source_type}, |Gamma| = {c.gamma_order} -> {c.folded_type}; "
            f"|W| = {c.weyl_order}, |Pi| = {c.pi.order}"
        )
    lines.append("G = " + (" x ".join(rep.structure) or "1"))
    lines.append(f"|G| = {rep.total_order}")
    _emit(args, rep.to_json(), lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = load_document(args.input)
    try:
        kind = kind_of(doc)
    except jsonschema.ValidationError as exc:
        raise CliError(EXIT_SCHEMA, f"schema violation: {exc.message}") from exc
    if kind == "contraction":
        spec = ContractionSpec.from_json(_schema_checked(doc, CONTRACTION_SCHEMA))
        checks = verify_contraction(spec, args.cap, args.seed, args.words)
    else:
        checks = verify_lattice(_schema_checked(doc, LATTICE_SCHEMA))
    ok = all(c.passed for c in checks)
    lines = [c.line() for c in checks] + ["PASS" if ok else "FAIL"]
    _emit(args, {"checks": [c.to_json() for c in checks], "passed": ok}, lines)
    return EXIT_OK if ok else EXIT_FAILED


# --- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adefold", description="Folded Dynkin diagrams, Weyl groups and lattices.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("table", "json"), default="table")
    common.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP, help="largest group to enumerate")
    common.add_argument("--seed", type=int, default=0, help="seed for random words")
    sub = parser.add_subparsers(dest="verb", required=True)

    for name, fn, helptext in (
        ("fold", cmd_fold, "fold a simply-laced diagram"),
        ("weyl", cmd_weyl, "order and generators of a Weyl group"),
        ("roots", cmd_roots, "enumerate the roots"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--type", required=True, help="type label such as D4 or G2")
        p.add_argument("--gamma", default=None, help="full, trivial, or JSON generators like [[3,2,1]]")
        p.set_defaults(func=fn)

    for name, fn, helptext in (
        ("lattice", cmd_lattice, "invariants of a sublattice"),
        ("galois", cmd_galois, "Galois group of a contraction"),
        ("verify", cmd_verify, "run the self-checks on a document"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input", help="path to a JSON file, or inline JSON")
        if name == "verify":
            p.add_argument("--words", type=int, default=DEFAULT_WORDS, help="random words per group above the cap")
        p.set_defaults(func=fn)
    return parser


def _diagnose(exc) -> None:
    print("error: " + " ".join(str(exc).split()), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        _diagnose(exc)
        return exc.code
    except MATH_ERRORS as exc:
        _diagnose(exc)
        return EXIT_MATH
    except (KeyError, TypeError) as exc:
        _diagnose(f"malformed input ({exc})")
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
