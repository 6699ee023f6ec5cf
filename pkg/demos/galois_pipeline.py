"""Run the bundled contraction documents through the Galois-group pipeline.

For each document, print the group structure and confirm that every
realized group element passes the Galois-form test on the ambient lattice.
"""

import json
from importlib import resources

from adefold import ContractionSpec, compute_galois
from adefold.galois import realize_component
from adefold.lattice import IsometryCandidate, verify_galois_form
from adefold.rootsys import matrix_closure


def run(name: str) -> None:
    doc = json.loads(resources.files("adefold").joinpath("examples", name).read_text())
    spec = ContractionSpec.from_json(doc)
    report = compute_galois(spec)
    print(f"{name}: G = {' x '.join(report.structure)}, order {report.total_order}")
    for comp, res in zip(spec.components, report.components):
        rc = realize_component(comp, spec.ambient)
        elements = matrix_closure(rc.generators)
        pi = None if res.bc else res.pi
        ok = sum(
            verify_galois_form(IsometryCandidate(spec.ambient, m.tolist()), rc.roots, rc.coroots, pi).passed
            for m in elements
        )
        print(f"  {comp.name}: {comp.kind}{comp.rank} folds to {res.folded_type}; {ok}/{len(elements)} elements accepted")


if __name__ == "__main__":
    for name in ("ogrady.json", "hilbert_a2.json", "a2k_bc.json"):
        run(name)
