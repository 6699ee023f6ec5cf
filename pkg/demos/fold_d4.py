"""Fold D4 by every subgroup of its automorphism group and print the results."""

from adefold import automorphism_group, build_diagram, fold, generate_weyl
from adefold.dynkin import all_subgroups
from adefold.jsonio import fmt_rational
from adefold.rootsys import RootLattice


def main() -> None:
    d = build_diagram("D", 4)
    for g in all_subgroups(automorphism_group(d)):
        f = fold(d, g)
        gram = "[" + ", ".join("[" + ", ".join(fmt_rational(x) for x in row) + "]" for row in f.gram) + "]"
        order = generate_weyl(RootLattice.from_folded(f)).order
        print(f"|Gamma| = {g.order}: {f.folded_type:<3} Weyl order {order:<5} Gram {gram}  Cartan {list(map(list, f.cartan))}")


if __name__ == "__main__":
    main()
