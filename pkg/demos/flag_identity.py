"""The three ways an A1 sublattice can distribute the order of its fundamental group."""

from adefold import BilinearLattice, flag_identity_check
from adefold.lattice import span

CASES = [
    ("divisor twice a primitive class", [[-2, 0, 0], [0, 0, 1], [0, 1, 0]], (2, 0, 0)),
    ("(-2)-curve class", [[-2, 1], [1, 0]], (1, 0)),
    ("primitive class with even pairing", [[-4, -4], [-4, -3]], (1, 0)),
]


def main() -> None:
    for label, gram, e in CASES:
        amb = BilinearLattice.from_gram(gram)
        rep = flag_identity_check(span(amb, [e]), None, 2)
        a, b, c = rep.orders
        print(f"{label:<36} {a} * {b} * {c} = {rep.pi_order}  ({'ok' if rep.passed else 'FAILED'})")


if __name__ == "__main__":
    main()
