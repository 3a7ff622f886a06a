"""Search for two-valued assignments on a block poset.

An assignment sends every element to 0 or 1 so that its restriction to each
block is a Boolean homomorphism, i.e. it picks one atom per block and the
picks agree on shared elements.  Kochen-Specker-type families admit none.
The count is compared with the frame points of Y, which always exist.
"""

import argparse

from bohrlogic.blocks import BlockPoset, enumerate_blocks
from bohrlogic.catalog import WORKED_EXAMPLE_BLOCKS, horizontal_sum, worked_example
from bohrlogic.frames import downset_form, frame_points
from bohrlogic.heyting import bohrify
from bohrlogic.quantum.samples import qubit_poset, qutrit_poset


def two_valued(P: BlockPoset) -> list[dict[int, int]]:
    """Depth-first choice of one atom per block, largest blocks first."""
    order = sorted(range(len(P)), key=lambda i: -len(P.blocks[i]))
    out = []

    def rec(k, val):
        if k == len(order):
            out.append(dict(val))
            return
        b = P.blocks[order[k]]
        for bit in range(len(b.atoms)):
            new = {}
            ok = True
            for code, e in enumerate(b.by_code):
                v = code >> bit & 1
                if val.get(e, v) != v:
                    ok = False
                    break
                new[e] = v
            if ok:
                rec(k + 1, {**val, **new})

    rec(0, {})
    return out


def report(name, P):
    Y = bohrify(P)
    F, _ = downset_form(Y.as_lattice())
    tv = two_valued(P)
    print(f"{name:24s} blocks={len(P):2d} |Y|={len(Y):4d} Y-points={len(frame_points(F)):3d} two-valued={len(tv)}")


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    X = worked_example()
    report("worked (index set)", BlockPoset.from_carriers(X, WORKED_EXAMPLE_BLOCKS, add_bottom=False))
    report("worked (all blocks)", enumerate_blocks(X))
    report("MO3", enumerate_blocks(horizontal_sum(3)))
    report("qubit contexts", qubit_poset().block_poset)
    report("qutrit contexts", qutrit_poset().block_poset)


if __name__ == "__main__":
    main()
