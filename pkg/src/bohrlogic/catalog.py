"""Named lattices used by tests, scripts and the CLI ``builtin:`` inputs."""

from __future__ import annotations

import numpy as np

from .lattice import FiniteOrtholattice, parse_lattice

# Ten elements: a, b, c pairwise orthogonal (a <= b' etc.), d and d' only
# comparable with the bounds.
WORKED_EXAMPLE = {
    "elements": ["0", "a", "b", "c", "d", "a'", "b'", "c'", "d'", "1"],
    "covers": [
        ["0", "a"], ["0", "b"], ["0", "c"], ["0", "d"], ["0", "d'"],
        ["a", "b'"], ["a", "c'"], ["b", "a'"], ["b", "c'"], ["c", "a'"], ["c", "b'"],
        ["a'", "1"], ["b'", "1"], ["c'", "1"], ["d", "1"], ["d'", "1"],
    ],
    "perp": {
        "0": "1", "a": "a'", "b": "b'", "c": "c'", "d": "d'",
        "a'": "a", "b'": "b", "c'": "c", "d'": "d", "1": "0",
    },
}

# Index set I = {0, a, b, c, d}: the trivial block and one four-element block
# per generator.
WORKED_EXAMPLE_BLOCKS = {
    "B0": ["0", "1"],
    "Ba": ["0", "a", "a'", "1"],
    "Bb": ["0", "b", "b'", "1"],
    "Bc": ["0", "c", "c'", "1"],
    "Bd": ["0", "d", "d'", "1"],
}

# Generators of the union-of-principal-downsets family compared against the
# distributive ideals of the worked example.
WORKED_EXAMPLE_DI_GENERATORS = ["a", "b", "c", "d", "d'", "a'", "b'", "c'"]


def worked_example() -> FiniteOrtholattice:
    return parse_lattice(WORKED_EXAMPLE)


def chain(k: int = 2) -> FiniteOrtholattice:
    """The chain 0 < 1 < ... < k-1 (orthocomplemented only for k <= 2)."""
    labels = [str(i) for i in range(k)]
    order = np.triu(np.ones((k, k), dtype=bool))
    perp = [k - 1 - i for i in range(k)] if k <= 2 else None
    return FiniteOrtholattice(labels, order, perp)


def powerset(n: int, names: str | None = None) -> FiniteOrtholattice:
    """Pow({1..n}) ordered by inclusion, complement as perp."""
    names = names or "".join(str(i + 1) for i in range(n))
    size = 1 << n
    label = lambda m: "{" + ",".join(names[i] for i in range(n) if m >> i & 1) + "}"
    labels = [label(m) for m in range(size)]
    ms = np.arange(size)
    order = (ms[:, None] & ~ms[None, :]) == 0
    perp = [(size - 1) ^ m for m in range(size)]
    return FiniteOrtholattice(labels, order, perp)


def horizontal_sum(k: int) -> FiniteOrtholattice:
    """MO_k: k four-element Boolean algebras glued along {0, 1}."""
    atoms = [chr(ord("a") + i) for i in range(k)]
    labels = ["0"] + atoms + [a + "'" for a in atoms] + ["1"]
    n = len(labels)
    order = np.eye(n, dtype=bool)
    order[0, :] = True
    order[:, -1] = True
    perp = [n - 1] + [1 + k + i for i in range(k)] + [1 + i for i in range(k)] + [0]
    return FiniteOrtholattice(labels, order, perp)
