"""JSON documents for matrices, contexts and states.

Matrix document::

    {"dim": 2, "matrices": {"p": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}}

Each matrix is row-major, each entry an ``[re, im]`` pair (a bare number is
read as real).  Context document: ``{"contexts": {"Cz": ["p"]}}`` names the
generators of each context.  State document: ``{"dim": 2, "rho": matrix}``.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DocumentError
from ..lattice import load_json
from .contexts import Context, ContextPoset, context_generate
from .projections import DEFAULT_TOL, MatProjection, Tolerances
from .states import DensityState


def _doc(doc):
    return load_json(doc) if isinstance(doc, (str, bytes)) else doc


def parse_matrix(rows, dim: int | None = None) -> np.ndarray:
    try:
        out = []
        for row in rows:
            r = []
            for x in row:
                if isinstance(x, (list, tuple)):
                    re, im = (float(v) for v in x)
                else:
                    re, im = float(x), 0.0
                if not (math.isfinite(re) and math.isfinite(im)):
                    raise DocumentError("non-finite matrix entry")
                r.append(complex(re, im))
            out.append(r)
        m = np.array(out, dtype=complex)
    except (TypeError, ValueError) as e:
        raise DocumentError(f"malformed matrix: {e}") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1] or (dim is not None and m.shape[0] != dim):
        raise DocumentError(f"matrix has shape {m.shape}, expected {(dim, dim)}")
    return m


def emit_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(np.round(z.real, 12)) + 0.0, float(np.round(z.imag, 12)) + 0.0] for z in row] for row in m]


def parse_matrices(doc) -> tuple[int, dict[str, np.ndarray]]:
    doc = _doc(doc)
    if not isinstance(doc, dict) or "dim" not in doc or "matrices" not in doc:
        raise DocumentError("matrix document needs 'dim' and 'matrices'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise DocumentError("'dim' must be a positive integer")
    return dim, {str(k): parse_matrix(v, dim) for k, v in doc["matrices"].items()}


def parse_contexts(matrices_doc, contexts_doc, close_under_meet: bool = False,
                   tol: Tolerances = DEFAULT_TOL) -> ContextPoset:
    dim, mats = parse_matrices(matrices_doc)
    cdoc = _doc(contexts_doc)
    if not isinstance(cdoc, dict) or "contexts" not in cdoc:
        raise DocumentError("context document needs 'contexts'")
    contexts = []
    for name, gens in cdoc["contexts"].items():
        try:
            projs = [MatProjection(mats[g], tol) for g in gens]
        except KeyError as e:
            raise DocumentError(f"unknown matrix {e.args[0]!r} in context {name!r}") from None
        contexts.append(context_generate(projs, str(name), n=dim, tol=tol))
    return ContextPoset(contexts or [Context([MatProjection.one(dim)], "C·1", tol)], close_under_meet, tol)


def parse_state(doc, tol: Tolerances = DEFAULT_TOL) -> DensityState:
    doc = _doc(doc)
    if not isinstance(doc, dict) or "rho" not in doc:
        raise DocumentError("state document needs 'rho'")
    return DensityState(parse_matrix(doc["rho"], doc.get("dim")), tol)
