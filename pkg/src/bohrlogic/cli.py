"""Command-line interface.

Exit status: 0 on success, 1 on a domain error, 2 when an input cannot be
read or parsed.  Output is assembled completely before anything is written,
so a failing run never leaves a partial document on stdout.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import catalog
from .blocks import BlockPoset, enumerate_blocks, parse_block_poset, verify_partial_boolean
from .errors import BohrLogicError, DocumentError
from .frames import alexandrov, bruns_lakser, check_frame, downset_form, frame_points, ideal_completion
from .heyting import (
    bohrify,
    embed_D,
    implies,
    negate,
    negation_report,
    parse_section,
    sasaki_hook,
    sasaki_report,
    star_isomorphism,
)
from .lattice import DEFAULT_BUDGET, classify, downsets, dump_json, hasse_dot, load_json, parse_lattice
from .quantum import samples
from .quantum.contexts import daseinise
from .quantum.documents import parse_contexts, parse_matrices, parse_matrix, parse_state
from .quantum.projections import MatProjection, Tolerances
from .quantum.spectrum import external_spectrum
from .quantum.states import DensityState, kripke_valuation, pairing
from .scenario import worked_example_report


@dataclass(frozen=True)
class RunConfig:
    command: str
    budget: int
    tol: Tolerances
    fmt: str
    mode: str


# ------------------------------------------------------------------ inputs


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None


def load_lattice(spec: str):
    """A file path or ``builtin:NAME`` with NAME one of worked-example,
    chain:K, pow:N, mo:K."""
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        kind, _, arg = name.partition(":")
        try:
            if kind == "worked-example":
                return catalog.worked_example()
            if kind == "chain":
                return catalog.chain(int(arg or 2))
            if kind == "pow":
                return catalog.powerset(int(arg))
            if kind == "mo":
                return catalog.horizontal_sum(int(arg))
        except ValueError:
            pass
        raise DocumentError(f"unknown builtin lattice {name!r}")
    return parse_lattice(_read(spec))


def load_blocks(L, spec: str | None, cfg: RunConfig) -> BlockPoset:
    """``--blocks``: omitted (enumerate), ``builtin:worked-example`` (the
    five-block index set) or a block document."""
    if spec is None:
        return enumerate_blocks(L, cfg.mode, cfg.budget)
    if spec == "builtin:worked-example":
        return BlockPoset.from_carriers(L, catalog.WORKED_EXAMPLE_BLOCKS, add_bottom=False)
    doc = load_json(_read(spec))
    if isinstance(doc, dict) and "host" not in doc:
        doc = dict(doc, host=L.to_document())
    return parse_block_poset(doc)


def load_section(P: BlockPoset, text: str):
    t = text.strip()
    if t.startswith("{"):
        return parse_section(P, load_json(t))
    return parse_section(P, t)


def load_context_poset(args, cfg: RunConfig):
    spec = args.contexts
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        kind, _, arg = name.partition(":")
        if kind == "qubit":
            return samples.qubit_poset(), {}
        if kind == "qutrit":
            return samples.qutrit_poset(), {}
        if kind == "cn" and arg.isdigit():
            return samples.single_context_poset(int(arg)), {}
        raise DocumentError(f"unknown builtin context poset {name!r}")
    if not args.matrices:
        raise DocumentError("--matrices is required with a context document")
    mtext = _read(args.matrices)
    _, mats = parse_matrices(mtext)
    return parse_contexts(mtext, _read(spec), args.close, cfg.tol), mats


def load_projection(spec: str, mats: dict, n: int, tol: Tolerances) -> MatProjection:
    """``diag:1,0`` or the name of a matrix in the matrix document."""
    if spec.startswith("diag:"):
        try:
            entries = [float(v) for v in spec[5:].split(",")]
        except ValueError:
            raise DocumentError(f"cannot read {spec!r}") from None
        m = np.diag(entries)
    elif spec in mats:
        m = mats[spec]
    else:
        raise DocumentError(f"unknown projection {spec!r}")
    if m.shape != (n, n):
        raise DocumentError(f"projection has dim {m.shape[0]}, contexts have dim {n}")
    return MatProjection(m, tol)


def load_state(spec: str, n: int, tol: Tolerances) -> DensityState:
    if spec.startswith("diag:"):
        try:
            return DensityState(np.diag([float(v) for v in spec[5:].split(",")]), tol)
        except ValueError:
            raise DocumentError(f"cannot read {spec!r}") from None
    if spec == "mixed":
        return DensityState.mixed(n)
    return parse_state(_read(spec), tol)


# ----------------------------------------------------------------- commands


def cmd_classify(args, cfg):
    L = load_lattice(args.lattice)
    if cfg.fmt == "dot":
        return hasse_dot(L)
    doc = classify(L).to_document(L)
    doc = {"elements": L.n, "cover_edges": len(L.covers()), "downsets": len(downsets(L, cfg.budget)), **doc}
    return doc


def cmd_blocks(args, cfg):
    L = load_lattice(args.lattice)
    P = load_blocks(L, args.blocks, cfg)
    if cfg.fmt == "dot":
        from .lattice import FinitePoset
        order = np.array([[P.le_blocks(i, j) for j in range(len(P))] for i in range(len(P))])
        return hasse_dot(FinitePoset(P.names, order), "blocks")
    return {
        "count": len(P),
        "blocks": [
            {"name": b.name, "carrier": sorted(P.labels[e] for e in b.by_code)} for b in P.blocks
        ],
        "partial_boolean": verify_partial_boolean(P).to_document(),
    }


def cmd_bohrify(args, cfg):
    L = load_lattice(args.lattice)
    P = load_blocks(L, args.blocks, cfg)
    Y = bohrify(P, cfg.budget)
    doc = Y.to_document(enumerate_sections=args.list)
    star = star_isomorphism(Y)
    doc["product_plus_top"] = None if star is None else {"factors": star["factors"], "product_size": star["product_size"]}
    return doc


def cmd_implies(args, cfg):
    L = load_lattice(args.lattice)
    P = load_blocks(L, args.blocks, cfg)
    g, h = load_section(P, args.g), load_section(P, args.h)
    return {"g": g.to_document(), "h": h.to_document(), "g=>h": implies(g, h).to_document()}


def cmd_negate(args, cfg):
    L = load_lattice(args.lattice)
    P = load_blocks(L, args.blocks, cfg)
    f = load_section(P, args.f)
    return {"f": f.to_document(), "not f": negate(f, cross_check=True).to_document()}


def cmd_sasaki(args, cfg):
    L = load_lattice(args.lattice)
    P = load_blocks(L, args.blocks, cfg)
    x, y = L.index(args.x), L.index(args.y)
    rep = sasaki_report(P, x, y).to_document()
    rep["x=>_S y"] = L.labels[sasaki_hook(L, x, y)]
    rep["negation"] = negation_report(P, x)
    return rep


def cmd_idl(args, cfg):
    L = load_lattice(args.lattice)
    F, principal = ideal_completion(L, cfg.budget)
    doc = F.to_document()
    doc["principal"] = {L.labels[x]: F.base.label_set(F.members[k]) for x, k in enumerate(principal)}
    return doc


def cmd_bruns_lakser(args, cfg):
    L = load_lattice(args.lattice)
    gens = [L.index(s) for s in args.generators.split(",")] if args.generators else None
    return bruns_lakser(L, gens, cfg.budget).to_document()


def cmd_points(args, cfg):
    L = load_lattice(args.lattice)
    if args.frame == "idl":
        F, _ = ideal_completion(L, cfg.budget)
    elif args.frame == "downsets":
        F = alexandrov(L, cfg.budget)
    elif args.frame == "bruns-lakser":
        F = bruns_lakser(L, budget=cfg.budget).closed
    else:
        Y = bohrify(load_blocks(L, args.blocks, cfg), cfg.budget)
        F, _ = downset_form(Y.as_lattice())
    pts = frame_points(F, cfg.budget)
    return {
        "frame": F.kind,
        "members": len(F),
        "frame_check": check_frame(F).to_document(),
        "points": len(pts),
        "generators": [F.base.label_set(F.members[p.generator]) for p in pts],
    }


def cmd_mat_context(args, cfg):
    P, _ = load_context_poset(args, cfg)
    return P.to_document()


def cmd_mat_spectrum(args, cfg):
    P, _ = load_context_poset(args, cfg)
    X = external_spectrum(P, cfg.budget)
    doc = {"contexts": list(P.names), "points": len(X.points), "opens": len(X.frame)}
    doc.update({"density": X.density_report()})
    return doc


def _section_doc(P, S):
    return {c.name: S.base.labels[v] for c, v in zip(P.contexts, S.values)}


def cmd_daseinise(args, cfg):
    P, mats = load_context_poset(args, cfg)
    p = load_projection(args.proj, mats, P.dim, cfg.tol)
    return {"section": _section_doc(P, daseinise(p, P))}


def cmd_valuate(args, cfg):
    P, mats = load_context_poset(args, cfg)
    p = load_projection(args.proj, mats, P.dim, cfg.tol)
    psi = load_state(args.state, P.dim, cfg.tol)
    S = daseinise(p, P)
    return {"section": _section_doc(P, S), **kripke_valuation(psi, S, P, cfg.tol).to_document()}


def cmd_pairing(args, cfg):
    P, mats = load_context_poset(args, cfg)
    p = load_projection(args.proj, mats, P.dim, cfg.tol)
    psi = load_state(args.state, P.dim, cfg.tol)
    X = external_spectrum(P, cfg.budget)
    S = daseinise(p, P)
    pair = pairing(psi, X.basis(S), X, cfg.tol)
    kv = kripke_valuation(psi, S, P, cfg.tol)
    return {**pair.to_document(), "kripke": list(kv.contexts), "agree": pair.mask == kv.mask}


def cmd_worked_example(args, cfg):
    return worked_example_report(cfg.budget)


COMMANDS = {
    "classify": cmd_classify,
    "blocks": cmd_blocks,
    "bohrify": cmd_bohrify,
    "implies": cmd_implies,
    "negate": cmd_negate,
    "sasaki": cmd_sasaki,
    "idl": cmd_idl,
    "bruns-lakser": cmd_bruns_lakser,
    "points": cmd_points,
    "mat-context": cmd_mat_context,
    "mat-spectrum": cmd_mat_spectrum,
    "daseinise": cmd_daseinise,
    "valuate": cmd_valuate,
    "pairing": cmd_pairing,
    "paper-example": cmd_worked_example,
}


# ----------------------------------------------------------------- output


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return "{" + ", ".join(_cell(x) for x in v) + "}"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_cell(x)}" for k, x in v.items())
    if v is None:
        return "-"
    return str(v)


def render_table(doc, indent: str = "") -> str:
    lines = []
    for key, val in doc.items():
        if isinstance(val, list) and val and all(isinstance(r, dict) for r in val):
            cols = list(dict.fromkeys(k for r in val for k in r))
            rows = [[_cell(r.get(c)) for c in cols] for r in val]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append(f"{indent}{key}:")
            lines.append(indent + "  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for r in rows:
                lines.append(indent + "  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        elif isinstance(val, dict) and val and any(isinstance(v, (dict, list)) for v in val.values()):
            lines.append(f"{indent}{key}:")
            lines.append(render_table(val, indent + "  ").rstrip("\n"))
        else:
            lines.append(f"{indent}{key}: {_cell(val)}")
    return "\n".join(lines) + "\n"


def render(doc, fmt: str) -> str:
    if isinstance(doc, str):
        return doc
    if fmt in ("json", "json-like"):
        return dump_json(doc)
    if fmt == "dot":
        raise DocumentError("dot output is available for classify and blocks only")
    return render_table(doc)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")
    common.add_argument("--tol-proj", type=float, default=1e-9, help="projection tolerance")
    common.add_argument("--tol-val", type=float, default=1e-9, help="valuation tolerance")
    common.add_argument("--cap", type=int, default=200, help="meet-iterate squaring cap")
    common.add_argument("--format", dest="fmt", default="table",
                        choices=["table", "json", "json-like", "dot"])
    common.add_argument("--mode", default="all", choices=["all", "maximal"], help="block enumeration mode")

    p = argparse.ArgumentParser(prog="bohrlogic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def lattice_cmd(name, help_, blocks=False):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("lattice", help="lattice document or builtin:NAME")
        if blocks:
            s.add_argument("--blocks", help="block document, builtin:worked-example, or omit to enumerate")
        return s

    lattice_cmd("classify", "structural laws with witnesses")
    lattice_cmd("blocks", "Boolean subalgebras", blocks=True)
    s = lattice_cmd("bohrify", "Heyting algebra of monotone sections", blocks=True)
    s.add_argument("--list", action="store_true", help="list every section")
    s = lattice_cmd("implies", "Heyting implication of two sections", blocks=True)
    s.add_argument("g")
    s.add_argument("h")
    s = lattice_cmd("negate", "Heyting negation of a section", blocks=True)
    s.add_argument("f")
    s = lattice_cmd("sasaki", "Sasaki hook against Heyting implication", blocks=True)
    s.add_argument("x")
    s.add_argument("y")
    lattice_cmd("idl", "ideal completion")
    s = lattice_cmd("bruns-lakser", "distributive ideals, side by side")
    s.add_argument("--generators", help="comma-separated labels for the union family")
    s = lattice_cmd("points", "frame points", blocks=True)
    s.add_argument("--frame", default="idl", choices=["idl", "downsets", "bruns-lakser", "bohr"])

    def mat_cmd(name, help_, proj=False, state=False):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("contexts", help="context document or builtin:qubit|qutrit|cn:N")
        s.add_argument("--matrices", help="matrix document naming the generators")
        s.add_argument("--close", action="store_true", help="close the family under meets")
        if proj:
            s.add_argument("--proj", required=True, help="matrix name or diag:x,y,...")
        if state:
            s.add_argument("--state", required=True, help="state document, diag:x,y,... or mixed")
        return s

    mat_cmd("mat-context", "context poset")
    mat_cmd("mat-spectrum", "external spectrum and basis density")
    mat_cmd("daseinise", "section of a projection", proj=True)
    mat_cmd("valuate", "Kripke valuation of a daseinised projection", proj=True, state=True)
    mat_cmd("pairing", "state-proposition pairing", proj=True, state=True)
    sub.add_parser("paper-example", parents=[common], help="worked ten-element example end to end")
    return p


def run(argv=None) -> tuple[int, str, str]:
    """Returns (status, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), "", ""
    try:
        if args.budget < 1:
            raise DocumentError("--budget must be at least 1")
        try:
            tol = Tolerances(proj=args.tol_proj, val=args.tol_val, cap=args.cap)
        except ValueError as e:
            raise DocumentError(str(e)) from None
        cfg = RunConfig(args.command, args.budget, tol, args.fmt, args.mode)
        out = render(COMMANDS[args.command](args, cfg), cfg.fmt)
    except DocumentError as e:
        return 2, "", _error_text(e)
    except BohrLogicError as e:
        return 1, "", _error_text(e)
    return 0, out, ""


def _error_text(e: BohrLogicError) -> str:
    text = f"error: {type(e).__name__}: {e}\n"
    if e.witness is not None:
        text += f"witness: {e.witness}\n"
    return text


def main(argv=None) -> int:
    status, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
