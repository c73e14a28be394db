"""Command-line front end: ``condense <verb> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage, missing-file or validation errors.  Reports are deterministic and
print every number exactly.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

from .condensation import (
    GroupAlgebraObstruction,
    build_group_algebra,
    canonical_witness,
    check_bimodule,
    check_condensation_monad,
    check_splitting_extension,
    induced_monad,
    rank_condensation,
    regular_bimodule,
    retract_condensation,
    relative_tensor,
    relative_tensor_idempotent,
    trivial_monad,
)
from .cycfield import scalar_to_json
from .fusion import CocycleSpec, build_pointed, fcat_to_json, multifusion_components, verify_fusion_ring, verify_pentagon
from .io import (
    ValidationError,
    Workspace,
    WorkspaceConfig,
    bimodule_to_json,
    condensation_to_json,
    monad_to_json,
    presentation_to_json,
    write_json,
)
from .mod2cat import enumerate_module_categories_cyclic, generator_endomorphism, hom_category_report, is_connected
from .ssvec import cauchy_completion, is_cauchy_equivalence, karoubi_envelope

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class Output:
    """Collects text lines and a JSON payload; prints one of them at the end."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, s: str = "") -> None:
        self.lines.append(s)

    def emit(self) -> None:
        if self.as_json:
            print(json.dumps(self.data, indent=1, sort_keys=True, ensure_ascii=False))
        else:
            print("\n".join(self.lines))


def _ref(ws: Workspace, fc, out_path: Optional[str]) -> str:
    """Path of fc's file relative to where the output will live."""
    src = ws.fcat_path(fc)
    if src is None or src.startswith("inline:"):
        raise ValidationError("cannot reference an inline fusion category from a written file")
    base = Path(out_path).resolve().parent if out_path else Path.cwd()
    return os.path.relpath(src, base)


def _report(out: Output, rep) -> bool:
    out.line(rep.summary())
    out.data.setdefault("reports", []).append(rep.to_json())
    return rep.ok


def _matrix(rows) -> str:
    return "[" + ", ".join("[" + ", ".join("?" if c is None else str(c) for c in r) + "]" for r in rows) + "]"


# -- verbs -------------------------------------------------------------------


def cmd_check_ring(ws, args, out) -> bool:
    fc = ws.load_fcat(args.fcat)
    return _report(out, verify_fusion_ring(fc.ring))


def cmd_check_pentagon(ws, args, out) -> bool:
    fc = ws.load_fcat(args.fcat)
    return _report(out, verify_pentagon(fc))


def cmd_components(ws, args, out) -> bool:
    fc = ws.load_fcat(args.fcat)
    cm = multifusion_components(fc)
    out.line(f"unit summands: {', '.join(cm.units)}")
    for i, row in enumerate(cm.cells):
        for j, cell in enumerate(row):
            out.line(f"C[{cm.units[i]},{cm.units[j]}]: {', '.join(cell) if cell else '0'}")
    out.line(f"component counts: {_matrix(cm.counts())}")
    out.line(f"connected: {'yes' if cm.is_connected else 'no'}")
    out.data.update(units=cm.units, cells=cm.cells, counts=cm.counts(), connected=cm.is_connected)
    return True


def cmd_check_algebra(ws, args, out) -> bool:
    m = ws.load_algebra(args.alg, validate=False)
    rep = check_condensation_monad(m)
    ok = _report(out, rep)
    if not ok:
        out.line(f"failing axioms: {', '.join(rep.details['failed'])}")
    return ok


def cmd_check_bimodule(ws, args, out) -> bool:
    B = ws.load_bimodule(args.bim, validate=False)
    rep = check_bimodule(B)
    ok = _report(out, rep)
    if not ok:
        out.line(f"failing axioms: {', '.join(rep.details['failed'])}")
    return ok


def cmd_rel_tensor(ws, args, out) -> bool:
    b2 = ws.load_bimodule(args.b2)
    b1 = ws.load_bimodule(args.b1)
    p = relative_tensor_idempotent(b2, b1)
    idem = p @ p == p
    out.line(f"idempotent: {'p∘p = p' if idem else 'p∘p != p'}")
    if not idem:
        out.data["idempotent"] = False
        return False
    rt = relative_tensor(b2, b1, pivot=args.pivot)
    mult = rt.bimodule.b.mult
    out.line(f"multiplicities: {','.join(map(str, mult))}")
    rep = check_bimodule(rt.bimodule)
    ok = _report(out, rep)
    composite = replace(rt.bimodule, name=f"{b2.name}*{b1.name}")
    payload = bimodule_to_json(composite, _ref(ws, b1.fc, args.output))
    out.data.update(payload)
    out.data["multiplicities"] = list(mult)
    if args.output:
        write_json(args.output, payload)
        out.line(f"wrote {args.output}")
    return ok


def cmd_split(ws, args, out) -> bool:
    c = ws.load_condensation(args.cond)
    out.line("condensation: PASS (phi∘gamma = id_1)")
    m = induced_monad(c)
    ok = _report(out, check_condensation_monad(m))
    out.line(f"induced object: {','.join(map(str, m.e.mult))}")
    target = ws.load_algebra(args.algebra) if args.algebra else m
    w = canonical_witness(c)
    ext = check_splitting_extension(target, w)
    out.line(f"splitting extension: {'PASS' if ext else 'FAIL'}")
    out.data.update(induced=monad_to_json(m, _ref(ws, c.fc, args.output)), splitting_extension=ext)
    if args.output:
        write_json(args.output, monad_to_json(m, _ref(ws, c.fc, args.output)))
        out.line(f"wrote {args.output}")
    return ok and ext


def cmd_modcat(ws, args, out) -> bool:
    if args.action == "classify":
        if len(args.args) != 2:
            raise ValidationError("usage: modcat classify N Q")
        n, q = (int(x) for x in args.args)
        classes = enumerate_module_categories_cyclic(n, q)
        out.line(f"Vect_Z/{n} with omega_{q}: {len(classes)} class(es)")
        for c in classes:
            out.line(f"  {c}  [{c.method}, M={c.M}]")
        out.data.update(
            n=n,
            q=q,
            classes=[{"H": list(c.H), "order": c.order, "psi": {f"{a},{b}": v for (a, b), v in sorted(c.psi.items())}, "M": c.M, "method": c.method} for c in classes],
        )
        return True
    if len(args.args) != 1:
        raise ValidationError(f"usage: modcat {args.action} MODCAT.json")
    P = ws.load_modcat(args.args[0])
    if args.action == "report":
        pairs = [(a, b) for b in P.names for a in P.names]
        if args.pair:
            pairs = [tuple(args.pair)]
        reps = {}
        for a, b in pairs:
            r = hom_category_report(P, a, b, seed=args.seed, conductor=args.conductor)
            reps[(a, b)] = r
            count = "requires field extension" if r.simple_count is None else str(r.simple_count)
            out.line(
                f"Hom({a} -> {b}): generators [{', '.join(r.free_generators)}], "
                f"dim End = {r.endo_dim}, dim Z = {r.center_dim}, simples = {count}"
            )
        out.data["reports"] = [r.to_json() for r in reps.values()]
        if not args.pair:
            mat = [[reps[(a, b)].simple_count for a in P.names] for b in P.names]
            out.line(f"objects: {', '.join(P.names)}")
            out.line(f"simple counts (row = target, column = source): {_matrix(mat)}")
            out.data.update(objects=P.names, counts=mat)
        return all(r.simple_count is not None for r in reps.values())
    if args.action == "connected":
        ok, mat = is_connected(P)
        out.line(f"nonzero Hom matrix: {_matrix(mat)}")
        out.line(f"connected: {'yes' if ok else 'no'}")
        out.data.update(objects=P.names, nonzero=mat, connected=ok)
        return True
    if args.action == "generator":
        G = generator_endomorphism(P, ring=args.ring, seed=args.seed, conductor=args.conductor)
        out.line(f"objects: {', '.join(G.names)}")
        out.line(f"component matrix: {_matrix(G.counts)}")
        out.line(f"connected: {'yes' if G.connected else 'no'}")
        out.data.update(objects=G.names, counts=G.counts, connected=G.connected, note=G.note)
        if G.note:
            out.line(f"note: {G.note}")
        if G.ring is not None:
            out.line(f"simple 1-morphisms: {len(G.ring.labels)}")
            rep = verify_fusion_ring(G.ring)
            out.line(rep.summary())
            out.data["ring"] = {"labels": list(G.ring.labels), "report": rep.to_json()}
        return all(c is not None for row in G.counts for c in row)
    raise ValidationError(f"unknown modcat action {args.action!r}")


def _completion_report(out: Output, comp) -> None:
    P = comp.presentation
    for o in P.objects:
        out.line(f"{o}: dim End = {P.hom_dim(o, o)}")
    out.data.update(presentation_to_json(P))
    out.data["end_dims"] = {o: P.hom_dim(o, o) for o in P.objects}


def cmd_kar(ws, args, out) -> bool:
    P = ws.load_presentation(args.pres)
    comp = karoubi_envelope(P)
    _completion_report(out, comp)
    if args.output:
        write_json(args.output, presentation_to_json(comp.presentation))
        out.line(f"wrote {args.output}")
    return True


def cmd_cauchy(ws, args, out) -> bool:
    P = ws.load_presentation(args.pres)
    comp = cauchy_completion(P, max_length=args.max_length)
    _completion_report(out, comp)
    if args.output:
        write_json(args.output, presentation_to_json(comp.presentation))
        out.line(f"wrote {args.output}")
    return True


def cmd_check_equivalence(ws, args, out) -> bool:
    F = ws.load_functor(args.functor)
    ok, rep = is_cauchy_equivalence(F, bound=args.bound or ws.config.search_bound)
    out.line(f"fully faithful: {'yes' if rep['fully_faithful'] else 'no'}")
    for d, w in rep["witnesses"].items():
        out.line(f"  {d}: retract of {' + '.join(map(str, w['summands']))}")
    if "failure" in rep:
        out.line(f"first failure: {rep['failure']}")
    out.line(f"cauchy equivalence: {'PASS' if ok else 'FAIL'}")
    out.data.update(
        equivalence=ok,
        fully_faithful=rep["fully_faithful"],
        failure=rep.get("failure"),
        witnesses={
            d: {
                "summands": list(w["summands"]),
                "idempotent": {str(k): scalar_to_json(v) for k, v in sorted(w["idempotent"].items())},
            }
            for d, w in rep["witnesses"].items()
        },
    )
    return ok


# -- example data ------------------------------------------------------------


def cmd_generate(ws, args, out) -> bool:
    """Write a pointed example: the .fcat, the trivial algebra, the group
    algebra (when it exists), its regular bimodules, a Mod(C) file and two
    condensations."""
    n, q = args.n, args.q
    d = args.subgroup or n
    outdir = Path(args.dir)
    outdir.mkdir(parents=True, exist_ok=True)
    fc = build_pointed(CocycleSpec(n, q))
    fname = f"vectz{n}" + (f"q{q}" if q else "") + ".fcat"
    write_json(outdir / fname, fcat_to_json(fc))
    written = [fname]
    write_json(outdir / "one.alg", monad_to_json(trivial_monad(fc), fname))
    written.append("one.alg")
    A = build_group_algebra(fc, d)
    algebras = {"1": "one.alg"}
    if isinstance(A, GroupAlgebraObstruction):
        out.line(f"group algebra on Z/{d}: obstructed ({A.report.failure})")
    else:
        write_json(outdir / "A.alg", monad_to_json(A, fname))
        write_json(outdir / "reg_1A.bim", bimodule_to_json(regular_bimodule(A, "right"), fname, right_ref="A.alg"))
        write_json(outdir / "reg_A1.bim", bimodule_to_json(regular_bimodule(A, "left"), fname, left_ref="A.alg"))
        written += ["A.alg", "reg_1A.bim", "reg_A1.bim"]
        algebras["A"] = "A.alg"
    write_json(outdir / "modcat.json", {"kind": "modcat", "fcat": fname, "algebras": algebras})
    written.append("modcat.json")
    sig = fc.signature
    a = 1 % n
    write_json(outdir / "invertible.cond", condensation_to_json(retract_condensation(fc, sig.simple(a), sig.simple((-a) % n)), fname))
    write_json(outdir / "rank.cond", condensation_to_json(rank_condensation(fc, [[1, 1], [0, 0]]), fname))
    written += ["invertible.cond", "rank.cond"]
    for w in written:
        out.line(f"wrote {outdir / w}")
    out.data["written"] = [str(outdir / w) for w in written]
    return True


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="condense", description="Exact condensation calculus in finite fusion categories.")
    ap.add_argument("--json", action="store_true", help="emit a machine-readable report")
    ap.add_argument("--conductor-cap", type=int, default=None, help="largest cyclotomic conductor accepted in inputs")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    verb("check-ring", cmd_check_ring, "fusion ring axioms").add_argument("fcat")
    verb("check-pentagon", cmd_check_pentagon, "pentagon equations").add_argument("fcat")
    verb("components", cmd_components, "multifusion component matrix").add_argument("fcat")
    verb("check-algebra", cmd_check_algebra, "condensation monad axioms").add_argument("alg")
    verb("check-bimodule", cmd_check_bimodule, "bimodule axioms").add_argument("bim")
    p = verb("rel-tensor", cmd_rel_tensor, "relative tensor product b2 ⊗_A b1")
    p.add_argument("b2")
    p.add_argument("b1")
    p.add_argument("-o", "--output")
    p.add_argument("--pivot", choices=["first", "last"], default="first")
    p = verb("split", cmd_split, "induced monad of a condensation and its splitting")
    p.add_argument("cond")
    p.add_argument("--algebra", help="check this algebra against the canonical witness instead")
    p.add_argument("-o", "--output")
    p = verb("modcat", cmd_modcat, "Mod(C): report | connected | generator | classify")
    p.add_argument("action", choices=["report", "connected", "generator", "classify"])
    p.add_argument("args", nargs="*")
    p.add_argument("--pair", nargs=2, metavar=("SOURCE", "TARGET"))
    p.add_argument("--ring", action="store_true", help="also compute the fusion ring of simple 1-morphisms")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--conductor", type=int, default=None, help="working field Q(zeta_N) for splitness")
    p = verb("kar", cmd_kar, "Karoubi envelope of a presentation")
    p.add_argument("pres")
    p.add_argument("-o", "--output")
    p = verb("cauchy", cmd_cauchy, "Cauchy completion of a presentation")
    p.add_argument("pres")
    p.add_argument("--max-length", type=int, default=2)
    p.add_argument("-o", "--output")
    p = verb("check-equivalence", cmd_check_equivalence, "Cauchy-equivalence criterion for a functor")
    p.add_argument("functor")
    p.add_argument("--bound", type=int, default=None)
    p = verb("generate", cmd_generate, "write pointed example data")
    p.add_argument("n", type=int)
    p.add_argument("dir")
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--subgroup", type=int, default=None)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    config = WorkspaceConfig()
    if args.conductor_cap is not None:
        config.conductor_cap = args.conductor_cap
    ws = Workspace(config)
    out = Output(args.json)
    try:
        ok = args.fn(ws, args, out)
    except (FileNotFoundError, ValidationError, ValueError, KeyError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    out.data["ok"] = bool(ok)
    out.emit()
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
