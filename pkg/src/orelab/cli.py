"""Command-line surface.

Subcommands: compute (structural invariants of one group), check (one
predicate on one subgroup), functor (property check over a generated
corpus), verify (statement suites with report emission), corpus (emit the
generated corpus as cayley files).

Exit codes: 0 all pass, 2 counterexample/witness found, 3 input error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import OrelabError, UnknownId
from . import formations as fm
from . import functors as ft
from . import structure as st
from . import supplements as sp
from .corpus import build, emit_corpus, generate_corpus, parse_spec
from .groups import Subgroup, generate_subgroup
from .statements import Env, PAPER_SUITE, REGISTRY
from .verifier import emit_report, verify_suites

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 2
EXIT_INPUT = 3


def _subgroup_from_arg(G, arg: str) -> Subgroup:
    """Generators as comma-separated element indices or element labels."""
    gens = []
    for tok in arg.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.isdigit():
            gens.append(int(tok))
        elif G.labels and tok in G.labels:
            gens.append(G.labels.index(tok))
        else:
            raise UnknownId(f"element {tok!r} not an index or label")
    return generate_subgroup(G, gens)


def _describe_subgroup(G, s: Subgroup) -> str:
    els = [G.label(int(x)) for x in s.elements[:12]]
    more = "..." if s.order > 12 else ""
    return f"order {s.order}: {{{', '.join(els)}{more}}}"


def cmd_compute(args) -> int:
    G = build(parse_spec(args.group))
    what = args.what
    lat = None
    if what == "subgroups":
        lat = st.get_lattice(G)
        print(f"{G.name}: {len(lat)} subgroups")
        for s in lat.subgroups:
            i = lat.index(s.mask)
            flags = []
            if lat.normal[i]:
                flags.append("normal")
            elif lat.subnormal_depth[i] >= 0:
                flags.append(f"subnormal(depth {lat.subnormal_depth[i]})")
            print(f"  {_describe_subgroup(G, s)} {' '.join(flags)}")
        return EXIT_OK
    if what == "chief-series":
        cs = st.chief_series(G, st.get_lattice(G))
        orders = [f.order for f in cs.factors]
        print(f"{G.name}: chief factor orders {orders}")
        for t in cs.terms:
            print(f"  term {_describe_subgroup(G, t)}")
        return EXIT_OK
    simple = {
        "frattini": lambda: st.frattini(G),
        "fitting": lambda: st.fitting(G),
        "fstar": lambda: st.generalized_fitting(G),
        "hypercentre": lambda: st.hypercentre(G),
    }
    if what in simple:
        s = simple[what]()
        print(f"{what}({G.name}) = {_describe_subgroup(G, s)}")
        return EXIT_OK
    if ":" in what:
        op, _, farg = what.partition(":")
        F = fm.parse_formation(farg)
        if op == "zf":
            s = fm.f_hypercentre(G, F)
        elif op == "zfphi":
            s = fm.f_phi_hypercentre(G, F)
        elif op == "residual":
            s = fm.residual(G, F)
        else:
            raise UnknownId(f"unknown compute target {what!r}")
        print(f"{op}[{F.id}]({G.name}) = {_describe_subgroup(G, s)}")
        return EXIT_OK
    raise UnknownId(f"unknown compute target {what!r}")


def cmd_check(args) -> int:
    G = build(parse_spec(args.group))
    H = _subgroup_from_arg(G, args.subgroup)
    pred = args.pred
    if pred == "ore":
        ok, w = sp.satisfies_ore(G, H)
        extra = f" (T order {w.T.order}, S order {w.S.order})" if ok else ""
        print(f"ore({G.name}, H order {H.order}) = {ok}{extra}")
    elif pred == "csupp":
        print(f"csupp = {sp.is_c_supplemented(G, H)}")
    elif pred == "wsp":
        print(f"wsp = {sp.is_weakly_s_permutable(G, H)}")
    elif pred.startswith("fsupp:"):
        F = fm.parse_formation(pred.split(":", 1)[1])
        print(f"fsupp[{F.id}] = {sp.is_f_supplemented(G, H, F)}")
    elif pred.startswith("ftau:"):
        _, farg, targ = pred.split(":", 2)
        F = fm.parse_formation(farg)
        tau = ft.parse_functor(targ)
        w = sp.f_tau_supplement_witness(G, H, F, tau)
        if w is None:
            print(f"ftau[{F.id},{tau.id}] = False")
        else:
            print(f"ftau[{F.id},{tau.id}] = True (T order {w.T.order}, S order {w.S.order})")
    elif pred.startswith("pair:"):
        F = fm.parse_formation(pred.split(":", 1)[1])
        if not args.second:
            raise UnknownId("pair:<F> needs --second <gens> for the smaller subgroup K")
        K = _subgroup_from_arg(G, args.second)
        print(f"pair[{F.id}] = {sp.pair_satisfies_f_supplement(G, K, H, F)}")
    elif pred in ft.FUNCTORS or pred in ("normal",):
        tau = ft.parse_functor(pred)
        print(f"{tau.id} = {ft.tau_contains(G, tau, H.mask)}")
    else:
        raise UnknownId(f"unknown predicate {pred!r}")
    return EXIT_OK


def cmd_functor(args) -> int:
    tau = ft.parse_functor(args.name)
    prop = ft.parse_property(args.property)
    corpus = generate_corpus(args.max_order)
    res = ft.check_property(tau, prop, corpus, ccp_max_order=args.ccp_max_order)
    print(f"functor {tau.id} / {prop} over corpus <= {args.max_order} ({res.groups_checked} groups):")
    if res.skipped:
        print(f"  skipped {len(res.skipped)} groups (size caps)")
    if res.is_pass:
        print("  PASS (no counterexample in corpus)")
        return EXIT_OK
    print(f"  WITNESS: {res.witness.describe()}")
    return EXIT_COUNTEREXAMPLE


def cmd_verify(args) -> int:
    if args.suite == "all":
        ids = list(PAPER_SUITE)
    else:
        ids = [s.strip() for s in args.suite.split(",")]
        for sid in ids:
            if sid not in REGISTRY:
                raise UnknownId(f"unknown statement {sid!r}")
    env = Env(
        ccp_max_order=args.ccp_max_order,
        time_budget_s=args.time_budget,
        formation_ids=tuple(args.formation) if args.formation else None,
        functor_ids=tuple(args.functor) if args.functor else None,
    )
    corpus = generate_corpus(args.max_order)
    reports = verify_suites(
        ids, corpus, env=env, jobs=args.jobs, cache_dir=args.cache_dir, crosscheck=args.crosscheck
    )
    for rep in reports:
        print(f"{rep.statement}: {rep.status} (hypothesis-true instances: {rep.hyp_true_total})")
    if args.report:
        emit_report(reports, args.report, format=args.format, corpus=corpus)
        print(f"report written to {args.report}")
    if any(rep.status == "FAIL" for rep in reports):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_corpus(args) -> int:
    paths = emit_corpus(args.emit, args.max_order)
    print(f"wrote {len(paths)} cayley files to {args.emit}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orelab", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("compute", help="structural invariants of one group")
    p.add_argument("--group", required=True, help="group spec, e.g. symmetric(4)")
    p.add_argument(
        "--what",
        required=True,
        help="subgroups|frattini|fitting|fstar|chief-series|hypercentre|zf:<F>|zfphi:<F>|residual:<F>",
    )
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("check", help="one predicate on one subgroup")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True, help="comma-separated element indices or labels")
    p.add_argument("--second", help="generators of K for pair:<F>")
    p.add_argument(
        "--pred",
        required=True,
        help="ore|csupp|fsupp:<F>|wsp|ftau:<F>:<tau>|pair:<F> or a functor id",
    )
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("functor", help="functor property check over the corpus")
    p.add_argument("--name", required=True, help="normal|squasi|cap|camp|ccp|sqe|subembed|modular|ssq")
    p.add_argument("--property", required=True, help="inductive|hereditary|regular|quasiregular|phi-regular|phi-quasiregular")
    p.add_argument("--max-order", type=int, default=48)
    p.add_argument("--ccp-max-order", type=int, default=48)
    p.set_defaults(fn=cmd_functor)

    p = sub.add_parser("verify", help="verify paper statements over the corpus")
    p.add_argument("--suite", required=True, help="statement id, comma list, or 'all'")
    p.add_argument("--max-order", type=int, default=96)
    p.add_argument("--formation", action="append", help="restrict formation range (repeatable)")
    p.add_argument("--functor", action="append", help="restrict functor range (repeatable)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="report output path")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--ccp-max-order", type=int, default=48)
    p.add_argument("--time-budget", type=float, default=30.0)
    p.add_argument("--cache-dir", help="lattice cache directory for worker processes")
    p.add_argument("--crosscheck", action="store_true", help="re-verify functor classifications first")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("corpus", help="emit the generated corpus as cayley v1 files")
    p.add_argument("--emit", required=True, help="output directory")
    p.add_argument("--max-order", type=int, required=True)
    p.set_defaults(fn=cmd_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (OrelabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
