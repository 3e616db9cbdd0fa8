"""Command-line interface: ``reflex <command> ...``.

Exit status is 0 when no check fails, 1 when a mathematical check fails and
2 for usage or parse errors.  Progress goes to stderr, reports to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from math import comb

from . import digraph as dg
from .errors import (
    InputError,
    NotIrreducibleEvidence,
    ReflectionError,
    StructureViolation,
    TheoremInapplicable,
)
from .exterior import eigen_dimension_table, exterior_power
from .families import FamilySpec, quotient_rep
from .field import format_scalar
from .lifting import lift_isomorphism
from .modtheory import (
    check_theorem1,
    check_theorem2,
    finite_group_character_oracle,
    hom_space,
    is_simple,
)
from .reflection import FILE_HEADER, ReflectionRep, dumps_rep, loads_matrices, validate_reflection
from .report import Report, digest


class UsageError(Exception):
    pass


def _fmt_vec(v):
    return [format_scalar(x) for x in v]


def _fmt_mat(m):
    return [_fmt_vec(r) for r in m.tolist()]


def progress(msg):
    print(msg, file=sys.stderr, flush=True)


# -- inputs ---------------------------------------------------------------------


def _spec_from_flags(args, seed=None) -> FamilySpec | None:
    if not getattr(args, "family", None):
        return None
    params = {}
    for key in ("n", "x", "m", "of", "path"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = str(val)
    return _seeded(FamilySpec(args.family, params), seed)


def _seeded(spec: FamilySpec, seed):
    if spec.family == "conjugate" and "seed" not in spec.params and seed is not None:
        spec = FamilySpec(spec.family, {**spec.params, "seed": str(seed)})
    return spec


def read_input(text: str | None, args, seed=None):
    """Resolve an input to ``(source, raw_text, names, matrices, field)``.

    ``text`` is a file path (representation file or JSON family spec) or an
    inline ``family:key=value,...`` spec.  With no ``text`` the ``--family``
    flags are used.
    """
    if text is None:
        spec = _spec_from_flags(args, seed)
        if spec is None:
            raise UsageError("no input: give a file, a family spec or --family")
        return _from_spec(spec)
    if os.path.exists(text):
        with open(text) as fh:
            raw = fh.read()
        if raw.lstrip().startswith("{"):
            try:
                spec = FamilySpec.from_dict(json.loads(raw))
            except json.JSONDecodeError as e:
                raise InputError(f"{text}: bad JSON family spec: {e}") from None
            return _from_spec(_seeded(spec, seed), source=text)
        names, mats, fld = loads_matrices(raw)
        return text, raw, names, mats, fld
    return _from_spec(_seeded(FamilySpec.parse(text), seed))


def _from_spec(spec: FamilySpec, source=None):
    rep = spec.build()
    raw = json.dumps(spec.to_dict(), sort_keys=True)
    return source or spec.describe(), raw, rep.names, rep.matrices, rep.field


def load_input(text, args, report: Report, seed=None) -> ReflectionRep:
    source, raw, names, mats, fld = read_input(text, args, seed)
    report.inputs.append({"source": source, "digest": digest(raw)})
    return ReflectionRep.from_matrices(mats, names, fld)


# -- commands -------------------------------------------------------------------


def cmd_validate(args) -> Report:
    report = Report("validate", seed=args.seed)
    source, raw, names, mats, fld = read_input(args.input, args, args.seed)
    report.inputs.append({"source": source, "digest": digest(raw)})
    for name, m in zip(names, mats):
        try:
            g = validate_reflection(m, name)
        except ReflectionError as e:
            report.add(f"reflection {name}", "fail", error=type(e).__name__, message=str(e))
        except InputError as e:
            report.add(f"reflection {name}", "fail", error="InputError", message=str(e))
        else:
            report.add(
                f"reflection {name}",
                "pass",
                alpha=_fmt_vec(g.alpha),
                eigenvalue=format_scalar(g.eigenvalue),
                field=fld.describe(),
            )
    return report


def cmd_analyze(args) -> Report:
    report = Report("analyze", seed=args.seed)
    rep = load_input(args.input, args, report, args.seed)
    sections = [s for s in ("digraph", "dot", "simple") if getattr(args, s)]
    if not sections and args.exterior is None:
        sections = ["digraph", "simple"]
    g = dg.associated_digraph(rep)
    if "digraph" in sections:
        report.add(
            "digraph",
            "pass",
            vertices=list(rep.names),
            arrows=[f"{g.label(i)}->{g.label(j)}" for i, j in sorted(g.arrows)],
            weakly_connected=dg.is_weakly_connected(g),
            strongly_connected=dg.is_strongly_connected(g),
        )
    if "dot" in sections:
        report.add("dot", "pass", dot=dg.to_dot(g))
    if "simple" in sections:
        cert = is_simple(rep, seed=args.seed or 0)
        verdict = "inconclusive" if cert.verdict == "Undecided" else "pass"
        if not cert.recheck(rep):
            verdict = "fail"
        report.add("simplicity", verdict, **cert.to_dict())
    if args.exterior is not None:
        d = args.exterior
        if not 0 <= d <= rep.dim:
            raise UsageError(f"--exterior must be between 0 and {rep.dim}")
        ext = exterior_power(rep, d)
        n = rep.dim
        want = (comb(n - 1, d), comb(n - 1, d - 1) if d else 0)
        rows = []
        ok = True
        for name, (plus, minus) in zip(rep.names, eigen_dimension_table(ext)):
            rows.append({"generator": name, "plus": plus, "minus": minus})
            ok = ok and (plus, minus) == want
        report.add(
            f"eigenspace dimensions d={d}",
            "pass" if ok else "fail",
            dim=ext.dim,
            expected={"plus": want[0], "minus": want[1]},
            table=rows,
        )
    return report


def cmd_theorem1(args) -> Report:
    report = Report("theorem1", seed=args.seed)
    rep = load_input(args.input, args, report, args.seed)
    try:
        res = check_theorem1(rep)
    except TheoremInapplicable as e:
        cert = is_simple(rep, seed=args.seed or 0)
        report.add("theorem1", "inapplicable", reason=str(e), base=cert.to_dict())
        return report
    body = res.to_dict()
    verdicts = {c.verdict for c in res.certificates.values()}
    if verdicts == {"Simple"}:
        simple = "pass"
    elif "NotSimple" in verdicts:
        simple = "fail"
    else:
        simple = "inconclusive"
    report.add("exterior powers simple", simple, certificates=body["certificates"])
    homs_ok = all(v == 0 for v in res.hom_dims.values())
    report.add("pairwise non-isomorphic", "pass" if homs_ok else "fail", hom_dims=body["hom_dims"])
    if not args.no_oracle:
        orc = finite_group_character_oracle(rep, cap=args.oracle_cap)
        if orc.status != "complete":
            report.add("character oracle", "inconclusive", reason=f"group larger than {args.oracle_cap}")
        else:
            report.add("character oracle", "pass" if orc.agree else "fail", **orc.to_dict())
    return report


def cmd_theorem2(args) -> Report:
    report = Report("theorem2", seed=args.seed)
    rep1 = load_input(args.input1, args, report, args.seed)
    rep2 = load_input(args.input2, args, report, args.seed)
    try:
        res = check_theorem2(rep1, args.d1, rep2, args.d2, i0=args.i0)
    except TheoremInapplicable as e:
        report.add("theorem2", "inapplicable", reason=str(e))
        return report
    except StructureViolation as e:
        report.add("theorem2", "fail", error="StructureViolation", message=str(e),
                   context={k: str(v) for k, v in e.context.items()})
        return report
    body = res.to_dict()
    body["result"] = "isomorphic" if res.isomorphic else "not isomorphic"
    report.add("theorem2", "pass" if res.consistent else "fail", **body)
    return report


def cmd_lift(args) -> Report:
    report = Report("lift", seed=args.seed)
    rep1 = load_input(args.input1, args, report, args.seed)
    rep2 = load_input(args.input2, args, report, args.seed)
    d = args.d
    if not 1 <= d < min(rep1.dim, rep2.dim):
        raise UsageError(f"need 1 <= d <= n - 1, got d={d}")
    H = hom_space(exterior_power(rep1, d), exterior_power(rep2, d))
    if H.dim != 1:
        report.add("psi", "fail", hom_dim=H.dim, reason="need a one-dimensional hom space")
        return report
    psi = H.basis[0]
    report.add("psi", "pass", hom_dim=1, psi=_fmt_mat(psi))
    try:
        res = lift_isomorphism(rep1, rep2, d, d, psi, i0=args.i0)
    except StructureViolation as e:
        report.add("lift", "fail", error="StructureViolation", message=str(e),
                   context={k: str(v) for k, v in e.context.items()})
        return report
    report.add("lift", "pass", **res.to_dict())
    return report


def _sweep(args):
    swept = [k for k in ("n", "x", "m") if getattr(args, k) is not None and "," in str(getattr(args, k))]
    if len(swept) > 1:
        raise UsageError("sweep one parameter at a time")
    if swept:
        key = swept[0]
    else:
        key = {"affineA": "x", "dihedral": "m", "symmetric": "n"}.get(args.family, "x")
    raw = getattr(args, key)
    values = [] if raw is None else [v.strip() for v in str(raw).split(",") if v.strip()]
    fixed = {k: str(getattr(args, k)) for k in ("n", "x", "m") if k != key and getattr(args, k) is not None}
    return key, values, fixed


def cmd_catalog(args) -> Report:
    report = Report("catalog", seed=args.seed)
    if not args.family:
        raise UsageError("catalog needs --family")
    key, values, fixed = _sweep(args)
    entries = []
    for val in values:
        spec = FamilySpec(args.family, {**fixed, key: val})
        progress(f"catalog: {spec.describe()}")
        rep = spec.build()
        report.inputs.append({"source": spec.describe(), "digest": digest(dumps_rep(rep))})
        label = f"{key}={val}"
        cert = is_simple(rep, seed=args.seed or 0)
        if cert.verdict == "NotSimple":
            report.add(f"base {label}", "pass", reducible=True, **cert.to_dict())
            try:
                rep = quotient_rep(rep, cert.subspace)
            except (InputError, ReflectionError) as e:
                report.add(f"quotient {label}", "inconclusive", reason=str(e))
                continue
            label += "/quotient"
            qcert = is_simple(rep, seed=args.seed or 0)
            if not qcert.is_simple:
                report.add(f"quotient {label}", "inconclusive", **qcert.to_dict())
                continue
        elif not cert.is_simple:
            report.add(f"base {label}", "inconclusive", **cert.to_dict())
            continue
        for d in range(1, rep.dim):
            ext = exterior_power(rep, d)
            c = is_simple(ext, seed=args.seed or 0)
            entries.append((label, d, ext, c))
    inventory = [
        {"label": lab, "d": d, "dim": ext.dim, "simple": c.verdict} for lab, d, ext, c in entries
    ]
    simple_ok = all(c.is_simple for *_, c in entries)
    report.add("inventory", "pass" if simple_ok else "fail", size=len(entries), entries=inventory)
    clashes = []
    for a in range(len(entries)):
        for b in range(a + 1, len(entries)):
            ea, eb = entries[a], entries[b]
            if ea[2].dim != eb[2].dim:
                continue
            progress(f"catalog: hom({ea[0]} d={ea[1]}, {eb[0]} d={eb[1]})")
            h = hom_space(ea[2], eb[2]).dim
            if h:
                clashes.append({"first": f"{ea[0]} d={ea[1]}", "second": f"{eb[0]} d={eb[1]}", "hom_dim": h})
    report.add("pairwise non-isomorphic", "pass" if not clashes else "fail", clashes=clashes)
    return report


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "theorem1": cmd_theorem1,
    "theorem2": cmd_theorem2,
    "lift": cmd_lift,
    "catalog": cmd_catalog,
}


# -- argument parsing -----------------------------------------------------------


def _add_common(p):
    p.add_argument("--json", action="store_true", help="emit the machine report (report-v1)")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized steps")
    p.add_argument("--timing", action="store_true", help="record wall-clock time in the report")


def _add_family(p):
    g = p.add_argument_group("family spec")
    g.add_argument("--family", help="symmetric, dihedral, affineA, triangle, custom-file, conjugate")
    g.add_argument("--n")
    g.add_argument("--x")
    g.add_argument("--m")
    g.add_argument("--of", help="base family for --family conjugate")
    g.add_argument("--path", help="file for --family custom-file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reflex",
        description="Exterior powers of reflection representations.",
        epilog=f"Representation files start with the line '{FILE_HEADER}'.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that every generator is a generalized reflection")
    p.add_argument("input", nargs="?")
    _add_family(p)
    _add_common(p)

    p = sub.add_parser("analyze", help="digraph, simplicity and eigenspace dimensions")
    p.add_argument("input", nargs="?")
    p.add_argument("--digraph", action="store_true")
    p.add_argument("--dot", action="store_true", help="include Graphviz DOT text")
    p.add_argument("--simple", action="store_true")
    p.add_argument("--exterior", type=int, metavar="D")
    _add_family(p)
    _add_common(p)

    p = sub.add_parser("theorem1", help="simplicity and non-isomorphism of all exterior powers")
    p.add_argument("input", nargs="?")
    p.add_argument("--no-oracle", action="store_true", help="skip the finite-group character check")
    p.add_argument("--oracle-cap", type=int, default=1000)
    _add_family(p)
    _add_common(p)

    p = sub.add_parser("theorem2", help="compare exterior powers of two representations")
    p.add_argument("input1")
    p.add_argument("d1", type=int)
    p.add_argument("input2")
    p.add_argument("d2", type=int)
    p.add_argument("--i0", type=int, default=None, help="base vertex for the lifting walk")
    _add_common(p)

    p = sub.add_parser("lift", help="lift an exterior-power isomorphism to degree one")
    p.add_argument("input1")
    p.add_argument("input2")
    p.add_argument("d", type=int)
    p.add_argument("--i0", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("catalog", help="sweep a family and list its simple exterior powers")
    _add_family(p)
    _add_common(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except (UsageError, InputError) as e:
        print(f"reflex: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"reflex: error: {e}", file=sys.stderr)
        return 2
    except ReflectionError as e:
        report = Report(args.command, seed=args.seed)
        report.add("input", "fail", error=type(e).__name__, message=str(e))
    except NotIrreducibleEvidence as e:
        report = Report(args.command, seed=args.seed)
        report.add("input", "fail", error="NotIrreducibleEvidence", message=str(e))
    if args.timing:
        report.timing = round(time.perf_counter() - start, 6)
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
