"""Command-line front end.

Examples::

    liftings gb "x0^2, x0*x1+x1^2, x0*x2"
    liftings hilbert "x0^2, x0*x1+x1^2, x0*x2" --upto 6
    liftings qs-check "x0^2, x0*x1, x1^3" --nvars 3
    liftings enumerate "x0, x1^2" --hp "2t+2"
    liftings lifting-gs "x0^2, x0*x1+x1^2, x0*x2" --hp "t^2+4t+1" --json charts.json
    liftings verify "x0^2+x3^2, x0*x1, x0*x2, x1^2, x1*x2" --against "x0, x1"
    liftings member "<ideal>" --chart charts.json

Exit codes: 0 success, 2 parse error, 3 precondition failure, 4 internal
bound violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys

from . import __version__
from .core import ContextError
from .enumeration import NotAdmissible
from .groebner import PreconditionError, buchberger, verify_lifting
from .lifting import LiftingProblem, chart_contains, chart_from_dict, lifting_gs, lifting_ms
from .monomial import NotQuasiStable
from .parametric import ReductionLoop
from .parse import ParseError, infer_ring, parse_hilbert_poly, parse_monomial_ideal, parse_polys
from .sampling import SamplingFailed, sample_point, seeded

SCHEMA_VERSION = 1

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BOUND = 4

log = logging.getLogger("liftings")


def _hp(text: str):
    # accept "4t" as well as "4*t"
    return parse_hilbert_poly(re.sub(r"(\d)\s*t", r"\1*t", text))


def _highest(*texts) -> int:
    return max((int(k) for t in texts for k in re.findall(r"x(\d+)", t)), default=0)


def _ideal(text, nvars=None, ring=None):
    ring, polys = parse_polys(text, ring=ring, nvars=nvars)
    if not polys:
        log.warning("empty generator list: the zero ideal")
    return ring, polys


def _out(args, data: dict, text_lines):
    if args.json:
        payload = json.dumps(data, indent=2, ensure_ascii=False)
        if args.json == "-":
            print(payload)
        else:
            with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(payload + "\n")
            print(f"wrote {args.json}")
        if args.json == "-":
            return
    for line in text_lines:
        print(line)


# ---------- subcommands ----------

def cmd_gb(args):
    ring, polys = _ideal(args.ideal, args.nvars)
    G = buchberger(polys, ring)
    J = G.initial_ideal()
    data = {"schema_version": SCHEMA_VERSION, "ring": {"vars": list(ring.names)}, "groebner_basis": [str(g) for g in G], "initial_ideal": str(J)}
    _out(args, data, [f"reduced Groebner basis: {G}", f"initial ideal: {J}"])
    return 0


def cmd_hilbert(args):
    ring, polys = _ideal(args.ideal, args.nvars)
    J = buchberger(polys, ring).initial_ideal()
    hp = J.hilbert_polynomial()
    upto = args.upto if args.upto is not None else max(J.hilbert_regularity(), J.max_degree()) + 2
    table = [J.hilbert_function(t) for t in range(upto + 1)]
    data = {
        "schema_version": SCHEMA_VERSION,
        "ring": {"vars": list(ring.names)},
        "hilbert_function": table,
        "hilbert_polynomial": str(hp),
        "regularity": J.hilbert_regularity(),
    }
    lines = [f"h({t}) = {v}" for t, v in enumerate(table)]
    lines.append(f"Hilbert polynomial: {hp}  (agrees with h from t = {J.hilbert_regularity()})")
    _out(args, data, lines)
    return 0


def cmd_qs_check(args):
    J = parse_monomial_ideal(args.ideal, nvars=args.nvars)
    wit = J.quasi_stability_witness()
    data = {"schema_version": SCHEMA_VERSION, "ring": {"vars": list(J.ring.names)}, "ideal": str(J), "quasi_stable": wit is None}
    if wit is None:
        P = J.pommaret_basis()
        data["pommaret_basis"] = [J.ring.format_term(p) for p in P]
        lines = [f"{J} is quasi-stable", "Pommaret basis: " + ", ".join(data["pommaret_basis"])]
    else:
        g, j = wit
        data["witness"] = {"generator": J.ring.format_term(g), "variable": J.ring.names[j]}
        lines = [f"{J} is not quasi-stable: no power of {J.ring.names[j]} times {J.ring.format_term(g)}/min lies in the ideal"]
    _out(args, data, lines)
    return 0


def _problem(args):
    # I' lives in K[x0..x_{n-1}] with x_{n-1} generic, so by default one
    # variable beyond the highest one written is added
    ring, polys = _ideal(args.ideal, args.nvars or _highest(args.ideal) + 2)
    return LiftingProblem(polys, _hp(args.hp))


def _problem_dict(P: LiftingProblem) -> dict:
    return {"Iprime": [str(g) for g in P.Iprime], "hp": str(P.p)}


def cmd_enumerate(args):
    P = _problem(args)
    lifts = P.monomial_liftings()
    data = {
        "schema_version": SCHEMA_VERSION,
        "ring": {"vars": list(P.ring.names)},
        "problem": _problem_dict(P),
        "pool_size": P.pool_size,
        "liftings": [str(J) for J in lifts],
    }
    lines = [f"in(I') = {P.Jprime}", f"saturated quasi-stable ideals with Hilbert polynomial {P.p}: {P.pool_size}", f"monomial liftings: {len(lifts)}"]
    lines += [f"  {J}" for J in lifts]
    _out(args, data, lines)
    return 0


def _chart_lines(k, ch) -> list:
    head = f"chart {k + 1}: {ch.kind} over J = {ch.J}" + (f", m = {ch.m}" if ch.m is not None else "")
    if ch.empty:
        return [head, f"  empty: {ch.info.get('reason')}"]
    lines = [head, f"  free parameters: {', '.join(ch.alpha.names[i] for i in ch.free_params()) or 'none'}", "  family:"]
    for f in ch.family.polys():
        lines.append(f"    {f}")
    lines.append(f"  constraints: {len(ch.reduced)} non-linear generators, {len(ch.substitution)} solved parameters")
    for g in ch.reduced.gens:
        lines.append(f"    {g}")
    return lines


def _self_check(args, P, charts) -> list:
    rng = seeded(args.seed)
    lines = []
    for k, ch in enumerate(charts):
        if ch.empty:
            continue
        try:
            pt = sample_point(ch, rng)
        except SamplingFailed as e:
            lines.append(f"self-check chart {k + 1}: no sample ({e})")
            continue
        rep = verify_lifting(ch.specialize(pt), P.Iprime)
        ok = rep.is_lifting and rep.hp == P.p
        lines.append(f"self-check chart {k + 1}: {'ok' if ok else 'FAILED'}")
    return lines


def _cmd_charts(args, charts, P):
    data = {
        "schema_version": SCHEMA_VERSION,
        "ring": {"vars": list(P.ring.names)},
        "problem": _problem_dict(P),
        "charts": [ch.as_dict() for ch in charts],
    }
    lines = [f"{len(charts)} charts for the liftings of I' = ({', '.join(str(g) for g in P.Iprime)}) with Hilbert polynomial {P.p}"]
    for k, ch in enumerate(charts):
        lines += _chart_lines(k, ch)
    if args.self_check:
        lines += _self_check(args, P, charts)
    _out(args, data, lines)
    return 0


def cmd_lifting_gs(args):
    P = _problem(args)
    return _cmd_charts(args, lifting_gs(P, strategy=args.strategy, jobs=args.jobs), P)


def cmd_lifting_ms(args):
    P = _problem(args)
    return _cmd_charts(args, lifting_ms(P, symbolic=not args.numeric, jobs=args.jobs), P)


def cmd_verify(args):
    ring_p, Ip = _ideal(args.against, args.nvars or max(_highest(args.against) + 2, _highest(args.ideal)))
    ring = ring_p.extend()
    _, I = _ideal(args.ideal, ring=ring)
    rep = verify_lifting(I, Ip, ring, ring_p)
    data = {"schema_version": SCHEMA_VERSION, "ring": {"vars": list(ring.names)}, "report": rep.as_dict()}
    lines = [
        f"lifting: {'true' if rep.is_lifting else 'false'}",
        f"  saturated: {rep.saturated}, {ring.names[-1]} generic: {rep.generic}, section saturates to I': {rep.section_ok}",
        f"  {ring.names[-1]}-lifting: {rep.xn_lifting}",
        f"  Hilbert polynomial {rep.hp}; Δ = {rep.hp.delta()} vs {rep.hp_target} for I': {'ok' if rep.delta_ok else 'mismatch'}",
    ]
    lines += [f"  note: {n}" for n in rep.notes]
    _out(args, data, lines)
    return 0


def cmd_member(args):
    with open(args.chart, encoding="utf-8") as fh:
        doc = json.load(fh)
    names = doc["ring"]["vars"]
    ring = infer_ring(names, nvars=len(names))
    P = None
    if "problem" in doc:
        ring_p = ring.drop_last()
        _, Ip = parse_polys(", ".join(doc["problem"]["Iprime"]), ring=ring_p)
        P = LiftingProblem(Ip, _hp(doc["problem"]["hp"]))
    _, I = _ideal(args.ideal, ring=ring)
    G = buchberger(I, ring)
    results = []
    lines = []
    for k, d in enumerate(doc["charts"]):
        if args.index is not None and k != args.index - 1:
            continue
        ch = chart_from_dict(d, ring, P)
        pt = ch.point_of(G)
        member = pt is not None and chart_contains(ch, G)
        named = {ch.alpha.names[i]: str(v) for i, v in sorted(pt.items()) if v} if pt is not None else None
        results.append({"chart": k + 1, "kind": ch.kind, "J": str(ch.J), "member": member, "point": named})
        where = "outside the chart's frame" if pt is None else ("non-zero coordinates " + (", ".join(f"{a}={b}" for a, b in named.items()) or "none"))
        lines.append(f"chart {k + 1} ({ch.kind} over {ch.J}): {'member' if member else 'not a member'}; {where}")
    data = {"schema_version": SCHEMA_VERSION, "ring": {"vars": list(ring.names)}, "results": results}
    _out(args, data, lines)
    return 0


# ---------- parser ----------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liftings", description="Liftings of projective schemes via Groebner strata and marked families.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, hp=False):
        p.add_argument("ideal", help="comma-separated generators, e.g. \"x0^2, x0*x1+x1^2\"")
        p.add_argument("--nvars", type=int, help="number of variables (default: highest index used + 1; + 2 for I' in lifting commands)")
        p.add_argument("--json", metavar="FILE", help="write JSON to FILE ('-' for stdout)")
        if hp:
            p.add_argument("--hp", required=True, help="target Hilbert polynomial in t, e.g. \"t^2+4t+1\"")

    p = sub.add_parser("gb", help="reduced Groebner basis and initial ideal (degrevlex)")
    common(p)
    p.set_defaults(fn=cmd_gb)

    p = sub.add_parser("hilbert", help="Hilbert function table and polynomial")
    common(p)
    p.add_argument("--upto", type=int, help="last degree of the table")
    p.set_defaults(fn=cmd_hilbert)

    p = sub.add_parser("qs-check", help="quasi-stability of a monomial ideal")
    common(p)
    p.set_defaults(fn=cmd_qs_check)

    p = sub.add_parser("enumerate", help="quasi-stable monomial liftings of in(I')")
    common(p, hp=True)
    p.set_defaults(fn=cmd_enumerate)

    for name, fn, helptext in (
        ("lifting-gs", cmd_lifting_gs, "charts by Groebner strata"),
        ("lifting-ms", cmd_lifting_ms, "charts by marked families"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p, hp=True)
        p.add_argument("--jobs", type=int, default=1, help="compute charts in parallel")
        p.add_argument("--self-check", action="store_true", help="sample one point per chart and verify it")
        p.add_argument("--seed", type=int, default=0, help="seed for --self-check sampling")
        if name == "lifting-gs":
            p.add_argument("--strategy", choices=("first", "last"), default="first", help="reducer choice for S-polynomials")
        else:
            p.add_argument("--numeric", action="store_true", help="skip the symbolic constraints (membership recomputes them)")
        p.set_defaults(fn=fn)

    p = sub.add_parser("verify", help="decide whether I is a lifting of I'")
    p.add_argument("ideal")
    p.add_argument("--against", required=True, help="the ideal I' (one variable fewer)")
    p.add_argument("--nvars", type=int, help="number of variables of I' (default: highest index used + 2)")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("member", help="membership of I in the charts of a JSON chart file")
    p.add_argument("ideal")
    p.add_argument("--chart", required=True, help="JSON file written by lifting-gs/lifting-ms --json")
    p.add_argument("--index", type=int, help="only the chart with this 1-based index")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(fn=cmd_member)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, json.JSONDecodeError, KeyError) as e:  # unreadable or malformed chart file
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, NotAdmissible, NotQuasiStable, ContextError) as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ReductionLoop, SamplingFailed, OverflowError) as e:
        print(f"bound violated: {e}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
