"""Command line front end.

Exit codes: 0 success or optimal, 1 verified non-optimal or unrecoverable,
2 usage or precondition error, 3 work cap exceeded.  Artifacts go to
``--out`` (or stdout); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .codec import decode_erasures, encode, local_repair
from .construct import (LrcCode, construct_a, construct_a_repeated, construct_b,
                        from_hypergraph_a, from_hypergraph_b)
from .errors import DecodeFailure, FieldMismatchError, ParameterError, WorkCapExceeded
from .extend import (GsdCode, HlrcCode, gsd_construct_c, gsd_construct_d, gsd_verify,
                     hlrc_bound_check, hlrc_construct)
from .galois import parse_field_spec
from .hypergraph import (FreenessSpec, Hypergraph, degree_violation, greedy_sparse,
                         random_sparse, simultaneous_violation)
from .verify import (CODEWORD_CAP, SUBSET_CAP, applicable_bound, distance_search, lemma_nk,
                     singleton_bound, singleton_report, verify_locality)

OK, FALSE, USAGE, CAP = 0, 1, 2, 3


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_list(text: str) -> list[int]:
    """``"0,1,5-8"`` -> ``[0, 1, 5, 6, 7, 8]``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def parse_groups(text: str) -> list[list[int]]:
    """Groups separated by ``;``, each a :func:`parse_list` string."""
    return [parse_list(g) for g in text.split(";") if g.strip()]


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


def _field(args):
    if not args.field:
        raise ParameterError("--field is required")
    modulus = parse_list(args.modulus) if args.modulus else None
    return parse_field_spec(args.field, modulus)


def _text(obj) -> str:
    if isinstance(obj, dict):
        lines = []
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, bool):
                val = str(val).lower()
            elif isinstance(val, (dict, list)):
                val = json.dumps(val, sort_keys=True)
            lines.append(f"{key}={val}")
        return "\n".join(lines) + "\n"
    return json.dumps(obj) + "\n"


def _emit(args, obj, text: str | None = None):
    out = canonical_json(obj) if args.format == "json" else (text or _text(obj))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _code_from(path: str):
    obj = _load(path)
    if "middle" in obj:
        return HlrcCode.from_json(obj)
    return LrcCode.from_json(obj)


def _word(path: str) -> list:
    obj = _load(path)
    return obj["word"] if isinstance(obj, dict) else obj


# -- subcommands --------------------------------------------------------------

def cmd_construct_a(args):
    if args.hypergraph:
        hg = Hypergraph.from_json(_load(args.hypergraph))
        f = hg.field or _field(args)
        code = from_hypergraph_a(hg, args.r, args.delta, args.d, f)
    else:
        f = _field(args)
        groups = parse_groups(args.groups)
        if args.repeat:
            if len(groups) != 1:
                raise ParameterError("--repeat takes exactly one group")
            code = construct_a_repeated(f, groups[0], args.repeat, args.r, args.delta, args.d)
        else:
            code = construct_a(f, groups, args.r, args.delta, args.d)
    _emit(args, code.to_json(), code.parity_check.to_text() + "\n")
    return OK


def cmd_construct_b(args):
    glob = parse_list(args.global_set) if args.global_set else []
    if args.hypergraph:
        hg = Hypergraph.from_json(_load(args.hypergraph))
        f = hg.field or _field(args)
        code = from_hypergraph_b(hg, glob, args.r, args.delta, args.v, args.h, f)
    else:
        code = construct_b(_field(args), parse_groups(args.groups), glob, args.r, args.delta,
                           args.v, args.h)
    _emit(args, code.to_json(), code.parity_check.to_text() + "\n")
    return OK


def cmd_hypergraph_gen(args):
    f = _field(args)
    verts = parse_list(args.vertices) if args.vertices else list(range(f.q))
    if args.exclude:
        drop = set(parse_list(args.exclude))
        verts = [v for v in verts if v not in drop]
    spec = FreenessSpec(args.delta, args.mu)
    if args.method == "greedy":
        hg = greedy_sparse(verts, args.R, spec, args.seed, f, args.cap_subsets)
    else:
        p = args.p if args.p == "auto" else float(args.p)
        hg = random_sparse(verts, args.R, spec, p, args.seed, f, args.cap_subsets)
    _emit(args, hg.to_json())
    return OK


def cmd_hypergraph_check(args):
    hg = Hypergraph.from_json(_load(args.hypergraph))
    bad = simultaneous_violation(hg, FreenessSpec(args.delta, args.mu), args.cap_subsets)
    report = {"free": bad is None, "edges": len(hg.edges),
              "violation": None if bad is None else {"i": bad[0], "edges": [list(e) for e in bad[1]]}}
    ok = bad is None
    if args.regular is not None:
        deg = degree_violation(hg, args.regular)
        report["regular"] = deg is None
        if deg is not None:
            report["degree_violation"] = {"vertex": deg[0], "degree": deg[1]}
        ok = ok and deg is None
    _emit(args, report)
    return OK if ok else FALSE


def _verify_report(code, args) -> tuple[dict, bool]:
    res = distance_search(code, args.method, args.cap_codewords, args.cap_subsets)
    if isinstance(code, HlrcCode):
        mid = code.middle
        defect = hlrc_bound_check(code.n, code.k, res.d, code.r1, code.delta1, mid.r, mid.delta)
        loc = verify_locality(mid)
        report = {"n": code.n, "k": code.k, "d_measured": res.d, "bound_used": 13,
                  "defect": defect, "locality_ok": loc}
        ok = defect == 0 and loc
    else:
        rep = singleton_report(code, res.d)
        report = rep.to_json()
        ok = rep.optimal
    report.update({"method": res.method, "work_performed": res.work,
                   "witness_support": list(res.support)})
    return report, ok


def cmd_verify(args):
    code = _code_from(args.code)
    report, ok = _verify_report(code, args)
    _emit(args, report)
    return OK if ok else FALSE


def cmd_encode(args):
    code = _code_from(args.code)
    _emit(args, encode(code, parse_list(args.message)))
    return OK


def cmd_decode(args):
    code = _code_from(args.code)
    try:
        word = decode_erasures(code, _word(args.word))
    except DecodeFailure as exc:
        print(f"decode failed ({exc.reason}): {exc}", file=sys.stderr)
        return FALSE
    _emit(args, word)
    return OK


def cmd_repair(args):
    code = _code_from(args.code)
    word = list(_word(args.word))
    res = local_repair(code, word, args.block)
    for i, x in res.values.items():
        word[i] = x
    _emit(args, {"read": list(res.read), "repaired": {str(i): x for i, x in sorted(res.values.items())},
                 "word": word})
    return OK


def cmd_hlrc(args):
    f = _field(args)
    groups = parse_groups(args.groups)
    code = hlrc_construct(f, len(groups), args.r2, args.delta2, args.d2, groups, args.m1, args.r1)
    obj = code.to_json()
    ok = True
    if args.check:
        obj["report"], ok = _verify_report(code, args)
    _emit(args, obj, code.parity_check.to_text() + "\n")
    return OK if ok else FALSE


def cmd_gsd_build(args):
    if args.construction == "C":
        g = gsd_construct_c(_field(args), args.r, args.delta, args.h, args.l,
                            parse_list(args.S), parse_list(args.G))
    else:
        hg = Hypergraph.from_json(_load(args.hypergraph))
        f = hg.field or _field(args)
        g = gsd_construct_d(f, args.r, args.delta, args.v, args.t, hg, parse_list(args.S),
                            args.cap_subsets)
    _emit(args, g.to_json())
    return OK


def cmd_gsd_verify(args):
    g = GsdCode.from_json(_load(args.gsd))
    pairs = [(args.gamma, args.s)] if args.gamma is not None else list(g.claims)
    if args.gamma is not None and args.s is None:
        raise ParameterError("--s is required with --gamma")
    results, ok = [], True
    for gamma, s in pairs:
        res = gsd_verify(g, gamma, s, args.budget)
        ok = ok and res.ok
        results.append({"gamma": gamma, "s": s, "recoverable": res.ok, "patterns": res.patterns,
                        "exceeds_distance": res.exceeds_distance,
                        "counterexample": None if res.counterexample is None else {
                            "columns": list(res.counterexample[0]),
                            "sectors": [list(c) for c in res.counterexample[1]]}})
    _emit(args, {"results": results})
    return OK if ok else FALSE


def cmd_bound(args):
    obj = {}
    ok = True
    if args.k is None:
        res = lemma_nk(args.n, args.r, args.delta, args.d)
        obj.update({"nk": res.nk, "k": res.k, "consistent": res.consistent})
        ok = res.consistent
    else:
        which = applicable_bound(args.n, args.r, args.delta, args.d)
        b1 = singleton_bound(args.n, args.k, args.r, args.delta, 1)
        obj.update({"bound_1": b1, "bound_used": which,
                    "d_bound": singleton_bound(args.n, args.k, args.r, args.delta, which)})
        obj["defect"] = obj["d_bound"] - args.d
        if args.r1 is not None:
            obj["defect_hierarchical"] = hlrc_bound_check(args.n, args.k, args.d, args.r1,
                                                          args.delta1, args.r, args.delta)
        ok = obj["defect"] == 0 if args.r1 is None else obj["defect_hierarchical"] == 0
    _emit(args, obj)
    return OK if ok else FALSE


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field size as p or p^e")
    common.add_argument("--modulus", help="comma-separated modulus coefficients, low to high")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap-codewords", type=int, default=CODEWORD_CAP)
    common.add_argument("--cap-subsets", type=int, default=SUBSET_CAP)
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=["json", "text"], default="json")

    p = argparse.ArgumentParser(prog="hyperlrc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("construct-a", cmd_construct_a, "build a Construction A code")
    sp.add_argument("--groups", help="groups such as '0-4;4-8'")
    sp.add_argument("--hypergraph", help="hypergraph JSON; one group per edge")
    sp.add_argument("--repeat", type=int, help="use m copies of the single group")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)

    sp = add("construct-b", cmd_construct_b, "build a Construction B code")
    sp.add_argument("--groups")
    sp.add_argument("--hypergraph")
    sp.add_argument("--global", dest="global_set", help="global set such as '10-12'")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)

    sp = add("hypergraph-gen", cmd_hypergraph_gen, "generate a sparse uniform hypergraph")
    sp.add_argument("--vertices", help="vertex list (default: every field element)")
    sp.add_argument("--exclude", help="vertices to drop")
    sp.add_argument("--R", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--mu", type=int, required=True)
    sp.add_argument("--method", choices=["greedy", "random"], default="greedy")
    sp.add_argument("--p", default="auto", help="edge probability for --method random")

    sp = add("hypergraph-check", cmd_hypergraph_check, "certify freeness (and regularity)")
    sp.add_argument("--hypergraph", required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--mu", type=int, required=True)
    sp.add_argument("--regular", type=int, help="also require every degree to equal this")

    sp = add("verify", cmd_verify, "measure distance and check optimality")
    sp.add_argument("--code", required=True)
    sp.add_argument("--method", choices=["auto", "codewords", "columns"], default="auto")

    sp = add("encode", cmd_encode, "encode a message")
    sp.add_argument("--code", required=True)
    sp.add_argument("--message", required=True, help="comma-separated symbols")

    sp = add("decode", cmd_decode, "fill erasures (null entries) in a word")
    sp.add_argument("--code", required=True)
    sp.add_argument("--word", required=True)

    sp = add("repair", cmd_repair, "repair one block from its local parities")
    sp.add_argument("--code", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--block", type=int, required=True)

    sp = add("hlrc", cmd_hlrc, "build a hierarchical code")
    sp.add_argument("--groups", required=True, help="middle-code groups")
    sp.add_argument("--r2", type=int, required=True)
    sp.add_argument("--delta2", type=int, required=True)
    sp.add_argument("--d2", type=int, required=True)
    sp.add_argument("--m1", type=int, required=True)
    sp.add_argument("--r1", type=int, required=True)
    sp.add_argument("--check", action="store_true", help="also measure distance and bound")
    sp.add_argument("--method", choices=["auto", "codewords", "columns"], default="auto")

    sp = add("gsd-build", cmd_gsd_build, "build a sector-disk array code")
    sp.add_argument("--construction", choices=["C", "D"], required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--h", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--v", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--S", required=True, help="global set")
    sp.add_argument("--G", help="the repeated group (construction C)")
    sp.add_argument("--hypergraph", help="t-regular hypergraph JSON (construction D)")

    sp = add("gsd-verify", cmd_gsd_verify, "check (gamma, s) recoverability")
    sp.add_argument("--gsd", required=True)
    sp.add_argument("--gamma", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--budget", type=int, default=10 ** 6)

    sp = add("bound", cmd_bound, "evaluate redundancy identity and distance bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, help="evaluate the bounds for this dimension")
    sp.add_argument("--r1", type=int, help="outer locality for the hierarchical bound")
    sp.add_argument("--delta1", type=int)
    return p


def _check_required(args):
    need = {
        ("gsd-build", "C"): ("h", "l", "G"),
        ("gsd-build", "D"): ("v", "t", "hypergraph"),
    }.get((args.command, getattr(args, "construction", None)), ())
    for name in need:
        if getattr(args, name) is None:
            raise ParameterError(f"--{name} is required for construction {args.construction}")
    if args.command in ("construct-a", "construct-b") and not (args.groups or args.hypergraph):
        raise ParameterError("give --groups or --hypergraph")
    if args.command == "bound" and args.r1 is not None and args.delta1 is None:
        raise ParameterError("--r1 needs --delta1")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        _check_required(args)
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except WorkCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP
    except (ParameterError, FieldMismatchError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
