"""Command-line front door.

Every subcommand prints one RunReport as sorted JSON on stdout and exits
0 when the query was decided / the object was produced, 2 when the answer
is Unknown (fuel ran out, a semidecision did not settle, an oracle refused),
and 1 on usage or parse errors.  Reports are deterministic for fixed argv.
"""

import argparse
import json
import os
import sys

from . import gadgets as _gadgets
from . import problems as _problems
from . import search as _search
from . import spaces as _spaces
from . import specs as _specs
from . import suites as _suites
from .errors import (FuelExhausted, OracleRefused, PatternNeverSeen,
                     StreamGraphsError, UnknownSuite)
from .graphs import standard
from .streams import parse_stream
from .trees import string_decode

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNKNOWN = 2


def default_fuel():
    try:
        return int(os.environ.get("WG_FUEL_DEFAULT", "1000"))
    except ValueError:
        return 1000


def _emit(report):
    print(json.dumps(report, sort_keys=True))


def _base_report(args):
    return {"command": args.command, "artifacts": []}


# ---------------------------------------------------------------------------
# Subcommand bodies (each returns an exit code)
# ---------------------------------------------------------------------------

def cmd_validate(args):
    name = _specs.parse_name(getattr(args, "in"))
    verdict = _spaces.validate_name(name, horizon=args.fuel)
    report = _base_report(args)
    report.update({"space": name.space, "verdict": verdict,
                   "ok": verdict == "ok", "fuel_spent": args.fuel})
    _emit(report)
    return EXIT_OK


def cmd_convert(args):
    name = _specs.parse_name(getattr(args, "in"))
    report = _base_report(args)
    if args.f:
        out, trace = _spaces.f_convert(name)
        image = sorted(trace.image())
        report.update({
            "conversion": "egr-to-gr",
            "image": image,
            "injuries": sorted((v, trace.injury_count(v))
                               for v in trace.first_emission),
            "prefix": out.stream.prefix(args.fuel),
        })
    else:
        out = _spaces.gr_to_egr(name)
        report.update({"conversion": "gr-to-egr",
                       "prefix": out.stream.prefix(args.fuel)})
    report["fuel_spent"] = args.fuel
    _emit(report)
    return EXIT_OK


def cmd_truncate(args):
    name = _specs.parse_name(getattr(args, "in"))
    fin = _spaces.truncate(name, args.fuel)
    report = _base_report(args)
    report.update({"graph": json.loads(_specs.fin_graph_to_json(fin)),
                   "fuel_spent": args.fuel})
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(_specs.fin_graph_to_dot(fin))
        report["artifacts"] = [args.dot]
    _emit(report)
    return EXIT_OK


def _verdict_exit(report, verdict, args):
    report.update({"verdict": verdict.kind, "fuel_spent": args.fuel})
    if verdict.kind == "found":
        report["witness"] = sorted(verdict.witness.pairs())
    if verdict.kind == "refuted":
        report["reason"] = verdict.reason
    _emit(report)
    return EXIT_OK if verdict.kind in ("found", "refuted") else EXIT_UNKNOWN


def cmd_decide(args):
    pattern = _specs.parse_pattern(args.pattern)
    host = _specs.parse_name(args.host)
    report = _base_report(args)
    from .decide import Verdict, decide_is_egr_noncomplete, semidecide_s
    if args.mode == "is" and host.space == "EGr":
        try:
            bit = decide_is_egr_noncomplete(pattern, host)
            verdict = (Verdict.found(_trivial_embedding(pattern, host,
                                                        args.fuel))
                       if bit else Verdict.refuted("induced copy impossible"))
            return _verdict_exit(report, verdict, args)
        except StreamGraphsError:
            pass  # fall back to the fueled semidecider
    verdict = semidecide_s(pattern, host, induced=(args.mode == "is"),
                           fuel=args.fuel)
    return _verdict_exit(report, verdict, args)


def _trivial_embedding(pattern, host, fuel):
    from .decide import fin_subgraph
    emb = fin_subgraph(pattern, _spaces.truncate(host, fuel), induced=True)
    if emb is None:
        # decided positively but the witness lies beyond the fuel window
        from .decide import Embedding
        return Embedding({})
    return emb


def cmd_search(args):
    spec = args.solver.split(":", 1)
    solver, param = spec[0].lower(), (spec[1] if len(spec) > 1 else None)
    host = _specs.parse_name(args.host)
    report = _base_report(args)
    if solver == "rayfollow":
        kind = _ray_kind(param)
        walk = _search.ray_follow(kind, host, fuel=args.fuel,
                                  steps=args.steps)
        report.update({"vertices": walk, "fuel_spent": args.fuel})
        _emit(report)
        return EXIT_OK
    if solver == "finds":
        pattern = _specs.parse_pattern(args.pattern)
        sol = _search.find_s_finite(pattern, host, fuel=args.fuel)
        report.update({"inclusion": sol.inclusion_pairs(),
                       "fuel_spent": args.fuel})
        _emit(report)
        return EXIT_OK
    if solver == "embray":
        walk = _search.emb_ray_r(
            host, lambda q: q.eval(max(args.fuel // 8, 8)),
            fuel=args.fuel, steps=args.steps)
        report.update({"vertices": walk, "fuel_spent": args.fuel})
        _emit(report)
        return EXIT_OK
    if solver == "t3":
        graph = _specs.parse_graph(args.host.split(":", 1)[-1])
        sol = _search.find_t3(graph, scan=args.fuel)
        pairs = sol.inclusion_pairs() if not callable(sol.inclusion) \
            else [(i, sol.inclusion(i)) for i in range(args.steps)]
        report.update({"inclusion": pairs, "fuel_spent": args.fuel})
        _emit(report)
        return EXIT_OK
    raise _Usage("unknown solver %r" % args.solver)


def _ray_kind(param):
    if param is None:
        raise _Usage("rayfollow needs a parameter, e.g. rayfollow:L")
    p = param.lower()
    if p == "l":
        return "TwoWayRay"
    if p == "fbt":
        return "FullBinaryTree"
    if p.startswith("c") and p[1:].isdigit():
        return ("CycleTailRay", int(p[1:]))
    if p.startswith("k") and p[1:].isdigit():
        return ("CompleteTailRay", int(p[1:]))
    raise _Usage("unknown rayfollow kind %r" % param)


_GADGETS = ("sigma1", "sigma2", "forests", "acc", "lim2", "cyclesbox",
            "enuminf", "s11choice")


def cmd_gadget(args):
    name = args.name.lower()
    if name not in _GADGETS:
        raise _Usage("unknown gadget %r" % args.name)
    report = _base_report(args)
    spec = getattr(args, "in")
    fuel = args.fuel
    if name == "sigma1":
        p = parse_stream(spec)
        out = _gadgets.sigma1_gadget(
            p, _specs.parse_pattern(args.pattern or "k2"))
        report["prefix"] = out.stream.prefix(fuel)
        if args.pattern:
            from .decide import fin_subgraph
            fin = _suites._materialize_gr(out, 20)
            emb = fin_subgraph(_specs.parse_pattern(args.pattern), fin,
                               induced=True)
            report["contains"] = emb is not None
    elif name == "sigma2":
        p = parse_stream(spec)
        out = _gadgets.sigma2_gadget(
            p, _specs.parse_pattern(args.pattern or "r3"))
        report["prefix"] = out.stream.prefix(min(fuel, 300))
        if args.pattern:
            from .decide import decide_is_egr_noncomplete
            report["contains"] = decide_is_egr_noncomplete(
                _specs.parse_pattern(args.pattern), out)
    elif name == "forests":
        p = parse_stream(spec)
        forest = _gadgets.forests_lift(p)
        from .decide import predicate_tf
        report["predicate_t1"] = predicate_tf("T", 1, forest)
    elif name == "acc":
        out = _gadgets.acc_gadget(parse_stream(spec))
        report["prefix"] = out.name.stream.prefix(min(fuel, 200))
        if args.decode:
            report["decoded"] = _gadgets.acc_decode(out.name)
    elif name == "lim2":
        q = parse_stream(spec)
        out = _gadgets.lim2_to_embR(q)
        report["prefix"] = out.stream.prefix(min(fuel, 200))
        if args.decode:
            report["decoded"] = _gadgets.embR_decode(
                _gadgets.embR_canonical_solution(q))
    elif name == "cyclesbox":
        from .trees import coinfinite_wrap
        tree = coinfinite_wrap(_specs.parse_tree(spec))
        box = _gadgets.cycles_box(tree)
        fin = box.window(min(fuel, 40))
        report["graph"] = json.loads(_specs.fin_graph_to_json(fin))
    elif name == "enuminf":
        chi_table = json.loads(spec)
        a = _gadgets.CertifiedPiSet(
            lambda n, t=chi_table: t[n % len(t)])
        enum = _gadgets.enuminf_encode(a)
        report["elements"] = enum.prefix(min(fuel, 8))
        if args.decode:
            chi = _gadgets.enuminf_decode(enum)
            report["decoded"] = chi.prefix(13)
    elif name == "s11choice":
        trees = [_specs.parse_tree(t)
                 for t in _specs._split_args(spec)]
        _gadgets.sigma11_choice_gadget(trees)
        report["trees"] = len(trees)
    report["fuel_spent"] = fuel
    _emit(report)
    return EXIT_OK


def cmd_oracle(args):
    problem = _problems.problem_by_name(
        {"lpo": "lpo", "lim": "lim", "lim2": "lim2", "cn": "cn",
         "wf": "wf", "ccantor": "ccantor", "cbaire": "cbaire"}.get(
             args.problem.lower(), args.problem))
    spec = getattr(args, "in")
    if problem.name in ("wf", "ccantor", "cbaire"):
        instance = _specs.parse_tree(spec)
    else:
        instance = parse_stream(spec)
    answer = _problems.oracle_call(problem, instance, args.fuel)
    report = _base_report(args)
    if hasattr(answer, "prefix"):
        answer = answer.prefix(min(args.fuel, 12))
    report.update({"problem": problem.name, "answer": answer,
                   "fuel_spent": args.fuel})
    _emit(report)
    return EXIT_OK


def cmd_compose(args):
    gadget = args.gadget.lower()
    oracle = args.oracle.lower()
    spec = getattr(args, "in")
    report = _base_report(args)
    if gadget == "sigma1" and oracle == "contains":
        pattern = _specs.parse_pattern(args.pattern or "k2")
        harness = _problems.ReductionHarness(
            lambda p: _gadgets.sigma1_gadget(p, pattern),
            lambda _x, bit: bit)
        prob = _problems.subgraph_presence_problem(pattern, induced=True,
                                                   fuel=args.fuel)
        answer = _problems.compose(harness, prob, parse_stream(spec))
    elif gadget == "lim2" and oracle == "embray":
        harness = _problems.ReductionHarness(
            lambda q: _gadgets.lim2_to_embR(q),
            lambda _x, walk: _gadgets.embR_decode(walk))
        prob = _problems.ray_embedding_problem(fuel=args.fuel)
        answer = _problems.compose(harness, prob, parse_stream(spec))
    elif gadget == "l1" and oracle == "findsray":
        from .trees import SinglePath  # noqa: F401 (documented pairing)
        path = _problems.path_choice_roundtrip(_specs.parse_tree(spec))
        answer = path.prefix(10)
    else:
        raise _Usage("unsupported gadget/oracle pair %s/%s"
                     % (args.gadget, args.oracle))
    report.update({"answer": answer, "fuel_spent": args.fuel})
    _emit(report)
    return EXIT_OK


def cmd_suite(args):
    report = _suites.run_suite(args.name, seed=args.seed)
    report["command"] = args.command
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_USAGE


def cmd_export(args):
    name = _specs.parse_name(getattr(args, "in"))
    fin = _spaces.truncate(name, args.fuel)
    report = _base_report(args)
    if args.kind == "dot":
        text = _specs.fin_graph_to_dot(fin)
    else:
        text = _specs.fin_graph_to_json(fin) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        report["artifacts"] = [args.out]
        report["fuel_spent"] = args.fuel
        _emit(report)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------

class _Usage(Exception):
    pass


def _build_parser():
    top = argparse.ArgumentParser(
        prog="sgraph",
        description="certified streams, countable graphs and their solvers")
    subs = top.add_subparsers(dest="command")

    def sub(name, fn, **kwargs):
        p = subs.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    fuel_kw = dict(type=int, default=None)

    p = sub("validate", cmd_validate, help="check a name against its space")
    p.add_argument("--in", required=True)
    p.add_argument("--fuel", **fuel_kw)

    p = sub("convert", cmd_convert, help="convert between name spaces")
    p.add_argument("--in", required=True)
    p.add_argument("--f", action="store_true",
                   help="enumeration-to-characteristic conversion")
    p.add_argument("--fuel", **fuel_kw)

    p = sub("truncate", cmd_truncate, help="finite window of a name")
    p.add_argument("--in", required=True)
    p.add_argument("--fuel", **fuel_kw)
    p.add_argument("--dot", default=None)

    p = sub("decide", cmd_decide, help="fueled (induced-)subgraph query")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--mode", choices=["is", "s"], default="s")
    p.add_argument("--fuel", **fuel_kw)

    p = sub("search", cmd_search, help="produce a copy of a known pattern")
    p.add_argument("--solver", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", default=None)
    p.add_argument("--fuel", **fuel_kw)
    p.add_argument("--steps", type=int, default=10)

    p = sub("gadget", cmd_gadget, help="run a reduction gadget")
    p.add_argument("--name", required=True)
    p.add_argument("--in", required=True)
    p.add_argument("--pattern", default=None)
    p.add_argument("--decode", action="store_true")
    p.add_argument("--fuel", **fuel_kw)

    p = sub("oracle", cmd_oracle, help="call a certified oracle problem")
    p.add_argument("--problem", required=True)
    p.add_argument("--in", required=True)
    p.add_argument("--fuel", **fuel_kw)

    p = sub("compose", cmd_compose, help="gadget -> oracle -> decode")
    p.add_argument("--gadget", required=True)
    p.add_argument("--oracle", required=True)
    p.add_argument("--in", required=True)
    p.add_argument("--pattern", default=None)
    p.add_argument("--fuel", **fuel_kw)

    p = sub("suite", cmd_suite, help="run a self-check suite")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=0)

    p = sub("export", cmd_export, help="render a truncation")
    p.add_argument("kind", choices=["dot", "json"])
    p.add_argument("--in", required=True)
    p.add_argument("--fuel", **fuel_kw)
    p.add_argument("--out", default=None)

    return top


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "fn", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if hasattr(args, "fuel") and args.fuel is None:
        args.fuel = default_fuel()
    try:
        return args.fn(args)
    except (FuelExhausted, OracleRefused, PatternNeverSeen) as exc:
        _emit({"command": args.command, "verdict": "unknown",
               "reason": str(exc)})
        return EXIT_UNKNOWN
    except UnknownSuite as exc:
        print("unknown suite: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except _Usage as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except StreamGraphsError as exc:
        print("%s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
