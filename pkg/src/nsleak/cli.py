"""``nsleak`` command-line interface.

Exit codes: 0 success or pass, 1 audit failure or property violation,
2 input error, 3 incompatible evidence.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .errors import IncompatibleEvidenceError, InputError, SearchCapError
from .maximin import (
    DEFAULT_MAX_ALPHABET,
    common_variable,
    maximin_info,
    maximin_symmetry_check,
    overlap_partition,
    zero_error_capacity_bound,
)
from .measures import (
    argmin_observation,
    budget_from_threshold,
    h0,
    h0_cond,
    i0,
    identifiability_bound,
    is_identifiable,
    leakage,
    maximal_leakage,
    min_epsilon,
    worst_attribute,
)
from .oracle import (
    CAMPAIGNS,
    DEFAULT_PARTITION_CAP,
    PRNG_ALGORITHM,
    InstanceSpec,
    brute_force_max_leakage,
    brute_force_one_shot,
    property_campaign,
    random_relation,
)
from .report import Check, Report, measure
from .stochastic import (
    RationalDist,
    StochasticChannel,
    cond_guessing_entropy,
    guessing_entropy,
    maximal_stochastic_leakage,
    relate_maximal_leakages,
    stochastic_bf_leakage,
)
from .uv import AttributeMap, Relation, apply_attribute, compose_chain, conditional, marginal, sorted_symbols
from .values import LeakageValue, PrivacyBudget, parse_fraction

log = logging.getLogger("nsleak")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_EVIDENCE = 0, 1, 2, 3


# -- report builders (also used directly by tests) --------------------------------


def _instance(rel: Relation) -> dict:
    info = {f"|{v}|": len(marginal(rel, v)) for v in rel.variables}
    info["tuples"] = len(rel.tuples)
    if rel.duplicates:
        info["duplicate_tuples"] = rel.duplicates
    return info


def _ceiling_checks(rel: Relation, x: str, y: str, lstar: LeakageValue, budget: PrivacyBudget | None) -> list[Check]:
    n = len(marginal(rel, x))
    thr = min_epsilon(rel, x, y)
    tight = budget_from_threshold(thr)
    checks = []
    if tight is None:
        checks.append(Check(
            "identifiability ceiling at min_epsilon",
            f"unrelated: ceiling tends to 0 as epsilon -> 0, L* = {lstar}",
            lstar.is_zero(),
        ))
    else:
        ceil = identifiability_bound(n, tight)
        cmp = ceil.compare(lstar)
        checks.append(Check(
            "identifiability ceiling at min_epsilon",
            f"L* = {lstar} <= {ceil} ({'equal' if cmp == 0 else 'strict'})",
            cmp >= 0,
        ))
    if budget is not None and is_identifiable(rel, x, y, budget):
        ceil = identifiability_bound(n, budget)
        checks.append(Check(
            f"identifiability ceiling at epsilon={budget}",
            f"L* = {lstar} <= {ceil}",
            ceil.dominates(lstar),
        ))
    return checks


def measure_report(
    rel: Relation,
    x: str = "X",
    y: str = "Y",
    *,
    budget: PrivacyBudget | None = None,
    dist: RationalDist | None = None,
    given: dict[str, str] | None = None,
) -> Report:
    rep = Report("measure", _instance(rel))
    lstar = maximal_leakage(rel, x, y)
    lstar_rev = maximal_leakage(rel, y, x)
    imax = maximin_info(rel, x, y)
    thr = min_epsilon(rel, x, y)
    rep.measures += [
        measure(f"H0({x})", h0(marginal(rel, x))),
        measure(f"H0({y})", h0(marginal(rel, y))),
        measure(f"H0({x}|{y})", h0_cond(rel, x, y)),
        measure(f"I0({x};{y})", i0(rel, x, y)),
        measure(f"L({x}->{y})", leakage(rel, x, y)),
        measure(f"L*({x}->{y})", lstar),
        measure(f"L*({y}->{x})", lstar_rev),
        measure(f"I*({x};{y})", imax),
        measure("min_epsilon", thr.value, "open bound: any epsilon > 0" if thr.open_bound else ""),
    ]
    if budget is not None:
        rep.measures.append(measure(f"ceiling(epsilon={budget})", identifiability_bound(len(marginal(rel, x)), budget)))
        rep.witnesses[f"identifiable at epsilon={budget}"] = is_identifiable(rel, x, y, budget)

    g = worst_attribute(rel, x, y)
    rep.witnesses["argmin y*"] = argmin_observation(rel, x, y)
    rep.witnesses["worst attribute"] = {s: g(s) for s in sorted_symbols(g.domain)}
    rep.witnesses["overlap partition"] = overlap_partition(rel, x, y).as_lists()

    if given:
        rep.witnesses[f"[[{x}|{_given_str(given)}]]"] = sorted_symbols(conditional(rel, x, given))

    rep.checks += _ceiling_checks(rel, x, y, lstar, budget)
    cmp = relate_maximal_leakages(rel, x, y)
    rep.checks.append(Check(
        f"L* <= H0({y}) + H0({x}|{y})",
        f"{cmp.lhs} ({cmp.lhs.decimal()}) <= {cmp.rhs} ({cmp.rhs.decimal()})",
        cmp.holds,
    ))
    rep.checks.append(Check("I* <= L*", f"{imax} <= {lstar}", imax <= lstar))

    if dist is not None:
        rep.measures += _stochastic_measures(dist, x, y, given)
    return rep


def _given_str(given: dict[str, str]) -> str:
    return ",".join(f"{k}={v}" for k, v in given.items())


def _stochastic_measures(dist: RationalDist, x: str, y: str, given: dict[str, str] | None) -> list:
    px = dist.marginal(x)
    py = dist.marginal(y)
    expected = sum(
        (p * cond_guessing_entropy(dist, x, y, v) for v, p in py.items() if p > 0), Fraction(0)
    )
    support = [s for s, p in px.items() if p > 0]
    ch = StochasticChannel.from_dist(dist, x, y)
    out = [
        measure(f"H_G({x})", guessing_entropy(px)),
        measure(f"E[H_G({x}|{y})]", expected),
        measure("stochastic brute-force leakage", stochastic_bf_leakage(dist, x, y)),
        measure(f"I_inf({x};{y})", maximal_stochastic_leakage(ch, support)),
    ]
    if given and set(given) == {y}:
        v = given[y]
        out.append(measure(f"H_G({x}|{y}={v})", cond_guessing_entropy(dist, x, y, v)))
    return out


def audit_report(rel: Relation, x: str, y: str, budget: PrivacyBudget) -> Report:
    rep = Report("audit", _instance(rel))
    thr = min_epsilon(rel, x, y)
    lstar = maximal_leakage(rel, x, y)
    ceil = identifiability_bound(len(marginal(rel, x)), budget)
    ok = is_identifiable(rel, x, y, budget)
    rep.measures += [
        measure("min_epsilon", thr.value, "open bound: any epsilon > 0" if thr.open_bound else ""),
        measure(f"L*({x}->{y})", lstar),
        measure(f"ceiling(epsilon={budget})", ceil),
    ]
    rep.checks.append(Check(
        f"{budget}-identifiable",
        f"min_epsilon {thr.value} ({thr.value.decimal()}) vs epsilon {budget} ({float(budget):.6f})",
        ok,
    ))
    return rep


def maximin_report(rel: Relation, x: str, y: str) -> Report:
    rep = Report("maximin", _instance(rel))
    part = overlap_partition(rel, x, y)
    imax = maximin_info(rel, x, y)
    lstar = maximal_leakage(rel, x, y)
    rep.measures += [
        measure(f"I*({x};{y})", imax),
        measure(f"I*({y};{x})", maximin_info(rel, y, x)),
        measure(f"L*({x}->{y})", lstar),
    ]
    g = common_variable(rel, x, y)
    rep.witnesses["overlap partition"] = part.as_lists()
    rep.witnesses["common variable"] = {s: g(s) for s in sorted_symbols(g.domain)}
    rep.checks.append(Check("symmetry", f"|[[{x}|{y}]]*| = |[[{y}|{x}]]*| = {len(part)}", maximin_symmetry_check(rel, x, y)))
    rep.checks.append(Check("one-shot supremum <= L*", f"{imax} <= {lstar}", imax <= lstar))
    return rep


def capacity_report(k, *, max_alphabet: int = DEFAULT_MAX_ALPHABET, budget: PrivacyBudget | None = None,
                    alphabet=None, workers: int | None = None) -> Report:
    alphabet = k.inputs if alphabet is None else alphabet
    res = zero_error_capacity_bound(alphabet, k, max_alphabet=max_alphabet, budget=budget, workers=workers)
    rep = Report("capacity", {"|alphabet|": len(set(alphabet)), "outputs": len(k.outputs)})
    rep.measures += [
        measure("zero-error capacity bound", res.capacity, "supremum of maximin information over input subsets"),
        measure("sup over subsets of L*", res.max_leakage_sup),
    ]
    if res.ceiling is not None:
        rep.measures.append(measure(f"ceiling(epsilon={res.budget})", res.ceiling))
    rep.witnesses["maximizing subset"] = list(res.witness)
    rep.checks.append(Check("C0 <= sup L*", f"{res.capacity} <= {res.max_leakage_sup}", res.within_max_leakage))
    if res.ceiling is not None:
        if res.identifiable:
            rep.checks.append(Check(
                f"C0 <= ceiling(epsilon={res.budget})", f"{res.capacity} <= {res.ceiling}", bool(res.within_ceiling)
            ))
        else:
            rep.witnesses[f"identifiable at epsilon={res.budget}"] = False
    return rep


def evaluate_attribute(rel: Relation, g: AttributeMap, x: str, y: str) -> LeakageValue:
    name = "U"
    while name in rel.variables:
        name += "_"
    return leakage(apply_attribute(rel, g, source=x, name=name), name, y)


def worst_attribute_obj(rel: Relation, x: str, y: str) -> dict:
    g = worst_attribute(rel, x, y)
    return io.attribute_to_obj(g, evaluate_attribute(rel, g, x, y))


# -- argument parsing -----------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("human", "json"), default=d("human"))
    parser.add_argument("--seed", type=int, default=d(None), help="seed for random generation and campaigns")
    parser.add_argument("--max-partition-cap", type=int, default=d(DEFAULT_PARTITION_CAP), dest="max_partition_cap")
    parser.add_argument("--max-alphabet", type=int, default=d(DEFAULT_MAX_ALPHABET), dest="max_alphabet")
    parser.add_argument("--workers", type=int, default=d(None), help="process pool size for exhaustive searches")
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False))


def _xy(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x", default="X", help="private variable (default X)")
    p.add_argument("--y", default="Y", help="observed variable (default Y)")


def _budget(text: str) -> PrivacyBudget:
    try:
        return PrivacyBudget.parse(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _assignment(text: str) -> tuple[str, str]:
    var, sep, sym = text.partition("=")
    if not sep or not var or not sym:
        raise argparse.ArgumentTypeError(f"expected VAR=symbol, got {text!r}")
    return var, sym


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsleak", description="Exact non-stochastic leakage measures.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="all measures for a relation")
    p.add_argument("relation")
    _xy(p)
    p.add_argument("--epsilon", type=_budget, help="privacy budget, e.g. 1/2 or log2(3/2)")
    p.add_argument("--dist", help="distribution file over the relation's tuples")
    p.add_argument("--given", type=_assignment, action="append", default=[], metavar="VAR=SYM")

    p = sub.add_parser("worst-attribute", parents=[common], help="write the most vulnerable attribute")
    p.add_argument("relation")
    _xy(p)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("audit", parents=[common], help="epsilon-identifiability audit")
    p.add_argument("relation")
    _xy(p)
    p.add_argument("--epsilon", required=True)

    p = sub.add_parser("maximin", parents=[common], help="overlap partition and maximin information")
    p.add_argument("relation")
    _xy(p)

    p = sub.add_parser("capacity", parents=[common], help="zero-error capacity bound of a channel")
    p.add_argument("channel")
    p.add_argument("--epsilon", type=_budget)
    p.add_argument("--alphabet", help="comma-separated input alphabet (default: channel inputs)")

    p = sub.add_parser("compose", parents=[common], help="cascade channels into a Markov relation")
    p.add_argument("range", help="relation file with one variable")
    p.add_argument("channels", nargs="+")
    p.add_argument("-o", "--output")

    p = sub.add_parser("oracle", parents=[common], help="brute-force verification")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("verify", parents=[common], help="run a property campaign")
    q.add_argument("--prop", required=True, choices=sorted(CAMPAIGNS) + ["all"])
    q.add_argument("--trials", type=int)
    q.add_argument("--counterexample-dir", dest="counterexample_dir")
    q = osub.add_parser("brute", parents=[common], help="exhaustive search on one relation")
    q.add_argument("relation")
    _xy(q)

    p = sub.add_parser("random", parents=[common], help="generate a seeded random relation")
    p.add_argument("--sizes", required=True, help="comma-separated alphabet sizes, e.g. 4,3")
    p.add_argument("--density", default="1/2")
    p.add_argument("--names", help="comma-separated variable names")
    p.add_argument("-o", "--output")
    return parser


def _emit(rep: Report, fmt: str) -> None:
    print(rep.render(fmt))


def _load_rel(path: str) -> Relation:
    rel = io.load_relation(path)
    if rel.duplicates:
        log.warning("%s: dropped %d duplicate tuple(s)", path, rel.duplicates)
    return rel


def _run(args: argparse.Namespace) -> int:
    fmt = args.format
    if args.command == "measure":
        rel = _load_rel(args.relation)
        dist = io.load_dist(args.dist, rel) if args.dist else None
        rep = measure_report(rel, args.x, args.y, budget=args.epsilon, dist=dist, given=dict(args.given) or None)
        _emit(rep, fmt)
        return EXIT_OK if rep.passed else EXIT_FAIL

    if args.command == "worst-attribute":
        rel = _load_rel(args.relation)
        obj = worst_attribute_obj(rel, args.x, args.y)
        io.write_json(obj, args.output)
        rep = Report("worst-attribute", _instance(rel))
        rep.measures.append(measure("achieved leakage", LeakageValue.parse(obj["achieved_leakage"])))
        rep.measures.append(measure(f"L*({args.x}->{args.y})", maximal_leakage(rel, args.x, args.y)))
        rep.witnesses["attribute"] = obj["map"]
        rep.witnesses["written to"] = args.output
        _emit(rep, fmt)
        return EXIT_OK

    if args.command == "audit":
        budget = PrivacyBudget.parse(args.epsilon)
        rel = _load_rel(args.relation)
        rep = audit_report(rel, args.x, args.y, budget)
        _emit(rep, fmt)
        return EXIT_OK if rep.passed else EXIT_FAIL

    if args.command == "maximin":
        rep = maximin_report(_load_rel(args.relation), args.x, args.y)
        _emit(rep, fmt)
        return EXIT_OK if rep.passed else EXIT_FAIL

    if args.command == "capacity":
        k = io.load_channel(args.channel)
        alphabet = args.alphabet.split(",") if args.alphabet else None
        rep = capacity_report(k, max_alphabet=args.max_alphabet, budget=args.epsilon, alphabet=alphabet,
                              workers=args.workers)
        _emit(rep, fmt)
        return EXIT_OK if rep.passed else EXIT_FAIL

    if args.command == "compose":
        base = _load_rel(args.range)
        channels = [io.load_channel(c) for c in args.channels]
        rel = compose_chain(base, *channels)
        obj = io.relation_to_obj(rel)
        if args.output:
            io.write_json(obj, args.output)
        else:
            print(json.dumps(obj, indent=2, ensure_ascii=False))
        return EXIT_OK

    if args.command == "oracle":
        return _run_oracle(args)

    if args.command == "random":
        try:
            sizes = tuple(int(s) for s in args.sizes.split(","))
        except ValueError:
            raise InputError(f"--sizes: expected comma-separated integers, got {args.sizes!r}") from None
        names = tuple(args.names.split(",")) if args.names else None
        seed = 0 if args.seed is None else args.seed
        rel = random_relation(InstanceSpec(sizes, parse_fraction(args.density), seed, names))
        obj = io.relation_to_obj(rel)
        if args.output:
            io.write_json(obj, args.output)
            log.info("wrote %s (%s, seed %d)", args.output, PRNG_ALGORITHM, seed)
        else:
            print(json.dumps(obj, indent=2, ensure_ascii=False))
        return EXIT_OK

    raise AssertionError(args.command)


def _run_oracle(args: argparse.Namespace) -> int:
    fmt = args.format
    if args.oracle_command == "brute":
        rel = _load_rel(args.relation)
        cap = args.max_partition_cap
        bf = brute_force_max_leakage(rel, args.x, args.y, cap=cap, workers=args.workers)
        os_ = brute_force_one_shot(rel, args.x, args.y, cap=cap, workers=args.workers)
        closed = maximal_leakage(rel, args.x, args.y)
        imax = maximin_info(rel, args.x, args.y)
        rep = Report("oracle brute", _instance(rel))
        rep.measures += [
            measure("brute-force max leakage", bf.value),
            measure("closed-form L*", closed),
            measure("brute-force one-shot", os_.value),
            measure("maximin I*", imax),
        ]
        rep.witnesses["max leakage partition"] = bf.witness.as_lists()
        rep.witnesses["one-shot partition"] = os_.witness.as_lists()
        rep.checks.append(Check("closed form", f"{bf.value} == {closed}", bf.value == closed))
        rep.checks.append(Check("one-shot equals maximin", f"{os_.value} == {imax}", os_.value == imax))
        _emit(rep, fmt)
        return EXIT_OK if rep.passed else EXIT_FAIL

    seed = 0 if args.seed is None else args.seed
    names = sorted(CAMPAIGNS) if args.prop == "all" else [args.prop]
    rep = Report("oracle verify", {"seed": seed, "prng": PRNG_ALGORITHM})
    outdir = Path(args.counterexample_dir) if args.counterexample_dir else None
    for name in names:
        res = property_campaign(name, args.trials, seed, workers=args.workers)
        rep.checks.append(Check(name, f"{res.property}; {res.instances} instances, {res.violations} violations",
                                res.passed))
        if res.counterexamples:
            rep.witnesses[f"{name} first violation"] = res.counterexamples[0][1]
        if outdir is not None:
            outdir.mkdir(parents=True, exist_ok=True)
            for i, (rel, detail) in enumerate(res.counterexamples):
                path = outdir / f"{name}-{i}.json"
                io.write_json(io.relation_to_obj(rel), path)
                log.warning("%s counterexample written to %s: %s", name, path, detail)
    _emit(rep, fmt)
    return EXIT_OK if rep.passed else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="nsleak: %(message)s")
    try:
        return _run(args)
    except IncompatibleEvidenceError as exc:
        print(f"nsleak: incompatible evidence: {exc}", file=sys.stderr)
        return EXIT_EVIDENCE
    except (InputError, SearchCapError) as exc:
        print(f"nsleak: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
