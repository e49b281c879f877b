"""
Command-line front end: `puiseuxlab <command> <subcommand> [options]`.

Every command builds a JSON-ready payload; `--format text` renders the same payload as
indented `key: value` lines. Exit codes: 0 pass, 1 failed papercheck, 2 usage or domain error.
"""
import argparse
import json
import logging
import re
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Optional

from puiseuxlab.__version__ import __version__
from puiseuxlab.constants import (
    DEFAULT_PROBE_BUDGET,
    DEFAULT_SEARCH_BUDGET,
    ExitCode,
    ExpressionKind,
    OutputFormat,
    Suite,
)
from puiseuxlab.errors import LabDomainError, PuiseuxLabError
from puiseuxlab.finite_field import (
    FpElem,
    binomial,
    binomial_irreducible,
    factorize,
    is_irreducible_oracle,
    multiplicative_order,
    primitive_roots,
    trinomial,
    trinomial_parameter,
    uses_trial_division,
)
from puiseuxlab.monoid import (
    PuiseuxMonoidSpec,
    accp_chain_probe,
    element_atom_check,
    factorizations_bounded,
    is_atom_bounded,
    membership,
)
from puiseuxlab.papercheck import DEFAULT_PARAMS, exit_code, run_papercheck, summarize
from puiseuxlab.parsing import parse_expression
from puiseuxlab.semidomain import ascent_factorization, atom_test_bounded, structure
from puiseuxlab.subring import (
    TowerSpec,
    almost_atomic_witness,
    infinite_descent_demo,
    is_atomic_element,
    member_split_probe,
    not_almost_atomic_witness,
    quasi_atomic_witness,
    refute_quasi_atomic_candidate,
)
from puiseuxlab.utils import load_data_file, to_jsonable

LABEL = re.compile(r"^[ab][1-9][0-9]*$")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
# stock inputs for `subring witness` without --expr
WITNESS_EXAMPLES = {"almost": "(3/4)*x^2", "quasi": "s*x^2 + t*x^3", "not-almost": "x"}


def _int_list(text: str) -> list:
    return [int(piece) for piece in text.split(",") if piece.strip()]


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    """Flags accepted before the command and after any subcommand."""
    parser = argparse.ArgumentParser(add_help=False)

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default=default(OutputFormat.TEXT.value)
    )
    parser.add_argument("--seed", type=int, default=default(DEFAULT_PARAMS.seed), help="seed for random corpora")
    parser.add_argument("--budget-depth", type=int, default=default(None), help="truncation depth D")
    parser.add_argument("--budget-refinements", type=int, default=default(None), help="refinement steps")
    parser.add_argument("--budget-groupings", type=int, default=default(None), help="factor groupings per search")
    parser.add_argument("--budget-multiplier", type=int, default=default(None), help="R[y] probe multiplier bound")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=default("WARNING"))
    return parser


def _monoid_options() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--q", type=int, help="prime q of M_{q,r}; M_{2,3} if neither --q, --r nor --gens is given")
    parser.add_argument("--r", type=int, help="r of M_{q,r}, coprime to q")
    parser.add_argument("--ells", type=_int_list, default=(), help="explicit l_1,l_2,... for M_{q,r}")
    parser.add_argument("--gens", help='explicit generators, e.g. "2/3, 3/5"')
    parser.add_argument(
        "--depth", dest="budget_depth", type=int, default=argparse.SUPPRESS, help="same as --budget-depth"
    )
    return parser


def _operand(sub: argparse.ArgumentParser, name: str, flag: str, help_text: str) -> None:
    """`flag VALUE`, with a bare positional accepted as a shorthand."""
    sub.add_argument(name, nargs="?", help=f"shorthand for {flag}")
    sub.add_argument(flag, dest=f"{name}_flag", metavar=name.upper(), help=help_text)


def build_parser() -> argparse.ArgumentParser:
    late = _global_options(suppress=True)
    monoid_options = _monoid_options()
    parser = argparse.ArgumentParser(
        prog="puiseuxlab",
        description="Exact computations with Puiseux monoids, monoid semidomains and the rings Z[x] + K[x]x^2.",
        parents=[_global_options(suppress=False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name: str, handler, help_text: str, *parents) -> argparse.ArgumentParser:
        sub = group.add_parser(name, help=help_text, parents=[late, *parents])
        sub.set_defaults(handler=handler)
        return sub

    monoid = commands.add_parser("monoid", help="Puiseux monoids").add_subparsers(dest="subcommand", required=True)
    sub = leaf(monoid, "gens", cmd_monoid_gens, "list generators", monoid_options)
    sub.add_argument("--n", type=int, help="list a_1, b_1, ..., a_n, b_n; defaults to the depth")
    sub = leaf(monoid, "member", cmd_monoid_member, "membership certificate", monoid_options)
    _operand(sub, "target", "--target", "a non-negative rational")
    sub = leaf(monoid, "atomcheck", cmd_monoid_atomcheck, "bounded atom test", monoid_options)
    _operand(sub, "element", "--index", "a generator label such as a2, or a rational")
    sub = leaf(monoid, "factorizations", cmd_monoid_factorizations, "factorizations into atoms", monoid_options)
    _operand(sub, "target", "--target", "a non-negative rational")
    sub = leaf(monoid, "accp", cmd_monoid_accp, "probe a chain of principal ideals", monoid_options)
    sub.add_argument("--n-max", type=int, default=5)
    sub.add_argument("--chain", help='chain elements, e.g. "3, 2, 1"')

    ff = commands.add_parser("ff", help="prime fields and F_p[x]").add_subparsers(dest="subcommand", required=True)
    sub = leaf(ff, "order", cmd_ff_order, "multiplicative order")
    sub.add_argument("a", type=int)
    sub.add_argument("--p", type=int, required=True)
    sub = leaf(ff, "roots", cmd_ff_roots, "primitive roots")
    sub.add_argument("--p", type=int, required=True)
    sub = leaf(ff, "binomial", cmd_ff_binomial, "criterion and oracle for x^t - a")
    sub.add_argument("t", type=int)
    sub.add_argument("a", type=int)
    sub.add_argument("--p", type=int, required=True)
    sub = leaf(ff, "trinomial", cmd_ff_trinomial, "x^(2^k) - 2a x^(2^(k-1)) - 1 for p = 3 mod 4")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    for name, handler, help_text in (
        ("irreducible", cmd_ff_irreducible, "irreducibility oracle"),
        ("factor", cmd_ff_factor, "factor into monic irreducibles"),
    ):
        sub = leaf(ff, name, handler, help_text)
        sub.add_argument("poly")
        sub.add_argument("--p", type=int, required=True)

    semidomain = commands.add_parser("semidomain", help="monoid semidomains S[M]")
    semidomain = semidomain.add_subparsers(dest="subcommand", required=True)
    sub = leaf(semidomain, "atomtest", cmd_semidomain_atomtest, "bounded atom test in F_p[M]", monoid_options)
    _operand(sub, "poly", "--expr", 'an element of F_p[M], e.g. "x^2+x+1"')
    sub.add_argument("--p", type=int, required=True)
    for name, handler, help_text in (
        ("structure", cmd_semidomain_structure, "support, order, degree and coefficients"),
        ("ascent", cmd_semidomain_ascent, "constant times indecomposables over F_p or Z"),
    ):
        sub = leaf(semidomain, name, handler, help_text)
        _operand(sub, "poly", "--expr", "a polynomial expression with rational exponents")
        sub.add_argument("--p", type=int, help="prime for F_p coefficients; rational coefficients if omitted")

    subring = commands.add_parser("subring", help="the rings Z[x] + K[x]x^2")
    subring = subring.add_subparsers(dest="subcommand", required=True)
    ring_choices = ("ZQ", "ZQS", "ZQST")
    sub = leaf(subring, "atomic", cmd_subring_atomic, "order-coefficient criterion")
    _operand(sub, "poly", "--expr", "an element of Z[x] + K[x]x^2")
    sub.add_argument("--ring", choices=ring_choices, default="ZQST")
    sub = leaf(subring, "witness", cmd_subring_witness, "almost/quasi-atomic witnesses")
    _operand(sub, "poly", "--expr", "the element to certify; a stock example for --mode if omitted")
    sub.add_argument("--mode", "--kind", dest="mode", choices=tuple(WITNESS_EXAMPLES), default="quasi")
    sub.add_argument("--kappa", default="s", help="kappa for --mode not-almost")
    sub.add_argument("--ring", choices=ring_choices)
    sub = leaf(subring, "refute", cmd_subring_refute, "check claimed factorizations of F (s x^2 y + t x^2)")
    sub.add_argument("--F", dest="F", help="the multiplier F; omit to run a candidate file or the shipped corpus")
    sub.add_argument("--factors", help='claimed factors separated by ";"')
    sub.add_argument("--candidates", type=Path, help='JSON list of {"F": ..., "factors": [...]} entries')
    sub = leaf(subring, "probe", cmd_subring_probe, "bounded member-split probe in R[y]")
    _operand(sub, "poly", "--expr", "an element of R[y]")
    sub = leaf(subring, "descent", cmd_subring_descent, "q x^2 = a^k (q/a^k) x^2")
    sub.add_argument("--q", default="1/2")
    sub.add_argument("--a", type=int, default=2)
    sub.add_argument("--depth", type=int, default=10)

    sub = leaf(commands, "papercheck", cmd_papercheck, "run the acceptance checks")
    sub.add_argument("suite", choices=[suite.label for suite in Suite])
    sub.add_argument("--q", type=int)
    sub.add_argument("--r", type=int)
    sub.add_argument("--n", type=int)
    sub.add_argument("--depth", type=int)
    sub.add_argument("--pmax", type=int)
    sub.add_argument("--tmax", type=int)
    sub.add_argument("--workers", type=int)
    sub.add_argument("--no-times", action="store_true", help="omit wall-time fields")
    return parser


# budgets and shared inputs


def search_budget(args: argparse.Namespace):
    changes = {
        "depth": args.budget_depth,
        "refinements": args.budget_refinements,
        "max_groupings": args.budget_groupings,
    }
    return replace(DEFAULT_SEARCH_BUDGET, **{k: v for k, v in changes.items() if v is not None})


def probe_budget(args: argparse.Namespace):
    if args.budget_multiplier is None:
        return DEFAULT_PROBE_BUDGET
    return replace(DEFAULT_PROBE_BUDGET, multiplier_bound=args.budget_multiplier)


def operand(args: argparse.Namespace, name: str, flag: str, required: bool = True) -> Optional[str]:
    """The value given as `flag VALUE` or as the bare positional shorthand."""
    positional, flagged = getattr(args, name), getattr(args, f"{name}_flag")
    if positional is not None and flagged is not None and positional != flagged:
        raise UsageError(f"Give {flag} once, not both {flag} and a positional value.")
    value = flagged if flagged is not None else positional
    if value is None and required:
        raise UsageError(f"{flag} is required.")
    return value


def monoid_spec(args: argparse.Namespace) -> PuiseuxMonoidSpec:
    depth = search_budget(args).depth
    if args.gens:
        if args.q is not None or args.r is not None:
            logging.warning("--q/--r are ignored when --gens is given.")
        values = [parse_expression(piece, ExpressionKind.RATIONAL) for piece in args.gens.split(",") if piece.strip()]
        return PuiseuxMonoidSpec.explicit(values, depth)
    if args.q is None and args.r is None:
        q, r = DEFAULT_PARAMS.pairs[0]
        logging.info("No monoid given; using M_{%d,%d}.", q, r)
        return PuiseuxMonoidSpec.mqr(q, r, depth, args.ells)
    if args.q is None or args.r is None:
        raise UsageError("Give both --q and --r, or --gens.")
    return PuiseuxMonoidSpec.mqr(args.q, args.r, depth, args.ells)


class UsageError(Exception):
    """Bad flag combination; reported with exit code 2."""


# handlers: each returns (payload, ExitCode)


def cmd_monoid_gens(args):
    spec = monoid_spec(args)
    gens = spec.generator_list(args.n)
    return {"monoid": spec.as_dict(), "generators": {label: value for label, value in gens}}, ExitCode.PASS


def cmd_monoid_member(args):
    spec = monoid_spec(args)
    target = parse_expression(operand(args, "target", "--target"), ExpressionKind.RATIONAL)
    certificate = membership(target, spec)
    payload = {"monoid": spec.describe(), "target": target, "depth": spec.depth, "member": certificate is not None}
    if certificate is not None:
        payload["certificate"] = certificate
    return payload, ExitCode.PASS


def cmd_monoid_atomcheck(args):
    spec = monoid_spec(args)
    element = operand(args, "element", "--index")
    if LABEL.match(element):
        check = is_atom_bounded(element, spec)
    else:
        check = element_atom_check(parse_expression(element, ExpressionKind.RATIONAL), spec)
    return {"monoid": spec.describe(), **check.as_dict()}, ExitCode.PASS


def cmd_monoid_factorizations(args):
    spec = monoid_spec(args)
    target = parse_expression(operand(args, "target", "--target"), ExpressionKind.RATIONAL)
    found = factorizations_bounded(target, spec)
    return {"monoid": spec.describe(), "target": target, "count": len(found), "factorizations": found}, ExitCode.PASS


def cmd_monoid_accp(args):
    spec = monoid_spec(args)
    chain = None
    if args.chain:
        chain = [parse_expression(piece, ExpressionKind.RATIONAL) for piece in args.chain.split(",") if piece.strip()]
    report = accp_chain_probe(spec, args.n_max, chain)
    return {"monoid": spec.describe(), **report.as_dict()}, ExitCode.PASS


def cmd_ff_order(args):
    a = FpElem(args.a, args.p)
    return {"p": args.p, "a": a.value, "order": multiplicative_order(a)}, ExitCode.PASS


def cmd_ff_roots(args):
    return {"p": args.p, "primitive_roots": [a.value for a in primitive_roots(args.p)]}, ExitCode.PASS


def cmd_ff_binomial(args):
    a = FpElem(args.a, args.p)
    f = binomial(args.t, a)
    payload = {
        "f": str(f),
        "order": multiplicative_order(a),
        "criterion": binomial_irreducible(args.t, a),
        "oracle": is_irreducible_oracle(f),
    }
    return payload, ExitCode.PASS


def cmd_ff_trinomial(args):
    f = trinomial(args.p, args.k)
    payload = {"p": args.p, "k": args.k, "a": trinomial_parameter(args.p).value, "f": str(f)}
    payload["irreducible"] = is_irreducible_oracle(f)
    return payload, ExitCode.PASS


def cmd_ff_irreducible(args):
    f = parse_expression(args.poly, ExpressionKind.FPPOLY, args.p)
    method = "trial-division" if uses_trial_division(f) else "rabin"
    return {"f": str(f), "p": args.p, "irreducible": is_irreducible_oracle(f), "method": method}, ExitCode.PASS


def cmd_ff_factor(args):
    f = parse_expression(args.poly, ExpressionKind.FPPOLY, args.p)
    return {"f": str(f), "p": args.p, **factorize(f).as_dict()}, ExitCode.PASS


def cmd_semidomain_atomtest(args):
    spec = monoid_spec(args)
    f = parse_expression(operand(args, "poly", "--expr"), ExpressionKind.POLYEXPR, args.p)
    result = atom_test_bounded(f, spec, search_budget(args))
    return {"monoid": spec.describe(), **result.as_dict()}, ExitCode.PASS


def cmd_semidomain_structure(args):
    f = parse_expression(operand(args, "poly", "--expr"), ExpressionKind.POLYEXPR, args.p)
    return structure(f).as_dict(), ExitCode.PASS


def cmd_semidomain_ascent(args):
    f = parse_expression(operand(args, "poly", "--expr"), ExpressionKind.POLYEXPR, args.p)
    return ascent_factorization(f).as_dict(), ExitCode.PASS


def cmd_subring_atomic(args):
    spec = TowerSpec.from_label(args.ring)
    f = parse_expression(operand(args, "poly", "--expr"), ExpressionKind.SUBRING)
    return {"ring": spec.label, "f": str(f), "atomic": is_atomic_element(f, spec)}, ExitCode.PASS


def cmd_subring_witness(args):
    text = operand(args, "poly", "--expr", required=False) or WITNESS_EXAMPLES[args.mode]
    f = parse_expression(text, ExpressionKind.SUBRING)
    if args.mode == "almost":
        spec = TowerSpec.from_label(args.ring or "ZQ")
        s = almost_atomic_witness(f, spec)
        product = f.scale(s)
        return {"ring": spec.label, "f": str(f), "s": s, "product": str(product)}, ExitCode.PASS
    spec = TowerSpec.from_label(args.ring or "ZQST")
    if args.mode == "quasi":
        g = quasi_atomic_witness(f, spec)
        return {"ring": spec.label, "f": str(f), "g": str(g), "product": str(g * f)}, ExitCode.PASS
    kappa = parse_expression(args.kappa, ExpressionKind.RATFUNC)
    return {"ring": spec.label, **not_almost_atomic_witness(spec, kappa, f).as_dict()}, ExitCode.PASS


def candidate_entries(args: argparse.Namespace) -> list:
    """Candidates from --F/--factors, a --candidates file or the shipped corpus."""
    if args.F is not None:
        if args.candidates is not None:
            raise UsageError("Give --F or --candidates, not both.")
        factors = [piece for piece in (args.factors or "").split(";") if piece.strip()]
        return [{"id": "cli", "F": args.F, "factors": factors}]
    if args.factors:
        raise UsageError("--factors needs --F.")
    if args.candidates is None:
        return load_data_file("nonascent_candidates.json")
    entries = load_data_file(args.candidates)
    if not isinstance(entries, list):
        raise LabDomainError("candidates.not-a-list", f"{args.candidates} must hold a JSON list.")
    for index, entry in enumerate(entries, start=1):
        well_formed = isinstance(entry, dict) and isinstance(entry.get("F"), str)
        if not well_formed or not isinstance(entry.get("factors"), list):
            raise LabDomainError(
                "candidates.bad-entry",
                f'Entry {index} of {args.candidates} needs a string "F" and a list "factors".',
                data={"entry": entry},
            )
    return [{"id": str(index), **entry} for index, entry in enumerate(entries, start=1)]


def cmd_subring_refute(args):
    budget = probe_budget(args)
    results = []
    for entry in candidate_entries(args):
        F = parse_expression(entry["F"], ExpressionKind.RY)
        claimed = [parse_expression(text, ExpressionKind.RY) for text in entry["factors"]]
        refutation = refute_quasi_atomic_candidate(F, claimed, budget=budget)
        results.append({"id": entry["id"], "F": entry["F"], "factors": entry["factors"], **refutation.as_dict()})
    valid = sum(1 for result in results if result["verdict"] == "valid")
    return {"budget": budget.as_dict(), "candidates": results, "valid": valid}, ExitCode.PASS


def cmd_subring_probe(args):
    f = parse_expression(operand(args, "poly", "--expr"), ExpressionKind.RY)
    return member_split_probe(f, budget=probe_budget(args)).as_dict(), ExitCode.PASS


def cmd_subring_descent(args):
    q = parse_expression(args.q, ExpressionKind.RATIONAL)
    steps = infinite_descent_demo(q, args.a, args.depth)
    return {"q": q, "a": args.a, "steps": steps}, ExitCode.PASS


def cmd_papercheck(args):
    params = DEFAULT_PARAMS.with_mqr(args.q, args.r, args.n)
    changes = {
        "depth": args.depth,
        "pmax": args.pmax,
        "tmax": args.tmax,
        "workers": args.workers,
    }
    params = replace(
        params,
        seed=args.seed,
        search_budget=search_budget(args),
        probe_budget=probe_budget(args),
        **{k: v for k, v in changes.items() if v is not None},
    )
    reports = run_papercheck(args.suite, params)
    code = exit_code(reports)
    payload = {
        "suite": args.suite,
        "seed": params.seed,
        "summary": summarize(reports),
        "reports": [report.as_dict(include_time=not args.no_times) for report in reports],
        "exit_code": code.value,
    }
    return payload, code


# output


def render_text(value: Any, indent: int = 0) -> list:
    """Indented `key: value` lines for a JSON-ready value."""
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
    elif isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            lines.append(f"{pad}{', '.join(_scalar_text(item) for item in value)}")
        else:
            for item in value:
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
    else:
        lines.append(f"{pad}{_scalar_text(value)}")
    return lines


def _scalar_text(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, (dict, list)):
        return "none"
    return str(value)


def render_papercheck_text(payload: dict) -> list:
    lines = [f"{report['verdict']:<18} {report['check_id']}" for report in payload["reports"]]
    summary = ", ".join(f"{label}: {count}" for label, count in payload["summary"].items())
    lines.append(f"{payload['suite']} (seed {payload['seed']}): {summary}")
    return lines


def emit(payload: Any, output: OutputFormat, command: Optional[str] = None) -> None:
    data = to_jsonable(payload)
    if output is OutputFormat.JSON:
        print(json.dumps(data, indent=2, sort_keys=True))
    elif command == "papercheck":
        print("\n".join(render_papercheck_text(data)))
    else:
        print("\n".join(render_text(data)))


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        payload, code = args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"puiseuxlab: error: {exc}", file=sys.stderr)
        return ExitCode.USAGE.value
    except PuiseuxLabError as exc:
        print(f"puiseuxlab: {exc}", file=sys.stderr)
        return ExitCode.USAGE.value
    emit(payload, OutputFormat(args.format), args.command)
    return code.value
