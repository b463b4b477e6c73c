"""Command-line interface.

    heightlab <command> [--scenario FILE-or-bundled-name] [options]

Commands: height, torsion, orbit, delta, width, vk-bounds, places,
fvector, project, member, decompose, commutes, verify.

Reports are deterministic JSON on stdout.  Exit codes: 0 success, 1
mathematical refusal (e.g. a reducible or non-Galois defining polynomial,
an index divisor, a failed verification suite), 2 usage or parse error.
Exact rationals appear as "num/den" strings; reals as decimal strings with
explicit absolute error bounds.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import verify as verify_mod
from .corpus import bundled_corpus, bundled_scenario, scenario_documents
from .errors import (
    ConditionViolated,
    HeightlabError,
    InputError,
    MathRefusal,
    SchemaError,
    WitnessFailure,
    ZeroElement,
)
from .expressions import parse_element
from .heights import GElement, g_height, is_torsion, weil_height
from .numberfield import Subfield
from .orbits import delta_K, in_kdiv, orbit_mod_torsion, vk_bounds, width_K
from .placespace import f_vector, integral, l1_norm, places
from .projections import (
    ProjectionSpec,
    check_commutes,
    is_member,
    s_project,
    t_project,
)
from .roots import DEFAULT_PRECISION_BITS
from .scenario import Scenario, parse_scenario

COMMANDS = ("height", "torsion", "orbit", "delta", "width", "vk-bounds",
            "places", "fvector", "project", "member", "decompose",
            "commutes", "verify")


def _frac(q) -> str:
    return str(Fraction(q))


def _real(v: float) -> str:
    return f"{v:.15e}"


def _hv(h) -> dict:
    return {"value": _real(h.value), "abs_error": f"{h.abs_error:.3e}"}


def _coords(el) -> list:
    return [_frac(c) for c in el.coords]


def _gel(u: GElement) -> dict:
    return {"scale": _frac(u.scale), "base": _coords(u.base)}


def _default_precision() -> int:
    env = os.environ.get("HEIGHTLAB_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise SchemaError(f"bad HEIGHTLAB_PRECISION value {env!r}") from exc
    return DEFAULT_PRECISION_BITS


def load_scenario(ref: str, precision_bits: int | None = None) -> Scenario:
    """Load a scenario from a JSON file path or a bundled scenario name."""
    path = Path(ref)
    if path.exists():
        return parse_scenario(path.read_text(), precision_bits)
    try:
        if precision_bits in (None, DEFAULT_PRECISION_BITS):
            return bundled_scenario(ref)
        doc = next(d for d in scenario_documents() if d.get("name") == ref)
        return parse_scenario(doc, precision_bits)
    except (KeyError, StopIteration):
        raise SchemaError(f"no scenario file or bundled scenario named {ref!r}")


def _resolve_element(scenario: Scenario, ref: str):
    if ref in scenario.elements:
        return scenario.elements[ref]
    return parse_element(ref, scenario.field)


def _resolve_subfield(scenario: Scenario, name: str) -> Subfield:
    return scenario.subfield_by_name(name)


def _split_names(arg: str):
    return [n.strip() for n in arg.split(",") if n.strip()]


def run_command(cmd: str, scenario: Scenario | None, args: dict) -> dict:
    """Dispatch a single command to the library and shape its JSON report."""
    report = {"command": cmd}
    if scenario is not None:
        report["scenario"] = scenario.name

    if cmd == "verify":
        names = list(verify_mod.SUITES) if args.get("suite") in (None, "all") \
            else [args["suite"]]
        scenarios = (bundled_corpus() if scenario is None else [scenario])
        options = {}
        if args.get("tolerance") is not None:
            options["tolerance"] = args["tolerance"]
        results = [verify_mod.run_suite(n, scenarios, **options) for n in names]
        report["suites"] = [
            {"name": r.name, "criterion": r.criterion, "passed": r.passed,
             "checks": r.checks, "failures": r.failures, "notes": r.notes}
            for r in results
        ]
        report["passed"] = all(r.passed for r in results)
        report["table"] = [
            f"{'PASS' if r.passed else 'FAIL'} criterion {r.criterion:2d} "
            f"[{r.name}] {r.checks} checks"
            for r in results
        ]
        return report

    if scenario is None:
        raise SchemaError(f"command {cmd!r} requires --scenario")

    if cmd == "places":
        table = []
        for pid, weight in places(scenario.field):
            # weight is 1/d for a real embedding, 2/d for a conjugate pair
            kind = "real" if weight == Fraction(1, scenario.field.degree) else "complex"
            table.append({"id": pid.index, "kind": kind, "weight": _frac(weight)})
        report["degree"] = scenario.field.degree
        report["torsion_order"] = scenario.field.torsion_order
        report["archimedean"] = table
        report["finite"] = "enumerated per element (see fvector)"
        return report

    if cmd == "commutes":
        names = _split_names(args.get("field_list") or "")
        if len(names) < 2:
            raise SchemaError("commutes requires --field-list with at least two names")
        count = args.get("count") or 50
        rng = random.Random(f"cli-commutes:{scenario.name}")
        testset = [GElement.of(verify_mod.random_element(scenario.field, rng))
                   for _ in range(count)]
        pairs = []
        from .numberfield import galois_condition
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                k1 = _resolve_subfield(scenario, names[i])
                k2 = _resolve_subfield(scenario, names[j])
                pairs.append({
                    "pair": [names[i], names[j]],
                    "galois_condition": galois_condition(k1, k2),
                    "commutes": check_commutes(k1, k2, testset),
                })
        report["elements_tested"] = count
        report["pairs"] = pairs
        return report

    element_ref = args.get("element")
    if not element_ref:
        raise SchemaError(f"command {cmd!r} requires --element")
    el = _resolve_element(scenario, element_ref)
    report["element"] = element_ref

    if cmd == "height":
        report.update(_hv(weil_height(el, scenario.field)))
        return report

    if cmd == "torsion":
        report["is_torsion"] = is_torsion(el, scenario.field)
        return report

    if cmd in ("orbit", "delta", "width", "vk-bounds"):
        kname = args.get("K")
        if not kname:
            raise SchemaError(f"command {cmd!r} requires --K")
        k = _resolve_subfield(scenario, kname)
        report["K"] = kname
        if cmd == "delta":
            report["delta"] = delta_K(el, k)
            return report
        if cmd == "width":
            report.update(_hv(width_K(el, k)))
            return report
        if cmd == "vk-bounds":
            lo, hi = vk_bounds(el, k)
            report["lower"] = _hv(lo)
            report["upper"] = _hv(hi)
            report["interval"] = f"V_K ∈ [{_real(lo.value)}, {_real(hi.value)}]"
            member = in_kdiv(el, k)
            report["in_kdiv"] = bool(member)
            if member:
                report["kdiv_witness"] = {
                    "exponent": member.exponent,
                    "power": _coords(member.power),
                }
            return report
        rep = orbit_mod_torsion(el, k)
        report["delta"] = rep.delta
        report["conjugate_count"] = rep.conjugate_count
        report["width"] = _hv(rep.width)
        report["representatives"] = [_coords(r) for r in rep.representatives]
        report["norm_element"] = _coords(rep.norm_element)
        return report

    try:
        scale = Fraction(args.get("scale") or 1)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad --scale value {args.get('scale')!r}") from exc
    u = GElement(scenario.field, scale, el)

    if cmd == "fvector":
        vec = f_vector(u)
        report.update(vec.as_dict())
        report["l1_norm"] = _real(l1_norm(vec))
        report["two_heights"] = _real(2 * g_height(u).value)
        report["integral"] = _real(integral(vec))
        return report

    if cmd == "project":
        kname = args.get("K")
        if not kname:
            raise SchemaError("project requires --K")
        k = _resolve_subfield(scenario, kname)
        op = args.get("op") or "s"
        if op not in ("s", "t"):
            raise SchemaError("--op must be 's' or 't'")
        image = s_project(u, k) if op == "s" else t_project(u, k)
        report["K"] = kname
        report["op"] = op
        report["input"] = _gel(u)
        report["image"] = _gel(image)
        report["is_zero"] = image.is_zero()
        return report

    if cmd in ("member", "decompose"):
        d_names = _split_names(args.get("D") or "")
        e_names = _split_names(args.get("E") or "")
        if not d_names and not e_names:
            raise SchemaError(f"{cmd} requires --D (and optionally --E)")
        spec = ProjectionSpec.build(
            [_resolve_subfield(scenario, n) for n in d_names],
            [_resolve_subfield(scenario, n) for n in e_names])
        if not spec.condition_ok and args.get("strict_condition"):
            raise ConditionViolated(
                "subfield collection violates the pairwise Galois condition")
        res = is_member(u, spec)
        report["D"] = d_names
        report["E"] = e_names
        report["condition_ok"] = res.condition_ok
        report["is_member"] = res.is_member
        report["d_part"] = _gel(res.d_part)
        report["e_part"] = _gel(res.e_part)
        if res.witness is not None:
            report["witness"] = {
                "exponent": res.witness.exponent,
                "factors": [_coords(f) for f in res.witness.factors],
            }
        else:
            report["witness"] = None
        return report

    raise SchemaError(f"unknown command {cmd!r}")  # pragma: no cover


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heightlab",
        description="Exact Weil heights, Galois orbits, place vectors, and "
                    "field-norm projections in a fixed Galois number field.")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd)
        p.add_argument("--scenario", help="scenario JSON file or bundled name")
        p.add_argument("--element", help="element name from the scenario, or an expression")
        p.add_argument("--scale", help="rational scale for the group element (default 1)")
        p.add_argument("--K", help="subfield name")
        p.add_argument("--D", help="comma-separated image-side subfield names")
        p.add_argument("--E", help="comma-separated kernel-side subfield names")
        p.add_argument("--field-list", dest="field_list",
                       help="comma-separated subfield names (commutes)")
        p.add_argument("--op", help="projection kind for 'project': s or t")
        p.add_argument("--count", type=int, help="random elements per sweep")
        p.add_argument("--precision", type=int, help="embedding precision in bits")
        p.add_argument("--tolerance", type=float, help="verification tolerance")
        p.add_argument("--strict-condition", dest="strict_condition",
                       action="store_true",
                       help="refuse condition-violating projection specs")
        p.add_argument("--json", action="store_true", help="compact JSON output")
        if cmd == "verify":
            p.add_argument("suite", nargs="?", default="all",
                           help="suite name or 'all'")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    compact = ns.json

    try:
        precision = ns.precision if ns.precision else _default_precision()
        scenario = None
        if ns.scenario:
            scenario = load_scenario(ns.scenario, precision)
        args = {k: getattr(ns, k, None) for k in
                ("element", "scale", "K", "D", "E", "field_list", "op",
                 "count", "tolerance", "strict_condition")}
        args["suite"] = getattr(ns, "suite", None)
        report = run_command(ns.command, scenario, args)
    except InputError as exc:
        _emit({"error": {"kind": type(exc).__name__, "message": str(exc)}}, compact)
        return 2
    except (MathRefusal, WitnessFailure) as exc:
        _emit({"error": {"kind": type(exc).__name__, "message": str(exc)}}, compact)
        return 1

    _emit(report, compact)
    if ns.command == "verify" and not report["passed"]:
        return 1
    return 0


def _emit(obj, compact: bool):
    if compact:
        sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")


if __name__ == "__main__":
    sys.exit(main())
