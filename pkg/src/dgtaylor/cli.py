"""Command-line front end.

Exit codes: 0 when every check passes, 1 when some check reports a
violation, 2 for input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import axioms
from .axioms import Budget
from .chainmaps import (check_map_properties, comparison_map, identity_map, inclusion_map,
                        taylor_iso)
from .complex import FreeComplex, dumps
from .constructions import (SignMode, factors_from_ideals, koszul_principal, star_product,
                            taylor, tensor_product)
from .dg_gamma import DGGammaAlgebra
from .monomial import Monomial, VarContext
from .report import CheckResult, Report
from .scarf import check_scarf_gamma, scarf_subcomplex

log = logging.getLogger("dgtaylor")

CHECK_GROUPS = ("d2", "resolution", "dg", "gamma", "maps", "scarf")
CONSTRUCTIONS = ("taylor", "koszul", "tensor", "gen-taylor")

DEMO_SIGN_INPUT = {"variables": ["x", "y", "z", "w"], "ideals": [["x*y", "y*z"], ["z*w", "w*x"]]}


class UsageError(Exception):
    pass


@dataclass
class InputSpec:
    ctx: VarContext
    ideals: list[list[Monomial]]

    @property
    def generators(self) -> list[Monomial]:
        return [g for ideal in self.ideals for g in ideal]


def input_from_dict(data) -> InputSpec:
    if not isinstance(data, dict):
        raise UsageError("schema: top level must be an object")
    if "variables" not in data:
        raise UsageError("schema: variables required")
    if "ideals" not in data:
        raise UsageError("schema: ideals required")
    names = data["variables"]
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise UsageError("schema: variables must be a list of strings")
    try:
        ctx = VarContext(tuple(names))
    except ValueError as err:
        raise UsageError(f"variables: {err}") from None
    ideals = data["ideals"]
    if not isinstance(ideals, list) or not ideals:
        raise UsageError("schema: ideals must be a nonempty list")
    parsed = []
    for i, ideal in enumerate(ideals):
        if not isinstance(ideal, list) or not ideal:
            raise UsageError(f"schema: ideals[{i}] must be a nonempty list of monomial strings")
        gens = []
        for j, text in enumerate(ideal):
            if not isinstance(text, str):
                raise UsageError(f"schema: ideals[{i}][{j}] must be a string")
            try:
                gens.append(ctx.parse(text))
            except (ValueError, OverflowError) as err:
                raise UsageError(f"ideals[{i}][{j}] {text!r}: {err}") from None
        parsed.append(gens)
    return InputSpec(ctx, parsed)


def parse_input(path) -> InputSpec:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise UsageError(f"{path}: invalid JSON at line {err.lineno}: {err.msg}") from None
    return input_from_dict(data)


# -- building -------------------------------------------------------------


def build_construction(spec: InputSpec, construction: str, factor_resolution: str = "taylor",
                       sign_mode: str = "corrected", bound: int = 3) -> DGGammaAlgebra:
    if construction == "taylor":
        return taylor(spec.generators, bound=bound)
    if construction == "koszul":
        if len(spec.ideals) != 1 or len(spec.ideals[0]) != 1:
            raise UsageError("koszul needs exactly one principal ideal")
        return koszul_principal(spec.ideals[0][0], bound)
    try:
        fs = factors_from_ideals(spec.ideals, factor_resolution, bound)
    except ValueError as err:
        raise UsageError(str(err)) from None
    if construction == "tensor":
        if len(fs) < 2:
            raise UsageError("tensor needs at least two ideals")
        return tensor_product(fs, bound)
    if construction == "gen-taylor":
        return star_product(fs, sign_mode, bound)
    raise UsageError(f"unknown construction {construction!r}")


def _checks_list(text: str) -> list[str]:
    groups = [g.strip() for g in text.split(",") if g.strip()]
    if "all" in groups:
        return list(CHECK_GROUPS)
    bad = [g for g in groups if g not in CHECK_GROUPS]
    if bad:
        raise UsageError(f"unknown check group(s): {', '.join(bad)}")
    return groups


def _budget(args) -> Budget:
    return Budget(samples=args.samples, seed=args.seed)


def _resolution_check(cx: FreeComplex, args) -> CheckResult:
    if args.strand_mode == "box":
        if args.box_bound is None:
            raise UsageError("--strand-mode box needs --box-bound")
        return cx.verify_resolution("box", args.box_bound)
    return cx.verify_resolution("lattice")


def _map_checks(spec: InputSpec, alg: DGGammaAlgebra, args, budget: Budget) -> list[CheckResult]:
    k = args.max_divided_power
    if alg.kind == "taylor":
        s = star_product([koszul_principal(g, k) for g in spec.generators], bound=k) \
            if len(spec.generators) > 1 else None
        if s is None:
            raise UsageError("maps checks need at least two generators")
        phi = taylor_iso(alg, s)
        return check_map_properties(phi, ("chain", "multiplicative", "gamma", "iso"), budget, k)
    if alg.kind in ("star", "tensor"):
        fs = list(alg.factors)
        star = alg if alg.kind == "star" else star_product(fs, args.sign_mode, k)
        tens = alg if alg.kind == "tensor" else tensor_product(fs, k)
        phi = comparison_map(tens, star)
        out = check_map_properties(phi, ("chain", "multiplicative", "gamma", "loc_invertible"), budget, k)
        for i in range(len(fs)):
            out += check_map_properties(inclusion_map(star, i), ("chain", "multiplicative", "gamma"), budget, k)
        return out
    raise UsageError(f"no maps are defined for a {alg.kind or 'plain'} construction")


def _applies(group: str, alg: DGGammaAlgebra, spec: InputSpec) -> bool:
    if group == "scarf":
        return alg.kind == "taylor"
    if group == "maps":
        return alg.kind in ("star", "tensor") or (alg.kind == "taylor" and len(spec.generators) > 1)
    return True


def run_checks(spec: InputSpec, alg: DGGammaAlgebra, groups, args) -> list[CheckResult]:
    budget = _budget(args)
    out: list[CheckResult] = []
    for group in groups:
        log.info("running %s checks", group)
        if group == "d2":
            out.append(alg.cx.check_d_squared())
        elif group == "resolution":
            out.append(_resolution_check(alg.cx, args))
        elif group == "dg":
            out += axioms.check_dg_axioms(alg, budget)
        elif group == "gamma":
            out += axioms.check_gamma_axioms(alg, budget)
        elif group == "maps":
            out += _map_checks(spec, alg, args, budget)
        elif group == "scarf":
            if alg.kind != "taylor":
                raise UsageError("scarf checks need --construction taylor")
            s = scarf_subcomplex(alg)
            d2 = s.induced.check_d_squared()
            d2.name = "scarf_d_squared"
            out += [d2, check_scarf_gamma(alg, s, args.max_divided_power)]
    return out


# -- output ---------------------------------------------------------------


def _write(path: str | None, text: str) -> None:
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit(report: Report, args) -> int:
    print(report.text())
    _write(args.report, dumps(report.to_json()))
    return 0 if report.passed else 1


def _ranks_line(name: str, cx: FreeComplex) -> str:
    return f"{name}: ranks {tuple(cx.ranks())}"


# -- commands -------------------------------------------------------------


def cmd_build(args) -> int:
    spec = parse_input(args.input)
    alg = build_construction(spec, args.construction, args.factor_resolution,
                             args.sign_mode, args.max_divided_power)
    print(_ranks_line(args.construction, alg.cx))
    _write(args.out, dumps(alg.to_json()))
    return 0


def cmd_verify(args) -> int:
    spec = parse_input(args.input)
    groups = _checks_list(args.checks)
    alg = build_construction(spec, args.construction, args.factor_resolution,
                             args.sign_mode, args.max_divided_power)
    if "all" in args.checks.split(","):
        # "all" means every group that applies to this construction
        groups = [g for g in groups if _applies(g, alg, spec)]
    print(_ranks_line(args.construction, alg.cx))
    report = Report("verify", args.seed)
    report.extend(run_checks(spec, alg, groups, args))
    _write(args.out, dumps(alg.to_json()))
    return _emit(report, args)


def cmd_scarf(args) -> int:
    spec = parse_input(args.input)
    t = taylor(spec.generators, bound=args.max_divided_power)
    s = scarf_subcomplex(t)
    print(_ranks_line("scarf", s.induced))
    report = Report("scarf", args.seed)
    for group in _checks_list(args.checks):
        if group == "d2":
            report.checks.append(s.induced.check_d_squared())
        elif group == "resolution":
            report.checks.append(_resolution_check(s.induced, args))
        elif group == "scarf":
            report.checks.append(check_scarf_gamma(t, s, args.max_divided_power))
        else:
            raise UsageError(f"check group {group!r} does not apply to the scarf command")
    _write(args.out, dumps(s.induced.to_json()))
    return _emit(report, args)


def cmd_compare(args) -> int:
    spec = parse_input(args.input)
    gens = spec.generators
    if len(gens) < 2:
        raise UsageError("compare needs at least two generators")
    k = args.max_divided_power
    t = taylor(gens, bound=k)
    try:
        s = star_product([koszul_principal(g, k) for g in gens], bound=k)
    except ValueError as err:
        raise UsageError(str(err)) from None
    print(_ranks_line("taylor", t.cx))
    print(_ranks_line("star of koszuls", s.cx))
    report = Report("compare", args.seed)
    ranks = CheckResult("ranks_equal", checked=1)
    if t.cx.ranks() != s.cx.ranks():
        ranks.add("ranks", t.cx.ranks(), s.cx.ranks())
    report.checks.append(ranks)
    phi = taylor_iso(t, s)
    report.extend(check_map_properties(phi, ("chain", "multiplicative", "gamma", "iso"), _budget(args), k))
    roundtrip = CheckResult("inverse_roundtrip", checked=1)
    try:
        if phi.inverse().compose(phi).images != identity_map(t).images:
            roundtrip.add("Phi^-1∘Phi", "not the identity", "identity")
    except ValueError as err:
        roundtrip.add("Phi^-1", str(err), "an inverse")
    report.checks.append(roundtrip)
    _write(args.out, dumps(phi.to_json("taylor", "star")))
    return _emit(report, args)


def cmd_export(args) -> int:
    try:
        data = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise UsageError(f"cannot load {args.input}: {err}") from None
    try:
        obj = DGGammaAlgebra.from_json(data) if "mul" in data else FreeComplex.from_json(data)
    except (KeyError, TypeError, ValueError) as err:
        raise UsageError(f"{args.input}: not a complex export ({err})") from None
    text = dumps(obj.to_json())
    _write(args.out or "-", text)
    return 0


def cmd_demo_sign(args) -> int:
    spec = parse_input(args.input) if args.input else input_from_dict(DEMO_SIGN_INPUT)
    if len(spec.ideals) < 2:
        raise UsageError("demo-sign needs at least two ideals")
    budget = _budget(args)
    k = args.max_divided_power
    try:
        fs = factors_from_ideals(spec.ideals, args.factor_resolution, k)
    except ValueError as err:
        raise UsageError(str(err)) from None
    corrected = star_product(fs, SignMode.CORRECTED, k)
    unsigned = star_product(fs, SignMode.UNSIGNED, k)
    report = Report("demo-sign", args.seed)
    for which in ("graded_comm", "leibniz"):
        r = axioms.check_dg_axiom(corrected, which, budget)
        r.name = f"corrected:{which}"
        report.checks.append(r)
    found = CheckResult("unsigned_breaks_axioms")
    for which in ("graded_comm", "leibniz"):
        r = axioms.check_dg_axiom(unsigned, which, budget)
        found.checked += r.checked
        found.details[which] = [v.to_json() for v in r.violations[:3]]
        if r.violations:
            v = r.violations[0]
            print(f"unsigned {which} counterexample at {v.location}:\n  lhs = {v.lhs}\n  rhs = {v.rhs}")
    if not any(found.details.values()):
        found.add("unsigned star", "all axioms hold", "at least one violation")
    report.checks.append(found)
    return _emit(report, args)


# -- argument parsing -------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgtaylor", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, input_required=True):
        sp.add_argument("--input", required=input_required)
        sp.add_argument("--out")
        sp.add_argument("--report")
        sp.add_argument("--construction", choices=CONSTRUCTIONS, default="taylor")
        sp.add_argument("--factor-resolution", choices=("taylor", "koszul"), default="taylor")
        sp.add_argument("--checks", default="all")
        sp.add_argument("--sign-mode", choices=[m.value for m in SignMode], default="corrected")
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--samples", type=int, default=50)
        sp.add_argument("--max-divided-power", type=int, default=3)
        sp.add_argument("--strand-mode", choices=("lattice", "box"), default="lattice")
        sp.add_argument("--box-bound", type=int)

    for name, fn, needs_input in (("build", cmd_build, True), ("verify", cmd_verify, True),
                                  ("scarf", cmd_scarf, True), ("compare", cmd_compare, True),
                                  ("export", cmd_export, True), ("demo-sign", cmd_demo_sign, False)):
        sp = sub.add_parser(name)
        common(sp, needs_input)
        sp.set_defaults(func=fn)
    sub.choices["scarf"].set_defaults(checks="d2,scarf")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.max_divided_power < 1 or args.samples < 0:
        print("error: --max-divided-power must be >= 1 and --samples >= 0", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
