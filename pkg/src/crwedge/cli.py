"""Command-line front end: scenario runs, builtin example verdicts, CSV output.

Subcommands: levi, angle, attach, sweep, lift, hypotheses, edge-check,
verify-example.  Exit status 0 when every requested verdict passes, 1 when
a verdict fails (the failing clause is named on stdout), 2 for scenario or
usage errors.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .bishop import singular_component, solve_bishop
from .cones import angle_condition_equiv, edge_of_wedge_check, gamma_angle, levi_cone
from .errors import CRWedgeError, HypothesisError, ScenarioError
from .extension import eta_sweep, theorem_hypotheses_check, wedge_lift
from .manifold import genericity_check
from .scenarios import builtin_names, load_scenario


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.12g}"
    return str(value)


@dataclass
class ReportRow:
    name: str
    value: object
    tolerance: float = float("nan")
    margin: float = float("nan")
    verdict: str = "info"


@dataclass
class Report:
    title: str
    rows: list = field(default_factory=list)

    def add(self, name, value, tolerance=float("nan"), margin=float("nan"),
            passed=None):
        verdict = "info" if passed is None else ("pass" if passed else "fail")
        self.rows.append(ReportRow(name, value, tolerance, margin, verdict))

    def info(self, name, value):
        self.add(name, value)

    @property
    def passed(self):
        return all(row.verdict != "fail" for row in self.rows)

    def failures(self):
        return [row for row in self.rows if row.verdict == "fail"]

    def render(self):
        lines = [f"== {self.title}"]
        width = max((len(r.name) for r in self.rows), default=0)
        for row in self.rows:
            parts = [f"  {row.name:<{width}}  {_fmt(row.value)}"]
            if not (isinstance(row.tolerance, float) and math.isnan(row.tolerance)):
                parts.append(f"tol={_fmt(row.tolerance)}")
            if not (isinstance(row.margin, float) and math.isnan(row.margin)):
                parts.append(f"margin={_fmt(row.margin)}")
            if row.verdict != "info":
                parts.append(row.verdict.upper())
            lines.append("  ".join(parts))
        return "\n".join(lines)

    def csv_lines(self):
        lines = ["name,value,tolerance,margin,verdict"]
        for row in self.rows:
            lines.append(",".join([
                row.name.replace(",", ";"), _fmt(row.value),
                _fmt(row.tolerance), _fmt(row.margin), row.verdict,
            ]))
        return lines


def write_csv(reports, path):
    lines = []
    for report in reports:
        lines.extend(report.csv_lines() if not lines else report.csv_lines()[1:])
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def _apply_overrides(scenario, args):
    if args.grid:
        scenario.analysis["grid_size"] = args.grid
    if args.samples:
        scenario.analysis["sample_count"] = args.samples
    if args.seed is not None:
        scenario.analysis["seed"] = args.seed
    if args.resolution:
        scenario.analysis["resolution"] = args.resolution
    return scenario


def cmd_levi(scenario, args):
    report = Report(f"levi values and angle-filtered hull: {scenario.name}")
    M = scenario.manifold
    cfg = scenario.analysis
    for idx, w0 in enumerate(scenario.w0_candidates()):
        L = M.levi_form(w0)
        report.info(f"L(w0[{idx}])", " ".join(_fmt(float(v)) for v in L))
    lc = levi_cone(M, scenario.wedge, cfg["alpha"], cfg["sample_count"],
                   margin=cfg["gamma_margin"], resolution=cfg["resolution"],
                   seed=cfg["seed"])
    report.info("samples kept", len(lc.samples))
    report.info("hull rays", "; ".join(
        " ".join(_fmt(float(v)) for v in ray) for ray in lc.hull) or "(empty)")
    report.add("hull interior nonempty", lc.interior_nonempty,
               passed=lc.interior_nonempty)
    return [report]


def cmd_angle(scenario, args):
    report = Report(f"opening angles: {scenario.name}")
    cfg = scenario.analysis
    tol = 0.01 * args.tolerance_scale
    for idx, w0 in enumerate(scenario.w0_candidates()):
        gamma = gamma_angle(w0, scenario.wedge, resolution=cfg["resolution"])
        report.info(f"gamma(w0[{idx}])", gamma)
        try:
            ok, witness = angle_condition_equiv(w0, scenario.wedge,
                                                resolution=cfg["resolution"])
            report.add(
                f"angle condition witness (w0[{idx}])", ok,
                margin=witness.margin if witness else float("nan"),
                passed=(ok == (gamma > math.pi / 2)) or abs(gamma - math.pi / 2) < 0.05,
            )
        except HypothesisError as exc:
            report.info(f"angle condition witness (w0[{idx}])",
                        f"skipped: {exc.clause}")
    return [report]


def cmd_attach(scenario, args):
    cfg = scenario.analysis
    report = Report(f"disc attachment: {scenario.name}")
    w0 = scenario.w0_sweep()
    eta = float(cfg.get("eta", cfg["eta_list"][0]))
    disc = solve_bishop(
        scenario.manifold, singular_component(cfg["alpha"], eta, w0),
        grid_size=cfg["grid_size"],
    )
    report.info("eta", eta)
    report.info("iterations", disc.iterations)
    report.add("contraction factor", disc.contraction_factor, tolerance=1.0,
               passed=disc.contraction_factor < 1.0)
    report.add("attachment residual", disc.attach_residual,
               tolerance=disc.attach_tol,
               passed=disc.attach_residual <= disc.attach_tol)
    report.add("holomorphy residual", disc.holomorphy_residual, tolerance=1e-6,
               passed=disc.holomorphy_residual <= 1e-6)
    return [report]


def cmd_sweep(scenario, args):
    cfg = scenario.analysis
    report = Report(f"disc family sweep: {scenario.name}")
    rep = eta_sweep(scenario.manifold, scenario.wedge, scenario.w0_sweep(),
                    cfg["alpha"], cfg["eta_list"], grid_size=cfg["grid_size"],
                    gamma_margin=cfg["gamma_margin"])
    report.info("levi value", " ".join(_fmt(float(v)) for v in rep.levi_value))
    report.add("profile correlation", rep.correlation, tolerance=0.999,
               passed=rep.correlation >= 0.999)
    report.add("fitted kappa", rep.kappa, passed=rep.kappa > 0)
    report.info("radial derivative of the bulge",
                " ".join(_fmt(float(v)) for v in rep.vddot_radial))
    finite = rep.hopf_constants[np.isfinite(rep.hopf_constants)]
    report.add("hopf ratio negative",
               " ".join(_fmt(float(v)) for v in finite),
               passed=bool(np.all(finite < 0)))
    for eta in sorted(rep.eta_list, reverse=True):
        report.info(f"alignment cosine (eta={_fmt(eta)})",
                    rep.alignment_by_eta[eta])
    report.add("final alignment", rep.alignment_cosine, tolerance=0.99,
               passed=rep.alignment_cosine >= 0.99)
    return [report]


def cmd_lift(scenario, args):
    cfg = scenario.analysis
    if "c3" not in cfg or "c4" not in cfg:
        raise ScenarioError("lift needs analysis constants c3 and c4")
    report = Report(f"deformed-manifold lift: {scenario.name}")
    rep = wedge_lift(scenario.manifold, cfg["alpha"], float(cfg["c3"]),
                     float(cfg["c4"]), grid_size=cfg["grid_size"])
    report.info("prescribed scale rho", rep.rho)
    report.add("prescribed bound margin", rep.prescribed_margin,
               passed=rep.verdicts["prescribed_bound"])
    report.add("power-norm inclusion failures", rep.inclusion_failures.size,
               margin=rep.inclusion_margin, passed=rep.verdicts["inclusion"])
    report.add("transversality |pr(d_r z(1))|",
               float(np.linalg.norm(rep.transversal)), tolerance=1e-6,
               passed=rep.verdicts["transversal"])
    report.info("tangential derivative |d_theta z(1)|",
                rep.tangential_derivative)
    return [report]


def cmd_hypotheses(scenario, args):
    cfg = scenario.analysis
    report = Report(f"extension theorem hypotheses: {scenario.name}")
    verdict = theorem_hypotheses_check(
        scenario.manifold, scenario.wedge, alpha=0.5,
        w0_candidates=scenario.w0_candidates(),
        direction_query=cfg.get("direction_query"),
        sample_count=cfg["sample_count"], gamma_margin=cfg["gamma_margin"],
        seed=cfg["seed"],
    )
    for clause in verdict.clauses:
        report.add(clause.name, clause.detail, margin=clause.margin,
                   passed=clause.passed)
    return [report]


def cmd_edge_check(scenario, args):
    cfg = scenario.analysis
    report = Report(f"paired-wedge conditions: {scenario.name}")
    verdict = edge_of_wedge_check(
        scenario.wedges, scenario.manifold, alpha=cfg["alpha"],
        sample_count=cfg["sample_count"], margin=cfg["gamma_margin"],
        resolution=cfg["resolution"], seed=cfg["seed"],
    )
    report.add("tangent cones sum to T_0M", verdict.condition_i,
               margin=verdict.tangent_margin, passed=verdict.condition_i)
    report.add("levi cones sum to the normal space", verdict.condition_ii,
               margin=verdict.levi_margin, passed=verdict.condition_ii)
    return [report]


# ---------------------------------------------------------------------------
# builtin example verdicts


def _verify_example(name, args):
    scenario = _apply_overrides(load_scenario(name), args)
    cfg = scenario.analysis
    M = scenario.manifold
    tol_scale = args.tolerance_scale
    report = Report(f"builtin example {name}: {scenario.description}")

    if name == "1.2":
        generic, rank = genericity_check(scenario.edge, M.N)
        report.add("edge generic", f"rank {rank}", passed=generic)
        gamma = gamma_angle(scenario.w0_candidates()[0], scenario.wedge,
                            resolution=cfg["resolution"])
        dev = min(abs(gamma - math.pi), abs(gamma - 2 * math.pi))
        report.add("gamma(real direction) in {pi, 2pi}", gamma,
                   tolerance=0.01 * tol_scale, passed=dev <= 0.01 * tol_scale)
        lc = levi_cone(M, scenario.wedge, 0.5, cfg["sample_count"],
                       margin=cfg["gamma_margin"], resolution=cfg["resolution"],
                       seed=cfg["seed"])
        values = np.array([s.value[0] for s in lc.samples])
        negatives = int(np.sum(values < 0.0))
        report.info("samples kept above the angle threshold", len(lc.samples))
        report.add("kept samples with negative Levi value", negatives,
                   passed=negatives == 0)
        report.add("hull inside the upper half-line", bool(np.all(values >= 0)),
                   passed=bool(np.all(values >= 0)))
    elif name == "1.3":
        w0 = scenario.w0_candidates()[0]
        gamma = gamma_angle(w0, scenario.wedge, resolution=cfg["resolution"])
        report.add("gamma(w0) = 0.75 pi", gamma, tolerance=0.01 * tol_scale,
                   passed=abs(gamma - 0.75 * math.pi) <= 0.01 * tol_scale)
        L = M.levi_form(w0)
        report.add("L(w0) positive", float(L[0]), passed=L[0] > 0)
        generic, rank = genericity_check(scenario.edge, M.N)
        report.add(f"edge not generic (rank {rank} < {2 * M.N})"
                   if not generic else "edge generic",
                   f"rank {rank}", passed=generic)
    elif name == "1.4":
        w0 = scenario.w0_candidates()[0]
        L = float(M.levi_form(w0)[0])
        report.add("L_0(w_0,w_0) = -0.200000", L, tolerance=1e-6 * tol_scale,
                   passed=abs(L + 0.2) <= 1e-6 * tol_scale)
        gamma = gamma_angle(w0, scenario.wedge, resolution=cfg["resolution"])
        report.add("gamma(w_0) = pi/2", gamma, tolerance=0.01 * tol_scale,
                   passed=abs(gamma - math.pi / 2) <= 0.01 * tol_scale)
        verdict = theorem_hypotheses_check(
            M, scenario.wedge, alpha=0.5,
            w0_candidates=[], direction_query=cfg.get("direction_query"),
            sample_count=cfg["sample_count"], gamma_margin=cfg["gamma_margin"],
            seed=cfg["seed"],
        )
        for clause in verdict.clauses:
            report.add(clause.name, clause.detail, passed=clause.passed)
        if verdict.witness is not None:
            report.info(
                "witness direction",
                " ".join(_fmt(float(v)) for v in
                         np.concatenate([verdict.witness.w.real,
                                         verdict.witness.w.imag])),
            )
    else:
        raise ScenarioError(f"verify-example supports 1.2, 1.3, 1.4; got {name!r}")
    return [report]


# ---------------------------------------------------------------------------
# entry point


_COMMANDS = {
    "levi": cmd_levi,
    "angle": cmd_angle,
    "attach": cmd_attach,
    "sweep": cmd_sweep,
    "lift": cmd_lift,
    "hypotheses": cmd_hypotheses,
    "edge-check": cmd_edge_check,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crwedge",
        description="Angle invariants, Levi cones and attached analytic discs "
                    "for graph manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--grid", type=int, default=0,
                       help="override the boundary grid size")
        p.add_argument("--samples", type=int, default=0,
                       help="override the direction sample count")
        p.add_argument("--seed", type=int, default=None,
                       help="override the sampling seed")
        p.add_argument("--resolution", type=int, default=0,
                       help="override the angular scan resolution")
        p.add_argument("--csv", default="",
                       help="also write the report rows to this CSV file")
        p.add_argument("--tolerance-scale", type=float, default=1.0,
                       help="scale factor applied to the pass tolerances")

    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("scenario",
                       help="scenario file path or builtin name "
                            f"({', '.join(builtin_names())})")
        common(p)

    p = sub.add_parser("verify-example")
    p.add_argument("example", choices=["1.2", "1.3", "1.4"])
    common(p)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify-example":
            reports = _verify_example(args.example, args)
        else:
            scenario = _apply_overrides(load_scenario(args.scenario), args)
            reports = _COMMANDS[args.command](scenario, args)
    except (ScenarioError, CRWedgeError) as exc:
        if isinstance(exc, HypothesisError):
            print(f"verdict failure: {exc.clause}")
            return 1
        print(f"error: {exc}", file=sys.stderr)
        return 2

    for report in reports:
        print(report.render())
    if args.csv:
        write_csv(reports, args.csv)
    failures = [row for report in reports for row in report.failures()]
    if failures:
        for row in failures:
            print(f"verdict failure: {row.name}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
