"""Command-line front end: ``couette-slip {spectrum,criteria,sweep,verify,resolvent,evolve}``.

Exit codes: 0 success, 1 invalid input or usage error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from couette_slip import criteria as crit_mod
from couette_slip import energy, green, sweep
from couette_slip.eigen import (DEFAULT_KMAX, DEFAULT_N, DEFAULT_TOL, cached_grid, solve_filtered,
                                spectral_abscissa)
from couette_slip.errors import InvalidInput, NumericalFailure
from couette_slip.evolve import evolve_mode, fit_decay
from couette_slip.operators import assemble
from couette_slip.params import CaseI, CaseII, FlowConfig, build_profile, effective_reynolds

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ---- run configuration ----------------------------------------------------

RUN_KEYS = {"case", "mu", "alpha", "alpha0", "alpha1", "a", "b", "a_minus_b", "axes", "kmax", "N",
            "tol", "convention", "policy", "workers", "budget", "seed"}


@dataclass(frozen=True)
class RunConfig:
    grid: sweep.SweepGrid
    policy: str = sweep.CriteriaOnly
    workers: int = 1
    seed: int = 0
    extra: dict = field(default_factory=dict)


def parse_run_config(doc) -> RunConfig:
    """Build a RunConfig from a parsed JSON object; unknown keys are rejected."""
    if not isinstance(doc, dict):
        raise InvalidInput("run configuration must be a JSON object")
    unknown = sorted(set(doc) - RUN_KEYS)
    if unknown:
        raise InvalidInput(f"unknown keys in run configuration: {', '.join(unknown)}")
    case = doc.get("case", CaseI)
    if "a_minus_b" in doc and ("a" in doc or "b" in doc):
        raise InvalidInput("give either a_minus_b or the wall speeds a, b")
    fixed = {}
    for key in sweep.CASE_AXES.get(case, ()):
        if key in doc:
            fixed[key] = float(doc[key])
    if "a" in doc or "b" in doc:
        fixed["a_minus_b"] = float(doc.get("a", 0.0)) - float(doc.get("b", 0.0))
    for key in ("alpha", "alpha0", "alpha1"):
        if key in doc and key not in sweep.CASE_AXES.get(case, ()):
            raise InvalidInput(f"{key!r} does not apply to case {case!r}")
    tol = doc.get("tol", DEFAULT_TOL)
    if not (isinstance(tol, (int, float)) and tol > 0):
        raise InvalidInput("tolerances must be positive numbers")
    axes = []
    for a in doc.get("axes", []):
        if not isinstance(a, dict) or set(a) != {"name", "lo", "hi", "count"}:
            raise InvalidInput("each axis needs exactly the keys name, lo, hi, count")
        axes.append(sweep.Axis(str(a["name"]), float(a["lo"]), float(a["hi"]), int(a["count"])))
    grid = sweep.SweepGrid(case, tuple(axes), fixed, kmax=int(doc.get("kmax", DEFAULT_KMAX)),
                           N=int(doc.get("N", DEFAULT_N)), tol=float(tol),
                           convention=doc.get("convention", crit_mod.NormForm),
                           budget=int(doc.get("budget", sweep.DEFAULT_BUDGET)))
    policy = doc.get("policy", sweep.CriteriaOnly)
    if policy not in sweep.POLICIES:
        raise InvalidInput(f"unknown policy {policy!r}")
    workers = int(doc.get("workers", 1))
    if workers < 1:
        raise InvalidInput("workers must be >= 1")
    return RunConfig(grid, policy, workers, int(doc.get("seed", 0)))


# ---- helpers ----------------------------------------------------------------

def _add_flow(p):
    p.add_argument("--case", choices=[CaseI, CaseII], default=CaseI)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--alpha0", type=float, default=0.0)
    p.add_argument("--alpha1", type=float, default=0.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=0.0)


def _add_solver(p, kmax=DEFAULT_KMAX):
    p.add_argument("--kmax", type=int, default=kmax)
    p.add_argument("--N", type=int, default=DEFAULT_N)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)


def _flow(ns) -> FlowConfig:
    if ns.case == CaseI:
        return FlowConfig.case1(ns.mu, ns.alpha, ns.a, ns.b)
    return FlowConfig.case2(ns.mu, ns.alpha0, ns.alpha1, ns.a, ns.b)


def _check_solver(ns):
    if not ns.tol > 0:
        raise InvalidInput("--tol must be positive")
    if ns.kmax < 0:
        raise InvalidInput("--kmax must be non-negative")


def _c(z):
    z = complex(z)
    return [z.real, z.imag]


def _emit(doc, out=None):
    text = json.dumps(sweep._clean(dict(doc, schema=SCHEMA)), indent=2, sort_keys=True)
    print(text, file=out or sys.stdout)


def _config_dict(cfg: FlowConfig):
    return {"case": cfg.case, "mu": cfg.mu, "alpha": cfg.alpha, "alpha0": cfg.alpha0,
            "alpha1": cfg.alpha1, "a": cfg.a, "b": cfg.b}


# ---- subcommands ----------------------------------------------------------

def cmd_spectrum(ns):
    _check_solver(ns)
    cfg = _flow(ns)
    spectra = []
    for k in range(0, ns.kmax + 1):
        sp = solve_filtered(cfg, k, ns.N, ns.tol)
        lam = sp.eigenvalues[: ns.top] if ns.top else sp.eigenvalues
        spectra.append({"k": k, "resolution": sp.resolution, "count": len(sp),
                        "max_real": sp.max_real, "eigenvalues": [_c(z) for z in lam]})
    m = max(s["max_real"] for s in spectra)
    kbest = next(s["k"] for s in spectra if s["max_real"] == m)
    _emit({"config": _config_dict(cfg), "abscissa": m, "argmax_k": kbest, "spectra": spectra})


def cmd_criteria(ns):
    cfg = _flow(ns)
    res = crit_mod.check(cfg, ns.convention)
    _emit({"config": _config_dict(cfg), "result": res.to_dict()})


def cmd_sweep(ns):
    with open(ns.grid, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{ns.grid}: {exc}") from exc
    rc = parse_run_config(doc)
    policy = ns.policy or rc.policy
    workers = ns.workers or rc.workers
    records = sweep.run_sweep(rc.grid, policy, workers)
    sweep.write_text(ns.out, sweep.to_csv(rc.grid, records))
    json_path = ns.json or (ns.out.rsplit(".", 1)[0] + ".json")
    sweep.write_text(json_path, sweep.to_json(rc.grid, records, policy))
    bad = sweep.unsound(records)
    print(f"{len(records)} points, {len(bad)} unsound -> {ns.out}, {json_path}")
    return EXIT_OK


def _verify_rows(cfg: FlowConfig, kmax: int, N: int, tol: float):
    rows = []

    def add(name, ok, detail):
        rows.append((name, bool(ok), detail))

    R = effective_reynolds(cfg)
    h = crit_mod.slip_h(cfg)
    for k in range(1, kmax + 1):
        pairs, grid = energy.converged_eigenpairs(cfg, k, N)
        if not pairs:
            add(f"k={k} eigenpairs", R == 0, "no base shear" if R == 0 else "none converged")
            continue
        worst_wf, worst_imc, worst_chain = 0.0, math.inf, math.inf
        for p in pairs:
            E = energy.compute_functionals(p.phi, grid, p.k, cfg)
            worst_wf = max(worst_wf, energy.check_weak_form(p, grid, config=cfg))
            worst_imc = min(worst_imc, energy.check_imc_bound(p, E).slack)
            if h > 0:
                rep = energy.check_inequality_chain(E, cfg, p.k, p.phi, grid)
                worst_chain = min(worst_chain, min(rep.slacks.values()))
        add(f"k={k} weak form", worst_wf < energy.WEAK_FORM_TOL, f"max residual {worst_wf:.3e} over {len(pairs)} pairs")
        add(f"k={k} Im c bound", worst_imc >= -energy.IMC_SLACK, f"min slack {worst_imc:.3e}")
        if h > 0:
            add(f"k={k} energy chain", worst_chain >= -energy.CHAIN_SLACK, f"min slack {worst_chain:.3e} (h={h:.4g})")
        sp, sm = solve_filtered(cfg, k, N, tol), solve_filtered(cfg, -k, N, tol)
        n = min(len(sp), len(sm))
        diff = float(np.max(np.abs(np.sort(sp.eigenvalues.real)[-n:] - np.sort(sm.eigenvalues.real)[-n:])))
        add(f"k=+-{k} symmetry", diff < 1e-10, f"max |dRe| {diff:.3e}")
    if cfg.case == CaseI and cfg.alpha < 0 and cfg.mu + 3 * cfg.alpha > 0:
        m0 = solve_filtered(cfg, 0, N, tol).max_real
        bound = -(cfg.mu + 3 * cfg.alpha)
        add("k=0 bound", m0 <= bound + 1e-8, f"abscissa {m0:.6g} vs {bound:.6g}")
    return rows


def cmd_verify(ns):
    _check_solver(ns)
    cfg = _flow(ns)
    rows = _verify_rows(cfg, max(ns.kmax, 1), ns.N, ns.tol)
    width = max(len(r[0]) for r in rows)
    for name, ok, detail in rows:
        print(f"{name.ljust(width)}  {'PASS' if ok else 'FAIL'}  {detail}")
    return EXIT_OK


def cmd_resolvent(ns):
    grid = cached_grid(ns.N)
    rng = np.random.default_rng(ns.seed)
    zeta = complex(ns.zeta.replace("i", "j"))
    p = green.GreenParams(zeta, ns.slip_ratio)
    worst = 0.0
    for _ in range(ns.n_rhs):
        f = green.random_smooth(grid, rng)
        worst = max(worst, float(np.max(np.abs(green.resolvent_solve_green(p, grid, f)
                                                 - green.resolvent_solve_direct(p, grid, f)))))
    s = np.linspace(0.0, 1.0, 7)
    G = green.green_eval(green.GreenParams(abs(zeta), ns.slip_ratio), s[:, None], s[None, :])
    recip = float(np.max(np.abs(G - G.T)))
    cfg = FlowConfig.case1(ns.mu, ns.slip_ratio * ns.mu, 1.0, 0.0)
    lams = [complex(x.replace("i", "j")) for x in ns.lambdas.split(",")]
    scan = green.resolvent_estimate_scan(cfg, ns.k, lams, grid, n_rhs=ns.n_rhs, seed=ns.seed)
    _emit({"zeta": _c(zeta), "slip_ratio": ns.slip_ratio, "max_discrepancy": worst,
           "reciprocity": recip, "scan": scan.to_dict()})


def cmd_evolve(ns):
    cfg = _flow(ns)
    grid = cached_grid(ns.N)
    rng = np.random.default_rng(ns.seed)
    y = grid.y
    coef = rng.standard_normal(4)
    phi0 = (y * (1 - y)) ** 2 * np.polynomial.polynomial.polyval(y, coef) + (1 - y) ** 2 * y ** 2
    op = assemble(cfg, ns.k, grid)
    fit = fit_decay(evolve_mode(op, phi0, ns.dt, ns.T))
    mk = solve_filtered(cfg, ns.k, ns.N).max_real
    _emit({"config": _config_dict(cfg), "k": ns.k, "dt": ns.dt, "T": ns.T, "fit": fit.to_dict(),
           "mode_abscissa": mk, "expected_rate": -2.0 * mk})


def build_parser():
    ap = _Parser(prog="couette-slip", description="Linear stability of Couette flow with Navier slip walls.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="filtered eigenvalues per wavenumber")
    _add_flow(p)
    _add_solver(p)
    p.add_argument("--top", type=int, default=10, help="eigenvalues printed per k (0 = all)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("criteria", help="sufficient-condition verdict")
    _add_flow(p)
    p.add_argument("--convention", choices=[crit_mod.NormForm, crit_mod.SquaredForm], default=crit_mod.NormForm)
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("sweep", help="run a parameter sweep from a JSON grid")
    p.add_argument("--grid", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--json", default=None)
    p.add_argument("--policy", choices=list(sweep.POLICIES), default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="energy and inequality checks on one configuration")
    _add_flow(p)
    _add_solver(p, kmax=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resolvent", help="Green-function cross-checks and resolvent scan")
    p.add_argument("--zeta", default="1")
    p.add_argument("--slip-ratio", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lambdas", default="1,10,100")
    p.add_argument("--n-rhs", type=int, default=10)
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_resolvent)

    p = sub.add_parser("evolve", help="time-integrate one mode and fit its decay rate")
    _add_flow(p)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--T", type=float, default=5.0)
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_evolve)
    return ap


def cli_main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rc = ns.func(ns)
    except (InvalidInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalFailure, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK if rc is None else rc


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
