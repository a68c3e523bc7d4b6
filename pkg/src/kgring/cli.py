"""Command-line surface.

Subcommands: `spectrum` (sweep levels over quantum-number ranges),
`wavefunction` (sample one state's radial and polar factors), `verify`
(closed form against the finite-difference check), and `nu reduce` (print the
reduction chain for one separated equation, rational where the inputs are).

All inputs are in natural units (hbar = c = 1); `--mass` sets the energy
scale. Output is deterministic: fixed row order, floats at 15 significant
digits, CSV with a header row, JSON as an array of flat objects. Exit codes:
0 all good, 1 usage error, 2 computational failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .bound_states import (
    Coupling,
    PotentialParams,
    QuantumNumbers,
    angular_nu_problem,
    angular_wavefunction,
    radial_nu_problem,
    radial_wavefunction,
    solve_bound_state,
)
from .errors import DomainError, NoPhysicalBranch, SolverError
from .nu import NUProblem, branches, solution_chain
from .oracle import GridSpec, angular_numeric_lambda, ode_residual, radial_numeric_energy
from .polynomials import format_poly

SPECTRUM_FIELDS = (
    "N", "n", "m", "l_eff", "energy", "binding",
    "iterations", "converged", "residual", "error",
)
VERIFY_FIELDS = (
    "kind", "N", "n", "m", "energy", "energy_fd", "energy_err",
    "lambda", "lambda_fd", "lambda_err",
    "radial_residual", "angular_residual", "ok", "error",
)


def _fmt15(x: float) -> str:
    v = float(x)
    if v == 0.0:  # never emit -0
        v = 0.0
    return f"{v:.15g}"


def _canon(x) -> float:
    """Round-trip through the output precision so emit(parse(emit)) is stable."""
    return float(_fmt15(x))


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt15(v)
    return str(v)


def _emit_csv(records, fields) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in records:
        w.writerow([_cell(r.get(f)) for f in fields])
    return buf.getvalue()


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _scalar_arg(text: str):
    """Fraction where the literal allows it, float otherwise."""
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise ValueError("must be non-negative")
    return v


def _sweep(fn, items):
    """Evaluate fn over items, possibly concurrently, output order fixed."""
    raw = os.environ.get("KG_THREADS", "")
    if raw:
        try:
            workers = int(raw)
        except ValueError:
            raise DomainError(f"KG_THREADS must be an integer, got {raw!r}")
        if workers < 1:
            raise DomainError(f"KG_THREADS must be >= 1, got {workers}")
    else:
        workers = os.cpu_count() or 1
    if workers == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as ex:
        return list(ex.map(fn, items))


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_shared(p: argparse.ArgumentParser, scalar_type=float,
                formats=("json", "csv")) -> None:
    p.add_argument("--alpha", type=scalar_type, required=True, help="Coulomb strength")
    p.add_argument("--beta", type=scalar_type, required=True, help="ring strength")
    p.add_argument("--gamma", type=scalar_type, required=True, help="ring asymmetry")
    p.add_argument("--mass", type=scalar_type, required=True, help="particle mass (sets the scale)")
    p.add_argument("--coupling", choices=["halved", "full"], default="halved",
                   help="how V splits between scalar and vector terms")
    p.add_argument("--tol", type=float, default=1e-12, help="self-consistency tolerance (x mass)")
    p.add_argument("--max-iter", type=int, default=200, dest="max_iter")
    p.add_argument("--format", choices=list(formats), default="json")


def _add_ranges(p: argparse.ArgumentParser) -> None:
    p.add_argument("--Nmax", type=_nonneg_int, default=0)
    p.add_argument("--nmax", type=_nonneg_int, default=0)
    p.add_argument("--mmax", type=_nonneg_int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kgring", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="levels over quantum-number ranges")
    _add_shared(sp)
    _add_ranges(sp)
    sp.set_defaults(func=cmd_spectrum)

    wf = sub.add_parser("wavefunction", help="sample one state's factors")
    _add_shared(wf)
    wf.add_argument("--N", type=_nonneg_int, required=True)
    wf.add_argument("--n", type=_nonneg_int, required=True)
    wf.add_argument("--m", type=int, required=True)
    wf.add_argument("--samples", type=int, default=1000)
    wf.add_argument("--rmax", type=float, default=None, help="radial box (default: auto)")
    wf.set_defaults(func=cmd_wavefunction)

    vf = sub.add_parser("verify", help="closed form vs finite differences")
    _add_shared(vf)
    _add_ranges(vf)
    vf.add_argument("--points", type=int, default=4000)
    vf.add_argument("--refine", type=int, default=2)
    vf.add_argument("--vtol", type=float, default=1e-5)
    vf.set_defaults(func=cmd_verify)

    nu = sub.add_parser("nu", help="reduction chains")
    nusub = nu.add_subparsers(dest="nu_command", required=True)
    rd = nusub.add_parser("reduce", help="print one equation's reduction chain")
    _add_shared(rd, scalar_type=_scalar_arg, formats=("json", "csv", "text"))
    rd.add_argument("--target", choices=["radial", "angular"], required=True)
    rd.add_argument("--epsilon", type=_scalar_arg, required=True, help="energy in the coupling")
    rd.add_argument("--m", type=int, default=0, help="azimuthal number (angular target)")
    rd.add_argument("--lambda", type=_scalar_arg, required=True, dest="lam",
                    help="separation constant")
    rd.add_argument("--degree", type=_nonneg_int, default=None,
                    help="also evaluate lambda_bar_n at this n")
    rd.set_defaults(func=cmd_nu_reduce)

    return parser


def _build_params(args) -> PotentialParams:
    return PotentialParams(
        alpha=args.alpha, beta=args.beta, gamma=args.gamma,
        mass=args.mass, coupling=Coupling(args.coupling),
    )


def _tuples(args):
    return [
        (N, n, m)
        for N in range(args.Nmax + 1)
        for n in range(args.nmax + 1)
        for m in range(-args.mmax, args.mmax + 1)
    ]


# -- spectrum ---------------------------------------------------------------


def _spectrum_record(params, N, n, m, tol, max_iter) -> dict:
    base = {"N": N, "n": n, "m": m}
    try:
        st = solve_bound_state(params, QuantumNumbers(N, n, m), tol=tol, max_iter=max_iter)
    except SolverError as exc:
        return {**base, "l_eff": None, "energy": None, "binding": None,
                "iterations": 0, "converged": False, "residual": None,
                "error": type(exc).__name__}
    return {**base, "l_eff": _canon(st.l_eff), "energy": _canon(st.energy),
            "binding": _canon(st.binding), "iterations": st.iterations,
            "converged": st.converged, "residual": _canon(st.residual),
            "error": None}


def cmd_spectrum(args) -> int:
    params = _build_params(args)
    records = _sweep(
        lambda t: _spectrum_record(params, *t, tol=args.tol, max_iter=args.max_iter),
        _tuples(args),
    )
    text = (_emit_csv(records, SPECTRUM_FIELDS) if args.format == "csv"
            else _emit_json(records))
    sys.stdout.write(text)
    return 2 if any(r["error"] for r in records) else 0


# -- wavefunction -------------------------------------------------------------


def cmd_wavefunction(args) -> int:
    if args.samples < 2:
        raise DomainError(f"--samples must be >= 2, got {args.samples}")
    if args.rmax is not None and not args.rmax > 0.0:
        raise DomainError(f"--rmax must be positive, got {args.rmax}")
    params = _build_params(args)
    st = solve_bound_state(params, QuantumNumbers(args.N, args.n, args.m),
                           tol=args.tol, max_iter=args.max_iter)
    # box covering the decaying tail: z = 2 kappa r out to 4 n' + 25
    rmax = args.rmax if args.rmax is not None else (4.0 * st.n_prime + 25.0) / (2.0 * st.kappa)
    r = np.linspace(0.0, rmax, args.samples)
    x = np.linspace(-1.0, 1.0, args.samples)
    u = radial_wavefunction(st, r)
    th = angular_wavefunction(st, x)
    meta = {
        "N": st.numbers.N, "n": st.numbers.n, "m": st.numbers.m,
        "energy": _canon(st.energy), "binding": _canon(st.binding),
        "l_eff": _canon(st.l_eff), "B": _canon(float(st.angular.B)),
        "C": _canon(float(st.angular.C)), "n_prime": _canon(st.n_prime),
        "kappa": _canon(st.kappa), "norm_radial": _canon(st.norm_radial),
        "norm_angular": _canon(st.norm_angular),
        "separation_lambda": _canon(st.separation_lambda),
        "iterations": st.iterations, "converged": st.converged,
        "residual": _canon(st.residual), "rmax": _canon(rmax),
        "samples": args.samples,
    }
    if args.format == "csv":
        buf = io.StringIO()
        for key, val in meta.items():
            buf.write(f"# {key} = {_cell(val)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "coordinate", "value"])
        for rv, uv in zip(r, u):
            w.writerow(["radial", _fmt15(rv), _fmt15(uv)])
        for xv, tv in zip(x, th):
            w.writerow(["angular", _fmt15(xv), _fmt15(tv)])
        sys.stdout.write(buf.getvalue())
    else:
        rows = [{"kind": "meta", **meta}]
        rows += [{"kind": "radial", "coordinate": _canon(rv), "value": _canon(uv)}
                 for rv, uv in zip(r, u)]
        rows += [{"kind": "angular", "coordinate": _canon(xv), "value": _canon(tv)}
                 for xv, tv in zip(x, th)]
        sys.stdout.write(_emit_json(rows))
    return 0


# -- verify -------------------------------------------------------------------


def _residual_pair(params, st):
    """Normalized ODE defects of the sampled closed-form factors."""
    mass = float(params.mass)
    strength = params.coupling_factor * abs(float(params.alpha))
    eps, lam = st.energy, float(st.separation_lambda)
    a_coup = params.coupling_factor * (eps + mass) * abs(float(params.alpha))
    r_out = (4.0 * st.n_prime + 25.0) / (2.0 * st.kappa)
    r = np.linspace(0.02 * r_out, 0.6 * r_out, 1501)
    u = radial_wavefunction(st, r)

    def c_radial(rv: float) -> float:
        return (eps * eps - mass * mass) - lam / (rv * rv) + a_coup / rv

    x = np.linspace(-0.9, 0.9, 1501)
    th = angular_wavefunction(st, x)
    wv = th * np.sqrt(1.0 - x * x)
    mm = st.numbers.m ** 2 + float(st.angular.beta_eff)
    ge = float(st.angular.gamma_eff)

    def c_polar(xv: float) -> float:
        s = 1.0 - xv * xv
        return (lam * s - mm - ge * xv + 1.0) / (s * s)

    return (
        ode_residual(u, r, c_radial),
        ode_residual(wv, x, c_polar),
    )


def _verify_record(params, N, n, m, args, grid) -> dict:
    base = {"kind": "check", "N": N, "n": n, "m": m}
    blank = {"energy": None, "energy_fd": None, "energy_err": None,
             "lambda": None, "lambda_fd": None, "lambda_err": None,
             "radial_residual": None, "angular_residual": None}
    try:
        st = solve_bound_state(params, QuantumNumbers(N, n, m),
                               tol=args.tol, max_iter=args.max_iter)
        lam = float(st.separation_lambda)
        eps_fd = radial_numeric_energy(params, lam, N, grid, tol=args.vtol)
        lam_fd = angular_numeric_lambda(float(st.angular.beta_eff),
                                        float(st.angular.gamma_eff),
                                        m, n, grid, tol=args.vtol)
        eps_err = abs(st.energy - eps_fd) / float(params.mass)
        lam_err = abs(lam - lam_fd) / max(1.0, abs(lam))
        res_r, res_x = _residual_pair(params, st)
        ok = eps_err <= args.vtol and lam_err <= args.vtol
        return {**base, "energy": _canon(st.energy), "energy_fd": _canon(eps_fd),
                "energy_err": _canon(eps_err), "lambda": _canon(lam),
                "lambda_fd": _canon(lam_fd), "lambda_err": _canon(lam_err),
                "radial_residual": _canon(res_r), "angular_residual": _canon(res_x),
                "ok": ok, "error": None}
    except SolverError as exc:
        return {**base, **blank, "ok": False, "error": type(exc).__name__}


def cmd_verify(args) -> int:
    params = _build_params(args)
    grid = GridSpec(points=args.points, refinement=args.refine)
    records = _sweep(lambda t: _verify_record(params, *t, args=args, grid=grid),
                     _tuples(args))
    all_ok = all(r["ok"] for r in records)
    worst_e = max((r["energy_err"] for r in records if r["energy_err"] is not None),
                  default=None)
    worst_l = max((r["lambda_err"] for r in records if r["lambda_err"] is not None),
                  default=None)
    summary = {"kind": "summary", "N": None, "n": None, "m": None,
               "energy": None, "energy_fd": None, "energy_err": worst_e,
               "lambda": None, "lambda_fd": None, "lambda_err": worst_l,
               "radial_residual": None, "angular_residual": None,
               "ok": all_ok, "error": None}
    rows = records + [summary]
    text = (_emit_csv(rows, VERIFY_FIELDS) if args.format == "csv"
            else _emit_json(rows))
    sys.stdout.write(text)
    return 0 if all_ok else 2


# -- nu reduce ----------------------------------------------------------------


def _json_scalar(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, float):
        return _canon(v)
    return v


def _branch_payload(b, var, selected) -> dict:
    return {
        "k": _json_scalar(b.k),
        "sign": "+" if b.sign > 0 else "-",
        "pi": format_poly(b.pi, var),
        "tau": format_poly(b.tau, var),
        "tau_prime": _json_scalar(b.tau_prime),
        "lambda_bar": _json_scalar(b.lambda_bar),
        "physical": b.physical,
        "selected": selected,
    }


def _nu_payload(problem: NUProblem, var: str, target: str, degree) -> dict:
    try:
        chain = solution_chain(problem)
    except NoPhysicalBranch:
        # surface both branches' tau' for every candidate before giving up
        from .nu import candidate_k

        detail = []
        for k in candidate_k(problem):
            for b in branches(problem, k):
                detail.append(f"k = {k}, sign {'+' if b.sign > 0 else '-'}: tau' = {b.tau_prime}")
        raise NoPhysicalBranch("; ".join(detail))
    sel = chain.branch
    branch_rows = []
    for k in chain.candidates:
        for b in branches(problem, k):
            selected = float(b.k) == float(sel.k) and b.pi.values == sel.pi.values
            branch_rows.append(_branch_payload(b, var, selected))
    q = chain.quantization
    payload = {
        "target": target,
        "variable": var,
        "sigma": format_poly(problem.sigma, var),
        "tau_tilde": format_poly(problem.tau_tilde, var),
        "sigma_tilde": format_poly(problem.sigma_tilde, var),
        "family": chain.family.value,
        "candidates": [_json_scalar(k) for k in chain.candidates],
        "branches": branch_rows,
        "selected": _branch_payload(sel, var, True),
        "phi": {
            "roots": [_json_scalar(r) for r in chain.phi.roots],
            "exponents": [_json_scalar(e) for e in chain.phi.exponents],
            "rate_linear": _json_scalar(chain.phi.rate_linear),
            "rate_quadratic": _json_scalar(chain.phi.rate_quadratic),
        },
        "quantization": {
            "constant": _json_scalar(q.constant),
            "linear": _json_scalar(q.linear),
            "quadratic": _json_scalar(q.quadratic),
        },
    }
    if degree is not None:
        payload["degree"] = degree
        payload["lambda_bar_n"] = _json_scalar(q.evaluate(degree))
    return payload


def _nu_text(p: dict) -> str:
    lines = [
        f"target: {p['target']} (variable {p['variable']})",
        f"sigma       = {p['sigma']}",
        f"tau_tilde   = {p['tau_tilde']}",
        f"sigma_tilde = {p['sigma_tilde']}",
        f"family: {p['family']}",
        "k candidates: " + ", ".join(str(k) for k in p["candidates"]),
    ]
    for b in p["branches"]:
        tags = ("physical" if b["physical"] else "unphysical") + (", selected" if b["selected"] else "")
        lines.append(
            f"  k = {b['k']}, sign {b['sign']}: pi = {b['pi']}; tau = {b['tau']}; "
            f"tau' = {b['tau_prime']}; lambda_bar = {b['lambda_bar']}  [{tags}]"
        )
    phi = p["phi"]
    lines.append(
        "phi: roots " + (", ".join(str(r) for r in phi["roots"]) or "(none)")
        + "; exponents " + (", ".join(str(e) for e in phi["exponents"]) or "(none)")
        + f"; rates linear {phi['rate_linear']}, quadratic {phi['rate_quadratic']}"
    )
    q = p["quantization"]
    lines.append(
        f"lambda_bar_n = {q['constant']} + ({q['linear']}) n + ({q['quadratic']}) n^2"
    )
    if "lambda_bar_n" in p:
        lines.append(f"lambda_bar_{p['degree']} = {p['lambda_bar_n']}")
    return "\n".join(lines) + "\n"


def _flatten(payload, prefix="") -> list[tuple[str, str]]:
    rows: list[tuple[str, str]] = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            rows.extend(_flatten(v, f"{prefix}{k}."))
    elif isinstance(payload, list):
        for i, v in enumerate(payload):
            rows.extend(_flatten(v, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], _cell(payload)))
    return rows


def cmd_nu_reduce(args) -> int:
    params = _build_params(args)
    if args.target == "radial":
        problem = radial_nu_problem(params, args.epsilon, args.lam)
        var = "r"
    else:
        problem = angular_nu_problem(params, args.epsilon, args.m, args.lam)
        var = "x"
    payload = _nu_payload(problem, var, args.target, args.degree)
    if args.format == "text":
        sys.stdout.write(_nu_text(payload))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for key, val in _flatten(payload):
            w.writerow([key, val])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(_emit_json(payload))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"kgring: error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"kgring: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
