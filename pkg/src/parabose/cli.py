"""Command-line interface: coefficient tables, verification sweeps, reports.

Exit codes: 0 success, 1 a residual exceeded its tolerance, 2 bad flags,
3 parameters outside the domain of a formula.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product

import numpy as np

from . import cgc_closed, genfun, orthopoly, osp_rep, wavefun
from .core_arith import as_rational, mu_number

DEFAULT_MU_GRID = "1/4,1/2,3/4,3/2"
DEFAULT_EPS_GRID = ((1, 1), (1, -1), (-1, 1), (-1, -1))
SU11_GRID = (Fraction(1, 2), Fraction(1), Fraction(3, 2))
EMAX_LIMIT = 64

TOL = {
    "orthogonality": 0.0,
    "unitarity": 1e-10,
    "closed_vs_oracle": 1e-9,
    "genfun": 1e-10,
    "su11": 1e-10,
    "decomposition": 1e-10,
    "eigenvalue": 1e-11,
    "angular": 1e-10,
    "concordance": 1e-10,
    "ladder": 1e-11,
}


class CliDomainError(Exception):
    """Raised for parameters that parse but are outside the supported domain."""


def rational_arg(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}") from exc


def rational_list_arg(text):
    return [rational_arg(t) for t in text.split(",") if t.strip()]


def fmt_rational(q):
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_float(x):
    return float(repr(float(x)))


def _threads():
    try:
        return max(1, int(os.environ.get("PARABOSE_THREADS", "1")))
    except ValueError:
        return 1


def _sweep(fn, items):
    """Map ``fn`` over ``items`` with at most PARABOSE_THREADS workers, in order."""
    items = list(items)
    n = _threads()
    if n == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".parabose-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def make_report(command, params, results, findings, status):
    return {
        "command": command,
        "params": params,
        "results": results,
        "erratum_findings": findings,
        "status": status,
    }


def emit(report, args, text=None):
    out = text if text is not None else json.dumps(report, indent=2, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        write_atomic(args.output, out)
    else:
        sys.stdout.write(out)


def _check_mu(*mus):
    for mu in mus:
        if mu < 0:
            raise CliDomainError(f"mu must be non-negative, got {mu}")


# ---------------------------------------------------------------------------
# cgc


def cmd_cgc(args):
    _check_mu(args.mu1, args.mu2)
    if not 0 <= args.emax <= EMAX_LIMIT:
        raise CliDomainError(f"emax must be in 0..{EMAX_LIMIT}")
    reps = (osp_rep.RepLabel(args.mu1, args.eps1), osp_rep.RepLabel(args.mu2, args.eps2))
    if args.method == "oracle":
        table = osp_rep.oracle_cgc(reps, args.emax)
    else:
        try:
            table = cgc_closed.closed_table(reps, args.emax)
        except orthopoly.DomainError as exc:
            raise CliDomainError(str(exc)) from exc
    params = {
        "mu1": fmt_rational(args.mu1), "mu2": fmt_rational(args.mu2),
        "eps1": args.eps1, "eps2": args.eps2, "emax": args.emax, "method": args.method,
    }
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["E", "n12", "j", "n1", "n2", "value"])
        for E in range(args.emax + 1):
            for j in range(E + 1):
                for n1 in range(E + 1):
                    writer.writerow([E, E - j, j, n1, E - n1, repr(float(table.matrices[E][j, n1]))])
        emit(None, args, buf.getvalue())
        return 0
    levels = []
    for E in range(args.emax + 1):
        levels.append({
            "E": E,
            "rows": [{"n12": E - j, "j": j,
                      "coefficients": [fmt_float(v) for v in table.matrices[E][j]]}
                     for j in range(E + 1)],
        })
    results = {"phase_convention": table.phase_convention, "levels": levels}
    emit(make_report("cgc", params, results, [], "pass"), args)
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _check(name, residual, tol, **extra):
    ok = residual <= tol
    entry = {"check": name, "max_residual": fmt_float(residual), "tolerance": tol,
             "pass": bool(ok)}
    entry.update(extra)
    return entry


def suite_orthogonality(mu_grid, max_level):
    def job(item):
        eta, xi, N = item
        data = orthopoly.dm1h_data(eta, xi, N)
        polys = orthopoly.dual_m1_hahn_all(eta, xi, N)
        u, _ = orthopoly.dm1h_recurrence(eta, xi, N)
        vals = [[orthopoly.poly_eval(polys[n], y) for y in data.grid] for n in range(N + 1)]
        orth = Fraction(0)
        for n in range(N + 1):
            for m in range(N + 1):
                lhs = sum(w * a * b for w, a, b in zip(data.weights, vals[n], vals[m]))
                rhs = Fraction(0)
                if n == m:
                    rhs = data.kappa0 * math.prod(u(i) for i in range(1, n + 1))
                orth = max(orth, abs(lhs - rhs))
        hyper = Fraction(0)
        displayed_bad = 0
        for n in range(N + 1):
            for y, v in zip(data.grid, vals[n]):
                hyper = max(hyper, abs(orthopoly.dual_m1_hahn_hyper(n, y, eta, xi, N) - v))
                try:
                    d = orthopoly.dual_m1_hahn_hyper(n, y, eta, xi, N, form="displayed")
                except (orthopoly.DomainError, ZeroDivisionError):
                    d = None
                if d != v:
                    displayed_bad += 1
        return orth, hyper, displayed_bad
    items = [(e, x, N) for e in mu_grid for x in mu_grid for N in range(max_level + 1)]
    out = _sweep(job, items)
    orth = max(o for o, _, _ in out)
    hyper = max(h for _, h, _ in out)
    bad = sum(b for _, _, b in out)
    checks = [
        _check("dual -1 Hahn orthogonality (exact)", float(orth), TOL["orthogonality"]),
        _check("recurrence vs 3F2 forms on grid (exact)", float(hyper), TOL["orthogonality"]),
    ]
    findings = []
    if bad:
        findings.append({
            "location": "explicit 3F2 representation of dual -1 Hahn polynomials",
            "expected": "agreement with the three-term recurrence",
            "observed": f"displayed parameters disagree at {bad} grid evaluations; "
                        "corrected parameters agree exactly",
            "absorbed_constant": None,
        })
    return checks, findings


def suite_unitarity(mu_grid, max_level):
    emax_unit = max(max_level, 12)

    def job(item):
        m1, m2, (e1, e2) = item
        reps = (osp_rep.RepLabel(m1, e1), osp_rep.RepLabel(m2, e2))
        oracle = osp_rep.oracle_cgc(reps, emax_unit)
        defect = osp_rep.orthogonality_defect(oracle)
        closed = cgc_closed.closed_table(reps, max_level)
        consts = cgc_closed.row_constants(closed, oracle)
        spread = max(s for _, s in consts.values())
        const_dev = max(abs(c - 1) for c, _ in consts.values())
        literal = cgc_closed.closed_table(reps, max_level, convention="magnitude")
        mag = max(float(np.abs(np.abs(literal.matrices[E]) - np.abs(oracle.matrices[E])).max())
                  for E in range(max_level + 1))
        return defect, spread, const_dev, mag
    items = list(product(mu_grid, mu_grid, DEFAULT_EPS_GRID))
    out = _sweep(job, items)
    checks = [
        _check(f"oracle unitarity E<={emax_unit}", max(o[0] for o in out), TOL["unitarity"]),
        _check(f"closed vs oracle row-constant spread E<={max_level}",
               max(o[1] for o in out), TOL["closed_vs_oracle"],
               max_row_constant_deviation_from_1=fmt_float(max(o[2] for o in out))),
        _check(f"closed vs oracle magnitudes E<={max_level}",
               max(o[3] for o in out), TOL["closed_vs_oracle"]),
    ]
    findings = [{
        "location": "dual -1 Hahn coupling formula, grid index and column sign",
        "expected": "entrywise agreement with the oracle",
        "observed": "agreement requires grid index N-j for even N and the column sign "
                    "eps2**n1 (-1)**(n1(n1-1)/2 + n1 n2)",
        "absorbed_constant": 1,
    }]
    findings.extend(vacuum_findings(mu_grid))
    return checks, findings


def vacuum_findings(mu_grid):
    half = Fraction(1, 2)
    pairs = [(half, half)] + [(a, b) for a in mu_grid for b in mu_grid if (a, b) != (half, half)]
    out = []
    for a, b in pairs:
        for j in range(1, 4):
            reps = (osp_rep.RepLabel(a), osp_rep.RepLabel(b))
            norm = cgc_closed.vacuum_cgc_norm_sq(j, reps)
            if norm.displayed != norm.unitarity:
                out.append({
                    "location": f"vacuum anchor |<0,j|0,j>|^2 at j={j}, mu1={fmt_rational(a)}, "
                                f"mu2={fmt_rational(b)}",
                    "expected": fmt_rational(norm.unitarity),
                    "observed": fmt_rational(norm.displayed),
                    "absorbed_constant": fmt_rational(norm.unitarity / norm.displayed),
                })
        if (a, b) == (half, half):
            continue
        break
    return out


def suite_genfun(mu_grid, max_level):
    def job(item):
        m1, m2, e2 = item
        worst = 0.0
        odd_consts = []
        for E in range(max_level + 1):
            for j in range(E + 1):
                case = genfun.GenFunCase(E - j, j, m1, m2, 1, e2)
                chk = genfun.verify_genfun(case)
                worst = max(worst, chk.residual)
                if abs(chk.absorbed_constant - 1) > 1e-9:
                    odd_consts.append((case.n12, j, chk.absorbed_constant))
        return worst, odd_consts
    items = list(product(mu_grid, mu_grid, (1, -1)))
    out = _sweep(job, items)
    checks = [_check(f"generating functions n12+j<={max_level}", max(o[0] for o in out),
                     TOL["genfun"])]
    findings = []
    consts = [c for o in out for c in o[1]]
    if consts:
        n12, j, c = consts[0]
        findings.append({
            "location": "odd-n12 generating function prefactor sqrt([n12-1]_mu12! [1]_mu12)",
            "expected": "sqrt([n12]_mu12!)",
            "observed": f"{len(consts)} rows need a constant != 1 (all odd n12 >= 3); "
                        f"first: n12={n12}, j={j}",
            "absorbed_constant": fmt_float(c),
        })
    return checks, findings


def suite_su11(max_level):
    def job(item):
        l1, l2 = item
        worst = 0.0
        for k in range(max_level + 1):
            for m12 in range(max_level + 1):
                worst = max(worst, genfun.su11_verify(k, m12, l1, l2))
        return worst
    items = list(product(SU11_GRID, SU11_GRID))
    worst = max(_sweep(job, items))
    checks = [_check(f"su(1,1) generating function k,m12<={max_level}", worst, TOL["su11"])]
    findings = []
    for l1, l2 in items:
        for k in range(2, 4):
            a = osp_rep.su11_vacuum_norm(k, l1, l2)
            b = osp_rep.su11_vacuum_norm_unitarity(k, l1, l2)
            if a != b:
                findings.append({
                    "location": f"su(1,1) vacuum norm at k={k}, l1={fmt_rational(l1)}, "
                                f"l2={fmt_rational(l2)}",
                    "expected": fmt_rational(b),
                    "observed": fmt_rational(a),
                    "absorbed_constant": fmt_rational(b / a),
                })
        if findings:
            break
    return checks, findings


def suite_wavefun(mu_grid, max_level):
    def job(item):
        m1, m2 = item
        dec = eig_h = eig_c = ang = conc = 0.0
        for E in range(max_level + 1):
            for j in range(E + 1):
                n12 = E - j
                mu12 = m1 + m2 + Fraction(1, 2) + j
                dec = max(dec, wavefun.decomposition_residual(n12, j, m1, m2))
                psi = wavefun.coupled_psi(n12, j, m1, m2)
                h = wavefun.eigen_check(wavefun.hamiltonian2d_apply(psi), psi)
                eig_h = max(eig_h, abs(h.eigenvalue - float(n12 + mu12 + Fraction(1, 2))), h.residual)
                c = wavefun.eigen_check(wavefun.casimir2d_apply(psi), psi)
                eig_c = max(eig_c, abs(c.eigenvalue - float((-1) ** (j + 1) * mu12)), c.residual)
                ang = max(ang, wavefun.angular_genfun_check(n12, j, m1, m2)[0])
                conc = max(conc, wavefun.concordance(n12, j, m1, m2).deviation)
        return dec, eig_h, eig_c, ang, conc

    def ladder(mu):
        worst = 0.0
        for n in range(max_level + 1):
            up = wavefun.realize_apply("J+", wavefun.psi1d(n, mu)).values()
            target = math.sqrt(mu_number(n + 1, mu)) * wavefun.psi1d(n + 1, mu).values()
            worst = max(worst, float(np.abs(up - target).max()))
            if n:
                down = wavefun.realize_apply("J-", wavefun.psi1d(n, mu)).values()
                target = math.sqrt(mu_number(n, mu)) * wavefun.psi1d(n - 1, mu).values()
                worst = max(worst, float(np.abs(down[:len(target)] - target).max()),
                            float(np.abs(down[len(target):]).max(initial=0.0)))
        return worst

    out = _sweep(job, list(product(mu_grid, mu_grid)))
    lad = max(_sweep(ladder, mu_grid))
    checks = [
        _check(f"wavefunction decomposition n12+j<={max_level}", max(o[0] for o in out),
               TOL["decomposition"]),
        _check("H_xy eigenvalue", max(o[1] for o in out), TOL["eigenvalue"]),
        _check("Casimir eigenvalue", max(o[2] for o in out), TOL["eigenvalue"]),
        _check("angular generating function vs series", max(o[3] for o in out), TOL["angular"]),
        _check("angular vs algebraic generating function proportionality",
               max(o[4] for o in out), TOL["concordance"]),
        _check("Dunkl ladder actions", lad, TOL["ladder"]),
    ]
    findings = [{
        "location": "coupled wavefunctions vs oracle coupled basis",
        "expected": "identical phases",
        "observed": "the position realization differs by (-1)**floor((n12+j)/2) per level",
        "absorbed_constant": "(-1)**floor(E/2)",
    }]
    return checks, findings


SUITES = ("orthogonality", "unitarity", "genfun", "su11", "wavefun")


def cmd_verify(args):
    mu_grid = args.mu_grid
    _check_mu(*mu_grid)
    if args.max_level < 0 or args.max_level > EMAX_LIMIT:
        raise CliDomainError(f"max-level must be in 0..{EMAX_LIMIT}")
    suites = SUITES if args.suite == "all" else (args.suite,)
    checks, findings = [], []
    for name in suites:
        if name == "orthogonality":
            c, f = suite_orthogonality(mu_grid, args.max_level)
        elif name == "unitarity":
            c, f = suite_unitarity(mu_grid, args.max_level)
        elif name == "genfun":
            c, f = suite_genfun(mu_grid, args.max_level)
        elif name == "su11":
            c, f = suite_su11(args.max_level)
        else:
            c, f = suite_wavefun(mu_grid, args.max_level)
        for entry in c:
            entry["suite"] = name
            mark = "PASS" if entry["pass"] else "FAIL"
            print(f"[{mark}] {name}: {entry['check']}: max residual {entry['max_residual']:.3e}"
                  f" (tol {entry['tolerance']:.0e})", file=sys.stderr)
        checks.extend(c)
        findings.extend(f)
    status = "pass" if all(c["pass"] for c in checks) else "fail"
    params = {"suite": args.suite, "mu_grid": [fmt_rational(m) for m in mu_grid],
              "eps_grid": [list(e) for e in DEFAULT_EPS_GRID], "max_level": args.max_level}
    emit(make_report("verify", params, {"checks": checks}, findings, status), args)
    return 0 if status == "pass" else 1


# ---------------------------------------------------------------------------
# genfun and wavefun emitters


def _params_tuple(t):
    return None if t is None else [fmt_rational(v) for v in t]


def cmd_genfun(args):
    _check_mu(args.mu1, args.mu2)
    if args.n12 < 0 or args.j < 0 or args.n12 + args.j > EMAX_LIMIT:
        raise CliDomainError("need n12, j >= 0 and n12 + j <= 64")
    case = genfun.GenFunCase(args.n12, args.j, args.mu1, args.mu2, 1, args.eps2)
    params = {"n12": args.n12, "j": args.j, "mu1": fmt_rational(args.mu1),
              "mu2": fmt_rational(args.mu2), "eps2": args.eps2, "emit": args.emit}
    findings = []
    if args.emit == "coeffs":
        chk = genfun.verify_genfun(case)
        results = {
            "coefficients": [fmt_float(v) for v in chk.lhs],
            "closed_form_coefficients": [fmt_float(v) for v in chk.rhs],
            "absorbed_constant": fmt_float(chk.absorbed_constant),
            "max_residual": fmt_float(chk.residual),
        }
        status = "pass" if chk.residual <= TOL["genfun"] else "fail"
        if abs(chk.absorbed_constant - 1) > 1e-9:
            findings.append({
                "location": "odd-n12 generating function prefactor",
                "expected": "1",
                "observed": fmt_float(chk.absorbed_constant),
                "absorbed_constant": fmt_float(chk.absorbed_constant),
            })
    else:
        first, second, coef = genfun.bracket_params(case.parity, case.j, case.mu1, case.mu2,
                                                    case.eps2)
        norms = cgc_closed.vacuum_cgc_norm_sq(case.j, case.reps)
        results = {
            "variable": "s",
            "form": "P(s) * (s^2+1)^K * [2F1(a,b;c;-s^2) + s*coef*2F1(a',b';c';-s^2)]",
            "K": case.n12 // 2,
            "first_2F1": _params_tuple(first),
            "second_2F1": _params_tuple(second),
            "coef": fmt_rational(coef),
            "prefactor": fmt_float(genfun.genfun_prefactor(case)),
            "vacuum_anchor_sq": fmt_rational(norms.unitarity),
        }
        status = "pass"
    emit(make_report("genfun", params, results, findings, status), args)
    return 0


def cmd_wavefun(args):
    if args.kind == "psi1d":
        _check_mu(args.mu)
        f = wavefun.psi1d(args.n, args.mu)
        params = {"kind": "psi1d", "n": args.n, "mu": fmt_rational(args.mu)}
        results = {"gaussian": "exp(-x^2/2)",
                   "monic_coefficients": [fmt_rational(c) for c in f.coeffs],
                   "scale": fmt_float(f.scale),
                   "coefficients": [fmt_float(v) for v in f.values()]}
    else:
        _check_mu(args.mu1, args.mu2)
        f = wavefun.coupled_psi(args.n12, args.j, args.mu1, args.mu2)
        params = {"kind": "coupled", "n12": args.n12, "j": args.j,
                  "mu1": fmt_rational(args.mu1), "mu2": fmt_rational(args.mu2)}
        terms = sorted((i, k, fmt_float(c * f.scale)) for (i, k), c in f.coeffs.items()
                       if abs(c) > 0)
        results = {"gaussian": "exp(-(x^2+y^2)/2)",
                   "terms": [{"x_power": i, "y_power": k, "coefficient": c}
                             for i, k, c in terms]}
    emit(make_report("wavefun", params, results, [], "pass"), args)
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="parabose",
        description="Coupling coefficients of the osp(1|2) discrete series and their checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cgc", help="emit coupling-coefficient tables")
    p.add_argument("--mu1", type=rational_arg, default=Fraction(1, 2))
    p.add_argument("--mu2", type=rational_arg, default=Fraction(1, 2))
    p.add_argument("--eps1", type=int, choices=(1, -1), default=1)
    p.add_argument("--eps2", type=int, choices=(1, -1), default=1)
    p.add_argument("--emax", type=int, default=4)
    p.add_argument("--method", choices=("oracle", "closed"), default="oracle")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_cgc)

    p = sub.add_parser("verify", help="run verification sweeps")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--mu-grid", type=rational_list_arg,
                   default=rational_list_arg(DEFAULT_MU_GRID))
    p.add_argument("--max-level", type=int, default=8)
    p.add_argument("--output", help="write the JSON report to this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("genfun", help="emit generating-function data")
    p.add_argument("--n12", type=int, default=0)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--mu1", type=rational_arg, default=Fraction(1, 2))
    p.add_argument("--mu2", type=rational_arg, default=Fraction(1, 2))
    p.add_argument("--eps2", type=int, choices=(1, -1), default=1)
    p.add_argument("--emit", choices=("coeffs", "closed-form"), default="coeffs")
    p.add_argument("--output")
    p.set_defaults(func=cmd_genfun)

    p = sub.add_parser("wavefun", help="emit wavefunction polynomial coefficients")
    p.add_argument("--kind", choices=("psi1d", "coupled"), default="psi1d")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--mu", type=rational_arg, default=Fraction(1, 2))
    p.add_argument("--n12", type=int, default=0)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--mu1", type=rational_arg, default=Fraction(1, 2))
    p.add_argument("--mu2", type=rational_arg, default=Fraction(1, 2))
    p.add_argument("--output")
    p.set_defaults(func=cmd_wavefun)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliDomainError, orthopoly.DomainError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
