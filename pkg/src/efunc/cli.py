"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 math-precondition failure, 4 precision
exhausted, 5 heuristic-check failure, 1 anything unexpected.
"""

import argparse
import logging
import math
import re
import sys
from fractions import Fraction

from . import catalog
from .balls import ComplexBall
from .desing import decompose, desingularize, divide_by_poly, verify_desing
from .dioph import (
    KINDS,
    continued_fraction,
    exponent_estimate,
    linear_form_scan,
    liouville_scan,
    paper_exponent,
)
from .efun import (
    conjugate,
    galois_norm,
    multiply,
    normal_basis_decompose,
    norm_evector,
    product_evector,
    symmetric_power_system,
)
from .errors import EFuncError, UsageError
from .exprparse import parse_element, parse_poly
from .numeval import evaluate, evaluate_report
from .specfile import Spec, resolve_spec, spec_for

log = logging.getLogger("efunc")


# -- argument helpers -----------------------------------------------------------

def _fn(arg):
    return resolve_spec(arg)


_BALL = re.compile(r"^\s*([-+]?[\d.]+(?:[eE][-+]?\d+)?)\s*(?:±|\+-|\+/-)\s*([\d.]+(?:[eE][-+]?\d+)?)\s*$")


def _decimal(text):
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"bad number {text!r}") from None


def parse_point(text, field):
    """Field element (coordinates, rational, expression in t) or ``decimal ± radius``."""
    m = _BALL.match(text)
    if m:
        return ComplexBall(_decimal(m.group(1)), 0, _decimal(m.group(2)), 256)
    return parse_element(text, field)


def parse_value(text, digits):
    """VALUE_SPEC: ``SPEC@POINT`` evaluated to ``digits``, or ``decimal ± radius``."""
    m = _BALL.match(text)
    if m:
        return ComplexBall(_decimal(m.group(1)), 0, _decimal(m.group(2)), max(256, 4 * digits))
    if "@" not in text:
        raise UsageError(f"value {text!r} is neither SPEC@POINT nor 'decimal ± radius'")
    spec, point = text.rsplit("@", 1)
    f = _fn(spec.strip())
    return evaluate(f, parse_point(point.strip(), f.field), digits)


def _coeff_line(f, n):
    return " ".join(f.coeff(k).to_text() for k in range(n + 1))


def _emit(f, n, out):
    """Spec file for system-backed results, then the coefficient dump."""
    if f.evector is not None:
        out.append(spec_for(f).to_text().rstrip())
    out.append("coeffs: " + _coeff_line(f, n))


# -- subcommands ------------------------------------------------------------------

def cmd_catalog(a):
    if a.action == "list":
        return [f"{k:34s} {v}" for k, v in catalog.CATALOG.items()]
    if not a.name:
        raise UsageError("catalog show needs a NAME")
    name = " ".join(a.name)
    f = catalog.resolve(name)
    return [f"# {f.name}", spec_for(f).to_text().rstrip()]


def cmd_coeffs(a):
    return [_coeff_line(_fn(a.spec), a.n)]


def cmd_eval(a):
    f = _fn(a.spec)
    rep = evaluate_report(f, parse_point(a.at, f.field), a.digits)
    out = [rep.ball.format(a.digits),
           f"method: {rep.method}{' (heuristic)' if rep.heuristic else ''}, terms: {rep.terms}"]
    if a.machine:
        out.append(rep.ball.machine())
    return out


def cmd_conjugate(a):
    f = _fn(a.spec)
    f.field.require_galois()
    auts = f.field.automorphisms
    if not 0 <= a.sigma < len(auts):
        raise UsageError(f"sigma index must be in 0..{len(auts) - 1}")
    out = []
    _emit(conjugate(f, auts[a.sigma]), a.n, out)
    return out


def cmd_norm(a):
    f = _fn(a.spec)
    out = []
    if f.evector is not None and f.field.degree > 1:
        F, idx = norm_evector(f)
        out.append(f"# norm carried by component {idx} of a dimension-{F.dim} system")
    out.append("coeffs: " + _coeff_line(galois_norm(f), a.n))
    return out


def cmd_decompose_basis(a):
    f = _fn(a.spec)
    alpha = parse_element(a.alpha, f.field)
    out = []
    for k, (sigma, g) in enumerate(normal_basis_decompose(f, alpha).items()):
        out.append(f"sigma{k} [{sigma.image.to_expr()}]: " + _coeff_line(g, a.n))
    return out


def cmd_product(a):
    f, g = _fn(a.spec1), _fn(a.spec2)
    out = []
    if f.evector is not None and g.evector is not None:
        P = product_evector(f.evector, g.evector)
        h = P.component(f.component * g.evector.dim + g.component)
        _emit(h, a.n, out)
    else:
        _emit(multiply(f, g), a.n, out)
    return out


def cmd_sympow(a):
    f = _fn(a.spec)
    F = f.require_system()
    _, ev = symmetric_power_system(F, a.D)
    spec = Spec(ev.system.field, ev.system.to_rows(), dict(enumerate(ev.seeds_for_output())), list(ev.names))
    return [f"# dimension {ev.dim}", spec.to_text().rstrip()]


def cmd_desing(a):
    f = _fn(a.spec)
    F = f.require_system()
    res = desingularize(F.system, F, check_independence=not a.no_independence_check)
    out = ["B:"] + ["  " + " | ".join(r) for r in res.B.to_rows()]
    out += ["M:"] + ["  " + " | ".join(r) for r in res.M.to_rows()]
    out.append(f"steps: {res.steps}")
    seeds = res.e.seeds_for_output()
    out.append("e seeds:")
    for i, s in enumerate(seeds):
        out.append(f"  {i} = " + " ".join(x.to_text().replace(" ", "") for x in s))
    if a.verify:
        out.append(f"verified to order {a.verify}: {'yes' if verify_desing(F, res, a.verify) else 'NO'}")
    return out


def cmd_divide(a):
    f = _fn(a.spec)
    D = parse_poly(a.by, f.field)
    return ["coeffs: " + _coeff_line(divide_by_poly(f, D), a.n)]


def _read_certs(path, field):
    certs = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ";" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'ALPHA ; POLY'")
            alpha, poly = (s.strip() for s in line.split(";", 1))
            certs.append((parse_element(alpha, field), parse_poly(poly, field)))
    return certs


def cmd_pqg(a):
    f = _fn(a.spec)
    certs = _read_certs(a.cert, f.field) if a.cert else []
    dec = decompose(f, certs)
    out = dec.lines()
    out.append("g coeffs: " + _coeff_line(dec.g, a.n))
    return out


def cmd_cf(a):
    xi = parse_value(a.value, a.digits)
    cf = continued_fraction(xi, a.terms)
    out = ["[" + "; ".join(map(str, cf.quotients[:1])) + (";" if len(cf.quotients) > 1 else "")
           + " " + ", ".join(map(str, cf.quotients[1:])) + "]" if cf.quotients else "[]"]
    if cf.exact:
        out.append("terminates (rational)")
    elif cf.stop is not None:
        out.append(f"precision stop after {cf.stop.index} terms: {cf.stop.reason}")
    return out


def cmd_exponent(a):
    xi = parse_value(a.value, a.digits)
    rep = exponent_estimate(xi, burn_in=a.burn_in, bound=a.bound)
    out = rep.lines()
    if a.samples:
        out += [f"  q ~ 10^{math.log10(q):.1f}  mu = {mu:.6f}" for q, mu in rep.samples]
    return out


def cmd_scan(a):
    fs = [_fn(s) for s in a.spec]
    if len(fs) == 1 and fs[0].evector is not None:
        fs = fs[0].evector.components()
    z0 = parse_point(a.at, fs[0].field)
    rep = linear_form_scan(fs, z0, a.hmax, Fraction(a.kappa), a.digits, jobs=a.jobs)
    return rep.lines()


def cmd_liouville(a):
    kappa = Fraction(a.kappa)
    digits = a.digits or int((float(kappa) + 2) * math.log10(a.qmax)) + 20
    xi = parse_value(a.value, digits)
    return liouville_scan(xi, kappa, a.qmax, jobs=a.jobs).lines()


def cmd_bounds(a):
    return [str(paper_exponent(a.kind, a.d, a.N, a.D))]


# -- parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="efunc", description="Exact E-function toolkit.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("catalog", cmd_catalog, "list or show built-in E-functions")
    sp.add_argument("action", choices=["list", "show"])
    sp.add_argument("name", nargs="*")

    sp = add("coeffs", cmd_coeffs, "exact coefficients a_0..a_N")
    sp.add_argument("spec")
    sp.add_argument("-n", type=int, default=10)

    sp = add("eval", cmd_eval, "certified ball for f(point)")
    sp.add_argument("spec")
    sp.add_argument("--at", required=True)
    sp.add_argument("--digits", type=int, default=30)
    sp.add_argument("--machine", action="store_true", help="also print the exact binary ball")

    sp = add("conjugate", cmd_conjugate, "f^sigma")
    sp.add_argument("spec")
    sp.add_argument("--sigma", type=int, required=True)
    sp.add_argument("-n", type=int, default=10)

    sp = add("norm", cmd_norm, "rational norm stream prod_sigma f^sigma")
    sp.add_argument("spec")
    sp.add_argument("-n", type=int, default=10)

    sp = add("decompose-basis", cmd_decompose_basis, "rational parts in a normal basis")
    sp.add_argument("spec")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("-n", type=int, default=10)

    sp = add("product", cmd_product, "product of two E-functions")
    sp.add_argument("spec1")
    sp.add_argument("spec2")
    sp.add_argument("-n", type=int, default=10)

    sp = add("sympow", cmd_sympow, "symmetric power system")
    sp.add_argument("spec")
    sp.add_argument("-D", type=int, required=True)

    sp = add("desing", cmd_desing, "remove non-zero singularities")
    sp.add_argument("spec")
    sp.add_argument("--verify", type=int, default=0, metavar="ORDER")
    sp.add_argument("--no-independence-check", action="store_true")

    sp = add("divide", cmd_divide, "g with f = D g")
    sp.add_argument("spec")
    sp.add_argument("--by", required=True)
    sp.add_argument("-n", type=int, default=10)

    sp = add("pqg", cmd_pqg, "f = P + Q g from vanishing certificates")
    sp.add_argument("spec")
    sp.add_argument("--cert", help="file of 'ALPHA ; POLY' lines")
    sp.add_argument("-n", type=int, default=10)

    sp = add("cf", cmd_cf, "certified continued fraction")
    sp.add_argument("value")
    sp.add_argument("--terms", type=int, default=30)
    sp.add_argument("--digits", type=int, default=60)

    sp = add("exponent", cmd_exponent, "empirical irrationality exponent")
    sp.add_argument("value")
    sp.add_argument("--digits", type=int, default=200)
    sp.add_argument("--burn-in", type=int, default=5)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--samples", action="store_true")

    sp = add("scan", cmd_scan, "exhaustive linear-form scan")
    sp.add_argument("spec", nargs="+")
    sp.add_argument("--at", default="1")
    sp.add_argument("--hmax", type=int, required=True)
    sp.add_argument("--kappa", default="1")
    sp.add_argument("--digits", type=int, default=60)
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("liouville", cmd_liouville, "Liouville exclusion scan")
    sp.add_argument("value")
    sp.add_argument("--kappa", required=True)
    sp.add_argument("--qmax", type=int, required=True)
    sp.add_argument("--digits", type=int)
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("bounds", cmd_bounds, "exponent from the bound tables")
    sp.add_argument("--kind", required=True, choices=KINDS)
    sp.add_argument("-d", type=int, default=1)
    sp.add_argument("-N", type=int, default=2)
    sp.add_argument("-D", type=int, default=1)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        lines = args.func(args)
    except EFuncError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (BrokenPipeError, KeyboardInterrupt):
        return 1
    for line in lines:
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
