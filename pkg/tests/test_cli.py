import os
import re
import subprocess
import sys
from fractions import Fraction
from math import factorial

import pytest

from efunc.cli import main

import oracles

DATA = os.path.join(os.path.dirname(__file__), "data")


def data(name):
    return os.path.join(DATA, name)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def ints(line):
    return [Fraction(x) for x in line.split(":")[-1].split()]


# -- golden outputs ----------------------------------------------------------------

GOLDEN = {
    ("coeffs", "bessel-j0", "-n", "6"): "1 0 -1/2 0 3/8 0 -5/16\n",
    ("eval", "exp", "--at", "1", "--digits", "20"):
        "2.7182818284590452354 ± 1.78e-21\nmethod: majorant, terms: 22\n",
    ("cf", "exp@1", "--terms", "8"): "[2; 1, 2, 1, 1, 4, 1, 1]\n",
    ("bounds", "--kind", "A22", "-d", "2"): "50\n",
    ("catalog", "show", "exp"): "# exp\n[system]\n1\n\n[seeds]\n0 = 1 1 1/2\nnames = exp\n",
    ("desing", data("zm1_exp.efun"), "--verify", "50"):
        "B:\n  1\nM:\n  z - 1\nsteps: 1\ne seeds:\n  0 = 1 1 1/2\nverified to order 50: yes\n",
    ("pqg", data("one_plus_zm1_exp.efun"), "--cert", data("cert_one.txt"), "-n", "4"):
        "P = 1\nQ = z - 1\ng(1) = 2.71828182846 ± 2.81e-36 (non-zero)\ng coeffs: 1 1 1 1 1\n",
    ("liouville", "exp@1", "--kappa", "1", "--qmax", "1000"):
        "kappa: 1\nQ_max: 1000\nc_min: 0.141302738 at q = 71, p = 193\n"
        "c_min lower bound: 0.141302738\ncertified positive: yes\n",
    ("cf", "0.5±1"): "[]\nprecision stop after 0 terms: interval straddles an integer\n",
}


@pytest.mark.parametrize("argv", list(GOLDEN), ids=lambda a: " ".join(os.path.basename(x) for x in a))
def test_golden(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == GOLDEN[argv]


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    names = [line.split()[0] for line in out.splitlines()]
    assert names == ["exp", "bessel-j0", "apq", "exp-scaled", "const", "cos", "sin"]


# -- outputs checked against independent streams --------------------------------------

def test_product(capsys):
    code, out, _ = run(capsys, "product", "exp", "cos", "-n", "12")
    assert code == 0
    # e^z cos z = Re e^{(1+i) z}
    want = [((1 + 1j) ** n).real for n in range(13)]
    assert [float(x) for x in ints(out.splitlines()[-1])] == want


def test_divide(capsys):
    code, out, _ = run(capsys, "divide", "exp", "--by", "z-1", "-n", "8")
    assert code == 0
    want = [-sum(Fraction(factorial(n), factorial(k)) for k in range(n + 1)) for n in range(9)]
    assert ints(out) == want


def test_norm(capsys):
    code, out, _ = run(capsys, "norm", data("z2m2_exp.efun"), "-n", "10")
    assert code == 0
    f = oracles.stream_times_poly(oracles.exp_stream(11), [-2, 0, 1])
    assert ints(out.splitlines()[-1]) == oracles.stream_product(f, f)


def test_conjugate_keeps_rational_stream(capsys):
    code, out, _ = run(capsys, "conjugate", data("z2m2_exp.efun"), "--sigma", "1", "-n", "6")
    assert code == 0
    line = out.splitlines()[-1]
    assert line.startswith("coeffs:")
    got = [Fraction(m) for m in re.findall(r"\[\s*([-\d/]+)\s*,", line)]
    assert got == oracles.stream_times_poly(oracles.exp_stream(7), [-2, 0, 1])


def test_decompose_basis(capsys):
    code, out, _ = run(capsys, "decompose-basis", data("z2m2_exp.efun"), "--alpha", "1+t", "-n", "3")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2 and all(line.endswith("-1 -1 0 2") for line in lines)


def test_sympow(capsys):
    code, out, _ = run(capsys, "sympow", "cos", "-D", "2")
    assert code == 0
    assert out.startswith("# dimension 3\n")
    assert "names = cos^2, cos*sin, sin^2" in out


def test_scan_against_brute_force(capsys):
    code, out, _ = run(capsys, "scan", "const 1", "exp", "--hmax", "20")
    assert code == 0
    lo, hi = oracles.e_interval(60)
    best, arg = oracles.brute_form_min(lo, hi, 20)
    # the oracle lists (a, b) with b >= 0; the package prints the other sign
    assert "argmin: (19, -7)" in out and arg == [(-19, 7)]
    assert f"{float(best):.12g}" in out


def test_exponent(capsys):
    code, out, _ = run(capsys, "exponent", "exp@1", "--digits", "100")
    assert code == 0
    est = float(out.splitlines()[1].split()[-1])
    assert 2 < est < 2.2


# -- exit codes ------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ("eval", "exp", "--at", "zz"),
    ("cf", "e"),
    ("scan", "1", "exp", "--hmax", "20"),
    ("bounds", "--kind", "A22", "-d", "0"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as ei:
        main(["eval", "exp"])
    assert ei.value.code == 2


@pytest.mark.parametrize("argv", [
    ("divide", "exp", "--by", "z"),
    ("exponent", "0.5±0"),
])
def test_math_precondition_exit(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_precision_exit(capsys):
    code, _, err = run(capsys, "liouville", "exp@1", "--kappa", "3", "--qmax", "10000", "--digits", "10")
    assert code == 4 and "too large" in err


def test_heuristic_exit(capsys, tmp_path):
    p = tmp_path / "twice.efun"
    p.write_text("[system]\n1 | 0\n0 | 1\n\n[seeds]\n0 = 1\n1 = 1\n")
    code, _, err = run(capsys, "desing", str(p))
    assert code == 5 and "dependent" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "efunc", "bounds", "--kind", "exp", "-d", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "24\n"
