"""End-to-end acceptance checks for the shipped cover and pencil.

One full modular certificate is computed per session; the CLI recomputes it
for the determinism check.  A summary line per criterion is printed at the
end of the run.
"""

import json
import os
import re
import subprocess
import sys
import time
from fractions import Fraction as Q
from pathlib import Path

import pytest

from lefpencil.arith import QQ, canonical_vector, exact_nullspace
from lefpencil.certify import eta_matrix, euler_ledger, load_config, run_certificate, shipped_config_path
from lefpencil.certify.pipeline import cover_validation
from lefpencil.ellcurve import (
    CoverDatum, WeierstrassCurve, add_points, count_points_mod_p, point, verify_order_three,
    velu_3_isogeny,
)
from lefpencil.sections import FiberStratum, build_fiber0_data
from lefpencil.multipoly import Ring

ROOT = Path(__file__).resolve().parent.parent
BETA, MU = Q(3, 2), Q(6)
E1T = CoverDatum(WeierstrassCurve(1, 1, Q(-3, 4)), 1, BETA)


@pytest.fixture(scope="session")
def certificate():
    t0 = time.perf_counter()
    cert = run_certificate(load_config(shipped_config_path()))
    cert.wall_seconds = time.perf_counter() - t0
    return cert


def test_criterion_01_euler_ledger():
    t0 = time.perf_counter()
    L = euler_ledger()
    elapsed = time.perf_counter() - t0
    assert L.gamma_dot_gamma_plus_k == 24
    assert L.e_total_space == -24
    assert L.target == 42
    assert elapsed < 1


def test_criterion_02_cover_validation():
    t0 = time.perf_counter()
    c = E1T.curve
    C1 = point(1, Q(3, 2))
    assert c.contains(C1)
    assert add_points(c, C1, C1) == point(1, Q(-3, 2))
    assert verify_order_three(c, C1)
    assert c.w_prime(1) == 6 and E1T.mu == 6
    E1 = velu_3_isogeny(c, C1)
    assert E1 == WeierstrassCurve(1, -59, Q(-783, 4))
    assert count_points_mod_p(c, 7) == count_points_mod_p(E1, 7) == 12
    assert cover_validation(E1T)["passed"]
    assert time.perf_counter() - t0 < 1


def _displayed_jets():
    """The printed expansions with beta, mu substituted; chi_2 read with Z0 = t*Z0'."""
    R = Ring(("Z0p", "Z1", "Z2"), QQ)
    b, m = BETA, MU
    Z0, Z1, Z2 = R.gens()
    return R, [
        ((Z1 ** 4 - Z2 ** 4) * (2 * b), Z0 ** 4 + Z1 ** 4 * m + Z2 ** 4 * m),
        (Z0 * Z1 * Z2 * (Z1 + Z2), Z0 ** 2 * Z1 * Z2),
        (Z0 ** 3 * Z2 - Z1 * Z2 ** 3 * (2 * b), Z1 * Z2 ** 3 * m + Z0 * Z1 ** 3 * (2 * b)),
        (Z0 ** 3 * Z1 + Z1 ** 3 * Z2 * (2 * b), Z1 ** 3 * Z2 * m - Z0 * Z2 ** 3 * (2 * b)),
        (Z0 ** 2 * (Z1 ** 2 - Z2 ** 2) * (2 * b),
         Z0 ** 2 * Z2 ** 2 * m + Z0 ** 2 * Z1 ** 2 * m - Z1 ** 2 * Z2 ** 2 * (4 * b * b)),
    ]


def test_criterion_03_chi_jets(certificate):
    R, expected = _displayed_jets()
    fd = build_fiber0_data(E1T)
    jets = certificate.body["sections"]["jets"]
    for i, (val, der) in enumerate(expected):
        assert fd.values[i] == val and fd.derivatives[i] == der
        assert R.parse(jets[f"chi{i + 1}"]["value"]) == val
        assert R.parse(jets[f"chi{i + 1}"]["t_derivative"]) == der
    # read literally, the chi_2 t-term Z0^2*Z1*Z2 would carry an extra t^2 under Z0 = t*Z0'
    assert fd.derivatives[1] == R.parse("Z0p^2*Z1*Z2")


def test_criterion_04_q0_kernel():
    M = eta_matrix(E1T, "0", FiberStratum(2), restrict=False)
    A = M.evaluate({"Z0p": 0, "Z1": 1})
    ker = exact_nullspace(A)
    assert len(ker) == 1
    target = [-2 * BETA ** 2, 0, 4 * BETA ** 2, 4 * BETA ** 2, MU]
    assert target == [Q(-9, 2), 0, 9, 9, 6]
    assert canonical_vector(ker[0], QQ) == canonical_vector(target, QQ)
    assert all(x == 0 for x in A.apply(target))


def test_criterion_05_base_points(certificate):
    bp = certificate.body["base_points"]
    assert bp["passed"]
    assert bp["total_length"] == 4
    assert bp["point_1_0_0_is_base_point"]
    assert bp["cubic"] == "r^3 - 3"
    assert all(bp["chart_U_base_locus_empty"].values())
    assert certificate.timings_ms["base-points"] < 5 * 60 * 1000


def test_criterion_06_critical_scheme(certificate):
    cs = certificate.body["critical_scheme"]
    assert cs["passed"]
    assert all(v["zero_dimensional"] for v in cs["strata"].values())
    assert cs["grand_total"] == 126
    assert cs["N_U"] % 3 == 0
    primes = certificate.body["primes"]
    assert certificate.body["mode"] == "modular"
    assert len(primes) == 3 and all(p > 2 ** 30 for p in primes)
    assert certificate.wall_seconds < 15 * 60


@pytest.mark.skipif(not os.environ.get("LEFPENCIL_RATIONAL"),
                    reason="rational-mode run takes hours; set LEFPENCIL_RATIONAL=1")
def test_criterion_06_rational_stretch():
    cfg = load_config(shipped_config_path()).with_options(mode="rational")
    t0 = time.perf_counter()
    cert = run_certificate(cfg)
    assert cert.verdict == "pass" and cert.exit_code == 0
    assert cert.body["critical_scheme"]["grand_total"] == 126
    assert time.perf_counter() - t0 < 2 * 3600


def test_criterion_07_eliminant(certificate):
    el = certificate.body["eliminant"]
    assert el["degree"] == 42
    assert el["squarefree"]
    assert el["irreducibility"]["verdict"] in ("irreducible-certified", "squarefree-only")
    print("irreducibility:", el["irreducibility"])


def test_criterion_08_eta_definedness(certificate):
    eta = certificate.body["eta"]
    assert eta["passed"]
    assert set(eta["strata"].values()) == {"defined"}


def test_criterion_09_consistency(certificate):
    c = certificate.body["consistency"]
    assert c["grand_total"] == 126
    assert c["three_times_singular_members"] == 126 == c["three_times_euler_target"]
    assert c["consistent"]
    text = " ".join(certificate.body["conclusions"])
    assert "ordinary double point" in text
    assert certificate.verdict == "pass-modular" and certificate.exit_code == 3


ENGINE_FILES = ["tests/test_arith.py", "tests/test_multipoly.py", "tests/test_groebner.py",
                "tests/test_unipoly.py", "tests/test_ellcurve.py"]


def test_criterion_10_engine_suites():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-v", "-p", "no:cacheprovider", *ENGINE_FILES],
                          cwd=ROOT, capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    assert proc.returncode == 0, proc.stdout[-3000:]

    def passed(name):
        return len(re.findall(rf"::{name}(\[[^\]]*\])? PASSED", proc.stdout))

    assert passed("test_buchberger_idempotent") == 1
    assert passed("test_membership_via_cofactors") == 1
    assert passed("test_quotient_dimension_matches_resultant") >= 50
    assert passed("test_minimal_polynomial_generates_elimination_ideal") >= 20
    assert passed("test_group_law_triples") >= 100
    assert passed("test_expansion_satisfies_relation_to_order_8") >= 1
    assert elapsed < 5 * 60


def test_criterion_11_determinism(certificate, tmp_path):
    out = tmp_path / "cert.json"
    proc = subprocess.run([sys.executable, "-m", "lefpencil.cli", "all", "--out", str(out)],
                          cwd=ROOT, capture_output=True, text=True)
    assert proc.returncode == certificate.exit_code, proc.stderr
    assert out.read_bytes() == certificate.to_json().encode()
    assert json.loads(out.read_text())["verdict"] == "pass-modular"
