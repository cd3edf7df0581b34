"""Exit criteria. Each test records one PASS/FAIL line shown in the summary."""

import math
import time

import numpy as np
import pytest

from wydkit import (beta_information, build_measure, check_positivity,
                    integrate, kosaki_gap, kosaki_gap_via_measure,
                    polarized_measure, real_part_symmetry_defect,
                    schrodinger_check)
from wydkit.cli import main
from wydkit.harness import generate_instance, qubit_instance, trial_rng
from wydkit.measure import direct_pairing, integration_scale
from wydkit.uncertainty import (centered_measures, curve_findings, g_curve,
                                product_measure, product_positivity_scale)

pytestmark = pytest.mark.acceptance

SEED = 20240611
N_MAIN = 10_000
BETAS = (0.1, 0.25, 0.5, 0.75, 0.9)


@pytest.fixture(scope="module")
def corpus():
    out = []
    for t in range(N_MAIN):
        inst = generate_instance(trial_rng(SEED, t), max_dim=8, max_blocks=3)
        out.append((inst, inst.density()))
    return out


def _pow(p):
    return lambda t: t ** p if t > 0 else 0.0


def test_c1_main_inequality(corpus, criterion):
    start = time.perf_counter()
    worst = math.inf
    failures = 0
    for inst, rho in corpus:
        for beta in BETAS:
            rep = kosaki_gap(inst.algebra, rho, beta, inst.a, inst.b)
            scale = max(1.0, rep.var_a * rep.var_b)
            worst = min(worst, rep.gap_f / scale)
            failures += rep.gap_f < -1e-9 * scale
    elapsed = time.perf_counter() - start
    ok = criterion(1, "gap_f >= -1e-9*max(1,var_a*var_b)", failures == 0 and elapsed < 60,
                   f"instances={N_MAIN} x betas={len(BETAS)} failures={failures} "
                   f"min_rel_gap={worst:.3e} time={elapsed:.1f}s")
    assert ok


def test_c2_oracle_equivalence(corpus, criterion):
    worst = 0.0
    for k, (inst, rho) in enumerate(corpus[:1000]):
        beta = BETAS[k % len(BETAS)]
        rep = kosaki_gap(inst.algebra, rho, beta, inst.a, inst.b)
        via = kosaki_gap_via_measure(inst.algebra, rho, beta, inst.a, inst.b, check=False)
        worst = max(worst, abs(via - rep.gap_f) / max(1.0, rep.kosaki_lhs))
    ok = criterion(2, "|F_trace - F_measure| <= 1e-8*max(1,lhs)", worst <= 1e-8,
                   f"instances=1000 worst_rel={worst:.3e}")
    assert ok


def test_c3_product_measure_positive(corpus, criterion):
    worst = 0.0
    for inst, rho in corpus:
        alg = inst.algebra
        pm = product_measure(*centered_measures(alg, rho, inst.a, inst.b))
        scale = product_positivity_scale(alg, rho, inst.a, inst.b)
        worst = min(worst, float(pm.weights.min()) / scale)
    ok = criterion(3, "4D atom weights >= -1e-10*(|a0||b0|)^2", worst >= -1e-10,
                   f"instances={N_MAIN} min_rel_weight={worst:.3e}")
    assert ok


def test_c4_integration_identities(corpus, criterion):
    rng = np.random.default_rng(SEED)
    worst_fc = worst_wyd = 0.0
    deficient = 0
    for inst, rho in corpus[:1000]:
        alg, a, b = inst.algebra, inst.a, inst.b
        deficient += inst.rank_deficient
        dec = rho.decomposition
        m = build_measure(alg, dec, dec, a, b)
        cg, ch = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
        g = lambda t: np.polyval(cg, t)
        h = lambda t: np.polyval(ch, t)
        diff = abs(integrate(m, g, h) - direct_pairing(alg, dec, dec, a, b, g, h))
        worst_fc = max(worst_fc, diff / max(1.0, integration_scale(m, g, h)))
        beta = float(rng.uniform(0.05, 0.95))
        gb, hb = _pow(beta), _pow(1 - beta)
        diff = abs(integrate(m, gb, hb) - direct_pairing(alg, dec, dec, a, b, gb, hb))
        worst_wyd = max(worst_wyd, diff / max(1.0, integration_scale(m, gb, hb)))
    ok = criterion(4, "functional-calculus and WYD pairing identities <= 1e-10*scale",
                   worst_fc <= 1e-10 and worst_wyd <= 1e-10 and deficient > 0,
                   f"instances=1000 rank_deficient={deficient} "
                   f"worst_fc={worst_fc:.3e} worst_wyd={worst_wyd:.3e}")
    assert ok


def test_c5_measure_properties(corpus, criterion):
    worst_pol = worst_imag = worst_sym = 0.0
    min_re = 0.0
    for inst, rho in corpus[:1000]:
        alg, a, b = inst.algebra, inst.a, inst.b
        dec = rho.decomposition
        pol = polarized_measure(alg, dec, dec, a, b)
        direct = build_measure(alg, dec, dec, a, b)
        worst_pol = max(worst_pol, float(np.max(np.abs(pol.weights - direct.weights))))
        for x in (a, b):
            rep = check_positivity(build_measure(alg, dec, dec, x, x))
            worst_imag = max(worst_imag, rep.max_abs_imag)
            min_re = min(min_re, rep.min_real)
        worst_sym = max(worst_sym, real_part_symmetry_defect(alg, dec, dec, a, b))
    ok = criterion(5, "polarization, positivity, Re-symmetry within 1e-10",
                   worst_pol <= 1e-10 and worst_imag <= 1e-10 and min_re >= -1e-10
                   and worst_sym <= 1e-10,
                   f"instances=1000 polarization={worst_pol:.3e} max_imag={worst_imag:.3e} "
                   f"min_re={min_re:.3e} re_sym={worst_sym:.3e}")
    assert ok


def test_c6_closed_form_qubit(criterion):
    p, q = 0.75, 0.25
    # scalar oracles: tau(rho^.5 sx rho^.5 sx) = 2 sqrt(pq); F = 1 - I^2; bound = (2p-1)^2
    info_expected = 1 - 2 * math.sqrt(p * q)
    gap_expected = 1 - info_expected ** 2
    bound_expected = (2 * p - 1) ** 2
    inst = qubit_instance(p)
    alg = inst.algebra
    rho = inst.density()
    info = beta_information(alg, rho, 0.5, inst.a)
    gap = kosaki_gap(alg, rho, 0.5, inst.a, inst.b).gap_f
    bound = schrodinger_check(alg, rho, inst.a, inst.b).bound
    errs = (abs(info - (1 - math.sqrt(3) / 2)), abs(gap - gap_expected),
            abs(bound - bound_expected), abs(info - info_expected))
    ok = criterion(6, "qubit closed forms within 1e-12", max(errs) <= 1e-12,
                   f"I={info:.10f} F={gap:.10f} bound={bound:.10f} max_err={max(errs):.1e}")
    assert ok


def test_c7_remark_monotone(criterion):
    grid = [round(0.5 + 0.05 * k, 2) for k in range(10)]
    mirrored = sorted({round(1 - b, 2) for b in grid} | set(grid))
    findings = []
    for t in range(200):
        inst = generate_instance(trial_rng(SEED + 7, t))
        rho = inst.density()
        curve = g_curve(inst.algebra, rho, inst.a, inst.b, mirrored)
        rep = kosaki_gap(inst.algebra, rho, 0.5, inst.a, inst.b)
        f = curve_findings(curve, 1e-9 * max(1.0, rep.var_a * rep.var_b))
        if not (f.monotone and f.symmetric):
            findings.append((t, f))
    ok = criterion(7, "g nondecreasing on [0.5,0.95], g(b)=g(1-b)", not findings,
                   f"instances=200 findings={len(findings)}"
                   + (f" first={findings[0]}" if findings else ""))
    assert ok


def test_c8_determinism(tmp_path, criterion, capsys):
    paths = [tmp_path / "run1.jsonl", tmp_path / "run2.jsonl"]
    codes = [main(["verify", "--seed", "99", "--trials", "50", "--max-dim", "8",
                   "--max-blocks", "3", "--betas", "0.1,0.25,0.5,0.75,0.9", "--out", str(p)])
             for p in paths]
    capsys.readouterr()
    a, b = (p.read_bytes() for p in paths)
    ok = criterion(8, "identical verify configs give byte-identical reports",
                   a == b and codes == [0, 0], f"bytes={len(a)} exit_codes={codes}")
    assert ok
