"""Variance, covariance, WYD information and the Kosaki-type gap.

The gap

    F = Var(A) Var(B) - (Re Cov(A,B))^2 - I_beta(A) I_beta(B) + (Re Corr_beta(A,B))^2

is computed two ways: from traces of centered operators
(:func:`kosaki_gap`), and as a quarter of the integral of a nonnegative
kernel against a positive product measure on R^4
(:func:`kosaki_gap_via_measure`).
"""

from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .algebra import (check_beta, fractional_power, l2_norm, trace,
                      trace_of_product)
from .errors import ConsistencyError, InputError, NotHermitianError
from .measure import build_measure
from .tolerances import DEFAULT


def _require_hermitian(tol, *ops):
    for x in ops:
        if not x.is_hermitian(tol):
            raise NotHermitianError(
                f"observable has hermiticity defect {x.hermiticity_defect():.3e}")


def expectation(alg, rho, x):
    return trace_of_product(alg, rho.operator, x)


def center(alg, rho, x, tol=DEFAULT):
    """``x - tau(rho x) I``."""
    _require_hermitian(tol, x)
    return x - expectation(alg, rho, x).real * alg.identity()


def covariance(alg, rho, a, b, tol=DEFAULT):
    _require_hermitian(tol, a, b)
    return (trace_of_product(alg, rho.operator @ a, b)
            - expectation(alg, rho, a) * expectation(alg, rho, b))


def variance(alg, rho, a, tol=DEFAULT):
    return covariance(alg, rho, a, a, tol).real


def _skew_pairing(alg, rho_b, rho_1mb, a, b):
    return trace_of_product(alg, rho_b @ a, rho_1mb @ b)


def beta_correlation(alg, rho, beta, a, b, tol=DEFAULT):
    """``tau(rho a b) - tau(rho^beta a rho^(1-beta) b)``."""
    beta = check_beta(beta)
    _require_hermitian(tol, a, b)
    return (trace_of_product(alg, rho.operator @ a, b)
            - _skew_pairing(alg, fractional_power(rho, beta),
                            fractional_power(rho, 1 - beta), a, b))


def beta_information(alg, rho, beta, a, tol=DEFAULT):
    """Wigner-Yanase-Dyson information; ``beta = 0.5`` is Wigner-Yanase skew information."""
    return beta_correlation(alg, rho, beta, a, a, tol).real


class SchrodingerResult(NamedTuple):
    lhs: float
    bound: float
    gap: float
    heisenberg_lhs: float
    passed: bool
    heisenberg_passed: bool


def schrodinger_check(alg, rho, a, b, tol=DEFAULT):
    """Var Var - (Re Cov)^2 >= |tau(rho [a, b])|^2 / 4, and the Heisenberg form."""
    va = variance(alg, rho, a, tol)
    vb = variance(alg, rho, b, tol)
    cov = covariance(alg, rho, a, b, tol)
    comm = a @ b - b @ a
    bound = abs(expectation(alg, rho, comm)) ** 2 / 4
    lhs = va * vb - cov.real ** 2
    eps = tol.q * max(1.0, va * vb)
    return SchrodingerResult(lhs, bound, lhs - bound, va * vb,
                             lhs - bound >= -eps, va * vb - bound >= -eps)


def _pow0(x, p):
    x = np.asarray(x, dtype=float)
    return np.where(x > 0, np.power(np.where(x > 0, x, 1.0), p), 0.0)


def kernel_array(lams, beta):
    """Vectorized kernel over an ``(N, 4)`` array of nonnegative quadruples."""
    lams = np.asarray(lams, dtype=float)
    if np.any(lams < 0):
        raise InputError("kernel arguments must be nonnegative")
    l1, l2, l3, l4 = lams.T
    m12 = _pow0(l1, beta) * _pow0(l2, 1 - beta)
    m34 = _pow0(l3, beta) * _pow0(l4, 1 - beta)
    return (l1 + l2) * m34 + m12 * (l3 + l4) - 2 * m12 * m34


def kernel(l1, l2, l3, l4, beta):
    """(l1+l2) l3^b l4^(1-b) + l1^b l2^(1-b) (l3+l4) - 2 l1^b l2^(1-b) l3^b l4^(1-b)."""
    beta = check_beta(beta)
    return float(kernel_array([[l1, l2, l3, l4]], beta)[0])


def mean_gap(l1, l2, beta):
    """``l1 + l2 - l1^b l2^(1-b)``, the nonnegative factor in the kernel."""
    return l1 + l2 - float(_pow0(l1, beta) * _pow0(l2, 1 - beta))


class Atom4D(NamedTuple):
    coords: tuple
    weight: float


@dataclass(frozen=True, eq=False)
class ProductMeasure:
    """Real atoms on R^4 stored as ``coords`` (N, 4) and ``weights`` (N,)."""

    coords: np.ndarray
    weights: np.ndarray

    @property
    def atoms(self):
        return [Atom4D(tuple(map(float, c)), float(w))
                for c, w in zip(self.coords, self.weights)]

    def integrate_kernel(self, beta):
        return float(kernel_array(self.coords, beta) @ self.weights)


def product_measure(mu_aa, mu_bb, mu_ab):
    """``mu_aa x mu_bb + mu_bb x mu_aa - 2 Re mu_ab x Re mu_ab`` on R^4."""
    grids = [(m.x_values, m.y_values) for m in (mu_aa, mu_bb, mu_ab)]
    for x, y in grids[1:]:
        if not (np.array_equal(x, grids[0][0]) and np.array_equal(y, grids[0][1])):
            raise InputError("measures must share their spectral grid")
    for m in (mu_aa, mu_bb, mu_ab):
        ctx = m.context
        if ctx and (ctx["dec_rho"] is not mu_aa.context.get("dec_rho")
                    or ctx["dec_sigma"] is not ctx["dec_rho"]):
            raise InputError("measures must be built from one decomposition with sigma = rho")
    x, y = grids[0]
    xx, yy = np.meshgrid(x, y, indexing="ij")
    pts = np.column_stack([xx.ravel(), yy.ravel()])
    n = len(pts)
    coords = np.hstack([np.repeat(pts, n, axis=0), np.tile(pts, (n, 1))])
    wa = mu_aa.weights.real.ravel()
    wb = mu_bb.weights.real.ravel()
    wc = mu_ab.weights.real.ravel()
    weights = np.outer(wa, wb) + np.outer(wb, wa) - 2 * np.outer(wc, wc)
    return ProductMeasure(coords, weights.ravel())


@dataclass(frozen=True)
class UncertaintyReport:
    beta: float
    var_a: float
    var_b: float
    cov: complex
    corr: complex
    info_a: float
    info_b: float
    schrodinger_lhs: float
    schrodinger_bound: float
    kosaki_lhs: float
    kosaki_rhs: float
    gap_f: float
    eps_q: float
    kosaki_pass: bool
    schrodinger_pass: bool
    heisenberg_pass: bool
    info_bounds_pass: bool

    @property
    def passed(self):
        return (self.kosaki_pass and self.schrodinger_pass
                and self.heisenberg_pass and self.info_bounds_pass)

    def to_dict(self):
        d = asdict(self)
        for key in ("cov", "corr"):
            d[key] = [d[key].real, d[key].imag]
        return d


def kosaki_gap(alg, rho, beta, a, b, tol=DEFAULT):
    """All uncertainty quantities for one instance, from traces of centered operators."""
    beta = check_beta(beta)
    a0 = center(alg, rho, a, tol)
    b0 = center(alg, rho, b, tol)
    r = rho.operator
    rb = fractional_power(rho, beta)
    r1b = fractional_power(rho, 1 - beta)
    ra0 = r @ a0
    rb0 = r @ b0
    cov = trace_of_product(alg, ra0, b0)
    var_a = trace_of_product(alg, ra0, a0).real
    var_b = trace_of_product(alg, rb0, b0).real
    skew_ab = _skew_pairing(alg, rb, r1b, a0, b0)
    info_a = var_a - _skew_pairing(alg, rb, r1b, a0, a0).real
    info_b = var_b - _skew_pairing(alg, rb, r1b, b0, b0).real
    corr = cov - skew_ab
    lhs = var_a * var_b - cov.real ** 2
    rhs = info_a * info_b - corr.real ** 2
    gap = lhs - rhs
    eps = tol.q * max(1.0, var_a * var_b)
    bound = abs(trace(alg, r @ (a @ b - b @ a))) ** 2 / 4
    info_ok = all(-eps <= i <= v + eps for i, v in ((info_a, var_a), (info_b, var_b)))
    return UncertaintyReport(
        beta=beta, var_a=var_a, var_b=var_b, cov=cov, corr=corr,
        info_a=info_a, info_b=info_b,
        schrodinger_lhs=lhs, schrodinger_bound=bound,
        kosaki_lhs=lhs, kosaki_rhs=rhs, gap_f=gap, eps_q=eps,
        kosaki_pass=gap >= -eps,
        schrodinger_pass=lhs - bound >= -eps,
        heisenberg_pass=var_a * var_b - bound >= -eps,
        info_bounds_pass=info_ok)


def centered_measures(alg, rho, a, b, tol=DEFAULT):
    """``(mu_a0a0, mu_b0b0, mu_a0b0)`` for the centered observables."""
    a0 = center(alg, rho, a, tol)
    b0 = center(alg, rho, b, tol)
    dec = rho.decomposition
    return (build_measure(alg, dec, dec, a0, a0),
            build_measure(alg, dec, dec, b0, b0),
            build_measure(alg, dec, dec, a0, b0))


def kosaki_gap_via_measure(alg, rho, beta, a, b, tol=DEFAULT, check=True):
    """Quarter of the kernel integrated against the positive product measure.

    With ``check`` the result is compared to :func:`kosaki_gap` within
    ``tol.orc * max(1, lhs)``.
    """
    beta = check_beta(beta)
    value = product_measure(*centered_measures(alg, rho, a, b, tol)).integrate_kernel(beta) / 4
    if check:
        rep = kosaki_gap(alg, rho, beta, a, b, tol)
        eps = tol.orc * max(1.0, rep.kosaki_lhs)
        if abs(value - rep.gap_f) > eps:
            raise ConsistencyError(
                f"measure-side gap {value!r} differs from trace-side {rep.gap_f!r}")
    return value


def product_positivity_scale(alg, rho, a, b, tol=DEFAULT):
    """``(|a0|_L2 |b0|_L2)^2``, the scale for 4D atom positivity."""
    a0 = center(alg, rho, a, tol)
    b0 = center(alg, rho, b, tol)
    return (l2_norm(alg, a0) * l2_norm(alg, b0)) ** 2


def g_curve(alg, rho, a, b, beta_grid, tol=DEFAULT):
    """``[(beta, gap_f), ...]`` over ``beta_grid``."""
    grid = [check_beta(bt) for bt in beta_grid]
    return [(bt, kosaki_gap(alg, rho, bt, a, b, tol).gap_f) for bt in grid]


@dataclass(frozen=True)
class CurveFindings:
    monotone: bool
    worst_decrease: float
    symmetric: bool
    worst_asymmetry: float
    eps: float


def curve_findings(curve, eps, lo=0.5, hi=1.0, pair_tol=1e-9):
    """Monotonicity on ``[lo, hi)`` and ``g(beta) = g(1 - beta)`` over mirrored grid points."""
    upper = sorted((bt, g) for bt, g in curve if lo <= bt < hi)
    worst_dec = 0.0
    for (_, g0), (_, g1) in zip(upper, upper[1:]):
        worst_dec = max(worst_dec, g0 - g1)
    worst_asym = 0.0
    for bt, g in curve:
        for bt2, g2 in curve:
            if abs(bt + bt2 - 1) <= pair_tol:
                worst_asym = max(worst_asym, abs(g - g2))
    return CurveFindings(worst_dec <= eps, worst_dec, worst_asym <= eps, worst_asym, eps)
