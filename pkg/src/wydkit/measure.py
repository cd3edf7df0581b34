"""Atomic correlation measures built from spectral decompositions.

For operators ``a, b`` and Hermitian ``rho, sigma`` with spectral
projections ``P_i`` and ``Q_j``, the measure ``mu_ab`` on the plane puts
weight ``tau(P_i a* Q_j b)`` at the point ``(lambda_i, kappa_j)``. In finite
dimensions this atom list *is* the measure, so every identity about
``mu_ab`` reduces to a finite sum that can be checked against a trace.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import (_evaluate, _power, check_beta, functional_calculus,
                      fractional_power, l2_norm, trace_of_product)
from .errors import ConsistencyError, InputError, NotHermitianError
from .tolerances import DEFAULT


@dataclass(frozen=True, eq=False)
class AtomicMeasure2D:
    """Atoms on the grid ``x_values x y_values`` with complex ``weights[i, j]``.

    Atoms are ordered lexicographically in ``(i, j)``; coordinates may repeat
    when an eigenvalue is degenerate.
    """

    x_values: np.ndarray
    y_values: np.ndarray
    weights: np.ndarray
    context: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for arr in (self.x_values, self.y_values, self.weights):
            arr.flags.writeable = False

    @property
    def shape(self):
        return self.weights.shape

    @property
    def atoms(self):
        """Flat ``[(x, y, w), ...]`` in lexicographic index order."""
        return [(float(x), float(y), complex(self.weights[i, j]))
                for i, x in enumerate(self.x_values)
                for j, y in enumerate(self.y_values)]

    def total_mass(self):
        return complex(self.weights.sum())

    def total_variation(self):
        return float(np.abs(self.weights).sum())

    def real(self):
        return AtomicMeasure2D(self.x_values, self.y_values,
                               self.weights.real.astype(complex), self.context)


def _same_algebra(alg, *items):
    for it in items:
        if it.algebra != alg:
            raise InputError("operands belong to different algebras")


def _column_weights(alg, dec_rho, dec_sigma, a, b):
    # W[c, c'] = tau(p_c a* q_c' b) for rank-one column projections p_c, q_c'
    n = alg.total_dim
    out = np.zeros((n, n), complex)
    off = alg.offsets
    for k, w in enumerate(alg.weights):
        v = dec_rho.vectors[k]
        u = dec_sigma.vectors[k]
        x = u.conj().T @ a.blocks[k] @ v
        y = u.conj().T @ b.blocks[k] @ v
        out[off[k]:off[k + 1], off[k]:off[k + 1]] = w * (x.conj() * y).T
    return out


def build_measure(alg, dec_rho, dec_sigma, a, b):
    """Atoms ``(lambda_i, kappa_j) -> tau(P_i a* Q_j b)`` over all projection pairs."""
    _same_algebra(alg, dec_rho, dec_sigma, a, b)
    cols = _column_weights(alg, dec_rho, dec_sigma, a, b)
    weights = dec_rho.membership @ cols @ dec_sigma.membership.T
    ctx = {"algebra": alg, "dec_rho": dec_rho, "dec_sigma": dec_sigma, "a": a, "b": b}
    return AtomicMeasure2D(np.array(dec_rho.eigenvalues), np.array(dec_sigma.eigenvalues),
                           weights, ctx)


def _membership(values, intervals):
    mask = np.zeros(values.shape, bool)
    for lo, hi in intervals:
        if lo == -np.inf and hi == np.inf:
            mask[:] = True
        else:
            mask |= (values >= lo) & (values < hi)
    return mask


def rectangle_mass(m, omega1, omega2):
    """Mass of ``omega1 x omega2``; each omega is a list of half-open ``(lo, hi)``.

    Use ``(-inf, inf)`` for the whole line and ``[]`` for the empty set.
    """
    mx = _membership(m.x_values, omega1)
    my = _membership(m.y_values, omega2)
    return complex(m.weights[np.ix_(mx, my)].sum())


def polarized_measure(alg, dec_rho, dec_sigma, a, b):
    """``mu_ab`` rebuilt from the four diagonal measures of ``a + i^k b``."""
    total = None
    for k in range(1, 5):
        c = a + (1j ** k) * b
        part = ((-1j) ** k) * build_measure(alg, dec_rho, dec_sigma, c, c).weights
        total = part if total is None else total + part
    ref = build_measure(alg, dec_rho, dec_sigma, a, b)
    return AtomicMeasure2D(ref.x_values, ref.y_values, total / 4, ref.context)


@dataclass(frozen=True)
class PositivityReport:
    max_abs_imag: float
    min_real: float
    passed: bool


def _same_operator(x, y):
    return x is y or all(np.array_equal(p, q) for p, q in zip(x.blocks, y.blocks))


def check_positivity(m, tol=DEFAULT, scale=1.0):
    """Report the extreme atoms of a diagonal measure ``mu_aa`` (``sigma = rho``)."""
    ctx = m.context
    if ctx:
        if ctx["dec_rho"] is not ctx["dec_sigma"] or not _same_operator(ctx["a"], ctx["b"]):
            raise InputError("positivity only holds for mu_aa with sigma = rho")
    eps = tol.lin * scale
    max_imag = float(np.max(np.abs(m.weights.imag)))
    min_real = float(np.min(m.weights.real))
    return PositivityReport(max_imag, min_real, max_imag <= eps and min_real >= -eps)


def real_part_symmetry_defect(alg, dec_rho, dec_sigma, a, b, tol=DEFAULT):
    """``max |Re mu_ab - Re mu_ba|`` over atoms, for Hermitian ``a, b``."""
    for x in (a, b):
        if not x.is_hermitian(tol):
            raise NotHermitianError("real-part symmetry needs Hermitian operands")
    mab = build_measure(alg, dec_rho, dec_sigma, a, b)
    mba = build_measure(alg, dec_rho, dec_sigma, b, a)
    return float(np.max(np.abs(mab.weights.real - mba.weights.real)))


def integrate(m, g, h):
    """``sum_ij g(x_i) h(y_j) w_ij``."""
    gx = _evaluate(g, m.x_values)
    hy = _evaluate(h, m.y_values)
    return complex(gx @ m.weights @ hy)


def integration_scale(m, g, h):
    """Error scale ``sum|w| * max|g| * max|h|`` used for the identity checks."""
    gx = np.abs(_evaluate(g, m.x_values))
    hy = np.abs(_evaluate(h, m.y_values))
    return m.total_variation() * float(gx.max()) * float(hy.max())


def direct_pairing(alg, dec_rho, dec_sigma, a, b, g, h):
    """``tau(g(rho) a* h(sigma) b)`` computed with matrix products."""
    left = functional_calculus(dec_rho, g) @ a.adjoint()
    right = functional_calculus(dec_sigma, h) @ b
    return trace_of_product(alg, left, right)


def wyd_pairing(alg, rho, beta, a, b, check=True, tol=DEFAULT):
    """``tau(rho^beta a* rho^(1-beta) b)``, cross-checked against its measure integral."""
    beta = check_beta(beta)
    _same_algebra(alg, rho, a, b)
    value = trace_of_product(alg, fractional_power(rho, beta) @ a.adjoint(),
                             fractional_power(rho, 1 - beta) @ b)
    if check:
        dec = rho.decomposition
        m = build_measure(alg, dec, dec, a, b)
        g, h = _power(beta), _power(1 - beta)
        other = integrate(m, g, h)
        eps = tol.lin * max(1.0, integration_scale(m, g, h))
        if abs(value - other) > eps:
            raise ConsistencyError(
                f"trace side {value!r} and measure side {other!r} differ by "
                f"{abs(value - other):.3e} > {eps:.3e}")
    return value


def rectangle_bound(alg, a, b):
    """``|a|_L2 |b|_L2``, the bound on the mass of any set of atoms."""
    return l2_norm(alg, a) * l2_norm(alg, b)
