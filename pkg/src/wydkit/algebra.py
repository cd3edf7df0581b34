"""Block-diagonal matrix algebras with a weighted trace.

A :class:`TraceAlgebra` is a finite direct sum of full matrix algebras
``M_{d_1} + ... + M_{d_K}`` carrying the trace
``tau(x) = sum_k w_k Tr(x_k)`` with strictly positive weights. This is the
general form of a finite-dimensional algebra with a faithful trace, so the
single-block, unit-weight case is ordinary matrix trace.
"""

from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .errors import (DomainError, InputError, NotHermitianError,
                     NotNormalizedError, NotPositiveError, NumericalError)
from .tolerances import DEFAULT


@dataclass(frozen=True)
class TraceAlgebra:
    dims: tuple
    weights: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        weights = tuple(float(w) for w in self.weights)
        if not dims or len(dims) != len(weights):
            raise InputError("need one weight per block and at least one block")
        if any(d < 1 for d in dims):
            raise InputError(f"block dimensions must be >= 1, got {dims}")
        if any(not (w > 0 and np.isfinite(w)) for w in weights):
            raise InputError(f"block weights must be finite and > 0, got {weights}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def single(cls, dim, weight=1.0):
        return cls((dim,), (weight,))

    @classmethod
    def from_blocks(cls, blocks):
        """Build from ``[(dim, weight), ...]``."""
        blocks = list(blocks)
        return cls(tuple(b[0] for b in blocks), tuple(b[1] for b in blocks))

    @property
    def n_blocks(self):
        return len(self.dims)

    @property
    def total_dim(self):
        return sum(self.dims)

    @property
    def offsets(self):
        return tuple(np.concatenate([[0], np.cumsum(self.dims)]).astype(int))

    def operator(self, blocks):
        return BlockOperator(self, blocks)

    def diag(self, *values):
        """Block operator with the given diagonal, split across blocks in order."""
        values = np.asarray(values, dtype=complex).ravel()
        if values.size != self.total_dim:
            raise InputError(f"expected {self.total_dim} diagonal entries, got {values.size}")
        off = self.offsets
        return BlockOperator(self, [np.diag(values[off[k]:off[k + 1]])
                                    for k in range(self.n_blocks)])

    def zeros(self):
        return BlockOperator(self, [np.zeros((d, d), complex) for d in self.dims])

    def identity(self):
        return BlockOperator(self, [np.eye(d, dtype=complex) for d in self.dims])

    def trace(self, x):
        return trace(self, x)


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """One complex matrix per block of ``algebra``; immutable."""

    algebra: TraceAlgebra
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if len(blocks) != self.algebra.n_blocks:
            raise InputError(f"expected {self.algebra.n_blocks} blocks, got {len(blocks)}")
        frozen = []
        for d, b in zip(self.algebra.dims, blocks):
            arr = np.array(b, dtype=complex)
            if arr.shape != (d, d):
                raise InputError(f"block shape {arr.shape} does not match dim {d}")
            arr.flags.writeable = False
            frozen.append(arr)
        object.__setattr__(self, "blocks", tuple(frozen))

    def _check(self, other):
        if not isinstance(other, BlockOperator):
            return NotImplemented
        if other.algebra != self.algebra:
            raise InputError("operators belong to different algebras")
        return other

    def _map(self, fn, *others):
        return BlockOperator(self.algebra,
                             [fn(*bs) for bs in zip(self.blocks, *(o.blocks for o in others))])

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._map(np.add, other)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._map(np.subtract, other)

    def __neg__(self):
        return self._map(np.negative)

    def __mul__(self, scalar):
        if isinstance(scalar, BlockOperator):
            return NotImplemented
        return self._map(lambda b: b * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self._map(np.matmul, other)

    def adjoint(self):
        return self._map(lambda b: b.conj().T)

    @property
    def H(self):
        return self.adjoint()

    def max_abs(self):
        return max(float(np.max(np.abs(b))) for b in self.blocks)

    def hermiticity_defect(self):
        return max(float(np.max(np.abs(b - b.conj().T))) for b in self.blocks)

    def is_hermitian(self, tol=DEFAULT):
        return self.hermiticity_defect() <= tol.herm * max(1.0, self.max_abs())

    def to_dense(self):
        n = self.algebra.total_dim
        out = np.zeros((n, n), complex)
        off = self.algebra.offsets
        for k, b in enumerate(self.blocks):
            out[off[k]:off[k + 1], off[k]:off[k + 1]] = b
        return out

    def __repr__(self):
        return f"BlockOperator(dims={self.algebra.dims}, blocks={[b.tolist() for b in self.blocks]})"


def trace(alg, x):
    """Weighted trace ``sum_k w_k Tr(x_k)``."""
    if x.algebra != alg:
        raise InputError("operator does not belong to this algebra")
    total = 0j
    for w, b in zip(alg.weights, x.blocks):
        total += w * np.trace(b)
    return complex(total)


def trace_of_product(alg, x, y):
    """``trace(alg, x @ y)`` without forming the product."""
    if x.algebra != alg or y.algebra != alg:
        raise InputError("operator does not belong to this algebra")
    total = 0j
    for w, bx, by in zip(alg.weights, x.blocks, y.blocks):
        total += w * np.sum(bx * by.T)
    return complex(total)


def l2_norm(alg, x):
    """``sqrt(tau(x* x))``."""
    return float(np.sqrt(max(trace_of_product(alg, x.adjoint(), x).real, 0.0)))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues of a Hermitian block operator with their spectral projections.

    Each listed eigenvalue owns a set of eigenvector columns (rank one unless
    the decomposition was produced by :meth:`merged`). ``membership[i, c]`` is
    1 when global column ``c`` belongs to eigenvalue ``i``; global columns are
    block eigenvector columns in block order.
    """

    algebra: TraceAlgebra
    eigenvalues: np.ndarray
    vectors: tuple
    membership: np.ndarray = field(repr=False)

    def __post_init__(self):
        for arr in (self.eigenvalues, self.membership, *self.vectors):
            arr.flags.writeable = False

    def __len__(self):
        return len(self.eigenvalues)

    @cached_property
    def column_values(self):
        """Eigenvalue attached to each global eigenvector column."""
        return self.membership.T @ self.eigenvalues

    @cached_property
    def projections(self):
        return tuple(self._operator_from_columns(row) for row in self.membership)

    def _operator_from_columns(self, column_weights):
        off = self.algebra.offsets
        blocks = []
        for k, v in enumerate(self.vectors):
            c = column_weights[off[k]:off[k + 1]]
            blocks.append((v * c) @ v.conj().T)
        return BlockOperator(self.algebra, blocks)

    def reconstruct(self):
        return self._operator_from_columns(self.column_values)

    def with_eigenvalues(self, values):
        values = np.array(values, dtype=float)
        if values.shape != self.eigenvalues.shape:
            raise InputError("eigenvalue count mismatch")
        return replace(self, eigenvalues=values)

    def merged(self, tol=1e-12):
        """Merge consecutive eigenvalues closer than ``tol`` into one projection."""
        groups = [[0]]
        for i in range(1, len(self.eigenvalues)):
            if self.eigenvalues[i] - self.eigenvalues[groups[-1][-1]] <= tol:
                groups[-1].append(i)
            else:
                groups.append([i])
        values = np.array([np.mean(self.eigenvalues[g]) for g in groups])
        membership = np.array([self.membership[g].sum(axis=0) for g in groups])
        return SpectralDecomposition(self.algebra, values, self.vectors, membership)


def _rel(tol_value, x):
    return tol_value * max(1.0, x.max_abs())


def eigendecompose(x, tol=DEFAULT):
    """Spectral decomposition with one rank-one projection per eigenvalue.

    Eigenvalues are sorted ascending across all blocks (stable order on
    ties, blocks first). The input is re-symmetrized before solving.
    """
    defect = x.hermiticity_defect()
    if defect > _rel(tol.herm, x):
        raise NotHermitianError(f"hermiticity defect {defect:.3e} exceeds tolerance")
    vals, vecs = [], []
    for b in x.blocks:
        h = (b + b.conj().T) / 2
        w, v = np.linalg.eigh(h)
        resid = np.max(np.abs((v * w) @ v.conj().T - h))
        if resid > _rel(tol.lin, x):
            raise NumericalError(f"eigensolver residual {resid:.3e} exceeds tolerance")
        vals.append(w)
        vecs.append(v)
    allvals = np.concatenate(vals)
    order = np.argsort(allvals, kind="stable")
    n = allvals.size
    membership = np.zeros((n, n))
    membership[np.arange(n), order] = 1.0
    return SpectralDecomposition(x.algebra, allvals[order], tuple(vecs), membership)


def _evaluate(f, points):
    out = np.array([f(float(t)) for t in points], dtype=complex)
    if not np.all(np.isfinite(out)):
        bad = points[~np.isfinite(out)]
        raise DomainError(f"function is not finite at spectral points {bad.tolist()}")
    return out


def functional_calculus(dec, f):
    """``sum_i f(lambda_i) P_i`` for a scalar function ``f``."""
    fvals = _evaluate(f, dec.eigenvalues)
    return dec._operator_from_columns(dec.membership.T @ fvals)


def _power(beta):
    return lambda t: t ** beta if t > 0 else 0.0


def check_beta(beta):
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise InputError("beta must lie in open interval (0,1)")
    return beta


@dataclass(frozen=True, eq=False)
class DensityOperator:
    operator: BlockOperator
    decomposition: SpectralDecomposition

    @property
    def algebra(self):
        return self.operator.algebra


def fractional_power(rho, beta):
    """``rho**beta`` with the convention ``0**beta = 0``."""
    beta = check_beta(beta)
    return functional_calculus(rho.decomposition, _power(beta))


def validate_density(alg, x, tol=DEFAULT):
    """Check that ``x`` is a normalized positive element and attach its spectrum.

    Eigenvalues in ``[-eps_psd, 0)`` are clamped to zero, where
    ``eps_psd = tol.psd * max(1, |x|_max)``.
    """
    if x.algebra != alg:
        raise InputError("operator does not belong to this algebra")
    dec = eigendecompose(x, tol)
    eps_psd = _rel(tol.psd, x)
    lowest = float(dec.eigenvalues[0])
    if lowest < -eps_psd:
        raise NotPositiveError(f"density has negative eigenvalue {lowest:.6e}")
    dec = dec.with_eigenvalues(np.where(dec.eigenvalues < 0, 0.0, dec.eigenvalues))
    t = trace(alg, x).real
    if abs(t - 1.0) > tol.norm:
        raise NotNormalizedError(f"weighted trace of density is {t!r}, expected 1")
    sym = x._map(lambda b: (b + b.conj().T) / 2)
    return DensityOperator(sym, dec)
