# Correlation measures: atoms (lambda_i, kappa_j) -> tau(P_i a* Q_j b).
# In finite dimensions the measure is a finite list of atoms, and integrals
# against it reproduce traces of functional-calculus expressions.
import numpy as np

from wydkit import (TraceAlgebra, build_measure, integrate, polarized_measure,
                    validate_density, wyd_pairing)
from wydkit.measure import direct_pairing

# two blocks with different trace weights: tau(x) = 2 Tr(x_1) + 0.5 Tr(x_2)
alg = TraceAlgebra.from_blocks([(2, 2.0), (2, 0.5)])
rng = np.random.default_rng(0)
g = [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2)]
w = alg.operator([x @ x.conj().T for x in g])
rho = validate_density(alg, w * (1 / alg.trace(w).real))
a = alg.operator([rng.standard_normal((2, 2)) for _ in range(2)])
b = alg.operator([rng.standard_normal((2, 2)) for _ in range(2)])

dec = rho.decomposition
m = build_measure(alg, dec, dec, a, b)
print("eigenvalues of rho:", np.round(dec.eigenvalues, 4))
for x, y, wt in m.atoms:
    if abs(wt) > 1e-12:
        print(f"  atom ({x:.4f}, {y:.4f}) -> {wt:.4f}")
print("total mass:", m.total_mass(), " tau(a* b):", alg.trace(a.adjoint() @ b))

# polarization rebuilds mu_ab from four diagonal measures
print("polarization defect:", np.abs(polarized_measure(alg, dec, dec, a, b).weights - m.weights).max())

# integrating g(x) h(y) equals tau(g(rho) a* h(rho) b)
gf, hf = np.cos, lambda t: t ** 2
print("integral:", integrate(m, gf, hf), " trace:", direct_pairing(alg, dec, dec, a, b, gf, hf))

# the WYD pairing checks both sides internally
print("tau(rho^0.3 a* rho^0.7 b) =", wyd_pairing(alg, rho, 0.3, a, b))
