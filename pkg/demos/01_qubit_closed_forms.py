# Qubit warm-up: rho = diag(p, 1-p), A = sigma_x, B = sigma_y.
# Every quantity has a closed form here, so this is the place to build intuition.
import math

from wydkit import beta_information, kosaki_gap, schrodinger_check
from wydkit.harness import qubit_instance

inst = qubit_instance(0.75)
alg, A, B = inst.algebra, inst.a, inst.b
rho = inst.density()

# Wigner-Yanase information of sigma_x: 1 - 2 sqrt(p q)
print("I_1/2(sigma_x) =", beta_information(alg, rho, 0.5, A))
print("closed form    =", 1 - 2 * math.sqrt(0.75 * 0.25))

# Schrodinger: Var Var - (Re Cov)^2 >= |tau(rho [A,B])|^2 / 4 = (2p-1)^2
s = schrodinger_check(alg, rho, A, B)
print("Schrodinger lhs, bound:", s.lhs, s.bound)

# The WYD version replaces the commutator bound by I(A) I(B) - (Re Corr)^2
for beta in (0.1, 0.3, 0.5, 0.7, 0.9):
    r = kosaki_gap(alg, rho, beta, A, B)
    print(f"beta={beta:.1f}  lhs={r.kosaki_lhs:.6f}  rhs={r.kosaki_rhs:.6f}  gap={r.gap_f:.6f}")
