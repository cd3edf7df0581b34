# Two routes to the same gap F: traces of centered operators, and a quarter
# of the kernel integrated against the positive 4D product measure.
from wydkit import kernel, kosaki_gap, kosaki_gap_via_measure
from wydkit.harness import dump_measure, generate_instance, trial_rng
from wydkit.uncertainty import centered_measures, product_measure

inst = generate_instance(trial_rng(11, 3), max_dim=5, max_blocks=2)
alg, A, B = inst.algebra, inst.a, inst.b
rho = inst.density()
beta = 0.3

pm = product_measure(*centered_measures(alg, rho, A, B))
print("4D atoms:", len(pm.weights), " min weight:", pm.weights.min())
print("trace side  :", kosaki_gap(alg, rho, beta, A, B).gap_f)
print("measure side:", kosaki_gap_via_measure(alg, rho, beta, A, B))

# the kernel is pointwise nonnegative, which is why the gap is
print("K(4,1,1,1; 1/2) =", kernel(4, 1, 1, 1, 0.5))

doc = dump_measure(inst, beta)
print("nonzero 4D atoms in dump:", len(doc["atoms_4d"]), " reconstructed:", doc["reconstructed_gap"])
