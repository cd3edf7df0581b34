# The gap g(beta) over a grid: symmetric about 1/2 and nondecreasing on [1/2, 1),
# so beta = 1/2 gives the tightest bound.
from wydkit.harness import generate_instance, parse_grid, run_sweep, sweep_csv, trial_rng

inst = generate_instance(trial_rng(7, 0), max_dim=4, max_blocks=2)
print("algebra:", inst.algebra)
rows, findings = run_sweep(inst, parse_grid("0.05:0.95:0.05"))
print(sweep_csv(rows, findings))
