"""
Nearest Neighbor variants against the exact optimum
====================================================

On a small instance where every center can serve all the demand, the
brute-force oracle gives the true optimum. Each heuristic variant is run
for a handful of seeds and compared against it.
"""

import numpy as np

from fctp_ghg import GenSpec, Variant, brute_force_optimum, construct_solution, generate_instance

instance, params = generate_instance(GenSpec(m=3, n=6, seed=11))
instance = instance.replace(capacity=np.full(3, instance.demand.sum()))

best = brute_force_optimum(instance, params)
print(f"optimum Z={best.cost.total:g}, customers -> centers {[i + 1 for i in best.assignment]}")

###############################################################################
# ``nn`` is deterministic; the hybrids draw the next center at random, either
# uniformly (``dx``) or proportionally to a capacity-based weight (``dy*``).

for variant in Variant:
    totals = [construct_solution(instance, params, variant=variant, seed=s).cost.total for s in range(10)]
    gap = (min(totals) - best.cost.total) / best.cost.total
    print(f"{variant.label:9s} best Z={min(totals):8g}  mean Z={np.mean(totals):9.1f}  best gap={gap:6.1%}")

###############################################################################
# A single run with its full shipment plan.

result = construct_solution(instance, params, variant="dy10", seed=3)
print(result.summary())
print(result.solution.flow)
