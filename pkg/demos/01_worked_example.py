"""
Emissions of a known allocation
===============================

Three candidate distribution centers and five customers. The best known
allocation opens centers 2 and 3: center 2 ships 150 units and center 3
ships 200, both at a manufacturer unit cost of 3. The six stage-2
shipments below (unit cost, quantity) serve the five customers, one of
them in two parts, so every shipment gets its own column.
"""

import numpy as np

from fctp_ghg import EmissionParams, Instance, Solution, check_feasibility, ghg_emissions, indicators

shipments = [(1, 3, 50), (1, 1, 100), (2, 2, 25), (2, 5, 25), (2, 3, 100), (2, 4, 50)]
m, n = 3, len(shipments)
cost = np.full((m, n), 9.0)
flow = np.zeros((m, n))
for j, (i, c, q) in enumerate(shipments):
    cost[i, j], flow[i, j] = c, q

# opening and fixed edge charges are placeholders: only emissions matter here
instance = Instance(
    capacity=[200, 200, 250],
    opening_cost=[100, 100, 100],
    unit_cost=[4, 3, 3],
    demand=flow.sum(axis=0),
    edge_fixed_cost=np.full((m, n), 10.0),
    edge_unit_cost=cost,
)
solution = Solution(flow)
print("open centers:", np.flatnonzero(indicators(solution).center_open) + 1)

###############################################################################
# With one alpha for every facility and one beta for every link the total is
# ``1975 * beta + 700 * alpha``.

for alpha, beta in [(1, 2), (0.01, 0.02)]:
    params = EmissionParams(alpha, alpha, beta, beta, ghg_cap=1e9)
    print(f"alpha={alpha} beta={beta}: emissions = {ghg_emissions(instance, params, solution):g}")

###############################################################################
# Checking the cap. 46.5 tons passes a cap of 50 and breaks a cap of 40.

for cap in (50, 40):
    report = check_feasibility(instance, EmissionParams(0.01, 0.01, 0.02, 0.02, cap), solution)
    print(f"cap {cap}: ghg_ok={report.ghg_ok} feasible={report.feasible}")

###############################################################################
# The alternative formula additionally weights the stage-1 terms by center
# capacity and the stage-2 terms by customer demand, which inflates the total
# by orders of magnitude.

params = EmissionParams(0.01, 0.01, 0.02, 0.02, 50)
print("eq9 mode:", ghg_emissions(instance, params, solution, "eq9"))
