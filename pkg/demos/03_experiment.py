"""
Comparing variants with unpaired t-tests
========================================

Three instances per family (10x10, 10x30, 30x100), every variant run 30
times with seeds derived from one base seed, and each variant's pooled
emissions compared with HNN-DY10 by a pooled-variance t-test.
"""

from fctp_ghg import compare_vs_baseline, generate_preset, run_experiment
from fctp_ghg.stats import comparison_pretty, comparison_tsv

instances, names = [], []
for preset in ("small", "medium", "large"):
    for k, pair in enumerate(generate_preset(preset, seed=2012)):
        instances.append(pair)
        names.append(f"{preset}-{k + 1}")

table = run_experiment(instances, trials_per_variant=30, base_seed=2012, names=names)

###############################################################################
# Emissions, then total cost, against the DY10 baseline.

for metric in ("emissions", "cost"):
    results = compare_vs_baseline(table, "dy10", metric)
    print(f"\n{metric}")
    print(comparison_pretty(results, "dy10"))
    print(comparison_tsv(results))

###############################################################################
# How many runs stayed under the emission cap.

for variant in table.variants():
    rows = [s for (_, v), samples in table.samples.items() if v is variant for s in samples]
    print(f"{variant.label:9s} {sum(s.ghg_ok for s in rows)}/{len(rows)} under cap")
