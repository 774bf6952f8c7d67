import numpy as np

from fctp_ghg.instances import GenSpec, generate_instance


def slack_instance(seed, m=3, n=4):
    """Random instance in which every center alone can serve all demand."""
    inst, params = generate_instance(GenSpec(m=m, n=n, seed=seed))
    rng = np.random.default_rng(seed)
    total = inst.demand.sum()
    capacity = total + rng.integers(0, int(total) + 1, size=m)
    return inst.replace(capacity=capacity), params
