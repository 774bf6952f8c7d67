"""
Instance and solution files
===========================

Instances are stored as small line-oriented text files. Writing and reading
back is lossless.
"""

import tempfile
from pathlib import Path

from fctp_ghg import (
    GenSpec,
    construct_solution,
    generate_instance,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
    total_cost,
)

instance, params = generate_instance(GenSpec(m=2, n=3, seed=1))
text = serialize_instance(instance, params)
print(text)

back, back_params = parse_instance(text)
print("round trip exact:", back == instance and back_params == params)

###############################################################################
# Solutions are the flow matrix preceded by its shape. The same pair of files
# can be fed to ``fctp eval --in ... --solution ...``.

result = construct_solution(instance, params, variant="nn")
with tempfile.TemporaryDirectory() as tmp:
    sol_path = Path(tmp) / "nn.sol"
    sol_path.write_text(serialize_solution(result.solution))
    print(sol_path.read_text())
    print(total_cost(instance, parse_solution(sol_path.read_text())))
