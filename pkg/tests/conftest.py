import pytest

from fctp_ghg import EmissionParams, Instance, Solution, parse_instance

CANONICAL_TEXT = """\
fctp 1
1 1
capacity: 10
opening: 5
unitcost: 2
demand: 10
fixed:
3
cost:
4
emissions: 0.02 0.02 0.04 0.04 150000
"""


@pytest.fixture
def canonical_text():
    return CANONICAL_TEXT


@pytest.fixture
def canonical():
    return parse_instance(CANONICAL_TEXT)


def worked_example():
    """The three-center worked example with its best allocation.

    Center 2 ships 150 units, center 3 ships 200, both at manufacturer unit
    cost 3. Its six stage-2 shipments (unit cost, quantity) are listed for
    five customers, so one customer is split; each shipment gets its own
    column here. Opening and fixed charges are not published and are
    placeholders.
    """
    shipments = [(1, 3, 50), (1, 1, 100), (2, 2, 25), (2, 5, 25), (2, 3, 100), (2, 4, 50)]
    m, n = 3, len(shipments)
    cost = [[9.0] * n for _ in range(m)]
    flow = [[0.0] * n for _ in range(m)]
    demand = []
    for j, (i, c, q) in enumerate(shipments):
        cost[i][j] = c
        flow[i][j] = q
        demand.append(q)
    instance = Instance(
        capacity=[200, 200, 250],
        opening_cost=[100, 100, 100],
        unit_cost=[4, 3, 3],
        demand=demand,
        edge_fixed_cost=[[10.0] * n for _ in range(m)],
        edge_unit_cost=cost,
    )
    return instance, Solution(flow)


def example_params(alpha, beta, cap=150_000):
    return EmissionParams(alpha, alpha, beta, beta, cap)


@pytest.fixture
def example():
    return worked_example()


# acceptance criteria report --------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
