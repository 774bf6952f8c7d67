"""Independent reference implementations used only by the tests.

Written as plain loops straight from the model definitions, sharing no code
with the package beyond reading instance fields.
"""

import math


def naive_cost(instance, flow):
    m, n = instance.m, instance.n
    transport = 0.0
    fixed = 0.0
    for i in range(m):
        row_total = 0.0
        for j in range(n):
            row_total += flow[i][j]
        transport += instance.unit_cost[i] * row_total
        if row_total > 0:
            fixed += instance.opening_cost[i]
    for i in range(m):
        for j in range(n):
            transport += instance.edge_unit_cost[i][j] * flow[i][j]
            if flow[i][j] > 0:
                fixed += instance.edge_fixed_cost[i][j]
    return transport, fixed, transport + fixed


def naive_emissions(instance, flow, alpha_man, alpha, beta_man, beta, literal=False):
    """Scalar emission factors only."""
    m, n = instance.m, instance.n
    total = 0.0
    for i in range(m):
        x_i = sum(flow[i][j] for j in range(n))
        a = instance.capacity[i] if literal else 1.0
        total += alpha_man * a * x_i + beta_man * a * instance.unit_cost[i] * x_i
    for i in range(m):
        for j in range(n):
            b = instance.demand[j] if literal else 1.0
            total += alpha * b * flow[i][j] + beta * b * instance.edge_unit_cost[i][j] * flow[i][j]
    return total


def textbook_t(a, b):
    """Pooled two-sample t statistic and df, straight from the formula."""
    na, nb = len(a), len(b)
    ma = sum(a) / na
    mb = sum(b) / nb
    ssa = sum((x - ma) ** 2 for x in a)
    ssb = sum((x - mb) ** 2 for x in b)
    df = na + nb - 2
    sp2 = (ssa + ssb) / df
    t = (ma - mb) / math.sqrt(sp2 * (1 / na + 1 / nb))
    return t, df


def student_two_tailed_p(t, df):
    """Closed-form Student t tail for integer df (Abramowitz & Stegun 26.7.3/26.7.4)."""
    theta = math.atan(abs(t) / math.sqrt(df))
    s, c = math.sin(theta), math.cos(theta)
    if df % 2 == 1:
        if df == 1:
            inside = 2 * theta / math.pi
        else:
            term, acc = 1.0, 1.0
            for k in range(1, (df - 3) // 2 + 1):
                term *= (2 * k) / (2 * k + 1) * c * c
                acc += term
            inside = 2 / math.pi * (theta + s * c * acc)
    else:
        term, acc = 1.0, 1.0
        for k in range(1, (df - 2) // 2 + 1):
            term *= (2 * k - 1) / (2 * k) * c * c
            acc += term
        inside = s * acc
    return 1.0 - inside
