"""Domain types, instance validation and the plain-text instance format.

An instance file looks like::

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

``#`` starts a comment (whole line or trailing), blank lines are ignored.
Matrices are written row-major, one row of ``n`` values per center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

FORMAT_MAGIC = "fctp"
FORMAT_VERSION = 1


def _frozen(values, ndim: int | None = None) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if ndim is not None and arr.ndim == 0:
        arr = arr.reshape((1,) * ndim)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class DistributionCenter:
    capacity: float
    opening_cost: float
    unit_transport_cost: float


@dataclass(frozen=True)
class Customer:
    demand: float


@dataclass(frozen=True, eq=False)
class Instance:
    """A two-stage fixed-charge transportation instance.

    Stored column-wise as arrays: ``capacity``, ``opening_cost`` and
    ``unit_cost`` (manufacturer to center) have length ``m``; ``demand`` has
    length ``n``; ``edge_fixed_cost`` and ``edge_unit_cost`` are ``m x n``.
    Nothing is checked on construction; use :func:`validate_instance`.
    """

    capacity: np.ndarray
    opening_cost: np.ndarray
    unit_cost: np.ndarray
    demand: np.ndarray
    edge_fixed_cost: np.ndarray
    edge_unit_cost: np.ndarray

    def __post_init__(self):
        for name in ("capacity", "opening_cost", "unit_cost", "demand"):
            object.__setattr__(self, name, _frozen(getattr(self, name), 1))
        for name in ("edge_fixed_cost", "edge_unit_cost"):
            object.__setattr__(self, name, _frozen(getattr(self, name), 2))

    @classmethod
    def from_records(
        cls,
        centers: Sequence[DistributionCenter],
        customers: Sequence[Customer],
        edge_fixed_cost,
        edge_unit_cost,
    ) -> "Instance":
        return cls(
            capacity=[c.capacity for c in centers],
            opening_cost=[c.opening_cost for c in centers],
            unit_cost=[c.unit_transport_cost for c in centers],
            demand=[c.demand for c in customers],
            edge_fixed_cost=edge_fixed_cost,
            edge_unit_cost=edge_unit_cost,
        )

    @property
    def m(self) -> int:
        return len(self.capacity)

    @property
    def n(self) -> int:
        return len(self.demand)

    @property
    def centers(self) -> tuple[DistributionCenter, ...]:
        return tuple(
            DistributionCenter(float(a), float(f), float(c))
            for a, f, c in zip(self.capacity, self.opening_cost, self.unit_cost)
        )

    @property
    def customers(self) -> tuple[Customer, ...]:
        return tuple(Customer(float(b)) for b in self.demand)

    def replace(self, **changes) -> "Instance":
        fields = {
            name: getattr(self, name)
            for name in (
                "capacity",
                "opening_cost",
                "unit_cost",
                "demand",
                "edge_fixed_cost",
                "edge_unit_cost",
            )
        }
        fields.update(changes)
        return Instance(**fields)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, k), getattr(other, k))
            for k in (
                "capacity",
                "opening_cost",
                "unit_cost",
                "demand",
                "edge_fixed_cost",
                "edge_unit_cost",
            )
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class EmissionParams:
    """Emission factors and the emission cap.

    ``alpha_center``, ``beta_manufacturer`` and ``beta_edge`` accept either a
    scalar (the same factor everywhere) or a per-center / per-edge array.
    Use :meth:`expand` to get arrays broadcast to an ``m x n`` instance.
    """

    alpha_manufacturer: float = 0.02
    alpha_center: float | np.ndarray = 0.02
    beta_manufacturer: float | np.ndarray = 0.04
    beta_edge: float | np.ndarray = 0.04
    ghg_cap: float = 150_000.0

    def __post_init__(self):
        object.__setattr__(self, "alpha_manufacturer", float(self.alpha_manufacturer))
        object.__setattr__(self, "ghg_cap", float(self.ghg_cap))
        for name in ("alpha_center", "beta_manufacturer", "beta_edge"):
            value = getattr(self, name)
            if np.ndim(value) == 0:
                object.__setattr__(self, name, float(value))
            else:
                object.__setattr__(self, name, _frozen(value))
        if self.ghg_cap <= 0:
            raise ValueError(f"ghg_cap must be positive, got {self.ghg_cap}")
        for name in ("alpha_manufacturer", "alpha_center", "beta_manufacturer", "beta_edge"):
            if np.any(np.asarray(getattr(self, name)) < 0):
                raise ValueError(f"{name} must be nonnegative")

    @property
    def is_scalar(self) -> bool:
        return all(
            isinstance(getattr(self, k), float)
            for k in ("alpha_center", "beta_manufacturer", "beta_edge")
        )

    def expand(self, m: int, n: int) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
        """Return ``(alpha', alpha[m], beta'[m], beta[m, n])`` as float arrays."""
        try:
            alpha = np.broadcast_to(np.asarray(self.alpha_center, dtype=float), (m,))
            beta_man = np.broadcast_to(np.asarray(self.beta_manufacturer, dtype=float), (m,))
            beta = np.broadcast_to(np.asarray(self.beta_edge, dtype=float), (m, n))
        except ValueError as exc:
            raise ValueError(f"emission factors do not fit a {m}x{n} instance") from exc
        return self.alpha_manufacturer, alpha, beta_man, beta

    def with_cap(self, ghg_cap: float) -> "EmissionParams":
        return EmissionParams(
            self.alpha_manufacturer,
            self.alpha_center,
            self.beta_manufacturer,
            self.beta_edge,
            ghg_cap,
        )

    def __eq__(self, other):
        if not isinstance(other, EmissionParams):
            return NotImplemented
        return all(
            np.array_equal(np.asarray(getattr(self, k)), np.asarray(getattr(other, k)))
            for k in ("alpha_manufacturer", "alpha_center", "beta_manufacturer", "beta_edge", "ghg_cap")
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Solution:
    """A shipment plan: ``flow[i, j]`` units from center ``i`` to customer ``j``."""

    flow: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "flow", _frozen(self.flow, 2))

    @property
    def shape(self) -> tuple[int, int]:
        return self.flow.shape

    def __eq__(self, other):
        if not isinstance(other, Solution):
            return NotImplemented
        return np.array_equal(self.flow, other.flow)

    __hash__ = None


class Violation(NamedTuple):
    kind: str  # negative_value | capacity_shortfall | shape_mismatch
    location: tuple
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


# Demand/capacity sums may disagree by rounding when capacities were rescaled.
CAPACITY_RTOL = 1e-9


def validate_instance(instance: Instance) -> ValidationReport:
    """Collect every invariant violation of ``instance``.

    Locations are 1-based, matching how the data is usually written down.
    """
    out: list[Violation] = []
    m, n = instance.m, instance.n
    vectors = {
        "capacity": (instance.capacity, m),
        "opening_cost": (instance.opening_cost, m),
        "unit_cost": (instance.unit_cost, m),
        "demand": (instance.demand, n),
    }
    for name, (vec, size) in vectors.items():
        if vec.ndim != 1 or len(vec) != size:
            out.append(Violation("shape_mismatch", (name,), f"{name} has shape {vec.shape}"))
    for name in ("edge_fixed_cost", "edge_unit_cost"):
        mat = getattr(instance, name)
        if mat.shape != (m, n):
            out.append(
                Violation("shape_mismatch", (name,), f"{name} has shape {mat.shape}, expected {(m, n)}")
            )

    for name, (vec, _) in vectors.items():
        for (k,) in np.argwhere(~(vec >= 0)):
            out.append(
                Violation("negative_value", (name, int(k) + 1), f"{name}[{k + 1}] = {vec[k]!r}")
            )
    for name in ("edge_fixed_cost", "edge_unit_cost"):
        mat = getattr(instance, name)
        for i, j in np.argwhere(~(mat >= 0)):
            out.append(
                Violation(
                    "negative_value",
                    (name, int(i) + 1, int(j) + 1),
                    f"{name}[{i + 1},{j + 1}] = {mat[i, j]!r}",
                )
            )

    supply = math.fsum(instance.capacity)
    request = math.fsum(instance.demand)
    if supply < request - CAPACITY_RTOL * max(1.0, request):
        out.append(
            Violation(
                "capacity_shortfall",
                (),
                f"total capacity {supply:g} is below total demand {request:g}",
            )
        )
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# text format


class FormatError(ValueError):
    """Malformed instance or solution text; ``lineno`` is 1-based (0 = end of input)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        where = f"line {lineno}" if lineno else "end of input"
        super().__init__(f"{where}: {message}")


def format_number(x: float) -> str:
    """Shortest text that reads back to exactly ``x``; integral values lose the ``.0``."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _numbers(tokens: Sequence[str], lineno: int) -> list[float]:
    try:
        values = [float(t) for t in tokens]
    except ValueError:
        bad = next(t for t in tokens if not _is_float(t))
        raise FormatError(f"non-numeric token {bad!r}", lineno) from None
    if not all(math.isfinite(v) for v in values):
        raise FormatError("non-finite value", lineno)
    return values


def _is_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


class _Reader:
    def __init__(self, text: str):
        self._it = iter(_lines(text))
        self.lineno = 0

    def next(self, what: str) -> str:
        try:
            self.lineno, line = next(self._it)
        except StopIteration:
            raise FormatError(f"unexpected end of input, expected {what}") from None
        return line

    def keyed(self, key: str, count: int | None) -> list[float]:
        line = self.next(f"'{key}:'")
        head, sep, rest = line.partition(":")
        if not sep or head.strip() != key:
            raise FormatError(f"expected '{key}:', got {line!r}", self.lineno)
        values = _numbers(rest.split(), self.lineno)
        if count is not None and len(values) != count:
            raise FormatError(f"'{key}' needs {count} values, got {len(values)}", self.lineno)
        return values

    def matrix(self, key: str, rows: int, cols: int) -> list[list[float]]:
        self.keyed(key, 0)
        out = []
        for r in range(rows):
            line = self.next(f"row {r + 1} of '{key}'")
            values = _numbers(line.split(), self.lineno)
            if len(values) != cols:
                raise FormatError(f"'{key}' row {r + 1} needs {cols} values, got {len(values)}", self.lineno)
            out.append(values)
        return out

    def dims(self) -> tuple[int, int]:
        line = self.next("'m n'")
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise FormatError(f"expected two positive integers 'm n', got {line!r}", self.lineno)
        m, n = int(parts[0]), int(parts[1])
        if m < 1 or n < 1:
            raise FormatError("m and n must be positive", self.lineno)
        return m, n

    def end(self):
        try:
            lineno, line = next(self._it)
        except StopIteration:
            return
        raise FormatError(f"trailing content {line!r}", lineno)


def parse_instance(text: str) -> tuple[Instance, EmissionParams]:
    reader = _Reader(text)
    header = reader.next("header").split()
    if len(header) != 2 or header[0] != FORMAT_MAGIC:
        raise FormatError(f"expected header '{FORMAT_MAGIC} {FORMAT_VERSION}'", reader.lineno)
    if header[1] != str(FORMAT_VERSION):
        raise FormatError(f"unsupported format version {header[1]!r}", reader.lineno)
    m, n = reader.dims()
    capacity = reader.keyed("capacity", m)
    opening = reader.keyed("opening", m)
    unitcost = reader.keyed("unitcost", m)
    demand = reader.keyed("demand", n)
    fixed = reader.matrix("fixed", m, n)
    cost = reader.matrix("cost", m, n)
    alpha_man, alpha, beta_man, beta, cap = reader.keyed("emissions", 5)
    emissions_line = reader.lineno
    reader.end()
    instance = Instance(capacity, opening, unitcost, demand, fixed, cost)
    try:
        params = EmissionParams(alpha_man, alpha, beta_man, beta, cap)
    except ValueError as exc:
        raise FormatError(str(exc), emissions_line) from None
    return instance, params


def serialize_instance(instance: Instance, params: EmissionParams) -> str:
    if not params.is_scalar:
        raise ValueError("only scalar emission factors can be written to the file format")
    row = lambda values: " ".join(format_number(v) for v in values)  # noqa: E731
    lines = [
        f"{FORMAT_MAGIC} {FORMAT_VERSION}",
        f"{instance.m} {instance.n}",
        f"capacity: {row(instance.capacity)}",
        f"opening: {row(instance.opening_cost)}",
        f"unitcost: {row(instance.unit_cost)}",
        f"demand: {row(instance.demand)}",
        "fixed:",
        *(row(r) for r in instance.edge_fixed_cost),
        "cost:",
        *(row(r) for r in instance.edge_unit_cost),
        "emissions: "
        + row(
            [
                params.alpha_manufacturer,
                params.alpha_center,
                params.beta_manufacturer,
                params.beta_edge,
                params.ghg_cap,
            ]
        ),
    ]
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> Solution:
    reader = _Reader(text)
    m, n = reader.dims()
    rows = []
    for r in range(m):
        line = reader.next(f"flow row {r + 1}")
        values = _numbers(line.split(), reader.lineno)
        if len(values) != n:
            raise FormatError(f"flow row {r + 1} needs {n} values, got {len(values)}", reader.lineno)
        rows.append(values)
    reader.end()
    return Solution(rows)


def serialize_solution(solution: Solution) -> str:
    m, n = solution.shape
    lines = [f"{m} {n}"]
    lines += [" ".join(format_number(v) for v in row) for row in solution.flow]
    return "\n".join(lines) + "\n"
