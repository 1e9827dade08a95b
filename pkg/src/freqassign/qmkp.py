"""Quadratic multiple knapsack solving with knapsack-dependent profits.

Items carry weights, knapsacks carry capacities, and profits depend on
which knapsack receives an item: ``p[u, i]`` for item i alone and a
symmetric joint profit ``p[u, i, j]`` when items i and j share knapsack u.
Each unordered pair inside a knapsack counts once in the objective.  Joint
profits may be negative; nothing here assumes otherwise.

The greedy constructive solver repeatedly assigns the (item, knapsack)
combination of highest value density that still fits, then refreshes the
densities of the remaining items against the knapsack contents.  An
exhaustive enumerator serves as the optimality oracle on small instances,
and four baseline schemes cover the frequency-assignment instantiation
(unit weights, capacity two).
"""

from __future__ import annotations

import itertools
import json
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .profits import ProfitTable


@dataclass(frozen=True)
class Instance:
    """A problem instance with knapsack-dependent profits."""

    weights: np.ndarray  # (N,) nonnegative
    capacities: np.ndarray  # (K,) nonnegative
    profits: np.ndarray  # (K, N)
    joint_profits: np.ndarray  # (K, N, N) symmetric, zero diagonal

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "capacities", np.asarray(self.capacities, dtype=float))
        object.__setattr__(self, "profits", np.asarray(self.profits, dtype=float))
        object.__setattr__(
            self, "joint_profits", np.asarray(self.joint_profits, dtype=float)
        )
        n, k = self.n_items, self.n_knapsacks
        if np.any(self.weights < 0) or np.any(self.capacities < 0):
            raise ValueError("weights and capacities must be nonnegative")
        if self.profits.shape != (k, n):
            raise ValueError("profits must have shape (n_knapsacks, n_items)")
        if self.joint_profits.shape != (k, n, n):
            raise ValueError("joint profits must have shape (n_knapsacks, n_items, n_items)")
        if not np.allclose(self.joint_profits, self.joint_profits.transpose(0, 2, 1)):
            raise ValueError("joint profits must be symmetric in the item indices")

    @property
    def n_items(self) -> int:
        return self.weights.shape[0]

    @property
    def n_knapsacks(self) -> int:
        return self.capacities.shape[0]

    @classmethod
    def from_profit_table(cls, table: ProfitTable) -> "Instance":
        """Frequency instantiation: unit weights, capacity two per user."""
        joint = np.array(table.pair)
        for u in range(table.n_users):
            np.fill_diagonal(joint[u], 0.0)
        return cls(
            weights=np.ones(table.n_frequencies),
            capacities=np.full(table.n_users, 2.0),
            profits=np.array(table.single),
            joint_profits=joint,
        )

    def to_dict(self) -> dict:
        return {
            "n_items": self.n_items,
            "n_knapsacks": self.n_knapsacks,
            "weights": self.weights.tolist(),
            "capacities": self.capacities.tolist(),
            "profits": self.profits.tolist(),
            "joint_profits": self.joint_profits.tolist(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        return cls(
            weights=np.asarray(data["weights"], dtype=float),
            capacities=np.asarray(data["capacities"], dtype=float),
            profits=np.asarray(data["profits"], dtype=float),
            joint_profits=np.asarray(data["joint_profits"], dtype=float),
        )

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Assignment:
    """Disjoint allocation of items to knapsacks."""

    knapsacks: tuple[frozenset[int], ...]

    @classmethod
    def empty(cls, n_knapsacks: int) -> "Assignment":
        return cls(tuple(frozenset() for _ in range(n_knapsacks)))

    @classmethod
    def from_lists(cls, lists) -> "Assignment":
        return cls(tuple(frozenset(int(i) for i in items) for items in lists))

    def as_lists(self) -> list[list[int]]:
        return [sorted(items) for items in self.knapsacks]

    @property
    def n_knapsacks(self) -> int:
        return len(self.knapsacks)

    def assigned_items(self) -> set[int]:
        out: set[int] = set()
        for items in self.knapsacks:
            out |= items
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps({"knapsacks": self.as_lists()}, **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Assignment":
        return cls.from_lists(json.loads(text)["knapsacks"])


def _check_indices(instance: Instance, assignment: Assignment) -> None:
    if assignment.n_knapsacks != instance.n_knapsacks:
        raise ValueError("assignment does not match the number of knapsacks")
    for items in assignment.knapsacks:
        for i in items:
            if not 0 <= i < instance.n_items:
                raise ValueError(f"item index {i} out of range")


def feasible(instance: Instance, assignment: Assignment) -> bool:
    """True iff knapsacks are pairwise disjoint and capacities hold."""
    _check_indices(instance, assignment)
    seen: set[int] = set()
    for u, items in enumerate(assignment.knapsacks):
        if items & seen:
            return False
        seen |= items
        if sum(instance.weights[i] for i in items) > instance.capacities[u]:
            return False
    return True


def knapsack_profit(instance: Instance, u: int, items) -> float:
    """Profit contributed by knapsack u holding the given items."""
    items = sorted(items)
    total = sum(instance.profits[u, i] for i in items)
    for a, b in itertools.combinations(items, 2):
        total += instance.joint_profits[u, a, b]
    return float(total)


def objective(instance: Instance, assignment: Assignment) -> float:
    """Overall profit of a feasible assignment; each pair counted once."""
    if not feasible(instance, assignment):
        raise ValueError("assignment is infeasible")
    return sum(
        knapsack_profit(instance, u, items)
        for u, items in enumerate(assignment.knapsacks)
    )


def value_density(instance: Instance, u: int, i: int, context) -> float:
    """Profit per unit weight of adding item i to knapsack u.

    ``context`` is the set of items considered already present:

        vd_u(i, S) = (p[u, i] + sum_{j in S, j != i} jp[u, i, j]) / w_i
    """
    w = instance.weights[i]
    if w == 0:
        raise ValueError("value density undefined for zero-weight items")
    total = instance.profits[u, i]
    for j in context:
        if j != i:
            total += instance.joint_profits[u, i, j]
    return float(total / w)


def value_density_matrix(instance: Instance, context) -> np.ndarray:
    """(N, K) matrix of value densities against a common context set."""
    ctx = [j for j in context]
    v = np.empty((instance.n_items, instance.n_knapsacks))
    for i in range(instance.n_items):
        for u in range(instance.n_knapsacks):
            v[i, u] = value_density(instance, u, i, ctx)
    return v


GreedyStep = namedtuple("GreedyStep", ["item", "knapsack", "density"])


def greedy_construct(
    instance: Instance,
    initial: Assignment | None = None,
    return_trace: bool = False,
):
    """Constructive value-density procedure.

    Starting from a feasible (possibly empty) initial assignment, the
    densities of all unassigned items are computed against the full
    unassigned set; then, repeatedly, the highest-density (item, knapsack)
    combination that still fits is assigned and the densities of the
    remaining items are refreshed against each knapsack's current contents.
    Ties break towards the lower item index, then the lower knapsack index.
    Stops when no unassigned item fits anywhere.

    With ``return_trace`` the assigned (item, knapsack, density) steps are
    returned alongside the final assignment.
    """
    if initial is None:
        initial = Assignment.empty(instance.n_knapsacks)
    if not feasible(instance, initial):
        raise ValueError("initial assignment is infeasible")

    contents = [set(items) for items in initial.knapsacks]
    remaining = instance.capacities - np.array(
        [sum(instance.weights[i] for i in items) for items in contents]
    )
    unassigned = set(range(instance.n_items)) - initial.assigned_items()
    density = np.full((instance.n_items, instance.n_knapsacks), -np.inf)
    for i in unassigned:
        for u in range(instance.n_knapsacks):
            density[i, u] = value_density(instance, u, i, unassigned)

    trace: list[GreedyStep] = []
    while unassigned:
        ranked = sorted(
            ((density[i, u], i, u) for i in unassigned for u in range(instance.n_knapsacks)),
            key=lambda c: (-c[0], c[1], c[2]),
        )
        placed = None
        for d, i, u in ranked:
            if instance.weights[i] <= remaining[u]:
                placed = (i, u, d)
                break
        if placed is None:
            break
        i, u, d = placed
        contents[u].add(i)
        unassigned.remove(i)
        remaining[u] -= instance.weights[i]
        trace.append(GreedyStep(i, u, d))
        for j in unassigned:
            for v in range(instance.n_knapsacks):
                density[j, v] = value_density(instance, v, j, contents[v])

    result = Assignment(tuple(frozenset(s) for s in contents))
    if return_trace:
        return result, trace
    return result


EXHAUSTIVE_LIMIT = 10**7


def exhaustive_solve(instance: Instance) -> Assignment:
    """Optimal assignment by full enumeration; small instances only.

    Every item independently goes to one of the K knapsacks or stays out,
    so (K+1)**N allocations are scanned.  Ties resolve to the first
    optimum in lexicographic order of the per-item codes (0 = unassigned),
    making the result deterministic.
    """
    n, k = instance.n_items, instance.n_knapsacks
    if (k + 1) ** n > EXHAUSTIVE_LIMIT:
        raise ValueError("instance too large for exhaustive enumeration")
    best_code = None
    best_value = -np.inf
    for code in itertools.product(range(k + 1), repeat=n):
        loads = np.zeros(k)
        ok = True
        for i, c in enumerate(code):
            if c:
                loads[c - 1] += instance.weights[i]
                if loads[c - 1] > instance.capacities[c - 1]:
                    ok = False
                    break
        if not ok:
            continue
        value = 0.0
        for u in range(k):
            items = [i for i, c in enumerate(code) if c == u + 1]
            if items:
                value += knapsack_profit(instance, u, items)
        if value > best_value:
            best_value = value
            best_code = code
    lists: list[list[int]] = [[] for _ in range(k)]
    for i, c in enumerate(best_code):
        if c:
            lists[c - 1].append(i)
    return Assignment.from_lists(lists)


def _require_frequency_shape(instance: Instance) -> None:
    if not (np.all(instance.weights == 1.0) and np.all(instance.capacities == 2.0)):
        raise ValueError("scheme expects unit weights and capacity 2 per knapsack")


def assign_random(instance: Instance, seed) -> Assignment:
    """Uniform random frequency assignment, two items per knapsack.

    Samples min(2K, N) distinct items and deals them out one per knapsack
    per round, so with fewer items than slots every knapsack still gets at
    most one item ahead of any second round.  ``seed`` is anything
    accepted by numpy's default_rng.
    """
    _require_frequency_shape(instance)
    rng = np.random.default_rng(seed)
    n, k = instance.n_items, instance.n_knapsacks
    picks = rng.choice(n, size=min(2 * k, n), replace=False)
    lists: list[list[int]] = [[] for _ in range(k)]
    for pos, item in enumerate(picks):
        lists[pos % k].append(int(item))
    return Assignment.from_lists(lists)


def assign_rr_simple(instance: Instance) -> Assignment:
    """Round robin over users: item u first, then item u + K.

    Items are expected in ascending frequency order.  Second-round items
    beyond the item count are dropped.
    """
    _require_frequency_shape(instance)
    n, k = instance.n_items, instance.n_knapsacks
    if n < k:
        raise ValueError("round robin needs at least one item per knapsack")
    lists = [[u] for u in range(k)]
    for u in range(k):
        if u + k < n:
            lists[u].append(u + k)
    return Assignment.from_lists(lists)


def assign_rr_block(instance: Instance) -> Assignment:
    """Blockwise round robin: user u takes the adjacent items 2u, 2u + 1."""
    _require_frequency_shape(instance)
    n, k = instance.n_items, instance.n_knapsacks
    lists = [[i for i in (2 * u, 2 * u + 1) if i < n] for u in range(k)]
    return Assignment.from_lists(lists)


def assign_rr_profits(instance: Instance) -> Assignment:
    """Profit-aware round robin.

    Users take turns over two rounds; on each turn a user grabs the
    unassigned item with the highest marginal value density given what the
    user already holds.  Ties break towards the lower item index.
    """
    _require_frequency_shape(instance)
    n, k = instance.n_items, instance.n_knapsacks
    lists: list[list[int]] = [[] for _ in range(k)]
    taken: set[int] = set()
    for _ in range(2):
        for u in range(k):
            free = [i for i in range(n) if i not in taken]
            if not free:
                break
            best = max(free, key=lambda i: (value_density(instance, u, i, lists[u]), -i))
            lists[u].append(best)
            taken.add(best)
    return Assignment.from_lists(lists)


def per_knapsack_profits(instance: Instance, assignment: Assignment) -> list[float]:
    """Profit contribution of each knapsack under a feasible assignment."""
    if not feasible(instance, assignment):
        raise ValueError("assignment is infeasible")
    return [
        knapsack_profit(instance, u, items)
        for u, items in enumerate(assignment.knapsacks)
    ]
