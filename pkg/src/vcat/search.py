"""Backtracking search over finite assignments with scoped constraints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterator, Sequence


@dataclass(frozen=True)
class Constraint:
    """A predicate that reads only the variables in ``scope``."""

    scope: frozenset
    holds: Callable[[dict], bool]


class BudgetExceeded(RuntimeError):
    """The search tried more candidate values than allowed."""


def backtrack(variables: Sequence[Hashable], domains: dict, constraints: Sequence[Constraint],
              fixed: dict | None = None, budget: int | None = None) -> Iterator[dict]:
    """Yield every total assignment satisfying all constraints.

    Each constraint is tested once all variables in its scope are assigned,
    so partial assignments are pruned as early as the scopes allow.
    ``fixed`` pre-assigns some variables.  ``budget`` caps the number of
    candidate values tried across the whole search.
    """
    fixed = dict(fixed or {})
    order = [v for v in variables if v not in fixed]
    position = {v: k for k, v in enumerate(order)}
    due: list[list[Constraint]] = [[] for _ in order]
    upfront = []
    for c in constraints:
        free = [position[v] for v in c.scope if v in position]
        if free:
            due[max(free)].append(c)
        else:
            upfront.append(c)
    if not all(c.holds(fixed) for c in upfront):
        return
    assignment = dict(fixed)
    tried = 0

    def go(k: int) -> Iterator[dict]:
        nonlocal tried
        if k == len(order):
            yield dict(assignment)
            return
        var = order[k]
        for value in domains[var]:
            tried += 1
            if budget is not None and tried > budget:
                raise BudgetExceeded(f"search tried more than {budget} candidates")
            assignment[var] = value
            if all(c.holds(assignment) for c in due[k]):
                yield from go(k + 1)
        assignment.pop(var, None)

    yield from go(0)


def count(iterable: Iterator[Any]) -> int:
    return sum(1 for _ in iterable)
