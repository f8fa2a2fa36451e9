"""Quantitative bipolar argumentation graphs and their strength semantics.

A graph holds arguments with base scores in [0, 1] plus disjoint attack and
support relations.  ``evaluate`` propagates strengths bottom-up: a node's
attacker strengths and supporter strengths are each folded with the
probabilistic-sum style aggregator, then combined with the base score.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import CyclicGraphError, DomainError

# Strengths are clamped after each combination step; drift beyond this would
# indicate a bug rather than rounding.
_CLAMP_SLACK = 1e-12

StrengthMap = dict[str, float]


@dataclass(frozen=True)
class Argument:
    """One node of the graph; ``text`` may be empty for synthetic variants."""

    id: str
    text: str = ""


@dataclass
class Qbaf:
    """Arguments, attack/support edge sets and a total base-score map.

    Edges are (source, target) pairs of argument ids.  Use ``validate`` to
    get a full diagnostic list; ``evaluate`` assumes a valid, acyclic graph.
    """

    arguments: set[Argument] = field(default_factory=set)
    attacks: set[tuple[str, str]] = field(default_factory=set)
    supports: set[tuple[str, str]] = field(default_factory=set)
    base_scores: dict[str, float] = field(default_factory=dict)

    def argument_ids(self) -> set[str]:
        return {a.id for a in self.arguments}

    def attackers_of(self, target: str) -> list[str]:
        return sorted(src for src, dst in self.attacks if dst == target)

    def supporters_of(self, target: str) -> list[str]:
        return sorted(src for src, dst in self.supports if dst == target)


def _check_unit(value: float, what: str) -> None:
    if not (0.0 <= value <= 1.0):
        raise DomainError(f"{what} must lie in [0, 1], got {value!r}")


def aggregate(children_strengths: Sequence[float]) -> float:
    """Fold child strengths into one value: 0 for no children, else
    1 - prod(1 - v).  Order-independent and monotone in every argument."""
    product = 1.0
    for v in children_strengths:
        _check_unit(v, "child strength")
        product *= 1.0 - v
    if not children_strengths:
        return 0.0
    return min(1.0, max(0.0, 1.0 - product))


def combine(base: float, att: float, sup: float) -> float:
    """Move ``base`` toward 0 or 1 by the imbalance between the aggregated
    attack value and the aggregated support value."""
    _check_unit(base, "base score")
    _check_unit(att, "aggregated attack")
    _check_unit(sup, "aggregated support")
    if att == sup:
        return base
    if att > sup:
        result = base - base * (att - sup)
    else:
        result = base + (1.0 - base) * (sup - att)
    return min(1.0, max(0.0, result))


def _find_cycle(ids: Iterable[str], children: Mapping[str, list[str]]) -> list[str]:
    """Return one directed cycle (as a list of ids) in the child relation."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {i: WHITE for i in ids}
    stack: list[str] = []

    def dfs(node: str) -> list[str] | None:
        color[node] = GRAY
        stack.append(node)
        for child in children.get(node, ()):
            if color[child] == GRAY:
                return stack[stack.index(child):] + [child]
            if color[child] == WHITE:
                found = dfs(child)
                if found:
                    return found
        stack.pop()
        color[node] = BLACK
        return None

    for node in sorted(color):
        if color[node] == WHITE:
            found = dfs(node)
            if found:
                return found
    raise AssertionError("no cycle found in a graph reported cyclic")


def evaluate(qbaf: Qbaf) -> StrengthMap:
    """Compute every argument's strength in dependency order.

    Leaves get their base score; inner nodes combine their base score with
    the aggregated strengths of their attackers and supporters.  Raises
    ``CyclicGraphError`` (naming one cycle) if the edge relation is cyclic.
    """
    ids = qbaf.argument_ids()
    children: dict[str, list[str]] = {i: [] for i in ids}
    indegree_children: dict[str, int] = {i: 0 for i in ids}
    for src, dst in sorted(qbaf.attacks | qbaf.supports):
        # edge src -> dst means dst depends on src
        children[dst].append(src)
        indegree_children[dst] += 1

    # Kahn's algorithm over the dependency relation (children before parents).
    ready = sorted(i for i in ids if indegree_children[i] == 0)
    dependants: dict[str, list[str]] = {i: [] for i in ids}
    for dst, srcs in children.items():
        for src in srcs:
            dependants[src].append(dst)

    order: list[str] = []
    while ready:
        node = ready.pop()
        order.append(node)
        for parent in dependants[node]:
            indegree_children[parent] -= 1
            if indegree_children[parent] == 0:
                ready.append(parent)
    if len(order) != len(ids):
        raise CyclicGraphError(_find_cycle(ids, {i: children[i] for i in ids}))

    strengths: StrengthMap = {}
    for node in order:
        att = aggregate([strengths[a] for a in qbaf.attackers_of(node)])
        sup = aggregate([strengths[s] for s in qbaf.supporters_of(node)])
        strengths[node] = combine(qbaf.base_scores[node], att, sup)
    return strengths


def validate(qbaf: Qbaf) -> list[str]:
    """Return a list of invariant violations; empty means the graph is valid."""
    violations: list[str] = []
    ids: set[str] = set()
    for arg in qbaf.arguments:
        if not arg.id or any(ord(c) < 32 for c in arg.id):
            violations.append(f"argument id {arg.id!r} is empty or contains control characters")
        if arg.id in ids:
            violations.append(f"duplicate argument id {arg.id!r}")
        ids.add(arg.id)

    for name, edges in (("attack", qbaf.attacks), ("support", qbaf.supports)):
        for src, dst in sorted(edges):
            for endpoint in (src, dst):
                if endpoint not in ids:
                    violations.append(f"{name} edge ({src!r}, {dst!r}) references unknown argument {endpoint!r}")
            if src == dst:
                violations.append(f"self-{name} on {src!r}")
    for src, dst in sorted(qbaf.attacks & qbaf.supports):
        violations.append(f"edge ({src!r}, {dst!r}) is both an attack and a support")

    for i in sorted(ids):
        if i not in qbaf.base_scores:
            violations.append(f"no base score for argument {i!r}")
        elif not (0.0 <= qbaf.base_scores[i] <= 1.0):
            violations.append(f"base score {qbaf.base_scores[i]!r} of {i!r} outside [0, 1]")
    for i in sorted(set(qbaf.base_scores) - ids):
        violations.append(f"base score for unknown argument {i!r}")

    if not violations:
        try:
            evaluate(qbaf)
        except CyclicGraphError as exc:
            violations.append(f"edge relation is cyclic: {' -> '.join(exc.cycle)}")
    return violations
