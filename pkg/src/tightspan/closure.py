"""Finite closure systems and output-sensitive Hasse diagram enumeration.

Subsets of a ground set {0, ..., n-1} are encoded as Python ints used as
bit vectors: bit i is set iff element i belongs to the subset.  This gives
O(1) canonical encodings, hashing and subset tests, which is what keeps
the enumeration output-sensitive.

The central routine is :func:`ganter_hasse`, a breadth-first variant of
Ganter's 1984 closure enumeration: every closed set is pushed to the queue
exactly once, so the total work is linear in the number of covering pairs
(up to the cost of the closure operator itself).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable


class NodeCapExceeded(RuntimeError):
    """Enumeration would exceed the configured node cap."""

    def __init__(self, cap: int, partial_count: int):
        super().__init__(
            f"closed-set enumeration exceeded node cap {cap} "
            f"({partial_count} closed sets found before aborting)"
        )
        self.cap = cap
        self.partial_count = partial_count


@dataclass(frozen=True)
class GroundSet:
    """Finite ground set with elements 0..size-1 and optional labels."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("ground set must contain at least one element")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("labels must match the ground set size")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be pairwise distinct")

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def mask(self, elements) -> int:
        m = 0
        for e in elements:
            if not 0 <= e < self.size:
                raise ValueError(f"element {e} outside ground set of size {self.size}")
            m |= 1 << e
        return m

    def indices(self, mask: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if mask >> i & 1)

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def set_label(self, mask: int) -> str:
        return "{" + ",".join(self.label_of(i) for i in self.indices(mask)) + "}"


class ClosureSystem:
    """A ground set together with a closure operator on its subsets.

    The operator must be extensive, monotone and idempotent.  That is the
    caller's responsibility; it is spot-checked by the test suite only.
    ClosureSystem instances are immutable and safe to share between threads.
    """

    def __init__(self, ground: GroundSet, close_fn: Callable[[int], int]):
        self.ground = ground
        self._close_fn = close_fn

    def close(self, subset: int) -> int:
        return self._close_fn(subset)


@dataclass
class HasseDiagram:
    """Covering-relation digraph of the closed sets, arcs directed upward.

    ``nodes`` holds each closed set exactly once, in discovery (BFS) order;
    ``index`` maps the canonical bit-vector encoding back to the node index.
    ``enqueue_count`` and ``closure_calls`` are instrumentation counters for
    the output-sensitivity checks.
    """

    ground: GroundSet
    nodes: list[int] = field(default_factory=list)
    arcs: list[tuple[int, int]] = field(default_factory=list)
    index: dict[int, int] = field(default_factory=dict)
    enqueue_count: int = 0
    closure_calls: int = 0

    def __len__(self) -> int:
        return len(self.nodes)

    def node_index(self, mask: int) -> int | None:
        return self.index.get(mask)

    def heights(self) -> list[int]:
        """Longest-path height of every node above the root.

        Node discovery order is not topological in general, so nodes are
        processed by cardinality (a subset always has fewer elements).
        """
        h = [0] * len(self.nodes)
        out: dict[int, list[int]] = {}
        for a, b in self.arcs:
            out.setdefault(a, []).append(b)
        for i in sorted(range(len(self.nodes)), key=lambda j: self.nodes[j].bit_count()):
            for j in out.get(i, ()):
                if h[i] + 1 > h[j]:
                    h[j] = h[i] + 1
        return h

    def to_json(self) -> str:
        payload = {
            "nodes": [list(self.ground.indices(m)) for m in self.nodes],
            "arcs": [list(a) for a in self.arcs],
        }
        return json.dumps(payload, sort_keys=True)

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i, m in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{self.ground.set_label(m)}"];')
        for a, b in self.arcs:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def ganter_hasse(
    system: ClosureSystem,
    skip_minimality: bool = False,
    node_cap: int = 10_000_000,
) -> HasseDiagram:
    """Enumerate all closed sets and their covering arcs.

    Breadth-first over a FIFO queue seeded with close(empty set).  For a
    dequeued closed set N, the candidate closures cl(N + {i}) are formed for
    i outside N in increasing index order; duplicates are merged by their
    encoding.  The inclusion-minimal candidates are exactly the covers of N.
    ``skip_minimality`` drops the minimality filter; that is only sound for
    operators with the exchange property (matroids), where every candidate
    is automatically a cover.

    Raises NodeCapExceeded once more than ``node_cap`` closed sets appear.
    """
    ground = system.ground
    n = ground.size
    closure_calls = 0

    root = system.close(0)
    closure_calls += 1
    nodes = [root]
    index = {root: 0}
    arcs: list[tuple[int, int]] = []
    queue: deque[int] = deque([0])
    enqueued = 1

    while queue:
        ni = queue.popleft()
        nmask = nodes[ni]
        candidates: list[int] = []
        seen: set[int] = set()
        for i in range(n):
            if nmask >> i & 1:
                continue
            c = system.close(nmask | (1 << i))
            closure_calls += 1
            if c not in seen:
                seen.add(c)
                candidates.append(c)
        if skip_minimality:
            minimal = candidates
        else:
            minimal = [
                c
                for c in candidates
                if not any(d != c and d & c == d for d in candidates)
            ]
        for c in minimal:
            ci = index.get(c)
            if ci is None:
                if len(nodes) >= node_cap:
                    raise NodeCapExceeded(node_cap, len(nodes))
                ci = len(nodes)
                nodes.append(c)
                index[c] = ci
                queue.append(ci)
                enqueued += 1
            arcs.append((ni, ci))

    return HasseDiagram(
        ground=ground,
        nodes=nodes,
        arcs=arcs,
        index=index,
        enqueue_count=enqueued,
        closure_calls=closure_calls,
    )


def restrict_to_lower_set(
    system: ClosureSystem, keep: Callable[[int], bool]
) -> ClosureSystem:
    """Restrict a closure system to a downward-closed family of closed sets.

    The new operator maps A to cl(A) whenever keep(cl(A)) holds and to the
    full ground set otherwise.  ``keep`` must be downward closed on closed
    sets; this is not verified here.
    """
    full = system.ground.full_mask

    def close(a: int) -> int:
        c = system.close(a)
        return c if keep(c) else full

    return ClosureSystem(system.ground, close)


def poset_statistics(diagram: HasseDiagram, rank_of: Callable[[int], int]) -> list[int]:
    """Count nodes per rank value, as a list indexed by rank 0..max."""
    if not diagram.nodes:
        return []
    ranks = [rank_of(m) for m in diagram.nodes]
    counts = [0] * (max(ranks) + 1)
    for r in ranks:
        if r < 0:
            raise ValueError("rank function must be nonnegative")
        counts[r] += 1
    return counts
