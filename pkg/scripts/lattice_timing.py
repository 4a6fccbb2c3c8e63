#!/usr/bin/env python3
"""Measure the output-sensitivity trend on Boolean lattices.

Enumerates the full power set 2^[k] (identity closure) for a range of k and
prints wall time, node and arc counts, and time per Hasse arc.  The time
per arc should stay roughly constant as k grows; that is the point of the
breadth-first closure enumeration.
"""

from __future__ import annotations

import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from tightspan import ClosureSystem, GroundSet, ganter_hasse  # noqa: E402


def measure(k: int, repeats: int = 3) -> tuple[float, int, int]:
    system = ClosureSystem(GroundSet(k), lambda a: a)
    best = float("inf")
    diagram = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        diagram = ganter_hasse(system)
        best = min(best, time.perf_counter() - t0)
    return best, len(diagram.nodes), len(diagram.arcs)


def main() -> int:
    print(f"{'k':>3} {'nodes':>8} {'arcs':>9} {'time[s]':>9} {'us/arc':>8}")
    prev = None
    for k in range(8, 15):
        t, nodes, arcs = measure(k)
        ratio = "" if prev is None else f"  t-ratio {t / prev:.2f}"
        prev = t
        print(f"{k:>3} {nodes:>8} {arcs:>9} {t:>9.4f} {1e6 * t / arcs:>8.2f}{ratio}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
