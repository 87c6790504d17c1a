"""Convergence of the discretized transports toward the closed-form holonomy.

Prints the Wilson-loop deviation for the octant triangle at a chosen radius,
with the observed order between successive refinements, and the deviation of
refined geodesic transport from the two-point segment rotation.

    python3 scripts/convergence.py --radius 0.5 --max-steps 4096
"""

import argparse

import numpy as np

from uhlmann.hopf import wilson_loop
from uhlmann.mat2q import mat_to_quat, quat_distance
from uhlmann.transport import refined_geodesic_holonomy
from uhlmann.triangle import triangle_rotation


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=float, default=0.5)
    ap.add_argument("--max-steps", type=int, default=4096)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    tri = args.radius * np.eye(3)
    target = mat_to_quat(triangle_rotation(*tri).rotation)
    print(f"Wilson loop, octant triangle at r = {args.radius}")
    print(f"{'n_steps':>8} {'deviation':>12} {'order':>6}")
    prev = None
    n = 16
    while n <= args.max_steps:
        dev = float(quat_distance(wilson_loop(tri, n), target))
        order = "" if prev is None else f"{np.log2(prev / dev):6.2f}"
        print(f"{n:8d} {dev:12.3e} {order:>6}")
        prev, n = dev, 2 * n

    rng = np.random.default_rng(args.seed)
    u, v = rng.uniform(-0.55, 0.55, size=(2, 3))
    print(f"\nrefined geodesic transport, u = {np.round(u, 3)}, v = {np.round(v, 3)}")
    print(f"{'n_subdiv':>8} {'deviation':>12}")
    n = 1
    while n <= args.max_steps:
        print(f"{n:8d} {refined_geodesic_holonomy(u, v, n).deviation:12.3e}")
        n *= 4


if __name__ == "__main__":
    main()
