"""Compare the closed-form segment rotation with the matrix-square-root oracle.

Samples pairs at a set of shell radii so the behaviour near the Bloch sphere
is visible.

    python3 scripts/validate_oracle.py --pairs 20000
"""

import argparse

import numpy as np

from uhlmann.mat2q import mat_to_quat, quat_distance
from uhlmann.transport import thomas_rotation, thomas_rotation_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'1 - r':>8} {'max dist':>12} {'mean dist':>12}")
    for gap in (0.5, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8):
        d = rng.normal(size=(args.pairs, 2, 3))
        d /= np.linalg.norm(d, axis=-1, keepdims=True)
        d *= 1 - gap
        u, v = d[:, 0], d[:, 1]
        dist = quat_distance(mat_to_quat(thomas_rotation(u, v)), mat_to_quat(thomas_rotation_oracle(u, v)))
        print(f"{gap:8.0e} {dist.max():12.3e} {dist.mean():12.3e}")


if __name__ == "__main__":
    main()
