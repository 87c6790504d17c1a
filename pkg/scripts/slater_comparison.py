"""Tabulate the fixed-radius Uhlmann phase against the published and interferometric variants.

    python3 scripts/slater_comparison.py --steps 9
"""

import argparse

import numpy as np

from uhlmann.triangle import (
    fixed_radius_phase,
    interferometric_phase,
    phase_ratio,
    slater_tan,
    solid_angle_mu,
    solid_angle_phase,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=9, help="number of radii in (0, 1)")
    args = ap.parse_args()

    n1, n2, n3 = np.eye(3)
    mu = solid_angle_mu(n1, n2, n3)
    _, omega = solid_angle_phase(n1, n2, n3)
    print(f"octant triangle, mu = {mu:g}, Omega = {omega:.6f}")
    print(f"{'r':>6} {'tan_uhlmann':>14} {'tan_slater':>14} {'tan_interf':>14} {'ratio':>10} {'slater_rel_err':>15}")
    radii = np.append(np.linspace(0, 1, args.steps + 2)[1:-1], [np.sqrt(2 / 3), 1.0])
    for r in radii:
        t_u = np.tan(fixed_radius_phase(n1, n2, n3, r))
        t_s = slater_tan(n1, n2, n3, r)
        t_i = np.tan(interferometric_phase(omega, r))
        rel = abs(t_s - t_u) / abs(t_u)
        print(f"{r:6.4f} {t_u:14.8f} {t_s:14.8f} {t_i:14.8f} {phase_ratio(mu, r):10.6f} {rel:15.3e}")


if __name__ == "__main__":
    main()
