#!/usr/bin/env python3
"""
Acceptance Check

Reproduces the reference orbit sizes, predictor values and cyclic sieving
numbers and prints a pass/fail dashboard.
"""

import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from datetime import datetime

from toric_billiards.affine_lift import affine_from_window, nu
from toric_billiards.constants import EdgeMaterial
from toric_billiards.dynamics import (
    State,
    fixed_point_count,
    orbit_decomposition,
    orbit_size,
)
from toric_billiards.graph_core import BilliardsGraph, Labeling
from toric_billiards.predictors import cycle_invariants, cycle_orbit_size
from toric_billiards.sieving import csp_polynomial, gamma_count, verify_csp

REFLECT = EdgeMaterial.REFLECT
REFRACT = EdgeMaterial.REFRACT


class AcceptanceCheck:
    """Reference values dashboard"""

    def __init__(self):
        self.failures = []

    def print_header(self, title):
        """Print formatted section header"""
        print(f"\n{'=' * 60}")
        print(f"{title}")
        print(f"{'=' * 60}\n")

    def check_value(self, name, actual, expected):
        """Record and print one comparison"""
        ok = actual == expected
        symbol = "✓" if ok else "✗"
        print(f"{symbol} {name:.<45} {'OK' if ok else 'FAIL'}")
        if not ok:
            print(f"  expected {expected!r}, got {actual!r}")
            self.failures.append(name)
        return ok

    def check_orbits(self):
        self.print_header("Orbit sizes")

        path = BilliardsGraph.from_edges(
            3, [(1, 2, REFLECT), (2, 3, REFRACT)]
        )
        start = State.of([1, 2, 3])
        self.check_value("Mixed path n=3", orbit_size(path, start), 18)
        self.check_value(
            "Mixed path n=3 decomposition",
            orbit_decomposition(path).orbits,
            ((18, 2),),
        )
        self.check_value(
            "Edgeless n=3",
            orbit_decomposition(BilliardsGraph.empty(3)).orbits,
            ((6, 6),),
        )
        self.check_value(
            "Refraction path n=4",
            orbit_size(
                BilliardsGraph.path([REFRACT] * 3), State.of([1, 2, 3, 4])
            ),
            12,
        )

    def check_cycles(self):
        self.print_header("Cycle predictor")

        g = BilliardsGraph.cycle(
            [REFRACT, REFLECT, REFLECT, REFRACT, REFLECT, REFRACT, REFRACT]
        )
        sigma = Labeling((5, 6, 4, 2, 3, 7, 1))
        inv = cycle_invariants(g, sigma)
        self.check_value("Gap sequence", inv.a, (4, 1, 4, 4, 1, 4))
        self.check_value("p, m, mu", (inv.p, inv.m, inv.mu), (3, 3, 4))
        self.check_value("Predicted size", cycle_orbit_size(g, sigma), 441)
        self.check_value(
            "Brute-force size", orbit_size(g, State(sigma, 1, 1)), 441
        )

    def check_lift(self):
        self.print_header("Affine lift")

        u = affine_from_window([5, 7, 1, 4, -2])
        self.check_value("nu", nu(u, 2, -1).to_list(), [-1, -1, -1, -1, 4])

    def check_sieving(self, quick):
        self.print_header("Cyclic sieving")

        self.check_value(
            "F(q) for n=4", csp_polynomial(4).to_list(), [96, 0, 0, 96]
        )
        self.check_value("Gamma_1 in S_5", gamma_count(5, 1), 20)
        self.check_value("CSP n=4", verify_csp(4).ok, True)
        if not quick:
            cycle6 = BilliardsGraph.cycle([REFRACT] * 6)
            self.check_value(
                "Fixed by Theta^30, n=6", fixed_point_count(cycle6, 30), 1440
            )
            self.check_value("CSP n=6", verify_csp(6).ok, True)

    def print_summary(self):
        self.print_header("Summary")
        if not self.failures:
            print("✓ All reference values reproduced")
            return
        print(f"✗ {len(self.failures)} mismatch(es):")
        for name in self.failures:
            print(f"  - {name}")

    def run(self, quick=False):
        """Run all checks"""
        self.print_header("Toric Billiards - Acceptance Check")
        print(f"Date: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")

        self.check_orbits()
        self.check_cycles()
        self.check_lift()
        self.check_sieving(quick)

        self.print_summary()


def main():
    """Entry point for the acceptance check"""
    import argparse

    parser = argparse.ArgumentParser(
        description="Reproduce the reference values"
    )
    parser.add_argument(
        "--quick",
        action="store_true",
        help="Skip the n=6 sieving checks",
    )

    args = parser.parse_args()

    check = AcceptanceCheck()
    check.run(quick=args.quick)

    return 1 if check.failures else 0


if __name__ == "__main__":
    sys.exit(main())
