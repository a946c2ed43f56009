"""
Demo script to walk through the normal reduction number toolkit
"""

import os
import sys

# Add src to path
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

from closure_qseq import (
    MaximalIdealCone,
    VeroFamily,
    full_invariant_run,
    integral_dependence_certificate,
    q_sequence_from_lengths,
)
from curve_invariants import CompleteIntersectionCurve, Hyperelliptic, PlaneCurve, br_bounds
from cycle_lattice import build_star_graph, intersect, pa, z_perp_and_B
from graded_ring_models import StandardHypersurface


def main():
    print("\n" + '=' * 60)
    print("NORMAL REDUCTION NUMBERS - DEMO")
    print('=' * 60)

    # 1. q sequence from lengths
    print("\n1. q(nI) FROM QUOTIENT LENGTHS")
    print('-' * 60)
    report = q_sequence_from_lengths(2, [0, 1, 0])
    print(f"✓ p_g = 2, L = (0, 1, 0) -> q = {list(report.q)}, nr = {report.nr}, br = {report.br}")

    # 2. Maximal ideal of a cubic cone
    print("\n2. MAXIMAL IDEAL OF THE FERMAT CUBIC CONE")
    print('-' * 60)
    report = full_invariant_run(MaximalIdealCone(StandardHypersurface(3)))
    print(f"✓ reduction Q = {report.reduction}")
    print(f"✓ q = {list(report.q)}, nr = {report.nr}, br = {report.br}")

    # 3. The Veronese example
    print("\n3. VERONESE EXAMPLE (g = 2)")
    print('-' * 60)
    family = VeroFamily(2)
    report = full_invariant_run(family)
    print(f"✓ lengths L(n) = {list(report.lengths)}")
    print(f"✓ q = {list(report.q)}: nr = {report.nr} < br = {report.br}")
    certificate = integral_dependence_certificate(family.extra_element, family.ideal, 3, 2)
    print(f"✓ {family.extra_element.poly.as_expr()} is integral over I^3 (degree {certificate.u} equation)")

    # 4. Bounds from curve data
    print("\n4. br BOUNDS FROM CURVE DATA")
    print('-' * 60)
    for curve in (PlaneCurve(5), Hyperelliptic(4), CompleteIntersectionCurve((2, 3))):
        bound = br_bounds(curve)
        print(f"  {bound.curve:<34} g={bound.genus:<3} gon={bound.gonality:<3} br <= {bound.br_upper_bound}")

    # 5. Star graph of the blowup family
    print("\n5. STAR GRAPH (d = 4, r = 1)")
    print('-' * 60)
    star = build_star_graph(4, 1)
    perp = z_perp_and_B(star.graph, star.Z_r, 'E0')
    print(f"✓ Z_X^2 = {intersect(star.Z_X, star.Z_X)}, p_a(Z_X) = {pa(star.Z_X)}")
    print(f"✓ B = {list(perp.B)}, -Z_B.E0 = {perp.minus_zb_e0}, s* = {perp.s_star}")

    print("\n" + '=' * 60)
    print("DEMO COMPLETE")
    print('=' * 60)
    print("\nNext steps:")
    print("1. Blowup family: python src/cli_runner.py blowup-family --d 4 --r 1")
    print("2. Graph file: python src/cli_runner.py graph --file data/graphs/star_d3_r1.json")
    print("3. Acceptance suite: python src/cli_runner.py accept --quick")


if __name__ == '__main__':
    main()
