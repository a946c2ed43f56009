"""
Sweeps Module
Family runs with their closed-form cross-checks, and parallel parameter grids
"""

from typing import Callable, Dict, List, Sequence

from joblib import Parallel, delayed

from checks import equality_check, predicate_check
from closure_qseq import (
    DEFAULT_UMAX,
    BlowupFamily,
    MaximalIdealCone,
    QSequenceReport,
    VeroFamily,
    full_invariant_run,
    hyperelliptic_closed_run,
    integral_dependence_certificate,
)
from curve_invariants import (
    CASE_ZE0_NEGATIVE,
    CompleteIntersectionCurve,
    Hyperelliptic,
    PlaneCurve,
    a_invariant,
    binom,
    blowup_closed_form,
    br_bounds,
    pinkham_pg,
    q_k_maximal,
)
from cycle_lattice import (
    DEFAULT_BOX,
    brute_force_fundamental_cycle,
    build_star_graph,
    cone_graph,
    intersect,
    laufer_fundamental_cycle,
    load_graph_file,
    pa,
    rohr_conelike_predicate,
    z_perp_and_B,
)
from errors import PreconditionError
from exact_linear_core import CoefficientField
from graded_ring_models import StandardHypersurface, artinian_tail_sum
from ideal_engine import DEFAULT_WINDOW, colength

ENUMERATION_VERTEX_LIMIT = 10


def run_hypersurface(d, field_spec='rationals', seed=0, n_max=None, window=DEFAULT_WINDOW) -> QSequenceReport:
    """I = m on the Fermat cone of degree d"""
    ring = StandardHypersurface(d, coefficient_field=CoefficientField.from_spec(field_spec), seed=seed)
    family = MaximalIdealCone(ring)
    report = full_invariant_run(family, n_max=n_max, window=window, seed=seed)
    top = max(report.n_max, d)
    q_expected = [binom(d - n, 3) for n in range(top + 1)]
    cone = cone_graph(d)
    genus = PlaneCurve(d).genus
    vanishing = [n for n in range(1, top + 1)
                 if rohr_conelike_predicate(cone, 'E0', [n * d]).shortcut == 'vanishes']
    report.checks.extend([
        equality_check('cone.q_closed_form', "q(n m) = C(d-n, 3)", [report.q_at(n) for n in range(top + 1)], q_expected),
        equality_check('cone.q_pinkham', "q(n m) = sum of h^1(nD) for n' >= n",
                       [report.q_at(n) for n in range(top + 1)], [q_k_maximal(PlaneCurve(d), n) for n in range(top + 1)]),
        equality_check('cone.reduction_numbers', "nr(m) = br(m) = d-1", [report.nr, report.br], [d - 1, d - 1]),
        equality_check('cone.a_invariant', "nr(m) = a(R) + 2", report.nr, ring.a_invariant() + 2),
        predicate_check('cone.vanishing', "D.E0 > 2g-2 forces q(n m) = 0",
                        all(report.q_at(n) == 0 for n in vanishing), [2 * genus - 2, vanishing]),
    ])
    return report


def run_blowup(d, r, field_spec='rationals', seed=0, n_max=None, window=DEFAULT_WINDOW) -> QSequenceReport:
    """I_{Z_r} = (L) + m^(r+1) on the Fermat cone of degree d"""
    ring = StandardHypersurface(d, coefficient_field=CoefficientField.from_spec(field_spec), seed=seed)
    family = BlowupFamily(ring, r, seed=seed)
    Q = family.reduction(seed, window)
    report = full_invariant_run(family, Q, n_max=n_max, window=window, seed=seed)
    prediction = blowup_closed_form(d, r)
    star = build_star_graph(d, r)
    perp = z_perp_and_B(star.graph, star.Z_r, 'E0')
    tails = [artinian_tail_sum(d, r, (n + 1) * (r + 1)) for n in range(1, report.n_max + 1)]
    pg_ideal = report.q_at(1) == report.p_g
    report.checks.extend([
        equality_check('blowup.colength', "ell(R/Q) = d(r+1)", colength(Q, window), prediction.colength),
        equality_check('blowup.artinian_tail', "ell(I^s/QI^(s-1)) = tail of the artinian series",
                       list(report.lengths), tails),
        equality_check('blowup.q_value', "q(I) = C(d-1,3) + r(2d-r-3)/2", report.q_at(1), prediction.q_value),
        equality_check('blowup.reduction_numbers', "nr = br = ceil((d-1)/(r+1))",
                       [report.nr, report.br], [prediction.nr, prediction.br]),
        equality_check('blowup.pg_ideal', "p_g-ideal iff r >= d-2", pg_ideal, prediction.pg_ideal),
        equality_check('blowup.cohomological_cycle', "Z_r.C_r = 0 iff p_g-ideal",
                       intersect(star.Z_r, star.C_r) == 0, pg_ideal),
        predicate_check('blowup.stable_from_s_star', "q(sI) = q_inf for s >= s*",
                        all(report.q_at(n) == report.q_inf for n in range(perp.s_star, report.n_max + 1)),
                        perp.s_star),
    ])
    return report


def run_veronese(g, field_spec='rationals', window=DEFAULT_WINDOW, inject_fault=False,
                 u_max=DEFAULT_UMAX) -> QSequenceReport:
    """I = (y^g, y^(g-1) z) + A_{>=2} on the g-th Veronese subring"""
    family = VeroFamily(g, CoefficientField.from_spec(field_spec), inject_fault=inject_fault)
    report = full_invariant_run(family, window=window)
    certificate = integral_dependence_certificate(family.extra_element, family.ideal, g + 1, u_max)
    report.checks.extend([
        equality_check('vero.q_closed_form', "q(nI) = max(g-n, 0)",
                       [report.q_at(n) for n in range(report.n_max + 1)],
                       [max(g - n, 0) for n in range(report.n_max + 1)]),
        equality_check('vero.closure_jump', "ell(closure(I^(g+1)) / Q closure(I^g)) = 1", report.L(g), 1),
        equality_check('vero.reduction_numbers', "nr = 1, br = g+1 = p_g+1",
                       [report.nr, report.br, report.p_g + 1], [1, g + 1, g + 1]),
        predicate_check('vero.certificate_depth', f"certificate found within u_max = {u_max}",
                        certificate is not None, None if certificate is None else certificate.u),
    ])
    return report


def run_hyperelliptic(g, b):
    """
    Closed-form data of the cone over a hyperelliptic curve with D = b D0.

    Returns:
        (report or None, BoundReport, values); the q(nI_Z) sequence needs b >= g
    """
    curve = Hyperelliptic(g, b)
    bound = br_bounds(curve, CASE_ZE0_NEGATIVE)
    a = a_invariant(curve)
    values = {
        'genus': g,
        'b': b,
        'a_invariant': a,
        'p_g': pinkham_pg(curve),
        'q_k_m': [q_k_maximal(curve, k) for k in range(a + 2)],
    }
    report = hyperelliptic_closed_run(g, b) if b >= g else None
    if report is not None:
        report.checks.append(equality_check('hyper.br_bound', "br = g+1 = gonality bound",
                                            report.br, bound.br_upper_bound))
    return report, bound, values


def run_ci_bound(degrees):
    curve = CompleteIntersectionCurve(tuple(degrees))
    bound = br_bounds(curve, CASE_ZE0_NEGATIVE)
    values = {'degrees': list(curve.degrees), 'n': curve.n, 'a_invariant': curve.a_invariant, 'genus': curve.genus}
    return bound, values


def run_star(d, r):
    """Star graph of the blowup family with its Z-perp data and vanishing verdicts"""
    star = build_star_graph(d, r)
    G = star.graph
    perp = z_perp_and_B(G, star.Z_r, 'E0')
    checks = list(star.checks) + list(perp.checks)
    enumerate_cycles = len(G) <= ENUMERATION_VERTEX_LIMIT
    verdicts = {}
    minus_zx = -star.Z_X.intersection_numbers()
    for s in range(1, 4):
        verdict = rohr_conelike_predicate(G, 'E0', (s * minus_zx).tolist(), enumerate_cycles=enumerate_cycles)
        verdicts[f"-{s}Z_X"] = verdict.shortcut
        checks.append(predicate_check(f"rohr.consistent_{s}", f"shortcut agrees with the full criterion for -{s}Z_X",
                                      verdict.consistent, verdict.full_criterion))
        if verdict.case_split_ok is not None:
            checks.append(predicate_check(f"rohr.case_split_{s}", "p_a(Y) = g if E0 <= Y, else 0",
                                          verdict.case_split_ok, verdict.cycles_checked))
    values = {
        'Z_X': star.Z_X.to_dict(),
        'Z_r': star.Z_r.to_dict(),
        'C_r': star.C_r.to_dict(),
        'Z_r.C_r': intersect(star.Z_r, star.C_r),
        'B': list(perp.B),
        '-Z_B.E0': perp.minus_zb_e0,
        's_star': perp.s_star,
        'vanishing': verdicts,
    }
    return star, checks, values


def run_graph(path, box=DEFAULT_BOX):
    """Fundamental cycle and named-cycle checks for a graph file"""
    G = load_graph_file(path).validate()
    laufer = laufer_fundamental_cycle(G)
    Z = laufer.cycle
    checks = [predicate_check('graph.fundamental_anti_nef', "Z_X anti-nef", Z.is_anti_nef(), Z.to_dict())]
    if len(G) <= 6:
        brute = brute_force_fundamental_cycle(G, box)
        expected = None if max(Z.coefficients) > box else Z.to_dict()
        checks.append(equality_check('graph.fundamental_minimal', f"Z_X is the minimal anti-nef cycle (box {box})",
                                     None if brute is None else brute.to_dict(), expected))
    values = {
        'Z_X': Z.to_dict(),
        'Z_X^2': intersect(Z, Z),
        'p_a(Z_X)': pa(Z),
        'sequence': [str(v) for v in laufer.sequence],
    }
    e0 = max(G.ids, key=lambda vid: (G.genus(vid), -G.index[vid]))
    for name, Y in G.cycles.items():
        checks.append(predicate_check(f"graph.{name}.anti_nef", f"{name} anti-nef", Y.is_anti_nef(), Y.to_dict()))
        if Y.is_positive:
            values[f"p_a({name})"] = pa(Y)
            values[f"{name}^2"] = intersect(Y, Y)
        if Y.is_positive and Y.is_anti_nef():
            try:
                perp = z_perp_and_B(G, Y, e0)
            except PreconditionError as e:
                values[f"B({name})"] = str(e)
                continue
            # perp checks hold on cone-like graphs only
            values[f"B({name})"] = [str(v) for v in perp.B]
            values[f"s_star({name})"] = perp.s_star
            values[f"perp({name})"] = {c.check_id: c.passed for c in perp.checks}
    return G, checks, values


def sweep(task: Callable, grid: Sequence[Dict[str, object]], jobs=1) -> List[object]:
    """
    Run task(**params) over a grid with joblib.

    Results come back in grid order whatever the number of workers. Tasks
    build their own rings, so nothing unpicklable crosses process lines.
    """
    if jobs == 1:
        return [task(**params) for params in grid]
    return Parallel(n_jobs=jobs)(delayed(task)(**params) for params in grid)
