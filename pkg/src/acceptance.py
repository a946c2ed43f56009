"""
Acceptance Module
End-to-end suite over the studied families; exit status 0 iff every criterion passes
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from closure_qseq import report_invariant_checks
from curve_invariants import (
    CASE_ZE0_NEGATIVE,
    CASE_ZE0_ZERO,
    CompleteIntersectionCurve,
    Hyperelliptic,
    PlaneCurve,
    binom,
    br_bounds,
    h0_h1,
    pg_blowdown,
)
from cycle_lattice import build_star_graph, cone_graph, intersect, pa, small_graph_sweep
from errors import NormalReductionError
from run_config import RunConfig
from sweeps import run_blowup, run_hypersurface, run_veronese, sweep

SECOND_FIELD = 'fp:32003'


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ''

    def status_line(self):
        mark = '✓' if self.passed else '✗'
        tail = f": {self.detail}" if self.detail else ''
        return f"{mark} [{self.number}] {self.title}{tail}"


@dataclass
class AcceptanceGrid:
    cone_degrees: List[int]
    blowup_degrees: List[int]
    blowup_r: List[int]
    vero_genera: List[int]
    graph_vertices: int
    star_degrees: List[int]
    star_r: List[int]
    pa_pairs: int

    @classmethod
    def full(cls):
        return cls([3, 4, 5, 6], [3, 4, 5], [1, 2, 3], [2, 3], 5, [3, 4, 5], [1, 2, 3], 1000)

    @classmethod
    def quick(cls):
        return cls([3, 4], [3, 4], [1, 2], [2], 3, [3, 4], [1, 2], 100)


def _first_failure(checks):
    failed = [c for c in checks if not c.passed]
    return '' if not failed else failed[0].status_line()


class AcceptanceSuite:
    """Runs the numbered criteria in order and collects every report for the cross-cutting ones"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.grid = AcceptanceGrid.quick() if config.quick else AcceptanceGrid.full()
        self.reports = []
        self.rng = np.random.default_rng(config.seed)

    def _run(self, number, title, body) -> CriterionResult:
        try:
            detail = body()
        except NormalReductionError as e:
            return CriterionResult(number, title, False, f"{type(e).__name__}: {e}")
        if detail:
            return CriterionResult(number, title, False, detail)
        return CriterionResult(number, title, True)

    def criterion_cones(self):
        grid = [{'d': d, 'field_spec': self.config.field, 'seed': self.config.seed, 'window': self.config.window}
                for d in self.grid.cone_degrees]
        reports = sweep(run_hypersurface, grid, self.config.jobs)
        self.reports.extend(reports)
        for report in reports:
            failure = _first_failure(report.checks)
            if failure:
                return f"d={report.params['d']}: {failure}"
        return ''

    def criterion_blowups(self):
        grid = [{'d': d, 'r': r, 'field_spec': self.config.field, 'seed': self.config.seed, 'window': self.config.window}
                for d in self.grid.blowup_degrees for r in self.grid.blowup_r]
        reports = sweep(run_blowup, grid, self.config.jobs)
        self.reports.extend(reports)
        for report in reports:
            failure = _first_failure(report.checks)
            if failure:
                return f"{report.params}: {failure}"
        return ''

    def criterion_veronese(self):
        inject = self.config.inject_fault == 'closure'
        for g in self.grid.vero_genera:
            per_field = []
            for spec in (self.config.field, SECOND_FIELD) if self.config.field != SECOND_FIELD else (SECOND_FIELD, 'rationals'):
                report = run_veronese(g, spec, self.config.window, inject_fault=inject, u_max=self.config.u_max)
                self.reports.append(report)
                failure = _first_failure(report.checks)
                if failure:
                    return f"g={g} [{spec}]: {failure}"
                summary = report.to_dict()
                summary.pop('field')
                per_field.append(summary)
            if per_field[0] != per_field[1]:
                return f"g={g}: rationals and F_p disagree"
        return ''

    def criterion_blowdown(self):
        report = next((r for r in self.reports if r.family == 'BlowupFamily' and r.params == {'d': 4, 'r': 1}), None)
        if report is None:
            report = run_blowup(4, 1, self.config.field, self.config.seed, window=self.config.window)
        if report.q_inf != pg_blowdown(4, 1) or report.q_inf != 3:
            return f"q_inf = {report.q_inf}, blowdown p_g = {pg_blowdown(4, 1)}"
        return ''

    def criterion_cycles(self):
        checked, mismatches = small_graph_sweep(self.grid.graph_vertices)
        if checked == 0:
            return "no graphs enumerated"
        if mismatches:
            return f"{len(mismatches)} mismatches, first {mismatches[0]}"
        for d in self.grid.star_degrees:
            for r in self.grid.star_r:
                star = build_star_graph(d, r)
                if pa(star.Z_X) != PlaneCurve(d).genus:
                    return f"p_a(Z_X) wrong for d={d}, r={r}"
        return ''

    def criterion_bounds(self):
        for report in self.reports:
            if not (report.nr <= report.br <= report.p_g + 1 and report.p_g >= binom(report.nr, 2)):
                return f"{report.family} {report.params}: nr={report.nr}, br={report.br}, p_g={report.p_g}"
            if report.family == 'BlowupFamily':
                d = report.params['d']
                bound = br_bounds(PlaneCurve(d), CASE_ZE0_ZERO, d=d).br_upper_bound
                if report.br > bound:
                    return f"br(I_Z) = {report.br} above {bound} for {report.params}"
        for d in range(4, 11):
            if br_bounds(PlaneCurve(d), CASE_ZE0_NEGATIVE).br_upper_bound != d - 1:
                return f"plane curve bound differs from d-1 at d={d}"
        for g in range(2, 9):
            if br_bounds(Hyperelliptic(g), CASE_ZE0_NEGATIVE).br_upper_bound != g + 1:
                return f"hyperelliptic bound differs from g+1 at g={g}"
        ci = br_bounds(CompleteIntersectionCurve((2, 2)), CASE_ZE0_NEGATIVE)
        if ci.ci_bound != 2 or ci.nr_m_prediction != 2:
            return f"CI(2,2) bound {ci.ci_bound}, prediction {ci.nr_m_prediction}"
        return ''

    def criterion_identities(self):
        for report in self.reports:
            identity = next(c for c in report_invariant_checks(report) if c.check_id == 'qseq.second_difference')
            if not identity.passed:
                return f"{report.family} {report.params}: {identity.status_line()}"
        curves = [PlaneCurve(d) for d in range(3, 9)] + [Hyperelliptic(g, b) for g in range(2, 7) for b in range(1, 4)]
        for curve in curves:
            for n in range(0, 2 * curve.genus + 4):
                h0, h1 = h0_h1(curve, n)
                if h0 - h1 != n * curve.degree - curve.genus + 1:
                    return f"Riemann-Roch fails for {curve.label} at n={n}"
        graphs = [cone_graph(4).validate()] + [build_star_graph(d, r).graph for d in self.grid.star_degrees
                                               for r in self.grid.star_r]
        for G in graphs:
            for _ in range(self.grid.pa_pairs):
                first = self._random_positive_cycle(G)
                second = self._random_positive_cycle(G)
                if pa(first + second) != pa(first) + pa(second) + intersect(first, second) - 1:
                    return f"p_a additivity fails on {first.to_dict()} + {second.to_dict()}"
        return ''

    def _random_positive_cycle(self, G):
        coefficients = self.rng.integers(0, 4, size=len(G))
        if not coefficients.any():
            coefficients[self.rng.integers(0, len(G))] = 1
        return G.cycle(coefficients.tolist())

    def run(self) -> List[CriterionResult]:
        criteria = [
            (1, "hypersurface cones: q(n m) = C(d-n,3), nr = br = d-1", self.criterion_cones),
            (2, "blowup families: colength, artinian tails, q(I_Z), nr = br, p_g-ideals", self.criterion_blowups),
            (3, "Veronese example in both fields", self.criterion_veronese),
            (4, "q_inf of (4,1) equals the blown-down p_g", self.criterion_blowdown),
            (5, "Laufer vs brute force; star graph assertions", self.criterion_cycles),
            (6, "bound invariants on every instance", self.criterion_bounds),
            (7, "second differences, Riemann-Roch, p_a additivity", self.criterion_identities),
        ]
        results = []
        for number, title, body in criteria:
            result = self._run(number, title, body)
            # one line per criterion as it finishes
            print(result.status_line())
            results.append(result)
        return results


def run_acceptance(config: RunConfig) -> Optional[CriterionResult]:
    """
    Run every criterion; return the first failure or None.

    Args:
        config: RunConfig (quick, field, seed, jobs, window, u_max, inject_fault)
    """
    print("\n" + '=' * 60)
    print(f"ACCEPTANCE SUITE ({'quick' if config.quick else 'full'} grid, {config.field}, seed {config.seed})")
    print('=' * 60)
    results = AcceptanceSuite(config).run()
    # Summary
    failed = [r for r in results if not r.passed]
    print('=' * 60)
    if failed:
        print(f"✗ first failing criterion: [{failed[0].number}] {failed[0].title}")
        return failed[0]
    print(f"✓ all {len(results)} criteria passed")
    return None
