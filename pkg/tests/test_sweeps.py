import os

import pytest

from sweeps import (
    run_blowup,
    run_ci_bound,
    run_graph,
    run_hyperelliptic,
    run_hypersurface,
    run_star,
    run_veronese,
    sweep,
)

GRAPH_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data', 'graphs')


def failed_ids(checks):
    return {check.check_id for check in checks if not check.passed}


def test_hypersurface_cubic():
    report = run_hypersurface(3)
    assert report.q == (1, 0, 0)
    assert (report.nr, report.br) == (2, 2)
    assert failed_ids(report.checks) == set()


def test_blowup_cubic():
    report = run_blowup(3, 1)
    assert failed_ids(report.checks) == set()
    assert report.q_at(1) == 1


def test_veronese():
    report = run_veronese(2)
    assert failed_ids(report.checks) == set()


def test_veronese_fault_is_caught():
    report = run_veronese(2, inject_fault=True)
    assert {'vero.q_closed_form', 'vero.closure_jump', 'vero.reduction_numbers'} <= failed_ids(report.checks)


def test_hyperelliptic():
    report, bound, values = run_hyperelliptic(3, 1)
    assert report is None
    assert bound.br_upper_bound == 4
    assert values['p_g'] == 6
    report, _, _ = run_hyperelliptic(3, 3)
    assert report.q == (3, 2, 1, 0, 0)
    assert failed_ids(report.checks) == set()


def test_ci_bound():
    bound, values = run_ci_bound([2, 2])
    assert bound.ci_bound == 2
    assert values['genus'] == 1


def test_star():
    _, checks, values = run_star(3, 1)
    assert failed_ids(checks) == set()
    assert values['s_star'] == 1
    assert values['-Z_B.E0'] == 6
    assert set(values['vanishing'].values()) == {'vanishes'}


def test_star_without_enumeration():
    _, checks, values = run_star(4, 3)
    assert failed_ids(checks) == set()
    assert values['-Z_B.E0'] == 4


def test_graph_file():
    G, checks, values = run_graph(os.path.join(GRAPH_DIR, 'star_d3_r1.json'))
    assert failed_ids(checks) == set()
    assert values['Z_X^2'] == -3
    assert values['p_a(Z_X)'] == 1
    assert values['B(Z_1)'] == ['E0']
    assert 'gonality' in values['B(Z_X)']


def test_chain_file():
    _, checks, values = run_graph(os.path.join(GRAPH_DIR, 'a2_chain.json'))
    assert failed_ids(checks) == set()
    assert values['Z_X'] == {'1': 1, '2': 1}
    assert values['p_a(Z_X)'] == 0


def test_sweep_keeps_grid_order():
    grid = [{'d': d} for d in (4, 3)]
    reports = sweep(run_hypersurface, grid)
    assert [r.params['d'] for r in reports] == [4, 3]


@pytest.mark.slow
def test_parallel_sweep_matches_serial():
    grid = [{'d': 3, 'r': r} for r in (1, 2)]
    serial = [r.to_dict() for r in sweep(run_blowup, grid, jobs=1)]
    parallel = [r.to_dict() for r in sweep(run_blowup, grid, jobs=2)]
    assert serial == parallel
