import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fjbounds.bounds import BoundId
from fjbounds.errors import ConfigurationError
from fjbounds.specfun import EvalOptions
from fjbounds.verify import (
    PROBLEMS,
    GridAxis,
    GridSpec,
    check_identities,
    check_limits,
    default_grid,
    find_threshold,
    grid_points,
    margin_at,
    sweep,
    sweep_points,
)


def test_axis_validation():
    for bad in (dict(lo=1, hi=0, count=5), dict(lo=0, hi=1, count=0), dict(lo=0, hi=1, count=1),
                dict(lo=0, hi=1, count=5, spacing="log"), dict(lo=0, hi=1, count=5, spacing="cubic")):
        with pytest.raises(ConfigurationError):
            GridAxis(**bad)


def test_axis_spacing():
    ax = GridAxis(0.0, 1.0, 5)
    np.testing.assert_allclose(ax.values(), [0, 0.25, 0.5, 0.75, 1.0])
    np.testing.assert_allclose(ax.values(True, True), [0.1, 0.3, 0.5, 0.7, 0.9])
    lo_open = ax.values(open_lo=True)
    assert lo_open[0] > 0 and lo_open[-1] == 1.0
    np.testing.assert_allclose(np.diff(lo_open), np.diff(lo_open)[0])
    logs = GridAxis(1e-2, 1e2, 5, "log").values()
    np.testing.assert_allclose(logs, [1e-2, 1e-1, 1, 10, 100])


@given(st.floats(-5, 5), st.floats(0.01, 10), st.integers(2, 50), st.booleans(), st.booleans())
def test_axis_points_inside(lo, width, count, a, b):
    v = GridAxis(lo, lo + width, count).values(a, b)
    assert len(v) == count
    assert np.all(np.diff(v) > 0)
    assert v[0] >= lo and v[-1] <= lo + width
    assert (v[0] > lo) == a and (v[-1] < lo + width) == b


def test_grid_admissibility():
    with pytest.raises(ConfigurationError):
        grid_points("SecEnvelope", GridSpec((GridAxis.point(2.0), GridAxis(0.0, 2.0, 10))))
    with pytest.raises(ConfigurationError):
        grid_points("Fejer1928", GridSpec((GridAxis(1.0, 2.5, 4), GridAxis(0.1, 1.0, 4))))
    with pytest.raises(ConfigurationError):
        grid_points("MEnvelope", GridSpec((GridAxis(0.0, 1.0, 3),)))
    with pytest.raises(ConfigurationError):
        sweep("NotABound", GridSpec((GridAxis(0.0, 1.0, 3),)))
    # an open end of the domain is probed by half a step
    pts = grid_points("MEnvelope", GridSpec((GridAxis.point(1.0), GridAxis(0.0, math.pi, 4))))
    assert pts[0][1] > 0 and pts[-1][1] < math.pi


def test_every_bound_has_a_problem_and_default_grid():
    assert set(PROBLEMS) == set(BoundId)
    for b in BoundId:
        grid = default_grid(b, 8)
        assert len(grid_points(b, grid)) == grid.size


def test_arccot_envelope_grid_sweep():
    grid = GridSpec((GridAxis(1, 50, 50), GridAxis(0.01, math.pi - 0.01, 200)))
    rep = sweep(BoundId.ArccotEnvelope, grid)
    assert rep.samples == 10_000 and rep.violations == 0 and rep.min_margin > 0
    assert abs(margin_at(rep.bound_id, rep.argmin) - rep.min_margin) <= 1e-14


def test_sec_envelope_figure_sweep():
    rep = sweep("SecEnvelope", GridSpec((GridAxis.point(12.0), GridAxis(0.0, math.pi / 2, 500))))
    assert rep.samples == 500 and rep.violations == 0


def test_single_point_equality_case():
    rep = sweep("ArccotEnvelope", GridSpec((GridAxis.point(3.0), GridAxis.point(0.0))))
    assert rep.samples == 1 and abs(rep.min_margin) <= 1e-12
    assert rep.near_equality == 1 and rep.violations == 0


def test_skipped_points_are_counted():
    rep = sweep("AKEvenUpper", GridSpec((GridAxis(2, 5, 4), GridAxis(0.2, 3.0, 10))))
    assert rep.skipped == 20 and rep.samples == 20


def test_report_reproducible_and_parallel_safe():
    grid = GridSpec((GridAxis(0.0, 6.0, 7), GridAxis(0.0, math.pi, 30)))
    serial = sweep("MEnvelope", grid)
    again = sweep("MEnvelope", grid)
    parallel = sweep("MEnvelope", grid, workers=3)
    for other in (again, parallel):
        assert (other.samples, other.violations, other.min_margin, other.argmin) == (
            serial.samples, serial.violations, serial.min_margin, serial.argmin)


def test_ties_go_to_smallest_coordinate():
    # FJTuran has margin exactly zero at x = 0 for every n
    rep = sweep("FJTuran", GridSpec((GridAxis(1, 4, 4), GridAxis(0.0, 0.0, 1))))
    assert rep.argmin == (1.0, 0.0)


def test_sweep_points_checks_arity():
    with pytest.raises(ConfigurationError):
        sweep_points("MEnvelope", [(1.0,)])


def test_report_serializes():
    rep = sweep("Fejer1928", GridSpec((GridAxis(1, 3, 3), GridAxis(0.0, math.pi, 10))))
    d = rep.to_dict()
    for key in ("bound", "grid", "samples", "violations", "min_margin", "argmin", "tolerances", "version"):
        assert key in d
    assert d["bound"] == "Fejer1928"


def test_thresholds():
    t0, t1 = find_threshold("T0"), find_threshold("T1")
    for res, printed in ((t0, 0.7095667635), (t1, 0.4685633187)):
        assert abs(res.root - printed) < 1e-8
        assert res.bracket_lo < res.root < res.bracket_hi
        assert res.bracket_hi - res.bracket_lo <= 1e-13 * 1.01
        assert abs(res.residual) <= 1e-12
    assert t1.root < t0.root < 1
    with pytest.raises(ConfigurationError):
        find_threshold("T2")


def test_threshold_stable_under_tolerance():
    for which in ("T0", "T1"):
        coarse = find_threshold(which, EvalOptions(abs_tol=1e-10)).root
        assert abs(coarse - find_threshold(which).root) < 1e-9


def test_identities_all_pass():
    checks = check_identities()
    assert len(checks) > 20
    failed = [c for c in checks if not c.passed]
    assert not failed


def test_limits_decrease():
    tables = check_limits()
    assert [t.nu for t in tables] == [1.0, 2.0, 1.0]
    assert all(t.strictly_decreasing for t in tables)
