import pytest

from gedlab.exactfit import interpolate
from gedlab.ged import SupportSpec, ged_det
from gedlab.stability import (FULL, fit_polynomial, search_stable_fit, stability_in_N,
                              verify_monomial_reduction)

LINEAR = SupportSpec({1})


def test_constant_fit_on_full_space():
    rep = fit_polynomial(LINEAR, FULL, (1, 4), (1, 4), 2)
    assert rep.stable and rep.degree == 0
    assert str(rep.poly) == "1"
    assert rep.detected_threshold == (1, 1)
    assert all(p == a == 1 for _, _, p, a in rep.validation_points)


class _Fake:
    def __init__(self, ged):
        self.ged = ged


def _cubic(n, m, S, k):
    return _Fake(n * n * m - 3 * m + 7)


def test_fit_recovers_known_polynomial():
    rep = fit_polynomial(LINEAR, 1, (1, 4), (1, 4), 3, evaluate=_cubic)
    assert rep.stable and rep.degree == 3
    assert str(rep.poly) == "1*n^2*m + -3*m + 7"


def test_interpolation_exact_on_window():
    rep = fit_polynomial(LINEAR, 1, (2, 6), (2, 6), 4)
    if rep.poly is not None:
        for n in range(2, 7):
            for m in range(2, 7):
                assert rep.poly(n, m) == ged_det(n, m, 1).ged
        assert rep.poly.total_degree <= 4


def test_max_degree_zero_reports_no_fit():
    rep = fit_polynomial(LINEAR, 1, (2, 4), (2, 4), 0)
    assert rep.poly is None and not rep.stable
    assert "no polynomial" in rep.message


def test_insufficient_grid():
    with pytest.raises(ValueError):
        fit_polynomial(LINEAR, 1, (2, 3), (2, 3), 2)


def test_small_window_flag_from_held_out():
    rep = fit_polynomial(LINEAR, 1, (1, 4), (1, 4), 3)
    if rep.poly is None:
        assert not rep.stable and not rep.validation_points
    else:
        assert len(rep.validation_points) == 9
        assert rep.stable == all(p == a for _, _, p, a in rep.validation_points)


def test_stable_implies_refit_idempotent():
    rep = fit_polynomial(LINEAR, FULL, (1, 3), (1, 3), 2)
    assert rep.stable
    pts = [(n, m) for n in range(1, 4) for m in range(1, 4)] + [(n, m) for n, m, _, _ in rep.validation_points]
    vals = [1] * len(pts)
    assert interpolate(pts, vals, rep.degree) == rep.poly


def test_search_reports_failure_explicitly():
    rep = search_stable_fit(LINEAR, 1, 7, 5, 6)
    if not rep.stable:
        assert rep.message.startswith("no window")
    else:
        assert all(p == a for _, _, p, a in rep.validation_points)


def test_reduction_trivial_for_monomial():
    rep = verify_monomial_reduction(SupportSpec({2}), 1, (2, 4), (2, 4))
    assert all(row["agree"] for row in rep.table)
    assert rep.agreement_region == (2, 2) and rep.upward_closed


def test_reduction_table_columns_independent():
    rep = verify_monomial_reduction(SupportSpec({1, 2}), 1, (2, 5), (2, 5))
    assert len(rep.table) == 16
    for row in rep.table:
        n, m = row["n"], row["m"]
        assert row["N_S"] == n + n * (n + 1) // 2
        assert row["N_r"] == n * (n + 1) // 2
        assert row["ged_S"] == ged_det(row["N_S"], m, 1).ged
        assert row["ged_r"] == ged_det(row["N_r"], m, 1).ged
    if rep.agreement_region is None:
        assert "no agreement region" in rep.message


def test_stability_in_N_examples():
    full = stability_in_N(3, 3, (3, 6))
    assert [g for _, g in full["rows"]] == [1, 1, 1, 1]
    assert full["constant_from"] == 3
    lin = stability_in_N(2, 1, (2, 8))
    assert [g for _, g in lin["rows"]] == [4 * N - 2 for N in range(2, 9)]
    assert lin["constant_from"] is None
    single = stability_in_N(2, 1, (5, 5))
    assert single["constant_from"] == 5
