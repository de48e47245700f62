import pytest

from reeslab import Ideal, graded_ring, parse_polynomial
from reeslab.betti import bigraded_betti_table
from reeslab.diagonals import (
    DiagonalError,
    DiagonalSpec,
    classify_shift,
    cm_diagonal_test,
    cm_threshold_alpha,
    diagonal_dimension,
    diagonal_hilbert_function,
    good_resolution_check,
    gorenstein_diagonals,
    quasi_gorenstein_bounds,
)
from reeslab.rees import rees_presentation
from conftest import span_dimension_of_products


def test_diagonal_spec_validation():
    assert DiagonalSpec(5, 2).admissible(2)
    assert not DiagonalSpec(4, 2).admissible(2)
    with pytest.raises(DiagonalError):
        DiagonalSpec(0, 1)


def test_diagonal_hilbert_function_twisted_cubic(twisted_cubic_rees):
    values = diagonal_hilbert_function(twisted_cubic_rees, DiagonalSpec(5, 2), 3)
    assert values[0] == 1
    assert values[1] == 18


def test_diagonal_hilbert_function_unit_ideal():
    from math import comb

    A = graded_ring(["X1", "X2", "X3"])
    P = rees_presentation(Ideal(A, [A.one()]))
    values = diagonal_hilbert_function(P, DiagonalSpec(3, 1), 4)
    assert values == [comb(3 * s + 2, 2) for s in range(5)]


def test_diagonal_inadmissible_rejected(twisted_cubic_rees):
    with pytest.raises(DiagonalError):
        diagonal_hilbert_function(twisted_cubic_rees, DiagonalSpec(4, 2), 2)


def test_diagonal_values_match_bruteforce_span(twisted_cubic, del_pezzo_ideal):
    P = rees_presentation(twisted_cubic)
    vals = diagonal_hilbert_function(P, DiagonalSpec(5, 2), 2)
    for s in (1, 2):
        assert vals[s] == span_dimension_of_products(twisted_cubic, 2 * s, 5 * s)
    Q = rees_presentation(del_pezzo_ideal)
    vals = diagonal_hilbert_function(Q, DiagonalSpec(3, 1), 3)
    for s in (1, 2, 3):
        assert vals[s] == span_dimension_of_products(del_pezzo_ideal, s, 3 * s)


def test_diagonal_dimension(twisted_cubic_rees):
    assert diagonal_dimension(twisted_cubic_rees, DiagonalSpec(5, 2)) == 4
    assert diagonal_dimension(twisted_cubic_rees, DiagonalSpec(7, 3)) == 4


def test_diagonal_dimension_principal():
    A = graded_ring(["X1", "X2"])
    P = rees_presentation(Ideal(A, [parse_polynomial("X1^2 + X2^2", A)]))
    assert diagonal_dimension(P, DiagonalSpec(3, 1)) == 2


# ---------------------------------------------------------------------------
# Gorenstein diagonals

def test_gorenstein_maximal_minors_2x3():
    reports = gorenstein_diagonals("maximal-minors", m=2, n=3)
    assert [(r.inputs["c"], r.inputs["e"]) for r in reports] == [(6, 1)]
    assert reports[0].a_invariant == -1


def test_gorenstein_maximal_minors_square():
    reports = gorenstein_diagonals("maximal-minors", m=3, n=3)
    assert [(r.inputs["c"], r.inputs["e"]) for r in reports] == [(12, 1)]


def test_gorenstein_del_pezzo():
    # three coordinate products in P^2: Gorenstein form ring with a = 2
    reports = gorenstein_diagonals("general", n=3, a=2, d=2, height=2)
    assert [(r.inputs["c"], r.inputs["e"]) for r in reports] == [(3, 1)]
    assert reports[0].a_invariant == -1


def test_gorenstein_complete_intersection():
    reports = gorenstein_diagonals(
        "complete-intersection", n=4, r=3, degrees=(1, 1, 1)
    )
    found = {(r.inputs["c"], r.inputs["e"]): r.a_invariant for r in reports}
    assert found == {(4, 2): -1, (2, 1): -2}


def test_gorenstein_polynomial_ring():
    # one blow-up variable of degree d: only (n + d, 1)
    reports = gorenstein_diagonals("polynomial-ring", n=3, r=1, degrees=(2,))
    assert [(r.inputs["c"], r.inputs["e"]) for r in reports] == [(5, 1)]
    assert reports[0].a_invariant == -1


def test_gorenstein_empty_for_a_one():
    assert gorenstein_diagonals("general", n=5, a=1, d=2) == []


def test_gorenstein_sets_respect_finite_bounds():
    for (n, a, d) in ((6, 4, 2), (8, 5, 3), (9, 7, 2)):
        for rep in gorenstein_diagonals("general", n=n, a=a, d=d):
            c, e = rep.inputs["c"], rep.inputs["e"]
            assert e <= a - 1 and c <= n


def test_quasi_gorenstein_bounds():
    assert quasi_gorenstein_bounds(1, 7) == []
    out = quasi_gorenstein_bounds(3, 3)
    assert [(r.inputs["c"], r.inputs["e"]) for r in out] == [(3, 2)]
    out = quasi_gorenstein_bounds(2, 5)
    assert [(r.inputs["c"], r.inputs["e"]) for r in out] == [(5, 1)]


# ---------------------------------------------------------------------------
# CM criteria

def test_cm_complete_intersection_boundary():
    params = {"d": 3, "u": 6, "n": 2}
    for e in (1, 2, 3, 4):
        bad = cm_diagonal_test("complete-intersection", params, DiagonalSpec(3 * e + 1, e))
        good = cm_diagonal_test("complete-intersection", params, DiagonalSpec(3 * e + 2, e))
        assert bad.verdict is False
        assert good.verdict is True


def test_cm_strongly_cm_twisted_cubic():
    params = {"degrees": (2, 2, 2), "height": 2, "n": 4}
    for e in (1, 2, 3, 5):
        for c in (2 * e + 1, 2 * e + 2, 2 * e + 5):
            rep = cm_diagonal_test("strongly-cm", params, DiagonalSpec(c, e))
            assert rep.verdict is True
            assert rep.sufficient_only


def test_cm_equimultiple():
    params = {"d": 2, "a_quotient": 1, "height": 2}
    rep = cm_diagonal_test("equimultiple", params, DiagonalSpec(2 * 3 + 1, 3))
    assert rep.verdict is True
    with pytest.raises(DiagonalError):
        cm_diagonal_test("equimultiple", params, DiagonalSpec(8, 4))


def test_cm_needs_input():
    rep = cm_diagonal_test("equimultiple", {"d": 2, "height": 2}, DiagonalSpec(5, 2))
    assert rep.verdict == "needs-input"


def test_cm_threshold_values():
    minors = cm_threshold_alpha(2, 6, a2_form_ring=-2)
    assert minors.verdict == -4  # = -d^2 for the 2x3 minors
    cubic = cm_threshold_alpha(2, 4, a2_form_ring=-2)
    assert cubic.verdict == -2
    trivial = cm_threshold_alpha(3, 7, a2_form_ring=-1)
    assert trivial.verdict == -7
    missing = cm_threshold_alpha(3, 7)
    assert missing.verdict == "needs-input"
    direct = cm_threshold_alpha(3, 7, a1_shifted_rees=-4)
    assert direct.verdict == -4


def test_cm_threshold_maximal_minors_generic():
    # d x n minors in nd variables: alpha = -d^2
    for d, n in ((2, 3), (2, 4), (3, 4)):
        rep = cm_threshold_alpha(d, n * d, a2_form_ring=-(n - d + 1))
        assert rep.verdict == -d * d


# ---------------------------------------------------------------------------
# good resolutions

def test_classify_shifts_twisted_cubic():
    n, r, d, u = 4, 3, 2, 6
    assert classify_shift(0, 0, n, r, d, u) == 3
    assert classify_shift(-3, -1, n, r, d, u) == 2
    assert classify_shift(-6, -2, n, r, d, u) == 2
    assert classify_shift(-n, 0, n, r, d, u) is None  # boundary is strict


def test_good_resolution_from_explicit_shifts():
    report, verdicts = good_resolution_check(
        [(0, 0), (-3, -1), (-3, -1), (-6, -2)], 4, 3, 2, 6
    )
    assert report.verdict is True
    assert all(v.good for v in verdicts)


def test_good_resolution_from_table(twisted_cubic_rees_betti):
    report, verdicts = good_resolution_check(twisted_cubic_rees_betti, 4, 3, 2, 6)
    assert report.verdict is True
    assert sorted(v.shift for v in verdicts) == [(-6, -2), (-3, -1), (-3, -1), (0, 0)]


def test_bad_shift_detected():
    report, verdicts = good_resolution_check([(0, 0), (-4, 0)], 4, 3, 2, 6)
    assert report.verdict is False
    assert [v.shift for v in verdicts if not v.good] == [(-4, 0)]


def test_gorenstein_implies_cm_for_complete_intersections():
    # every diagonal passing the Gorenstein rule passes the CM inequality
    for (n, r, degrees) in ((4, 3, (1, 1, 1)), (6, 3, (2, 2, 2)), (5, 2, (3, 3))):
        d, u = max(degrees), sum(degrees)
        for rep in gorenstein_diagonals("complete-intersection", n=n, r=r, degrees=degrees):
            spec = DiagonalSpec(rep.inputs["c"], rep.inputs["e"])
            cm = cm_diagonal_test(
                "complete-intersection", {"d": d, "u": u, "n": n}, spec
            )
            assert cm.verdict is True
