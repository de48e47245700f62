import random

import pytest

from reeslab import (
    DEGREVLEX,
    Ideal,
    LEX,
    QQ,
    RingSpec,
    graded_ring,
    hilbert_series_ideal,
    parse_polynomial,
)
from reeslab.betti import bigraded_betti_table, invariants_from_shifts
from reeslab.ginreg import (
    GinError,
    bayer_stillman_check,
    borel_fix_check,
    borel_regularity,
    generic_initial_ideal,
)
from reeslab.rings import Polynomial


@pytest.fixture(scope="module")
def S22():
    return RingSpec(QQ, ("X1", "X2", "Y1", "Y2"), ((1, 0), (1, 0), (0, 1), (0, 1)), LEX)


@pytest.fixture(scope="module")
def regular_pair_ideal(S22):
    return Ideal(S22, [parse_polynomial("X1*Y1", S22), parse_polynomial("X1*Y2 + X2*Y1", S22)])


def test_gin_of_zero_ideal():
    A = graded_ring(["x", "y"])
    out = generic_initial_ideal(Ideal(A, []))
    assert out.ideal.is_zero()


def test_gin_of_generic_square():
    A = graded_ring(["X1", "X2"])
    f = parse_polynomial("2*X1 + 3*X2", A)
    out = generic_initial_ideal(Ideal(A, [f * f]), seed=5)
    assert [g.leading_monomial() for g in out.ideal.gens] == [(2, 0)]


def test_gin_regular_pair_degree_one_one_part(regular_pair_ideal, S22):
    out = generic_initial_ideal(regular_pair_ideal, order=LEX, seed=11)
    deg11 = [m for m in out.generators() if S22.monomial_degree(m) == (1, 1)]
    assert sorted(deg11) == [(1, 0, 0, 1), (1, 0, 1, 0)]  # X1 Y1 and X1 Y2


def test_gin_preserves_series_and_is_borel(regular_pair_ideal):
    out = generic_initial_ideal(regular_pair_ideal, order=LEX, seed=2)
    assert hilbert_series_ideal(out.ideal, "quotient") == hilbert_series_ideal(
        regular_pair_ideal, "quotient"
    )
    assert borel_fix_check(out.ideal).is_borel


def test_gin_regularity_jumps(regular_pair_ideal):
    # the source has regularity (1,1); any stable initial ideal exceeds it
    out = generic_initial_ideal(regular_pair_ideal, order=LEX, seed=4)
    d1, d2 = borel_regularity(out.ideal)
    assert d1 >= 2 or d2 >= 2
    out2 = generic_initial_ideal(regular_pair_ideal, order=DEGREVLEX, seed=4)
    e1, e2 = borel_regularity(out2.ideal)
    assert e1 >= 2 or e2 >= 2


def test_borel_check_positive(S22):
    A = graded_ring(["X1", "X2"])
    J = Ideal(A, [parse_polynomial(s, A) for s in ("X1^2", "X1*X2", "X2^2")])
    assert borel_fix_check(J).is_borel
    J2 = Ideal(S22, [parse_polynomial("X1*Y1", S22), parse_polynomial("X2*Y1", S22)])
    rep = borel_fix_check(J2)
    assert rep.is_borel and rep.delta == (1, 1)


def test_borel_check_negative():
    A = graded_ring(["X1", "X2"])
    rep = borel_fix_check(Ideal(A, [A.variable(1)]))
    assert not rep.is_borel
    mono, i, j, s = rep.witness
    assert (i, j, s) == (0, 1, 1)


def test_borel_check_char_p():
    # Frobenius power (x^2, y^2): 2-Borel but not 0-Borel
    A = graded_ring(["x", "y"])
    J = Ideal(A, [parse_polynomial("x^2", A), parse_polynomial("y^2", A)])
    # char 0: (x/y) y^2 = x y is missing
    rep0 = borel_fix_check(J, 0)
    assert not rep0.is_borel
    # char 2: binom(2,1) vanishes mod 2, so only the full move s=2 is tested
    assert borel_fix_check(J, 2).is_borel


def test_borel_regularity_of_pure_power():
    A = graded_ring(["X1", "X2"])
    assert borel_regularity(Ideal(A, [parse_polynomial("X1^2", A)])) == (2, 0)


def test_borel_regularity_requires_borel():
    A = graded_ring(["x", "y"])
    with pytest.raises(GinError):
        borel_regularity(Ideal(A, [A.variable(1)]))


def _random_borel_ideal(rng, ring):
    """Borel closure of a few random monomials (exchange moves to smaller indices)."""
    from reeslab.ginreg import _degree_blocks

    blocks = _degree_blocks(ring)
    seeds = []
    for _ in range(rng.randint(1, 3)):
        mono = [0] * ring.nvars
        for _ in range(rng.randint(1, 3)):
            mono[rng.randrange(ring.nvars)] += 1
        seeds.append(tuple(mono))
    closed = set(seeds)
    frontier = list(seeds)
    while frontier:
        m = frontier.pop()
        for block in blocks:
            for bj, j in enumerate(block):
                if m[j] == 0:
                    continue
                for i in block[:bj]:
                    moved = list(m)
                    moved[j] -= 1
                    moved[i] += 1
                    moved = tuple(moved)
                    if moved not in closed:
                        closed.add(moved)
                        frontier.append(moved)
    gens = [Polynomial(ring, {m: ring.field.one}) for m in closed]
    from reeslab.groebner import minimal_generators

    return Ideal(ring, minimal_generators(ring, gens))


def test_borel_regularity_matches_shift_oracle():
    ring = RingSpec(QQ, ("X1", "X2", "Y1", "Y2"), ((1, 0), (1, 0), (0, 1), (0, 1)))
    rng = random.Random(41)
    checked = 0
    while checked < 8:
        J = _random_borel_ideal(rng, ring)
        if J.is_zero():
            continue
        rep = borel_fix_check(J)
        assert rep.is_borel
        d1, d2 = rep.delta
        window = (d1 + d2 + 4, d1 + d2 + 4)
        table = bigraded_betti_table(J, window, as_module="ideal")
        if not table.complete:
            continue
        inv = invariants_from_shifts(table)
        assert inv.reg == (d1, d2)
        checked += 1


def test_bayer_stillman_on_exact_regularity():
    A = graded_ring(["X1", "X2"])
    I = Ideal(A, [parse_polynomial("X1^2", A), parse_polynomial("X2^3", A)])
    # complete intersection: regularity 2 + 3 - 1 = 4
    assert bayer_stillman_check(I, 4, seed=8).verdict is True
    assert bayer_stillman_check(I, 3, seed=8).verdict is False


def test_bayer_stillman_regular_pair(regular_pair_ideal):
    check = bayer_stillman_check(regular_pair_ideal, 1, seed=3)
    assert check.verdict is True
    assert check.forms_used <= 2


def test_degenerate_coordinate_changes_rejected():
    # entry bound 0 makes every "generic" change the identity; the stable
    # result (X2^2) is not Borel-fix, which the audit must refuse
    A = graded_ring(["X1", "X2"])
    I = Ideal(A, [parse_polynomial("X2^2", A)])
    with pytest.raises(GinError):
        generic_initial_ideal(I, entry_bound=0, max_rounds=1)
    # with honest random changes the result is (X1^2)
    out = generic_initial_ideal(I, seed=1)
    assert [g.leading_monomial() for g in out.ideal.gens] == [(2, 0)]


def test_bayer_stillman_preconditions(S22):
    I = Ideal(S22, [parse_polynomial("X1^2*Y1", S22)])
    with pytest.raises(GinError):
        bayer_stillman_check(I, 1)  # generator above the degree bound
