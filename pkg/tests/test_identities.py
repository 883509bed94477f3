from collections import Counter

import pytest

from oracle import cycles, quarter_turn, rect_cells, run
from rotagroup.figure import rectangle
from rotagroup.identities import (
    ChartEntry,
    alpha_word,
    FormulaId,
    L,
    R,
    check_chart,
    closed_form,
    even_chart,
    expected_cycle_chart,
    formula_word,
    verify_identity,
)
from rotagroup.perm import cycle_type
from rotagroup.three_cycle import alpha_for
from rotagroup.word import evaluate

CHARTED = (5, 7, 9, 11, 13, 15, 21, 27, 33, 39, 57, 75, 111, 183)


def applicable(k):
    out = []
    for fid in FormulaId:
        if fid is FormulaId.ALPHA_ACTION:
            if k % 2:
                out += [(fid, a) for a in range(3, k + 1)]
            continue
        if fid in (FormulaId.ODD_MAIN, FormulaId.ODD_MAIN_L2, FormulaId.ALPHA2_ACTION) and k % 2 == 0:
            continue
        if fid is FormulaId.POW_K4 and k % 4:
            continue
        out.append((fid, None))
    return out


def test_closed_form_examples():
    assert closed_form(FormulaId.SIGMA_L, 6, (1, 1)) == (1, 6)
    assert closed_form(FormulaId.RINV_L, 5, (5, 3)) == (3, 1)
    assert closed_form(FormulaId.COMM_LRINV, 4, (1, 4)) is None


@pytest.mark.parametrize(
    "fid,k,alpha",
    [
        (FormulaId.ODD_MAIN, 4, None),
        (FormulaId.POW_K4, 6, None),
        (FormulaId.ALPHA_ACTION, 7, 2),
        (FormulaId.ALPHA_ACTION, 7, 8),
        (FormulaId.SIGMA_L, 5, 3),
        (FormulaId.SIGMA_L, 1, None),
    ],
)
def test_invalid_combinations(fid, k, alpha):
    with pytest.raises(ValueError):
        closed_form(fid, k, (1, 1), alpha)


def test_only_commutators_are_partial():
    k = 7
    for fid, a in applicable(k):
        dom = sum(closed_form(fid, k, (i, j), a) is not None for i in range(1, k + 1) for j in range(1, k + 2))
        if fid in (FormulaId.COMM_LR, FormulaId.COMM_LRINV):
            assert dom < k * (k + 1)
        else:
            assert dom == k * (k + 1)


@pytest.mark.parametrize("k", range(4, 14))
def test_identities_hold(k):
    for fid, a in applicable(k):
        r = verify_identity(fid, k, a)
        assert r.passed, r.text()


def test_identity_examples():
    r = verify_identity(FormulaId.RR_LL, 5)
    assert r.passed and r.domain_size == 30
    r = verify_identity(FormulaId.ALPHA_ACTION, 7, 3)
    assert r.passed and r.domain_size == 56


def test_boundary_square_k6():
    k = 6
    f = rectangle(k)
    p = evaluate(formula_word(FormulaId.BOUNDARY_SQ, k), f.generators)
    boundary = [(i, 1) for i in range(k, 0, -1)] + [(1, j) for j in range(2, k + 2)] + [(i, k + 1) for i in range(2, k + 1)]
    assert len(boundary) == 3 * k - 1
    for idx, cell in enumerate(boundary):
        assert f.coord(p(f.index(cell))) == boundary[(idx + k + 1) % len(boundary)]
    moved = {f.coord(t) for t in p.support()}
    assert moved == set(boundary)


def test_words_agree_with_oracle():
    # the package word for ALPHA_ACTION(3) at k=7 against the reference composer
    k = 7
    cells = rect_cells(k)
    turns = [quarter_turn(k, (1, 1), cells), quarter_turn(k, (1, 2), cells)]
    ref = [(1, 3), (0, 1)] * 3 + [(1, 2), (0, 2)] * 3 + [(0, 2)]
    mapping = run(ref, turns, cells)
    f = rectangle(k)
    p = evaluate(formula_word(FormulaId.ALPHA_ACTION, k, 3), f.generators)
    assert all(f.coord(p(t)) == mapping[c] for t, c in enumerate(f.cells))
    assert sorted(len(c) for c in cycles(mapping)) == sorted(l for l in cycle_type(p).lengths if l > 1)


@pytest.mark.parametrize("k", CHARTED)
def test_chart_totals(k):
    chart = expected_cycle_chart(k)
    # entries and their multiplicities cover every tile only together with the remainder
    assert sum(e.length * e.count for e in chart) <= k * (k + 1)
    assert sum(e.length % 3 == 0 for e in chart) == 1


@pytest.mark.parametrize("k", CHARTED[:10])
def test_charts_match_base_words(k):
    f = rectangle(k)
    p = evaluate(alpha_word(k, alpha_for(k)), f.generators)
    assert check_chart(p, f, expected_cycle_chart(k, alpha_for(k))) == []
    lengths = cycle_type(p).lengths
    assert sum(lengths) == k * (k + 1)
    assert sum(1 for l in lengths if l % 3 == 0) == 1


def test_chart_k7():
    chart = expected_cycle_chart(7, 3)
    three = next(e for e in chart if e.length == 3)
    assert three.tiles == ((1, 2), (4, 7), (2, 7)) and three.ordered
    multiset = Counter()
    for e in chart:
        multiset[e.length] += e.count
    assert multiset == Counter({3: 1, 10: 1, 8: 1, 4: 2, 1: 1, 13: 2})


def test_chart_k75():
    chart = {e.length: e for e in expected_cycle_chart(75, 4)}
    assert chart[3].tiles == ((1, 3),)
    assert (74, 3) in chart[1].tiles
    assert chart[43].count == 2
    assert chart[82].tiles == tuple((1, j) for j in range(8, 74))


def test_chart_k21():
    chart = {e.length: e for e in expected_cycle_chart(21, 2)}
    assert set(chart[1].tiles) == {(12, 22), (20, 1)}
    assert chart[3].tiles == ((1, 1),)
    assert chart[25].tiles == ((1, 11),)
    assert chart[44].tiles == ((1, 3),)
    assert chart[50].tiles == tuple((1, j) for j in range(4, 11))


def test_chart_errors():
    with pytest.raises(ValueError):
        expected_cycle_chart(8)
    with pytest.raises(ValueError):
        expected_cycle_chart(75, 3)


def test_check_chart_detects_mismatch():
    f = rectangle(7)
    p = evaluate(formula_word(FormulaId.ALPHA_ACTION, 7, 3), f.generators)
    wrong = expected_cycle_chart(7) + [ChartEntry(5, ((3, 3),))]
    assert check_chart(p, f, wrong)


@pytest.mark.parametrize("k", (4, 8, 12, 16))
def test_even_chart(k):
    f = rectangle(k)
    conj = (R ** 2 * L ** 2) ** (k // 4)
    base = conj * R * conj.inverse() * (R ** -1 * L ** -1) ** 2
    p = evaluate(base, f.generators)
    assert check_chart(p, f, even_chart(k)) == []
    ten = next(e for e in even_chart(k) if e.length == 10)
    assert set(ten.tiles) == {(k // 2, 1), (k // 2, k + 1)} and ten.same_cycle
