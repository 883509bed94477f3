from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotagroup.perm import (
    Permutation,
    commutator,
    compose,
    conjugate,
    cycle_type,
    element_order,
    format_cycles,
    identity,
    inverse,
    power,
    restrict,
    sign,
)
from rotagroup.word import Word, evaluate

L, R = Word.letter(0), Word.letter(1)


@st.composite
def perms(draw, n=None):
    if n is None:
        n = draw(st.integers(1, 12))
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def perm_tuple(draw, count):
    n = draw(st.integers(1, 12))
    return tuple(draw(perms(n)) for _ in range(count))


def is_bijection(p):
    return sorted(p.images.tolist()) == list(range(p.degree))


# construction


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Permutation([])


def test_from_cycles_round_trip():
    p = Permutation.from_cycles(6, [[0, 3, 5], [1, 2]])
    assert p.cycles() == [[0, 3, 5], [1, 2]]
    assert p(0) == 3 and p(5) == 0 and p(4) == 4


def test_from_cycles_rejects_repeats():
    with pytest.raises(ValueError):
        Permutation.from_cycles(4, [[0, 1], [1, 2]])


# compose / inverse


def test_compose_applies_right_first():
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    r = compose(p, q)
    assert all(r(x) == p(q(x)) for x in range(3))
    assert r == p * q


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(identity(3), identity(4))


def test_compose_with_identity(rect):
    sl = rect(2).generators[0]
    assert compose(sl, identity(6)) == sl
    assert compose(sl, power(sl, 3)).is_identity()


def test_pgl_labels_five_cycle(rect):
    f = rect(2)
    label = {(1, 2): "inf", (1, 1): 0, (2, 1): 1, (2, 2): 2, (2, 3): 3, (1, 3): 4}
    sl, sr = f.generators
    g2 = compose(inverse(sl), inverse(sr))
    assert format_cycles(g2, lambda t: label[f.coord(t)]) == "(0,1,2,3,4)"


def test_inverse_examples(rect):
    assert inverse(identity(5)).is_identity()
    for k in (2, 3, 5):
        sr = rect(k).generators[1]
        assert inverse(sr) == power(sr, 3)
    c = Permutation.from_cycles(5, [[0, 1, 2, 3, 4]])
    assert inverse(c).cycles() == [[0, 4, 3, 2, 1]]


# conjugate / commutator


def test_conjugate_identity_and_action():
    x = Permutation.from_cycles(5, [[0, 1, 2]])
    y = Permutation([4, 3, 2, 1, 0])
    assert conjugate(identity(5), x) == x
    c = conjugate(y, x)
    assert all(c(y(a)) == y(x(a)) for a in range(5))


def test_conjugate_fixes_shifted_column(rect):
    f = rect(4)
    conj = evaluate((R ** 2 * L ** 2) ** 1, f.generators)
    c = conjugate(conj, f.generators[1])
    fixed = {f.coord(t) for t in range(f.n) if c(t) == t}
    assert fixed == {(i, 3) for i in range(1, 5)}


def test_commutator_self_is_identity(rect):
    g = rect(3).generators[0]
    assert commutator(g, g).is_identity()


@pytest.mark.parametrize("k", range(4, 9))
def test_commutator_displayed_actions(rect, k):
    f = rect(k)
    sl, sr = f.generators
    a = commutator(sl, inverse(sr))
    b = commutator(sl, sr)
    for t, (i, j) in enumerate(f.cells):
        if i > 1 and j > 2:
            assert f.coord(a(t)) == (i, j - 2)
        if i < k - 1 and 1 < j < k + 1:
            assert f.coord(b(t)) == (i + 2, j)


# power / sign / cycle type / order


def test_power_examples(rect):
    f = rect(2)
    sl, sr = f.generators
    assert power(sl, 0).is_identity()
    assert power(sr, 4).is_identity()
    assert power(sr, -1) == inverse(sr)
    assert power(power(inverse(sr) * inverse(sl), 2), 5).is_identity()


def test_sign_examples(rect):
    assert sign(identity(4)) == 1
    assert sign(rect(4).generators[0]) == 1
    assert sign(rect(2).generators[0]) == -1


def test_cycle_type_examples(rect):
    ct = cycle_type(identity(6))
    assert ct.lengths == [1] * 6
    assert cycle_type(rect(3).generators[0]).counts() == Counter({4: 2, 1: 4})


def test_cycle_type_even_base_word(rect):
    f = rect(4)
    conj = (R ** 2 * L ** 2) ** 1
    base = conj * R * conj.inverse() * (R ** -1 * L ** -1) ** 2
    counts = cycle_type(evaluate(base, f.generators)).counts()
    assert counts[3] == 1 and counts[10] == 1 and counts[1] == 3
    assert set(counts) == {1, 3, 4, 10}
    assert sum(l * c for l, c in counts.items()) == 20


def test_cycle_type_representatives_are_minima():
    p = Permutation.from_cycles(7, [[5, 2, 6], [3, 1]])
    ct = cycle_type(p)
    assert sum(length for _, length in ct.cycles) == 7
    for rep, length in ct.cycles:
        orbit = {rep}
        x = p(rep)
        while x != rep:
            orbit.add(x)
            x = p(x)
        assert rep == min(orbit) and len(orbit) == length


def test_element_order_examples(rect):
    assert element_order(identity(3)) == 1
    for k in range(2, 7):
        assert element_order(rect(k).generators[1]) == 4


def test_element_order_odd_base_k7(rect):
    f = rect(7)
    w = (R ** -1 * L) ** 3 * (R ** 2 * L ** 2) ** 3 * L ** 2
    p = evaluate(w, f.generators)
    assert element_order(p) == 1560
    assert 13 in cycle_type(p).lengths


# restrict


def test_restrict_examples(rect):
    f = rect(3)
    E = [t for t, (i, j) in enumerate(f.cells) if (i + j) % 2 == 0]
    assert restrict(identity(12), E).is_identity()
    sl, sr = f.generators
    p = restrict(power(sl * sr ** 2, 2), E)
    label = lambda x: f.coord(E[x])
    assert format_cycles(p, label) == "((1,1),(3,1),(1,3))"
    q = restrict(sl, E)
    assert format_cycles(q, label) == "((1,1),(1,3),(3,3),(3,1))"
    assert sign(q) == -1


def test_restrict_rejects_non_invariant():
    with pytest.raises(ValueError):
        restrict(Permutation([1, 0, 2]), [0, 2])


def test_format_cycles_identity():
    assert format_cycles(identity(3)) == "()"


# algebraic laws


@given(perm_tuple(3))
def test_associativity(t):
    p, q, r = t
    assert (p * q) * r == p * (q * r)


@given(perms())
def test_inverse_two_sided(p):
    assert (p * ~p).is_identity() and (~p * p).is_identity()
    assert is_bijection(~p)


@given(perm_tuple(2))
def test_sign_homomorphism(t):
    p, q = t
    assert sign(p * q) == sign(p) * sign(q)
    assert is_bijection(p * q)


@given(perm_tuple(2))
def test_conjugation_preserves_cycle_type(t):
    x, y = t
    assert cycle_type(conjugate(y, x)).lengths == cycle_type(x).lengths


@given(perms(), st.integers(-20, 20))
def test_power_matches_repeated_product(p, e):
    q = identity(p.degree)
    step = p if e >= 0 else ~p
    for _ in range(abs(e)):
        q = q * step
    assert power(p, e) == q


@settings(max_examples=50)
@given(perms())
def test_element_order_is_minimal(p):
    e, q = 1, p
    while not q.is_identity():
        q = q * p
        e += 1
        assert e <= 10_000
    assert element_order(p) == e
