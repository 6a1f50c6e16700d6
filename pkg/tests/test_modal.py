import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from afaset import (
    And,
    Bot,
    Box,
    Delta,
    Dia,
    Neg,
    Or,
    ParseError,
    RankTooLarge,
    Top,
    char_formula,
    decorate,
    empty,
    modally_equivalent,
    normalize,
    omega,
    pair,
    parse_formula,
    satisfies,
    singleton,
    unfold,
    von_neumann,
)
from afaset.modal import format_formula, is_core, size, tree_size
from afaset.randsys import random_system

from conftest import self_loop, two_cycle
from helpers import random_formula, sat_by_members

NO_MEMBERS = Neg(Dia(Top()))


def random_sets(seed, count, max_nodes=6):
    rng = random.Random(seed)
    return [decorate(random_system(rng.randint(1, max_nodes), rng.uniform(0, 2.5), rng)) for _ in range(count)]


# -- parsing ------------------------------------------------------------------------------------


def test_parse_examples():
    assert parse_formula("dia(top)") == Dia(Top())
    assert normalize(parse_formula("dia(top)")) == Dia(And(()))
    assert parse_formula("not dia(top)") == NO_MEMBERS
    f = parse_formula("and(dia(not dia(top)), box(not dia(top)))")
    assert f == And((Dia(NO_MEMBERS), Box(NO_MEMBERS)))


def test_parse_all_connectives():
    f = parse_formula("  delta( or(top, bot), and(), box( not bot ) )")
    assert f == Delta((Or((Top(), Bot())), And(()), Box(Neg(Bot()))))


def test_positions_are_recorded_but_ignored_by_equality():
    f = parse_formula("not  dia(top)")
    assert f.pos == 0 and f.body.pos == 5
    assert f == Neg(Dia(Top()))


@pytest.mark.parametrize(
    "text, column",
    [
        ("", 1),
        ("dia(top", 8),
        ("dia top", 5),
        ("and(top,)", 9),
        ("top top", 5),
        ("foo", 1),
        ("dia($)", 5),
        ("not", 4),
    ],
)
def test_parse_errors_report_column(text, column):
    with pytest.raises(ParseError) as exc:
        parse_formula(text)
    assert exc.value.column == column


def test_format_round_trip():
    rng = random.Random(3)
    for _ in range(300):
        f = random_formula(rng, 4)
        assert parse_formula(format_formula(f)) == f


# -- satisfaction examples -----------------------------------------------------------------------


def test_satisfaction_examples():
    assert satisfies(empty(), Box(Bot()))
    assert satisfies(omega(), Dia(Top()))
    assert not satisfies(empty(), Dia(Top()))
    assert satisfies(omega(), Dia(Dia(Top())))
    assert satisfies(omega(), And(()))
    assert not satisfies(von_neumann(1), Dia(Dia(Top())))


def test_delta_of_empty_description():
    f = parse_formula("and(dia(not dia(top)), box(not dia(top)))")
    g = Delta((NO_MEMBERS,))
    for a in random_sets(5, 100) + [singleton(empty()), von_neumann(2), omega()]:
        assert satisfies(a, f) == satisfies(a, g) == (a is singleton(empty()))


# -- the satisfaction laws ----------------------------------------------------------------------


def test_sa_laws_against_member_enumeration():
    rng = random.Random(7)
    sets = random_sets(8, 200)
    for _ in range(2000):
        a = rng.choice(sets)
        f = random_formula(rng, 4)
        ours = satisfies(a, f)
        assert ours == sat_by_members(a, f)
        assert satisfies(a, Neg(f)) != ours
        parts = tuple(random_formula(rng, 3) for _ in range(rng.randint(0, 3)))
        assert satisfies(a, And(parts)) == all(satisfies(a, p) for p in parts)
        assert satisfies(a, Dia(f)) == any(sat_by_members(b, f) for b in a)
        assert satisfies(a, normalize(f)) == ours


def test_normalize_is_core_and_idempotent():
    rng = random.Random(9)
    for _ in range(300):
        f = random_formula(rng, 4)
        g = normalize(f)
        assert is_core(g)
        assert normalize(g) == g


def test_normalize_identities():
    p, q = Dia(Top()), NO_MEMBERS
    assert normalize(Or((p, q))) == Neg(And((Neg(normalize(p)), Neg(normalize(q)))))
    assert normalize(Box(p)) == Neg(Dia(Neg(normalize(p))))
    assert normalize(Top()) == And(())
    assert normalize(Bot()) == Neg(And(()))


@st.composite
def formulas(draw, depth=3):
    if depth == 0:
        return draw(st.sampled_from([Top(), Bot()]))
    sub = formulas(depth - 1)
    return draw(
        st.one_of(
            st.sampled_from([Top(), Bot()]),
            sub.map(Neg),
            sub.map(Dia),
            sub.map(Box),
            st.lists(sub, max_size=3).map(lambda xs: And(tuple(xs))),
            st.lists(sub, max_size=3).map(lambda xs: Or(tuple(xs))),
            st.lists(sub, max_size=3).map(lambda xs: Delta(tuple(xs))),
        )
    )


@st.composite
def hypersets(draw):
    n = draw(st.integers(1, 5))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    from afaset import build_system

    return decorate(build_system(range(n), edges, 0))


@settings(max_examples=300, deadline=None)
@given(hypersets(), formulas())
def test_property_sa_clauses(a, f):
    assert satisfies(a, f) == sat_by_members(a, f)
    assert satisfies(a, Neg(f)) != satisfies(a, f)
    assert satisfies(a, normalize(f)) == satisfies(a, f)


# -- characteristic formulas ------------------------------------------------------------------------


def test_char_formula_examples():
    assert char_formula(omega(), 0) == Top()
    assert char_formula(empty(), 0) == Top()
    phi = char_formula(empty(), 1)
    assert phi == Delta(())
    assert normalize(phi) == And((And(()), Neg(Dia(Neg(Neg(And(())))))))
    assert char_formula(omega(), 1) == Delta((Top(),))
    for a in random_sets(13, 60):
        assert satisfies(a, phi) == (a is empty())
        assert satisfies(a, char_formula(omega(), 1)) == (len(a) > 0)


def test_self_satisfaction():
    for a in random_sets(17, 60) + [empty(), omega()]:
        for k in range(6):
            assert satisfies(a, char_formula(a, k))


def test_unfolding_bridge_randomized():
    pool = random_sets(19, 40, max_nodes=5) + [empty(), omega(), singleton(empty())]
    for a, b in itertools.product(pool, repeat=2):
        for k in range(5):
            assert satisfies(b, char_formula(a, k)) == (unfold(a, k) is unfold(b, k))


def test_modal_equivalence_examples():
    a, b = decorate(self_loop()), decorate(two_cycle())
    for k in range(8):
        assert modally_equivalent(a, b, k)
    # both unfold to {∅} at rank 1; the empty member shows up from rank 2
    assert modally_equivalent(omega(), pair(omega(), empty()), 1)
    assert unfold(omega(), 1) is unfold(pair(omega(), empty()), 1)
    assert not modally_equivalent(omega(), pair(omega(), empty()), 2)
    for x in random_sets(23, 20):
        assert modally_equivalent(x, x, 5)


def test_modal_equivalence_at_total_size_is_equality():
    rng = random.Random(29)
    for _ in range(300):
        s = random_system(rng.randint(1, 8), rng.uniform(0, 2.5), rng)
        t = random_system(rng.randint(1, 8), rng.uniform(0, 2.5), rng)
        a, b = decorate(s), decorate(t)
        n = len(s) + len(t)
        assert modally_equivalent(a, b, n) == (a is b)


def test_char_formula_shares_structure():
    # written out, the formula for n doubles with every step
    f = char_formula(von_neumann(12), 13)
    assert size(f) == 13
    assert tree_size(f) == 2**12


def test_rank_too_large():
    with pytest.raises(RankTooLarge):
        char_formula(von_neumann(30), 31, budget=20)
    with pytest.raises(RankTooLarge):
        modally_equivalent(von_neumann(30), von_neumann(29), 31, budget=20)
    with pytest.raises(RankTooLarge):
        format_formula(char_formula(von_neumann(12), 13), budget=1000)
    assert size(char_formula(von_neumann(30), 31)) == 31


def test_negative_rank():
    with pytest.raises(ValueError):
        char_formula(omega(), -1)
