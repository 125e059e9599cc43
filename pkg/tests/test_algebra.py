import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cix.algebra import (
    ClassSpec,
    GroupElement,
    LabelledCycleType,
    canonical_rep,
    conjugate,
    conjugate_via_multiply,
    coxeter_matrix,
    from_cycles,
    has_involution_shape,
    identity,
    inverse,
    is_identity,
    is_involution,
    labelled_cycle_type,
    labelled_cycles,
    multiply,
    parse_element,
    parse_type,
    project_to_weyl,
    render_element,
    simple_reflections,
)
from cix.errors import (
    ElementParseError,
    InconsistentSpecError,
    NotAnInvolutionError,
    RankMismatchError,
)

import oracles


@st.composite
def elements(draw, n=None, bound=4):
    if n is None:
        n = draw(st.integers(2, 6))
    perm = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
    v = draw(st.lists(st.integers(-bound, bound), min_size=n, max_size=n))
    return GroupElement(tuple(p * s for p, s in zip(perm, signs)), tuple(v))


@st.composite
def same_rank(draw, k, lo=2, hi=6):
    n = draw(st.integers(lo, hi))
    return [draw(elements(n)) for _ in range(k)]


@st.composite
def involutions(draw, n=None, bound=4):
    if n is None:
        n = draw(st.integers(2, 6))
    pts = list(draw(st.permutations(range(1, n + 1))))
    m = draw(st.integers(0, n // 2))
    cycles = []
    for i in range(m):
        a, b = pts[2 * i], pts[2 * i + 1]
        cycles.append(((a, b), draw(st.sampled_from((1, -1))), draw(st.integers(-bound, bound))))
    for p in pts[2 * m :]:
        if draw(st.booleans()):
            cycles.append(((p,), -1, draw(st.integers(-bound, bound))))
    g = from_cycles(n, cycles)
    if is_identity(g):
        g = from_cycles(n, [((1,), -1, 0)])
    return g


# --- group law against the matrix oracle -----------------------------------


def test_product_example():
    g = parse_element("+2(1 2) @2")
    h = parse_element("+4(1 2) @2")
    assert multiply(g, h) == GroupElement((1, 2), (2, -2))


def test_identity_is_neutral():
    g = parse_element("+1(1 3) -2(2) @3")
    assert multiply(g, identity(3)) == g
    assert multiply(identity(3), g) == g
    assert conjugate(g, identity(3)) == g


@settings(max_examples=300)
@given(same_rank(2))
def test_multiply_matches_matrices(pair):
    g, h = pair
    assert multiply(g, h) == oracles.mat_multiply(g, h)


@settings(max_examples=300)
@given(same_rank(3))
def test_associativity(triple):
    g, h, k = triple
    assert multiply(multiply(g, h), k) == multiply(g, multiply(h, k))


def test_associativity_exhaustive_small_window():
    elems = list(oracles.window_elements(2, 1))
    rng = random.Random(7)
    for g, h in itertools.product(elems, repeat=2):
        k = rng.choice(elems)
        assert multiply(multiply(g, h), k) == multiply(g, multiply(h, k))


@settings(max_examples=300)
@given(elements())
def test_inverse_law(g):
    e = identity(g.n)
    assert multiply(g, inverse(g)) == e
    assert multiply(inverse(g), g) == e
    assert inverse(g) == oracles.mat_inverse(g)


@settings(max_examples=300)
@given(same_rank(2))
def test_conjugation_closed_form(pair):
    x, g = pair
    assert conjugate(x, g) == conjugate_via_multiply(x, g) == oracles.mat_conjugate(x, g)


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        multiply(identity(2), identity(3))
    with pytest.raises(RankMismatchError):
        conjugate(identity(2), identity(3))
    with pytest.raises(RankMismatchError):
        GroupElement.of((1, 2), (0, 0, 0))


def test_bad_signed_permutation():
    with pytest.raises(ValueError):
        GroupElement.of((1, 1))
    with pytest.raises(ValueError):
        GroupElement.of((1,))


def test_inverse_of_representative():
    a = canonical_rep(ClassSpec.of(5, 1, 3, 0, 0))
    assert inverse(a) == a
    assert inverse(identity(4)) == identity(4)


def test_conjugating_wi_gives_canonical_form():
    wi = parse_element("-0(1) +0(2 3) -1(4) -1(5) @5")
    # c = (h, 0) with h the product of the transpositions (1 2) and (2 3)
    h = multiply(parse_element("+0(1 2) @5"), parse_element("+0(2 3) @5"))
    c = project_to_weyl(h)
    got = conjugate(wi, c)
    assert render_element(got) == "+0(1 2) -0(3) -1(4) -1(5) @5"
    assert got == canonical_rep(ClassSpec.of(5, 1, 1, 2, 0))


# --- involutions -----------------------------------------------------------


def test_identity_not_involution():
    assert not is_involution(identity(3))


def test_example_involutions():
    x = parse_element("+0(1 2) +0(3 4) -3(5) -4(6) -3(7) -1(8) -0(9) @10")
    assert is_involution(x)
    assert labelled_cycle_type(x) == (2, 2, 3, 1)
    y = parse_element("+0(1 2) -1(3) -1(4) -3(5) -4(6) -3(7) -1(8) @10")
    assert labelled_cycle_type(y) == (1, 1, 5, 2)
    z = project_to_weyl(y)
    assert z.sigma == y.sigma and not any(z.v)
    assert labelled_cycle_type(parse_element("-0(1) @2")) == (0, 1, 0, 1)


def test_positive_fixed_point_with_label_is_not_involution():
    g = GroupElement((1, -2), (1, 0))
    assert not is_involution(g)
    assert not has_involution_shape(g)
    with pytest.raises(NotAnInvolutionError):
        labelled_cycle_type(g)


def test_involution_criteria_agree_exhaustively():
    for g in oracles.window_elements(3, 2):
        assert is_involution(g) == has_involution_shape(g) == oracles.mat_is_involution(g)


@settings(max_examples=500)
@given(elements(bound=3))
def test_involution_criteria_agree_random(g):
    assert is_involution(g) == has_involution_shape(g) == oracles.mat_is_involution(g)


def test_type_matches_oracle_exhaustive():
    for g in oracles.window_involutions(3, 2):
        assert labelled_cycle_type(g) == oracles.cycle_type(g)


def test_type_invariant_under_conjugation_exhaustive():
    conj = [GroupElement(s, v) for s, v in itertools.product(
        oracles.signed_perms(2), itertools.product(range(-2, 3), repeat=2))]
    for x in oracles.window_involutions(2, 2):
        t = labelled_cycle_type(x)
        for g in conj:
            assert labelled_cycle_type(conjugate(x, g)) == t


@settings(max_examples=300)
@given(st.data())
def test_type_invariant_under_conjugation(data):
    x = data.draw(involutions())
    g = data.draw(elements(x.n))
    y = conjugate(x, g)
    assert is_involution(y)
    assert labelled_cycle_type(y) == labelled_cycle_type(x)


def test_identity_type_convention():
    assert labelled_cycle_type(identity(3)) == (0, 0, 0, 3)


def test_labelled_cycles_of_negative_transposition():
    g = parse_element("-3(1 2) @2")
    assert g == GroupElement((-2, -1), (3, 3))
    (c,) = labelled_cycles(g)
    assert (c.entries, c.sign, c.label) == ((1, 2), -1, 3)


# --- canonical representatives ---------------------------------------------


def test_canonical_examples():
    assert render_element(canonical_rep(ClassSpec.of(5, 1, 3, 0, 0))) == "+0(1 2) -0(3) -0(4) -0(5) @5"
    assert canonical_rep(ClassSpec.of(3, 0, 0, 0, 3)) == identity(3)
    assert render_element(canonical_rep(ClassSpec.of(6, 1, 2, 1, 1))) == "+0(1 2) -0(3) -0(4) -1(5) @6"
    # the counts 1,2,1,2 sum to rank 7, so they cannot describe an element of rank 6
    with pytest.raises(InconsistentSpecError):
        ClassSpec.of(6, 1, 2, 1, 2)


def test_canonical_is_involution_of_its_type():
    for n in range(2, 8):
        for t in itertools.product(range(4), repeat=4):
            if sum(t) + t[0] != n or t == (0, 0, 0, n):
                continue
            a = canonical_rep(ClassSpec(n, t))
            assert is_involution(a)
            assert labelled_cycle_type(a) == t


def test_inconsistent_spec():
    with pytest.raises(InconsistentSpecError):
        ClassSpec(4, (1, 1, 0, 0))
    with pytest.raises(InconsistentSpecError):
        ClassSpec(1, (0, 0, 0, 1))
    with pytest.raises(InconsistentSpecError):
        ClassSpec(2, (-1, 2, 2, 0))


def test_parse_type():
    assert parse_type("1,2,0,1") == LabelledCycleType(1, 2, 0, 1)
    with pytest.raises(ValueError):
        parse_type("1,2,0")
    with pytest.raises(ValueError):
        parse_type("a,b,c,d")


# --- Coxeter data ----------------------------------------------------------


def test_simple_reflections_rank_two():
    got = [render_element(r) for r in simple_reflections(2)]
    assert got == ["-0(1) @2", "+0(1 2) @2", "-1(2) @2"]


def _power(g, k):
    out = identity(g.n)
    for _ in range(k):
        out = multiply(out, g)
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_coxeter_relations(n):
    rs = simple_reflections(n)
    assert len(rs) == n + 1
    mat = coxeter_matrix(n)
    for i, j in itertools.product(range(n + 1), repeat=2):
        prod = multiply(rs[i], rs[j])
        order = mat[i][j]
        assert is_identity(_power(prod, order))
        # the order is exact, not just a multiple
        assert all(not is_identity(_power(prod, k)) for k in range(1, order))


def test_coxeter_bonds():
    mat = coxeter_matrix(4)
    assert mat[0][1] == 4 and mat[3][4] == 4
    assert mat[1][2] == 3 and mat[2][3] == 3
    assert mat[0][2] == 2 and mat[0][4] == 2


# --- text form -------------------------------------------------------------


def test_render_examples():
    assert render_element(identity(3)) == "e@3"
    assert parse_element("e@3") == identity(3)
    assert parse_element("+0(1 2) -0(3) -0(4) -1(5) @5") == canonical_rep(ClassSpec.of(5, 1, 2, 1, 0))
    assert render_element(parse_element("-1(5) +0(1 2) @5")) == "+0(1 2) -1(5) @5"


def test_render_sorted_and_omits_trivial_fixed_points():
    g = from_cycles(4, [((3, 4), 1, 2), ((1,), -1, -2)])
    assert render_element(g) == "--2(1) +2(3 4) @4"


@pytest.mark.parametrize(
    "text",
    [
        "", "e@", "e@1", "+0(1 2)", "+0(1 2) @1", "+0(1 1) @2", "+0(1 3) @2",
        "+0(1 2)  -0(3) @3", "*0(1) @2", "+0(1 2 3) @3", "+0(1) -0(1) @2", "e@x",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ElementParseError):
        parse_element(text)


@settings(max_examples=1000)
@given(involutions())
def test_round_trip(g):
    assert parse_element(render_element(g)) == g


def test_round_trip_exhaustive():
    for g in oracles.window_involutions(3, 1):
        assert parse_element(render_element(g)) == g


def test_render_rejects_non_involution_shapes():
    g = GroupElement((2, 3, 1), (0, 0, 0))
    with pytest.raises(NotAnInvolutionError):
        render_element(g)
    assert "GroupElement" in str(g)
