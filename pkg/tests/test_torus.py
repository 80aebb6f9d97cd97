import random
from fractions import Fraction

import pytest

from toruscount import gallery
from toruscount.errors import NotFaithfulError, SchemaError, SpecValidationError
from toruscount.torus import SubMultiset, load_spec

from randspecs import random_faithful_spec


def test_load_gl1_trivial_group():
    analysis = load_spec(gallery.GL1_STANDARD)
    assert analysis.spec.order == 1
    assert analysis.coweights.distinct == ((1,),)
    assert analysis.coweights.m == 1


def test_load_rejects_non_unimodular_generator():
    doc = {"dim": 1, "generators": [[[2]]], "coweights": [{"vector": [1]}]}
    with pytest.raises(SpecValidationError, match="not unimodular"):
        load_spec(doc)


def test_load_rejects_unstable_multiset():
    doc = {
        "dim": 2,
        "generators": [[[0, 1], [1, 0]]],
        "coweights": [{"vector": [1, 0], "multiplicity": 1}],
    }
    with pytest.raises(SpecValidationError, match="not Galois-stable"):
        load_spec(doc)


def test_load_rejects_dim_zero():
    with pytest.raises(SpecValidationError, match="n = 0"):
        load_spec({"dim": 0, "generators": [], "coweights": []})


def test_load_schema_errors_name_the_field():
    with pytest.raises(SchemaError, match="dim"):
        load_spec({"generators": [], "coweights": []})
    with pytest.raises(SchemaError, match=r"coweights\[0\].vector"):
        load_spec({"dim": 2, "generators": [], "coweights": [{"vector": [1]}]})


def test_diag_group_square_cube_cases():
    analysis = load_spec(gallery.GL1_SQUARE_CUBE)
    # order of distinct coweights: (2,) then (3,)
    d_cube = analysis.diag_group(SubMultiset((0, 1)))
    assert d_cube.dimension == 0
    assert d_cube.pi0.invariant_factors == (2,)
    d_square = analysis.diag_group(SubMultiset((1, 0)))
    assert d_square.dimension == 0
    assert d_square.pi0.invariant_factors == (3,)
    d_full = analysis.diag_group(SubMultiset((1, 1)))
    assert d_full.dimension == 1
    assert d_full.pi0.is_trivial


def test_full_subset_gives_whole_dual_torus():
    for doc in (gallery.GL1_STANDARD, gallery.GM_TIMES_GM, gallery.NORM_QUOTIENT_S3):
        analysis = load_spec(doc)
        full = SubMultiset(analysis.coweights.multiplicity)
        diag = analysis.diag_group(full)
        assert diag.dimension == analysis.spec.n
        assert diag.pi0.is_trivial


def test_faithfulness():
    assert load_spec(gallery.GL1_STANDARD).is_faithful()
    assert load_spec(gallery.GL1_REPEATED_1001).is_faithful()
    doubled = {"dim": 1, "generators": [], "coweights": [{"vector": [2]}]}
    assert not load_spec(doubled).is_faithful()


def test_invariant_A_values():
    assert load_spec(gallery.GL1_STANDARD).invariant_A()[0] == 2
    assert load_spec(gallery.GL1_REPEATED_1001).invariant_A()[0] == Fraction(2, 1001)
    assert load_spec(gallery.GL1_SQUARE_CUBE).invariant_A()[0] == 1
    assert load_spec(gallery.GM_TIMES_GM).invariant_A()[0] == 2


def test_invariant_A_requires_faithful():
    doubled = {"dim": 1, "generators": [], "coweights": [{"vector": [2]}]}
    with pytest.raises(NotFaithfulError):
        load_spec(doubled).invariant_A()


def test_invariant_A_witness_tie_break_is_lex_smallest():
    analysis = load_spec(gallery.GM_TIMES_GM)
    _, witness = analysis.invariant_A()
    assert witness.counts == (0, 1)


def test_sigma_sets():
    assert [s.counts for s in load_spec(gallery.GL1_STANDARD).sigma_set()] == [(1,)]
    assert [s.counts for s in load_spec(gallery.GL1_SQUARE_CUBE).sigma_set()] == [
        (0, 1), (1, 0), (1, 1)]
    assert [s.counts for s in load_spec(gallery.GM_TIMES_GM).sigma_set()] == [
        (0, 1), (1, 0)]


def test_lambda_values():
    assert load_spec(gallery.GL1_STANDARD).lambda_invariant() == 1
    assert load_spec(gallery.GL1_SQUARE_CUBE).lambda_invariant() == 6
    assert load_spec(gallery.GM_TIMES_GM).lambda_invariant() == 1
    assert load_spec(gallery.NORM_QUOTIENT_S4).lambda_invariant() == 1


def test_strata():
    strata = load_spec(gallery.GL1_SQUARE_CUBE).strata()
    assert {k: [s.counts for s in v] for k, v in strata.items()} == {
        (0, 1): [(0, 1), (1, 0)],
        (1, 2): [(1, 1)],
    }
    assert set(load_spec(gallery.GL1_STANDARD).strata()) == {(1, 1)}
    assert set(load_spec(gallery.GM_TIMES_GM).strata()) == {(1, 1)}


def test_abscissae():
    a1 = load_spec(gallery.GL1_STANDARD)
    assert a1.abscissa("ramified") == 1
    assert a1.abscissa("archimedean") == 1
    a3 = load_spec(gallery.GL1_SQUARE_CUBE)
    assert a3.abscissa("ramified") == Fraction(1, 2)
    assert a3.abscissa("archimedean") == Fraction(1, 2)
    a2 = load_spec(gallery.GL1_REPEATED_1001)
    assert a2.abscissa("ramified") == Fraction(1, 1001)
    assert a2.abscissa("archimedean") == Fraction(1, 1001)


def test_action_permutations_compose():
    analysis = load_spec(gallery.NORM_QUOTIENT_S4)
    spec = analysis.spec
    action = analysis.coweights.action
    for i in range(spec.order):
        for j in range(spec.order):
            k = spec.compose(i, j)
            composed = tuple(action[i][action[j][x]] for x in range(len(analysis.coweights)))
            assert composed == action[k]


def test_action_preserves_dimension_and_pi0():
    analysis = load_spec(gallery.NORM_QUOTIENT_S4)
    for s in analysis.subsets():
        base = analysis.diag_group(s)
        for g in range(analysis.spec.order):
            moved = analysis.diag_group(analysis.act_on_subset(g, s))
            assert moved.dimension == base.dimension
            assert moved.pi0.invariant_factors == base.pi0.invariant_factors


def test_diag_group_monotone_in_subset():
    analysis = load_spec(gallery.GL1_SQUARE_CUBE)
    subsets = list(analysis.subsets())
    for s in subsets:
        for t in subsets:
            if all(a <= b for a, b in zip(s.counts, t.counts)):
                assert analysis.diag_group(s).dimension <= analysis.diag_group(t).dimension


def test_exponent_bounds_on_random_faithful_specs():
    rng = random.Random(1234)
    for _ in range(60):
        analysis = random_faithful_spec(rng)
        value, witness = analysis.invariant_A()
        n, m = analysis.spec.n, analysis.coweights.m
        assert Fraction(n + 1, m) <= value <= 2
        assert value.denominator <= m
        diag = analysis.diag_group(witness)
        assert not diag.is_trivial
        assert Fraction(diag.dimension + 1, witness.size) == value
        assert analysis.abscissa("ramified") < value
        assert analysis.abscissa("archimedean") < value
