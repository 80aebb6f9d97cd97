import itertools

import pytest

from toruscount import gallery
from toruscount.errors import NotFaithfulError, SpecValidationError
from toruscount.orbits import FiberedSubset, FiberedAttainingSet, build_gtilde
from toruscount.torus import load_spec

from randspecs import random_faithful_spec


def space_for(doc, **kw):
    return FiberedAttainingSet(load_spec(doc), **kw)


def test_build_gtilde_square_cube_default():
    analysis = load_spec(gallery.GL1_SQUARE_CUBE)
    gt = build_gtilde(analysis)
    assert gt.lambda_ == 6
    assert gt.elements == ((0, 1), (0, 5))
    assert gt.mode == "full"


def test_build_gtilde_lambda_one_is_plain_group():
    analysis = load_spec(gallery.NORM_QUOTIENT_S4)
    gt = build_gtilde(analysis)
    assert gt.lambda_ == 1
    assert gt.order == analysis.spec.order


def test_build_gtilde_explicit_projection_must_cover_group():
    analysis = load_spec(gallery.NORM_QUOTIENT_Z4)
    with pytest.raises(SpecValidationError, match="not surjective"):
        build_gtilde(analysis, override=[(0, 1)])
    four_cycle = analysis.spec.word_to_index([0])
    gt = build_gtilde(analysis, override=[(four_cycle, 1)])
    assert gt.order == 4


def test_sigma_tilde0_sizes():
    assert len(space_for(gallery.GL1_SQUARE_CUBE).elements) == 4
    assert len(space_for(gallery.GM_TIMES_GM).elements) == 2
    assert len(space_for(gallery.GL1_STANDARD).elements) == 1


def test_sigma_tilde0_square_cube_contents():
    elements = space_for(gallery.GL1_SQUARE_CUBE).elements
    assert elements == [
        FiberedSubset((0, 1), (1,)),   # cube kernel, nontrivial fiber
        FiberedSubset((1, 0), (1,)),   # square kernel, two nontrivial fibers
        FiberedSubset((1, 0), (2,)),
        FiberedSubset((1, 1), ()),     # one-dimensional kernel, identity kept
    ]


def test_act_square_cube_unit_five():
    space = space_for(gallery.GL1_SQUARE_CUBE)
    five = (0, 5)
    swap_a = FiberedSubset((1, 0), (1,))
    swap_b = FiberedSubset((1, 0), (2,))
    assert space.act(five, swap_a) == swap_b
    assert space.act(five, swap_b) == swap_a
    fixed = FiberedSubset((0, 1), (1,))
    assert space.act(five, fixed) == fixed
    identity = (0, 1)
    for e in space.elements:
        assert space.act(identity, e) == e


def test_action_stays_inside_deleted_set():
    for doc in (gallery.GL1_SQUARE_CUBE, gallery.GM_TIMES_GM, gallery.NORM_QUOTIENT_S4):
        space = space_for(doc)
        members = set(space.elements)
        for gelem in space.gtilde.elements:
            for e in space.elements:
                assert space.act(gelem, e) in members


def test_deg_p_golden_values():
    expected = {
        "gl1-standard": 0,
        "gl1-repeated-1001": 0,
        "gl1-square-cube": 2,
        "gm-times-gm": 1,
        "norm-quotient-s3": 1,
        "norm-quotient-s4": 2,
        "norm-quotient-z4": 3,
    }
    for name, doc, fields in gallery.GALLERY:
        space = space_for(doc)
        deg, per_stratum = space.deg_P()
        assert deg == expected[name], name
        assert deg == fields["deg_P"], name
        assert sum(per_stratum.values()) == fields["orbit_count"], name


def test_per_stratum_orbits_square_cube():
    space = space_for(gallery.GL1_SQUARE_CUBE)
    _, per_stratum = space.deg_P()
    assert per_stratum == {(0, 1): 2, (1, 2): 1}


def test_deg_p_requires_faithful():
    doubled = {"dim": 1, "generators": [], "coweights": [{"vector": [2]}]}
    with pytest.raises(NotFaithfulError):
        FiberedAttainingSet(load_spec(doubled))


def test_action_composition_law_on_examples():
    for doc in (gallery.GL1_SQUARE_CUBE, gallery.GM_TIMES_GM,
                gallery.NORM_QUOTIENT_S3, gallery.NORM_QUOTIENT_S4,
                gallery.NORM_QUOTIENT_Z4):
        space = space_for(doc)
        analysis = space.analysis
        lam = space.lambda_
        for (g1, u1), (g2, u2) in itertools.product(space.gtilde.elements, repeat=2):
            prod = (analysis.spec.compose(g1, g2), (u1 * u2) % lam)
            for e in space.elements:
                assert space.act(prod, e) == space.act((g1, u1), space.act((g2, u2), e))


def test_burnside_matches_orbit_enumeration_on_examples():
    for _, doc, fields in gallery.GALLERY:
        space = space_for(doc)
        assert space.orbit_count() == fields["orbit_count"]
        assert space.burnside_orbit_count() == fields["orbit_count"]


def test_lambda_one_reduces_to_plain_subset_orbits():
    # with trivial fibers the orbit count is the group's orbit count on the
    # attaining sub-multisets of size >= 2, plus any size-1 strata that survive
    analysis = load_spec(gallery.NORM_QUOTIENT_S4)
    space = FiberedAttainingSet(analysis)
    sigma = [s for s in analysis.sigma_set() if s.size >= 2]
    seen = set()
    count = 0
    for s in sigma:
        if s.counts in seen:
            continue
        count += 1
        for g in range(analysis.spec.order):
            seen.add(analysis.act_on_subset(g, s).counts)
    assert space.orbit_count() == count


def test_burnside_on_random_specs():
    import random

    rng = random.Random(777)
    nontrivial_transports = 0
    for _ in range(25):
        analysis = random_faithful_spec(rng)
        space = FiberedAttainingSet(analysis)
        assert space.orbit_count() == space.burnside_orbit_count()
        deg, per_stratum = space.deg_P()
        assert deg == space.orbit_count() - 1
        assert sum(per_stratum.values()) == space.orbit_count()
        if any(e.fiber for e in space.elements) and analysis.spec.order > 1:
            nontrivial_transports += 1
        # composition law on sampled pairs, fibers moved through real transports
        members = set(space.elements)
        pairs = [(rng.choice(space.gtilde.elements), rng.choice(space.gtilde.elements))
                 for _ in range(10)]
        for (g1, u1), (g2, u2) in pairs:
            prod = (analysis.spec.compose(g1, g2), (u1 * u2) % max(space.lambda_, 1))
            for e in space.elements:
                image = space.act(prod, e)
                assert image in members
                assert image == space.act((g1, u1), space.act((g2, u2), e))
    # the sample must actually exercise fibered actions over nontrivial groups
    assert nontrivial_transports >= 3
