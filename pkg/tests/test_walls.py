import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphastab import SheafClass, product_p1_p1
from alphastab.io import problem_from_dict, read_json, region_from_dict, variety_from_dict
from alphastab.models import builtin
from alphastab.walls import (BoxCoord, CompactRegion, ParameterSpace, SectionFrame, Wall, build_wall,
                             enumerate_candidates, sample_chambers, sign_vector, wall_crossing_report, wall_system,
                             verdict_constancy_check)
from helpers import INSTANCES, exp_class

X = product_p1_p1()


def load(stem, model=None):
    prob_doc = read_json(INSTANCES / f"{stem}_problem.json")
    if model is None:
        model = variety_from_dict(read_json(INSTANCES / "threefold_model.json")) if "threefold" in stem \
            else builtin("p1xp1")
    prob = problem_from_dict(model, prob_doc)
    reg = region_from_dict(model, read_json(INSTANCES / f"{stem}_region.json"), prob.d, prob.r)
    return model, prob, reg


def p1p1_setup():
    space = ParameterSpace.standard(X, 2, 1, {1: [1, 1], 2: [1]})
    region = CompactRegion.from_ambient(space, {1: [[Fr(1, 3), Fr(2, 3)], [Fr(2, 3), Fr(1, 3)]], 2: [[1]]})
    gamma = SheafClass(exp_class(X, [1, 0]) + exp_class(X, [0, 1]), 2)
    cands = [("O(1,0)", SheafClass(exp_class(X, [1, 0]), 2)), ("O(0,1)", SheafClass(exp_class(X, [0, 1]), 2))]
    return space, region, gamma, cands


def test_section_frame_validation():
    fr = SectionFrame.standard(X, 1, [1, 1])
    assert fr.origin == (0, 1) and fr.directions == ((1, -1),)
    assert fr.to_chart([Fr(1, 3), Fr(2, 3)]) == (Fr(1, 3),)
    assert fr.to_ambient([Fr(1, 4)]) == (Fr(1, 4), Fr(3, 4))
    with pytest.raises(ValueError):
        fr.to_chart([1, 1])
    with pytest.raises(ValueError):
        SectionFrame(X, 1, (1, 1), (1, 1), ((1, -1),))  # origin off the section
    with pytest.raises(ValueError):
        SectionFrame(X, 1, (1, 1), (0, 1), ((1, 1),))  # direction not parallel
    with pytest.raises(ValueError):
        SectionFrame(X, 1, (1, 1), (0, 1), ())  # too few directions
    with pytest.raises(ValueError):
        SectionFrame.standard(X, 1, [-1, -1])  # misses the ample cone


def test_build_wall_p1p1_example():
    space, _, gamma, cands = p1p1_setup()
    w = build_wall(gamma, cands[0][1], 1, space)
    # on the segment (x, 1 - x) the wall is proportional to 1 - 2x
    vals = [w.evaluate({1: (x,), 2: ()}) for x in (Fr(0), Fr(1, 4), Fr(1, 2), Fr(1))]
    k = vals[0]
    assert k != 0
    assert vals == [k * (1 - 2 * x) for x in (Fr(0), Fr(1, 4), Fr(1, 2), Fr(1))]
    assert not w.is_bilinear and w.depends_on() == {1}


def test_null_walls():
    space, _, gamma, _ = p1p1_setup()
    assert build_wall(gamma, gamma, 1, space) is None
    assert build_wall(gamma, gamma.scale(2), 1, space) is None
    with pytest.raises(ValueError):
        build_wall(gamma, gamma, 2, space)


def test_wall_system_dedup_and_empty():
    _, region, gamma, cands = p1p1_setup()
    ws = wall_system(gamma, region, cands)
    assert len(ws) == 1
    assert {s[0] for s in ws.walls[0].sources} == {"O(1,0)", "O(0,1)"}
    assert ws.walls[0].normalized() == ws.walls[0].matrix
    assert len(wall_system(gamma, region, [])) == 0


def test_nonuniform_candidate_excluded():
    _, region, gamma, _ = p1p1_setup()
    big = SheafClass(exp_class(X, [1, 0]).scale(2), 2)  # top degree equals that of gamma
    ws = wall_system(gamma, region, [("big", big)])
    assert ws.excluded == ["big"] and len(ws) == 0


def test_prismatic_walls_depend_on_one_codim():
    _, prob, reg = load("threefold_prismatic")
    ws = wall_system(prob.gamma, reg.K, prob.candidates)
    assert len(ws) >= 1 and not ws.bilinear
    assert all(len(w.depends_on()) == 1 for w in ws)


def test_bilinear_instance_has_bilinear_wall():
    _, prob, reg = load("threefold_bilinear")
    ws = wall_system(prob.gamma, reg.K, prob.candidates)
    assert ws.bilinear


def test_sign_vector_examples():
    _, region, gamma, cands = p1p1_setup()
    ws = list(wall_system(gamma, region, cands))
    s1 = sign_vector({1: (Fr(1, 3),), 2: ()}, ws)
    s2 = sign_vector({1: (Fr(2, 3),), 2: ()}, ws)
    assert s1 == (-s2[0],) and s1[0] != 0
    assert sign_vector({1: (Fr(1, 2),), 2: ()}, ws) == (0,)


def test_zero_walls_single_chamber():
    _, region, _, _ = p1p1_setup()
    ch = sample_chambers([], region, 50, seed=3)
    assert len(ch) == 1 and ch[0].signs == () and ch[0].hits == 50


def test_p1p1_two_chambers():
    _, region, gamma, cands = p1p1_setup()
    ws = wall_system(gamma, region, cands)
    assert len(sample_chambers(ws, region, 200)) == 2


def test_enumerate_candidates_contains_line_bundles():
    model, prob, reg = load("p1xp1")
    found = enumerate_candidates(prob.gamma, reg.K, reg.box)
    chs = {F.ch for F in found}
    assert exp_class(model, [1, 0]) in chs and exp_class(model, [0, 1]) in chs


def test_enumerate_candidates_empty_cases():
    model, prob, reg = load("p1xp1")
    no_rank = [BoxCoord(0, 0, Fr(0), Fr(0)), BoxCoord(1, 0, Fr(-1), Fr(1)), BoxCoord(1, 1, Fr(-1), Fr(1))]
    assert enumerate_candidates(prob.gamma, reg.K, no_rank) == []
    assert enumerate_candidates(prob.gamma, reg.K, reg.box, M=Fr(-100)) == []


@pytest.mark.parametrize("stem", ["p1xp1", "threefold_prismatic", "threefold_bilinear"])
def test_constancy_on_instances(stem):
    _, prob, reg = load(stem)
    ws = wall_system(prob.gamma, reg.K, prob.candidates)
    rep = verdict_constancy_check(prob.gamma, ws, reg.K, prob.candidates, samples=500, seed=0, mode=prob.mode)
    assert rep.ok, rep.violations[:2]
    assert rep.chambers >= 2


@pytest.mark.parametrize("stem", ["p1xp1", "threefold_prismatic", "threefold_bilinear"])
def test_stratified_subset_of_all(stem):
    _, prob, reg = load(stem)
    full = {w.key() for w in wall_system(prob.gamma, reg.K, prob.candidates)}
    strat = {w.key() for w in wall_system(prob.gamma, reg.K, prob.candidates, pruning="stratified")}
    assert strat <= full


def test_crossing_p1p1():
    space, region, gamma, cands = p1p1_setup()
    ws = list(wall_system(gamma, region, cands))
    ev = wall_crossing_report(gamma, ({1: (Fr(1, 3),), 2: ()}, {1: (Fr(2, 3),), 2: ()}), ws, space, cands)
    assert len(ev) == 1
    assert ev[0].t == Fr(1, 2) and ev[0].multiplicity == 1
    assert ev[0].before != ev[0].after
    assert ev[0].before[0][1].value == "unstable" and ev[0].after[0][1].value == "unstable"
    assert [c for c, _ in ev[0].before[0][2]] == ["O(1,0)"] and [c for c, _ in ev[0].after[0][2]] == ["O(0,1)"]


def test_crossing_two_walls_in_order():
    space, region, gamma, _ = p1p1_setup()
    # walls 4x - 3 = 0 and 4x - 1 = 0, segment x from 1/8 to 7/8
    w1 = Wall(1, 2, ((Fr(-3), Fr(4)),), ())
    w2 = Wall(1, 2, ((Fr(-1), Fr(4)),), ())
    seg = ({1: (Fr(1, 8),), 2: ()}, {1: (Fr(7, 8),), 2: ()})
    ev = wall_crossing_report(gamma, seg, [w1, w2], space, [])
    assert [(e.wall, e.t) for e in ev] == [(1, Fr(1, 6)), (0, Fr(5, 6))]
    # inside one chamber nothing is crossed
    assert wall_crossing_report(gamma, ({1: (Fr(1, 3),), 2: ()}, {1: (Fr(2, 3),), 2: ()}), [w1], space, []) == []
    with pytest.raises(ValueError):
        wall_crossing_report(gamma, ({1: (Fr(1, 4),), 2: ()}, {1: (Fr(3, 4),), 2: ()}), [w2], space, [])


def test_bilinear_crossing_irrational():
    _, prob, reg = load("threefold_bilinear")
    ws = list(wall_system(prob.gamma, reg.K, prob.candidates))
    ev = wall_crossing_report(prob.gamma, reg.segment, ws, reg.space, prob.candidates)
    assert ev and all(0 < float(e.t) < 1 for e in ev)
    assert any(e.t.q != 0 for e in ev)  # at least one crossing is irrational


def test_finiteness_bound():
    _, prob, reg = load("threefold_prismatic")
    ws = wall_system(prob.gamma, reg.K, prob.candidates)
    assert len(ws) <= len(prob.candidates) * (reg.space.d - reg.space.r)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31))
def test_chambers_deterministic_in_seed(seed):
    _, region, gamma, cands = p1p1_setup()
    ws = list(wall_system(gamma, region, cands))
    a = sample_chambers(ws, region, 40, seed=seed)
    b = sample_chambers(ws, region, 40, seed=seed)
    assert a == b


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_same_sign_same_verdict_threefold(seed):
    """Random points in one chamber of the prismatic instance share verdicts."""
    from alphastab.walls import verdict_signature
    _, prob, reg = load("threefold_prismatic")
    ws = list(wall_system(prob.gamma, reg.K, prob.candidates))
    rng = random.Random(seed)
    p, q = reg.K.sample(rng), reg.K.sample(rng)
    sp_, sq = sign_vector(p, ws), sign_vector(q, ws)
    if sp_ == sq and 0 not in sp_:
        assert verdict_signature(prob.gamma, reg.space, p, prob.candidates) == \
            verdict_signature(prob.gamma, reg.space, q, prob.candidates)
