import json
from fractions import Fraction

import pytest

from twofill.numerics import DomainError
from twofill.traintrack import (TrainTrack, buildT, buildT1, buildTStar, checkSwitchConditions,
                                cyclicCover, enumeratePathsThroughPiece, isTrainPath, piece_U, piece_V,
                                project, quadrivalent_loops, solve_exact, trivalent_loops)


def test_T_weights():
    t, w = buildT(8)
    assert w["e1"] == Fraction(1, 3)
    assert w["e2"] == Fraction(2, 3)
    assert w["d3"] == Fraction(1, 16)
    assert checkSwitchConditions(t, w) == []


def test_TStar_weights():
    t, w = buildTStar(8)
    assert w["f1*"] == Fraction(3, 4)
    assert w["f4*"] == Fraction(1, 16)
    assert w["h2*"] == Fraction(1, 8)
    assert checkSwitchConditions(t, w) == []


def test_perturbation_names_adjacent_switches():
    t, w = buildT(16)
    w = dict(w)
    w["c2"] = Fraction(1, 3)
    bad = checkSwitchConditions(t, w)
    assert {r["switch"] for r in bad} == set(t.branches["c2"])


def test_negative_weight_reported():
    t, w = buildT(4)
    w = dict(w, d1=Fraction(-1))
    assert any(r.get("branch") == "d1" for r in checkSwitchConditions(t, w))


def test_train_paths():
    t, _ = buildT(8)
    assert isTrainPath(t, ["b0", "b1"])
    assert not isTrainPath(t, ["e1", "e1"])
    assert isTrainPath(t, ["c3"])
    assert isTrainPath(t, ["b-1", "e1", "b0"])
    with pytest.raises(DomainError):
        isTrainPath(t, ["nope"])


def test_json_round_trip():
    t, w = buildT(4)
    t2, w2 = TrainTrack.from_json(json.loads(json.dumps(t.to_json(w))))
    assert t2.to_json(w2) == t.to_json(w)


def test_dot():
    t, w = buildT(2)
    dot = t.to_dot(w)
    assert dot.startswith("digraph") and "e2 (2/3)" in dot


def test_pieces():
    t, _ = buildTStar(16)
    v = enumeratePathsThroughPiece(t, piece_V())
    assert len(v) == 17
    assert sum(p.self_return for p in v) == 8
    assert sum(not p.self_return for p in v) == 9
    assert len(enumeratePathsThroughPiece(t, piece_U())) == 3
    assert len(enumeratePathsThroughPiece(t, piece_U(2))) == 3


def test_solve_exact():
    rows = [{"x": Fraction(1), "y": Fraction(1)}, {"x": Fraction(1), "y": Fraction(-1)}]
    assert solve_exact(rows, [Fraction(1), Fraction(0)], ["x", "y"]) == {"x": Fraction(1, 2), "y": Fraction(1, 2)}
    with pytest.raises(DomainError):
        solve_exact(rows[:1], [Fraction(1)], ["x", "y"])
    with pytest.raises(DomainError):
        solve_exact(rows + [{"x": Fraction(1)}], [Fraction(1), Fraction(0), Fraction(1)], ["x", "y"])


def test_T1_loops(T1):
    t, w = buildT1(6)
    assert checkSwitchConditions(t, w) == []
    tri = sorted((w[b] for b in trivalent_loops(t) if b != "d0"), reverse=True)
    quad = sorted((w[b] for b in quadrivalent_loops(t)), reverse=True)
    assert tri[:3] == [Fraction(1, 8), Fraction(1, 32), Fraction(1, 128)]
    assert quad[:3] == [Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)]
    assert w["e1"] == Fraction(1, 3) and w["e2"] == Fraction(2, 3)


def test_T1_depth_rejected():
    with pytest.raises(DomainError):
        buildT1(0)


def test_identity_cover(T1):
    t, w = cyclicCover(T1, 1)
    assert t.to_json(w) == T1[0].to_json(T1[1])


@pytest.mark.parametrize("n", [2, 3])
def test_cover(T1, n):
    t, w = cyclicCover(T1, n)
    assert checkSwitchConditions(t, w) == []
    base = T1[0].branches
    counts = {}
    for b in t.branches:
        counts[project(b)] = counts.get(project(b), 0) + 1
    assert counts == {b: n for b in base}
    assert all(w[b] == T1[1][project(b)] for b in t.branches)


def test_cover_unwraps_the_bigon(T1):
    t, _ = cyclicCover(T1, 2)
    u, v = t.branches["e1~0"]
    assert (u, v) == ("X~0", "Y~1")
    assert t.branches["e2~0"] == ("X~0", "Y~0")


def test_cover_needs_a_cycle():
    t, w = buildT(4)
    with pytest.raises(DomainError):
        cyclicCover((t, w), 2)
