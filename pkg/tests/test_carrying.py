from fractions import Fraction

import pytest

from twofill import carrying
from twofill.numerics import DomainError
from twofill.rectcomplex import accumulates, boundaryPaths, buildComplex
from twofill.traintrack import buildT, buildTStar, isTrainPath


def test_zeta_examples():
    assert carrying.zeta("b2") == [("f1*", 1), ("h1*", 1), ("f1*", -1), ("f0*", -1), ("f-1*", -1)]
    assert carrying.zeta("c4") == [("c4*", 1)]
    assert carrying.zeta("c5") == [("f-4*", -1), ("c5*", -1)]
    assert carrying.zeta("e2") == [("e2*", 1)]
    with pytest.raises(DomainError):
        carrying.zeta("x3")


@pytest.mark.parametrize("name,value", [
    ("f1*", Fraction(3, 4)), ("f-2*", Fraction(1, 4)), ("c3*", Fraction(1, 8)), ("f0", Fraction(1)),
    ("h3*", Fraction(1, 16)), ("f5*", Fraction(3, 64)),
])
def test_induced_weight(name, value):
    assert carrying.inducedWeight(name) == value


def test_f1_by_hand():
    # 2*(1/4) from b2, 1/8 from b3, and the remaining levels sum to 1/8
    contrib = {b: sum(1 for x, _ in carrying.zeta(b) if x == "f1*") * carrying.weight_T(b)
               for n in range(1, 30) for b in carrying._level(n)}
    assert contrib["b2"] == Fraction(1, 2)
    assert contrib["b3"] == Fraction(1, 8)
    rest = sum(v for k, v in contrib.items() if k not in ("b2", "b3"))
    assert Fraction(1, 8) - rest < Fraction(1, 2 ** 25)


def test_induced_weights_close_switches():
    t, _ = buildTStar(12)
    ws = carrying.inducedWeights(names=[b for b in t.branches])
    _, listed = buildTStar(12)
    assert all(ws[b] == listed[b] for b in t.branches)


def test_custom_maps_rejected():
    with pytest.raises(DomainError):
        carrying.inducedWeights(zetaMap={})


def test_translate():
    assert carrying.xiTranslate(["b0", "b1"]) == [("b0*", 1), ("b1*", 1), ("f0*", 1)]
    assert carrying.xiTranslate([]) == []
    back = carrying.xiTranslate([("b1", -1), ("b0", -1)])
    assert back == [("f0*", -1), ("b1*", -1), ("b0*", -1)]


def test_translate_gives_train_paths():
    T, _ = buildT(12)
    TS, _ = buildTStar(12)
    for path in (["b-1", "e1", "b0", "b1", "b2"], ["b1", "c2", "d2"], ["b2", "b3", "c4", "d4"]):
        assert isTrainPath(T, path)
        assert isTrainPath(TS, carrying.xiTranslate(path))


def test_l0_image_is_a_boundary_window():
    G = buildComplex(*buildT(32))
    l0 = [b for b in boundaryPaths(G, depth=128) if b.singular.count("P0") == 2][0]
    GS = buildComplex(*buildTStar(32))
    star = boundaryPaths(GS, depth=1024)
    img = [b for b, _ in carrying.xiTranslate(l0.path[40:80])]
    assert any(accumulates(GS, s.path, img, len(img)) for s in star)


def test_missing_window():
    assert carrying.missingPathWindow(2) == [(f"f{k}*", 1) for k in (-2, -1, 0, 1, 2)]
    w = carrying.missingPathWindow(8)
    assert len(w) == 17
    TS, _ = buildTStar(16)
    assert isTrainPath(TS, w)


@pytest.mark.parametrize("i", range(-8, 9))
def test_covering_identity(i):
    direct, closed = carrying.coveringIdentity(f"f{i}", levels=60)
    assert 0 <= closed - direct < Fraction(1, 2 ** 25)


def test_every_image_leaves_the_f_strand():
    T, _ = buildT(24)
    for b in T.branches:
        assert any(not x.startswith("f") for x, _ in carrying.zeta(b))


def test_missing_path_not_dense_against_images():
    img = carrying.xiTranslate(["b-1", "e1", "b0", "b1", "b2"])
    assert not accumulates(None, carrying.missingPathWindow(8), img, 1)


def test_format_weights():
    assert carrying.format_weights({"f1*": Fraction(3, 4)}) == {"f1*": "3/4"}
