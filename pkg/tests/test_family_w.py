import random
from fractions import Fraction

import pytest

from trident.constants import curve, load_constants, rats
from trident.curve import add, on_curve
from trident.descent import independence_bound
from trident.family_w import (
    DegenerateSpecializationError,
    OffLocusError,
    QuarticModel,
    QUARTICS,
    base_family,
    coincidence_check,
    condition_values,
    condition_values_w5,
    curve62,
    curve63,
    generate_w_solutions,
    locus_w2,
    locus_w5,
    quartic_to_weierstrass,
    quartic_value,
    seven_points,
    substitution,
    w5_coincidence,
)
from oracles import is_rational_square, quartic_j

K = load_constants()["family7"]
W2, W3 = rats(K["params"])
LISTED = rats(K["w3_solutions"])


def rand_rats(seed, n):
    rng = random.Random(seed)
    return [Fraction(rng.randint(-300, 300), rng.randint(1, 30)) for _ in range(n)]


def test_base_family_lifts():
    done = 0
    for a in rand_rats(1, 40):
        try:
            E, pts = base_family(a)
        except DegenerateSpecializationError:
            continue
        assert all(on_curve(E, P) for P in pts)
        done += 1
    assert done >= 20
    with pytest.raises(DegenerateSpecializationError):
        base_family(Fraction(4, 9))


def test_substitution_examples():
    assert substitution(1, 0) == Fraction(-26, 3)
    assert substitution(2, W2) == substitution(3, W3)
    for w in rand_rats(2, 10):
        E, _ = base_family(substitution(5, w))
        assert E.disc != 0
    with pytest.raises(ValueError):
        substitution(6, 1)
    with pytest.raises(DegenerateSpecializationError):
        substitution(3, 0)


@pytest.mark.parametrize("builder", [curve62, curve63])
def test_substitution_curves_lift_at_random_points(builder):
    for w in rand_rats(3, 20):
        c = builder(w)
        assert len(c.points()) == 6


def test_substitution_curves_match_base_family():
    for w in rand_rats(4, 5):
        for i, builder in ((2, curve62), (3, curve63)):
            E, _ = base_family(substitution(i, w))
            assert builder(w).curve.j == E.j


def test_curve63_displayed_specialization():
    c = curve63(W3)
    assert c.a == Fraction(K["a"]) and c.b == Fraction(K["b"])


def test_condition_values():
    assert 0 in condition_values(W2, W3)
    assert 0 not in condition_values(Fraction(1, 3), Fraction(5, 7))
    assert W2 in locus_w2(W3, "A")


def test_coincidence():
    assert coincidence_check(W2, W3)
    assert not coincidence_check(Fraction(1, 3), Fraction(5, 7))
    pairs = [(w2, Fraction(-30)) for which in "AB" for w2 in locus_w2(-30, which)]
    assert pairs
    assert all(coincidence_check(*p) for p in pairs)


def test_locus_points_satisfy_ratio_identities():
    seen = 0
    for w3 in LISTED:
        for which in "AB":
            for w2 in locus_w2(w3, which):
                try:
                    sp = seven_points(w2, w3)
                except DegenerateSpecializationError:
                    continue
                assert coincidence_check(w2, w3)
                assert sp.ratio_identities[:5] == (True,) * 5
                seen += 1
    assert seen >= 5


def test_seven_points_published():
    sp = seven_points(W2, W3)
    assert [P.x for P in sp.points] == rats(K["xs"])
    assert sp.ratio_identities == (True,) * 5 + (False,)
    assert independence_bound(sp.curve, list(sp.points)).bound >= 7
    with pytest.raises(OffLocusError):
        seven_points(Fraction(1, 3), Fraction(5, 7))


def test_quartic_values():
    for w in LISTED:
        assert quartic_value("w3", w)[1]
    val, sq = quartic_value("w3", 1)
    assert val == sum(QUARTICS["w3"])
    assert sq == is_rational_square(val)


@pytest.mark.parametrize("which,seed", [("w3", 26), ("w5", 0)])
def test_quartic_reduction_j(which, seed):
    target = curve(load_constants()["quartics"][which]["target_ainvs"])
    red = quartic_to_weierstrass(QuarticModel.seeded(which, seed))
    assert red.curve.j == target.j
    assert red.curve.j == quartic_j(*QUARTICS[which])


def test_quartic_round_trip():
    red = quartic_to_weierstrass(QuarticModel.seeded("w3", 26))
    E = red.curve
    val = quartic_value("w3", -30)[0]
    G = red.forward(-30, is_square_root(val))
    assert red.forward(26, QuarticModel.seeded("w3", 26).y0).is_infinity
    P = G
    checked = 0
    for _ in range(12):
        P = add(E, P, G)
        back = red.inverse(P)
        if back is None:
            continue
        w, Y = back
        assert quartic_value("w3", w)[0] == Y * Y
        assert red.forward(w, Y) == P
        checked += 1
    assert checked >= 10


def is_square_root(v):
    from trident.arith import is_square_rat

    return is_square_rat(v)


def test_w5_quartic_point_from_model():
    red = quartic_to_weierstrass(QuarticModel.seeded("w5", -Fraction(1427, 11)))
    E = red.curve
    P = red.forward(-Fraction(1427, 11), is_square_root(quartic_value("w5", -Fraction(1427, 11))[0]))
    w, Y = red.inverse(add(E, P, P))
    assert quartic_value("w5", w)[1]


def test_generate_w_solutions():
    sols = generate_w_solutions("w3", 20, LISTED)
    assert sols[: len(LISTED)] == LISTED
    assert len(set(sols)) == len(sols) == 20
    assert all(quartic_value("w3", w)[1] for w in sols)
    assert generate_w_solutions("w3", 0, LISTED) == []


def test_w5_intersection():
    w2 = Fraction(6392, 99)
    partners = locus_w5(w2, "A") + locus_w5(w2, "B")
    assert partners
    for w5 in partners:
        assert 0 in condition_values_w5(w2, w5)
        assert quartic_value("w5", w5)[1]
        assert w5_coincidence(w2, w5)
    c = curve62(w2)
    assert independence_bound(c.curve, c.points()).bound >= 6
