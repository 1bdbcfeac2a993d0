import random
from fractions import Fraction

import pytest

from trident.constants import curve, load_constants, points, rats
from trident.curve import CurveQ, add, isomorphic_over_q, neg, on_curve
from trident.descent import independence_bound
from trident.family_uv import (
    UVParams,
    induced_to_family,
    rank11_parameter_list,
    uv_certify,
    uv_curve,
    uv_to_t,
    uv_to_triple,
    uv_triple_values,
)
from trident.triples import DegenerateParametersError, induced_curve, lasic, square_conditions


def random_uv(rng, n):
    out = []
    while len(out) < n:
        u = Fraction(rng.randint(-40, 40), rng.randint(1, 20))
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 20))
        try:
            uv_curve((u, v))
            uv_to_triple((u, v))
        except (DegenerateParametersError, ValueError, ZeroDivisionError):
            continue
        out.append((u, v))
    return out


SAMPLES = random_uv(random.Random(7), 20)


def test_uv_to_t_defining_equations():
    for u, v in [(Fraction(2), Fraction(1))] + SAMPLES[:10]:
        p = uv_to_t((u, v))
        assert all(square_conditions(p))
        assert p.t3 * (p.t3 - p.t2) == (p.t3 + u) ** 2
        assert p.t1 * (p.t1 - p.t3) == (p.t1 + v) ** 2


def test_degenerate_parameters():
    with pytest.raises(DegenerateParametersError):
        UVParams(4, 1)
    with pytest.raises(DegenerateParametersError):
        uv_certify((0, 1))


def test_uv_to_triple_published():
    K = load_constants()
    assert uv_to_triple(K["rank12"]["params"]).elements == tuple(rats(K["rank12"]["triple"]))
    H = K["rank11"]["highlighted"]
    assert uv_to_triple(H["params"]).elements == tuple(rats(H["triple"]))


def test_closed_form_matches_lasic():
    for q in SAMPLES:
        assert uv_triple_values(q) == lasic(uv_to_t(q))


def test_uv21_curve_and_points():
    K = load_constants()["uv21"]
    fam = uv_curve(K["params"])
    shown = CurveQ(0, Fraction(K["A"]), 0, Fraction(K["B"]), 0)
    assert fam.curve == shown
    minimal = curve(K["minimal_ainvs"])
    iso = isomorphic_over_q(minimal, shown)
    assert iso is not None
    for P in points(K["points"]):
        assert on_curve(minimal, P)
        assert on_curve(shown, iso.map_point(P))


def test_sections_on_curve_at_random_specializations():
    for q in SAMPLES:
        fam = uv_curve(q)
        for P in fam.points():
            assert on_curve(fam.curve, P)


def test_sections_match_induced_points():
    for q in SAMPLES[:8]:
        iso, fam = induced_to_family(q)
        ind = induced_curve(uv_to_triple(q))
        E = fam.curve
        mapped_P = iso.map_point(ind.P)
        mapped_S = iso.map_point(ind.S)
        P, R = fam.sections["P"], fam.sections["R"]
        # the isomorphism is only fixed up to the sign of y
        assert mapped_P in (P, neg(E, P))
        assert add(E, R, R) in (mapped_S, neg(E, mapped_S))


def test_uv_certify_bounds():
    assert uv_certify((2, 1)).bound >= 5
    for q in SAMPLES[:6]:
        cert = uv_certify(q)
        assert cert.bound <= 5
        more = uv_certify(q, extra_points=[uv_curve(q).sections["P"]])
        assert more.bound >= cert.bound


def test_rank12_points_certify():
    K = load_constants()["rank12"]
    cert = independence_bound(curve(K["minimal_ainvs"]), points(K["points"]))
    assert cert.bound >= 12


def test_rank11_list():
    params = rank11_parameter_list()
    assert len(params) == 16
    assert UVParams(Fraction(77, 173), Fraction(77, 173)) in params
    assert all(isinstance(p, UVParams) for p in params)
