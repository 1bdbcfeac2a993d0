import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from trident.curve import CurveQ, integral_model
from trident.family_uv import uv_curve
from trident.sieve import (
    BadPrimeError,
    SieveRecord,
    StageConfig,
    ap,
    evaluate_cell,
    good_primes,
    grid_cells,
    mestre_nagao,
    primes_up_to,
    sieve_grid,
    thread_count,
)
from oracles import brute_point_count, discriminant, mestre_nagao_brute

X3X = CurveQ(0, 0, 0, 1, 0)


def random_curves(seed, n):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        ainvs = [rng.randint(-20, 20) for _ in range(5)]
        if discriminant(ainvs):
            out.append(CurveQ(*ainvs))
    return out


def test_ap_examples():
    assert ap(X3X, 5) == 2
    assert ap(X3X, 3) == 0
    with pytest.raises(BadPrimeError):
        ap(X3X, 2)


def test_ap_matches_brute_force_and_hasse():
    for E in random_curves(7, 5):
        ainvs = [int(a) for a in E.ainvs]
        assert int(E.disc) == discriminant(ainvs)
        for p in good_primes(E, 50):
            a = ap(E, p)
            assert p + 1 - a == brute_point_count(ainvs, p)
            assert a * a <= 4 * p


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=5, max_size=5), st.sampled_from(primes_up_to(200)))
def test_hasse(ainvs, p):
    D = discriminant(ainvs)
    if D == 0 or D % p == 0:
        return
    E = CurveQ(*ainvs)
    assert ap(E, p) ** 2 <= 4 * p


def test_mestre_nagao_small_cases():
    # discriminant of y^2 = x^3 + x is -64: 2 is the only bad prime
    assert mestre_nagao(X3X, 2) == 0
    with pytest.raises(ValueError):
        mestre_nagao(X3X, 1)
    # a_3 = 2 would give log 3 / 2; here a_3 = 0 so the term is 2 log 3 / 4
    assert mestre_nagao(X3X, 3) == pytest.approx(2 * math.log(3) / 4)


def test_mestre_nagao_against_oracle():
    E, _ = integral_model(uv_curve((2, 1)).curve)
    ainvs = [int(a) for a in E.ainvs]
    assert mestre_nagao(E, 100) == pytest.approx(mestre_nagao_brute(ainvs, 100), rel=1e-12)
    assert mestre_nagao(E, 100) == mestre_nagao(E, 100)


def test_grid_cells():
    assert grid_cells(0, 0, 3, 3) == []
    cells = grid_cells(3, 2, 3, 2)
    assert (Fraction(2), Fraction(1)) in cells
    assert len(cells) == len(set(cells))
    diag = grid_cells(77, 173, 0, 0, diag=True)
    assert (Fraction(77, 173), Fraction(77, 173)) in diag
    assert all(u == v for u, v in diag)


def test_empty_grid():
    assert list(sieve_grid([], StageConfig())) == []


def test_certified_cell():
    rec = evaluate_cell((Fraction(2), Fraction(1)), StageConfig(n1=50, n2=100, certify=True))
    assert rec.certified_bound >= 5
    assert math.isfinite(rec.S1) and math.isfinite(rec.S2)


def test_thresholds_and_skips():
    rec = evaluate_cell((Fraction(2), Fraction(1)), StageConfig(n1=50, s1_min=1e9, certify=True))
    assert rec.flags == {"stage1": False, "stage2": False}
    assert rec.S2 is None and rec.certified_bound is None
    skipped = evaluate_cell((Fraction(0), Fraction(1)), StageConfig(n1=50, n2=60))
    assert skipped.skipped
    assert "skipped" in skipped.to_json()


def test_root_number_hook_unimplemented():
    with pytest.raises(NotImplementedError):
        evaluate_cell((Fraction(2), Fraction(1)), StageConfig(n1=20, n2=30, root_number=lambda E: 1))


def test_parallel_matches_serial():
    cells = grid_cells(2, 2, 2, 1)
    cfg = StageConfig(n1=40, n2=80)
    serial = [r.to_json() for r in sieve_grid(cells, cfg, threads=1)]
    parallel = [r.to_json() for r in sieve_grid(cells, cfg, threads=3)]
    assert serial == parallel


def test_thread_count(monkeypatch):
    monkeypatch.delenv("TRIDENT_THREADS", raising=False)
    assert thread_count() == 1
    monkeypatch.setenv("TRIDENT_THREADS", "4")
    assert thread_count() == 4
    assert thread_count(2) == 2


def test_record_json_is_stable():
    r = SieveRecord(Fraction(1, 2), Fraction(-3), 1.5, 2.5, {"stage1": True}, 5)
    assert r.to_json() == (
        '{"S1": 1.5, "S2": 2.5, "certified_bound": 5, "flags": {"stage1": true}, '
        '"u": "1/2", "v": "-3"}'
    )
