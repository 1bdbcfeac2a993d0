"""Exact re-checks of the published constants, grouped the way the CLI exposes them."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import rat, rat_str
from .constants import curve, load_constants, points, rats
from .curve import (
    CurveQ,
    PointQ,
    isomorphic_over_q,
    on_curve,
    torsion_subgroup,
)
from .descent import independence_bound

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class Check:
    name: str
    status: str
    witness: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {"name": self.name, "status": self.status, "witness": self.witness}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class ReproReport:
    group: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_json(self, timing: bool = True) -> dict:
        return {
            "group": self.group,
            "status": PASS if self.passed else FAIL,
            "checks": [c.to_json(timing) for c in self.checks],
        }


class _Recorder:
    def __init__(self, report: ReproReport):
        self.report = report

    def check(self, name: str, fn: Callable[[], tuple[bool | None, dict]]) -> bool:
        t = time.perf_counter()
        try:
            ok, witness = fn()
        except Exception as exc:  # a crash is a failed check, reported with its message
            ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        status = SKIP if ok is None else (PASS if ok else FAIL)
        self.report.checks.append(Check(name, status, witness, time.perf_counter() - t))
        return bool(ok)


def _pt(P: PointQ):
    return P.to_json()


def _ainvs(E: CurveQ):
    return E.ainvs_str()


# ---------------------------------------------------------------------------


def reproduce_uv21() -> ReproReport:
    from .family_uv import uv_certify, uv_curve

    K = load_constants()["uv21"]
    rep = ReproReport("uv21")
    r = _Recorder(rep)
    fam = uv_curve(K["params"])
    shown = CurveQ(0, rat(K["A"]), 0, rat(K["B"]), 0)
    minimal = curve(K["minimal_ainvs"])
    pts = points(K["points"])

    r.check("family curve equals the displayed curve", lambda: (
        fam.curve == shown, {"family": _ainvs(fam.curve), "displayed": _ainvs(shown)}))

    def iso_check():
        iso = isomorphic_over_q(minimal, shown)
        return iso is not None, {"minimal": _ainvs(minimal),
                                 "iso": None if iso is None else iso.to_json()}
    r.check("displayed points' curve is Q-isomorphic to the family curve", iso_check)

    def on_check():
        bad = [_pt(P) for P in pts if not on_curve(minimal, P)]
        iso = isomorphic_over_q(minimal, shown)
        moved = [iso.map_point(P) for P in pts]
        bad += [_pt(P) for P in moved if not on_curve(shown, P)]
        return not bad, {"off_curve": bad, "transported": [_pt(P) for P in moved]}
    r.check("five displayed points lie on the curve", on_check)

    def sections():
        cert = uv_certify(K["params"])
        return cert.bound >= 5, {"bound": cert.bound, "halvings": len(cert.halvings)}
    r.check("five family sections certify rank >= 5", sections)

    def displayed():
        cert = independence_bound(minimal, pts)
        return cert.bound >= 5, {"bound": cert.bound, "halvings": len(cert.halvings)}
    r.check("five displayed points certify rank >= 5", displayed)
    return rep


def reproduce_rank12() -> ReproReport:
    from .family_uv import uv_to_triple
    from .triples import induced_curve

    K = load_constants()["rank12"]
    rep = ReproReport("rank12")
    r = _Recorder(rep)
    T = uv_to_triple(K["params"])
    E = curve(K["minimal_ainvs"])
    tors = points(K["torsion"])
    pts = points(K["points"])

    r.check("triple from (u, v) equals the displayed triple", lambda: (
        T.elements == tuple(rats(K["triple"])),
        {"computed": T.to_json(), "displayed": K["triple"]}))

    def iso():
        m = isomorphic_over_q(induced_curve(T).curve, E)
        return m is not None, {"iso": None if m is None else m.to_json()}
    r.check("induced curve is Q-isomorphic to the minimal model", iso)

    def on():
        bad = [_pt(P) for P in tors + pts if not on_curve(E, P)]
        return not bad, {"off_curve": bad}
    r.check("torsion points and P1..P12 lie on the curve", on)

    def tors_check():
        got = sorted(torsion_subgroup(E), key=lambda P: (P.is_infinity, P.x or 0))
        want = sorted(tors, key=lambda P: (P.is_infinity, P.x or 0))
        return got == want, {"computed": [_pt(P) for P in got]}
    r.check("torsion subgroup is exactly the listed four points", tors_check)

    def cert():
        c = independence_bound(E, pts, curve_id="rank12")
        return c.bound >= 12, {"bound": c.bound, "halvings": len(c.halvings),
                               "basis_size": len(c.basis)}
    r.check("P1..P12 certify rank >= 12", cert)
    return rep


def reproduce_rank11() -> ReproReport:
    from .family_uv import uv_certify, uv_to_triple
    from .triples import induced_curve

    K = load_constants()["rank11"]
    H = K["highlighted"]
    rep = ReproReport("rank11")
    r = _Recorder(rep)
    T = uv_to_triple(H["params"])
    r.check("highlighted triple equals the display", lambda: (
        T.elements == tuple(rats(H["triple"])),
        {"computed": T.to_json(), "displayed": H["triple"]}))

    def iso():
        m = isomorphic_over_q(induced_curve(T).curve, curve(H["minimal_ainvs"]))
        return m is not None, {"iso": None if m is None else m.to_json()}
    r.check("highlighted induced curve is Q-isomorphic to the minimal model", iso)

    def sections():
        bounds = {}
        for u, v in K["params"]:
            bounds[f"({u}, {v})"] = uv_certify((u, v)).bound
        good = sum(b >= 5 for b in bounds.values())
        return good >= 3, {"bounds": bounds, "at_least_5": good}
    r.check("family sections certify rank >= 5 on the listed parameters", sections)
    return rep


def reproduce_rank10() -> ReproReport:
    from .triples import TripleParams, induced_curve, lasic, validate_triple

    K = load_constants()["rank10"]
    rep = ReproReport("rank10")
    r = _Recorder(rep)
    abc = lasic(TripleParams(*rats(K["params"])))
    shown = tuple(rats(K["triple"]))

    def triple():
        exact = abc == shown
        negated = tuple(-x for x in abc) == shown
        return exact or negated, {"computed": [rat_str(x) for x in abc], "displayed": K["triple"],
                                  "equal_up_to_global_sign": negated and not exact}
    r.check("Lasic triple equals the display (up to a global sign)", triple)

    def iso():
        E = induced_curve(validate_triple(*abc)).curve
        m = isomorphic_over_q(E, curve(K["ainvs"]))
        return m is not None, {"iso": None if m is None else m.to_json()}
    r.check("induced curve is Q-isomorphic to the displayed curve", iso)
    return rep


def reproduce_family7() -> ReproReport:
    from .family_w import coincidence_check, condition_values, curve63, seven_points

    K = load_constants()["family7"]
    rep = ReproReport("family7")
    r = _Recorder(rep)
    w2, w3 = rats(K["params"])

    r.check("(w2, w3) lies on a condition locus", lambda: (
        0 in condition_values(w2, w3),
        {"values": [rat_str(x) for x in condition_values(w2, w3)]}))
    r.check("the two curves coincide", lambda: (coincidence_check(w2, w3), {}))

    def coeffs():
        c = curve63(w3)
        return c.a == rat(K["a"]) and c.b == rat(K["b"]), {
            "a": rat_str(c.a), "b": rat_str(c.b)}
    r.check("curve coefficients equal the displayed specialization", coeffs)

    sp = seven_points(w2, w3)

    def ratios():
        want = (True,) * 5 + (False,)
        return sp.ratio_identities == want, {"identities": list(sp.ratio_identities)}
    r.check("five ratio identities hold and the sixth fails", ratios)

    def xs():
        got = [P.x for P in sp.points]
        return got == rats(K["xs"]), {"computed": [rat_str(x) for x in got]}
    r.check("seven x-coordinates equal the display and lift", xs)

    def cert():
        c = independence_bound(sp.curve, list(sp.points), curve_id="family7")
        return c.bound >= 7, {"bound": c.bound}
    r.check("seven points certify rank >= 7", cert)
    return rep


def reproduce_family7b() -> ReproReport:
    from .family_w import (
        condition_values_w5,
        curve62,
        locus_w5,
        quartic_value,
        w5_coincidence,
    )

    K = load_constants()["family7b"]
    rep = ReproReport("family7b")
    r = _Recorder(rep)
    w2, w5_listed = rats(K["params"])
    r.check("listed pair taken literally", lambda: (None, {
        "condition_values": [rat_str(x) for x in condition_values_w5(w2, w5_listed)],
        "note": "neither condition vanishes at the pair as printed; w2 is kept and w5 is "
                "recovered from the conditions"}))
    partners = sorted(set(locus_w5(w2, "A") + locus_w5(w2, "B")))
    r.check("w5 partners of w2 exist", lambda: (
        bool(partners), {"w5": [rat_str(x) for x in partners]}))
    r.check("the quartic is a square at every partner", lambda: (
        all(quartic_value("w5", x)[1] for x in partners), {}))
    r.check("substitutions 2 and 5 give isomorphic curves at every partner", lambda: (
        all(w5_coincidence(w2, x) for x in partners), {}))

    def six():
        c = curve62(w2)
        cert = independence_bound(c.curve, c.points(), curve_id="family7b")
        return cert.bound >= 6, {"bound": cert.bound}
    r.check("six points of the w2 curve certify rank >= 6", six)
    r.check("seventh point", lambda: (None, {
        "note": "the extra point coming from the fifth substitution is not displayed"}))
    return rep


def reproduce_quartics() -> ReproReport:
    from .family_w import QuarticModel, generate_w_solutions, quartic_to_weierstrass, quartic_value

    K = load_constants()
    Q = K["quartics"]
    rep = ReproReport("quartics")
    r = _Recorder(rep)
    for which, seed in (("w3", 26), ("w5", 0)):
        def jcheck(which=which, seed=seed):
            red = quartic_to_weierstrass(QuarticModel.seeded(which, seed))
            target = curve(Q[which]["target_ainvs"])
            return red.curve.j == target.j, {"model": _ainvs(red.curve),
                                             "j": rat_str(red.curve.j), "target_j": rat_str(target.j)}
        r.check(f"{which}-quartic has the displayed j-invariant", jcheck)

    listed = rats(K["family7"]["w3_solutions"])

    def listed_sq():
        bad = [rat_str(w) for w in listed if not quartic_value("w3", w)[1]]
        return not bad, {"not_square": bad}
    r.check("listed w3 values make the quartic a square", listed_sq)

    def more():
        sols = generate_w_solutions("w3", len(listed) + 5, listed)
        new = [w for w in sols if w not in listed]
        ok = len(new) >= 5 and all(quartic_value("w3", w)[1] for w in sols)
        return ok, {"new": [rat_str(w) for w in new]}
    r.check("group law produces at least five further solutions", more)
    return rep


def reproduce_identities(samples: int = 50, seed: int = 0) -> ReproReport:
    from .family_uv import uv_to_t
    from .triples import (
        DegenerateParametersError,
        DegenerateTripleError,
        TripleParams,
        cuboid_params,
        lasic,
        lasic_triple,
        rank_jump_abscissa,
        square_conditions,
    )

    rng = random.Random(seed)
    rep = ReproReport("identities")
    r = _Recorder(rep)

    def rnd():
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 40))

    def lasic_valid():
        done = 0
        while done < samples:
            p = TripleParams(rnd(), rnd(), rnd())
            try:
                lasic_triple(p)
            except (DegenerateParametersError, DegenerateTripleError):
                continue
            done += 1
        return True, {"samples": done}
    r.check("Lasic parametrization yields triples", lasic_valid)

    def abscissa():
        done = 0
        while done < samples:
            p = TripleParams(rnd(), rnd(), rnd())
            try:
                a, b, c = lasic(p)
                x = rank_jump_abscissa(p)
            except DegenerateParametersError:
                continue
            if x + a * b != b * (c - b) / (p.t2 * p.t3):
                return False, {"params": [rat_str(p.t1), rat_str(p.t2), rat_str(p.t3)]}
            done += 1
        return True, {"samples": done}
    r.check("x + ab = b(c - b)/(t2 t3)", abscissa)

    def uv_squares():
        done = 0
        while done < samples:
            try:
                p = uv_to_t((rnd(), rnd()))
            except (DegenerateParametersError, ZeroDivisionError):
                continue
            if not all(square_conditions(p)):
                return False, {"params": [rat_str(p.t1), rat_str(p.t2), rat_str(p.t3)]}
            done += 1
        return True, {"samples": done}
    r.check("(u, v) parameters satisfy all three square conditions", uv_squares)

    def cuboid():
        done = 0
        while done < samples:
            try:
                p = cuboid_params(rnd())
            except DegenerateParametersError:
                continue
            if not all(square_conditions(p)):
                return False, {"params": [rat_str(p.t1), rat_str(p.t2), rat_str(p.t3)]}
            done += 1
        return True, {"samples": done}
    r.check("cuboid parameters satisfy all three square conditions", cuboid)
    return rep


GROUPS = {
    "uv21": reproduce_uv21,
    "rank11": reproduce_rank11,
    "rank12": reproduce_rank12,
    "rank10": reproduce_rank10,
    "family7": reproduce_family7,
    "family7b": reproduce_family7b,
    "quartics": reproduce_quartics,
    "identities": reproduce_identities,
}


def reproduce(name: str) -> list[ReproReport]:
    if name == "all":
        return [fn() for fn in GROUPS.values()]
    if name not in GROUPS:
        raise KeyError(name)
    return [GROUPS[name]()]
