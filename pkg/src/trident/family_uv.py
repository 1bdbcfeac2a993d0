"""The two-parameter (u, v) family of induced curves with five independent sections.

The triple parameters satisfy t3(t3-t2) = (t3+u)^2 and t1(t1-t3) = (t1+v)^2,
and t1 comes from doubling the obvious point on the quartic that the third
square condition imposes. The model y^2 = x^3 + A x^2 + B x and its five
sections are polynomial in (u, v); the factor names below are shared by the
coordinate formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import rat, rat_str
from .curve import CurveQ, Isomorphism, PointQ, SingularCurveError, isomorphic_over_q, on_curve
from .triples import (
    DegenerateParametersError,
    DiophTriple,
    TripleParams,
    induced_curve,
    lasic,
    validate_triple,
)

SECTION_NAMES = ("P", "R", "T1", "T2", "T3")


@dataclass(frozen=True)
class UVParams:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        u, v = rat(self.u), rat(self.v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        bad = []
        if u == 0:
            bad.append("u = 0")
        if v == 0:
            bad.append("v = 0")
        if u == 4 * v:
            bad.append("u = 4v")
        if v == 16 * u:
            bad.append("v = 16u")
        if v in (2, -2):
            bad.append("v = +-2")
        if v == 2 * u or v == -2 * u:
            bad.append("v = +-2u")
        if bad:
            raise DegenerateParametersError(", ".join(bad))

    def __str__(self):
        return f"({rat_str(self.u)}, {rat_str(self.v)})"

    def to_json(self):
        return [rat_str(self.u), rat_str(self.v)]


def _params(q) -> UVParams:
    if isinstance(q, UVParams):
        return q
    u, v = q
    return UVParams(rat(u), rat(v))


def uv_to_t(q) -> TripleParams:
    q = _params(q)
    u, v = q.u, q.v
    t1 = v * v * (16 * u - v) / (8 * u * (u - 4 * v))
    if t1 == 0:
        raise DegenerateParametersError("t1 = 0")
    t3 = -v * (2 * t1 + v) / t1
    if t3 == 0:
        raise DegenerateParametersError("t3 = 0")
    t2 = -u * (2 * t3 + u) / t3
    p = TripleParams(t1, t2, t3)
    if abs(t1 * t2 * t3) == 1:
        raise DegenerateParametersError("t1*t2*t3 = +-1")
    return p


def _common_den(u: Fraction, v: Fraction) -> Fraction:
    return (2 + v) * (4 - 2 * v + v * v) * (v - 2) * (v * v + 2 * v + 4)


def _factors(u: Fraction, v: Fraction) -> dict[str, Fraction]:
    u2, v2, v3 = u * u, v * v, v ** 3
    return {
        "F1": 8 * v * u2 - 8 * u2 + 16 * v * u - v2 * u + v2 + 2 * v3,
        "F2": 8 * v * u2 + 8 * u2 - 16 * v * u - v2 * u - v2 + 2 * v3,
        "F3": -16 * v2 + 64 * u2 + v ** 4 - 16 * v3 * u,
        "F4": 4 * v - 64 * u + 16 * v2 * u - 4 * v * u2 - v ** 5 + 4 * v3 * u2,
        "F5": 2 * v * u2 - 16 * u2 + 2 * v * u + 8 * v2 * u - 4 * v2 - v3,
        "F6": 2 * v * u2 + 16 * u2 - 2 * v * u + 8 * v2 * u + 4 * v2 - v3,
        "F7": 16 * v * u - 4 * u2 - v ** 4 + 4 * v2 * u2,
        "F8": 16 * v2 - 64 * u2 - v ** 4 + 16 * v3 * u - 4 * v ** 5 * u + v ** 4 * u2,
        "G": 64 * v2 * u2 - 64 * u2 - 16 * v ** 5 * u + 256 * v * u + v ** 6 - 16 * v ** 4,
        "H1": 8 * v * u2 + 8 * u2 + 32 * v * u - 16 * v2 * u - 4 * v2 - v3,
        "H2": 8 * v * u2 - 8 * u2 - 32 * v * u - 16 * v2 * u + 4 * v2 - v3,
        "K": -v + 16 * u - 4 * v2 * u + v * u2,
        "L": 8 * u2 - v * u + 2 * v2,
        "M": 8 * u2 - 16 * v * u - v2,
        "N": 2 * u2 + 8 * v * u - v2,
    }


def uv_triple_values(q) -> tuple[Fraction, Fraction, Fraction]:
    """The closed-form (a, b, c) in terms of (u, v)."""
    q = _params(q)
    u, v = q.u, q.v
    f = _factors(u, v)
    D = _common_den(u, v)
    a = -v * v * (16 * u - v) * f["F8"] / (u * D * (2 * u - v) * (2 * u + v) * (u - 4 * v))
    b = 16 * u * (u - 4 * v) * v * f["F4"] / (D * (2 * u - v) * (2 * u + v) * (16 * u - v))
    c = 4 * f["G"] * (2 * u - v) * (2 * u + v) / (u * D * (16 * u - v) * (u - 4 * v))
    return a, b, c


def uv_to_triple(q) -> DiophTriple:
    """The Diophantine triple of the family; cross-checked against Lasic's formulas."""
    q = _params(q)
    vals = uv_triple_values(q)
    if vals != lasic(uv_to_t(q)):
        raise AssertionError(f"closed form and Lasic parametrization disagree at {q}")
    return validate_triple(*vals)


def uv_A(u: Fraction, v: Fraction) -> Fraction:
    terms = (
        256 * v**13 - 32 * v**15 + v**17 + 140288 * v**9 * u**2 + 741888 * v**7 * u**4
        - 4096 * v**10 * u - 1167360 * v**8 * u**3
        - 21258240 * v**6 * u**5 - 7936 * v**12 * u + 664832 * v**10 * u**3
        + 11440128 * v**8 * u**5 + 32192 * v**11 * u**2
        - 2785824 * v**9 * u**4 - 32380416 * v**7 * u**6 + 28747776 * v**5 * u**6
        + 6463488 * v**6 * u**7 + 71860224 * u**7 * v**4
        - 2205696 * u**8 * v**5 + 1536 * v**14 * u - 24192 * v**13 * u**2
        - 22528 * v**12 * u**3 + 591360 * v**11 * u**4
        - 3244800 * u**5 * v**10 - 128483328 * v**3 * u**8 - 12979200 * v**8 * u**7
        + 7816 * v**15 * u**2 - 36160 * v**14 * u**3
        - 8616 * v**13 * u**4 + 100992 * v**12 * u**5 - 128 * v**16 * u
        - 2023776 * v**11 * u**6 + 4 * v**18 * u - 449 * v**17 * u**2
        + 7824 * v**16 * u**3 - 31368 * v**15 * u**4 + 2860032 * v**10 * u**7
        + 70176 * v**14 * u**5 + 112296 * v**13 * u**6
        + 9461760 * v**7 * u**8 - 2785824 * v**9 * u**8 - 332160 * v**12 * u**7
        + 128188416 * v**2 * u**9 - 37027840 * v**4 * u**9
        - 1441792 * v**6 * u**9 + 2659328 * v**8 * u**9 + 46368 * v**11 * u**8
        - 6193152 * u**10 * v**5 + 515072 * u**10 * v**7
        - 291840 * u**9 * v**10 + 16818240 * v**9 * u**6 - 29425664 * v * u**10
        + 32014336 * u**10 * v**3 + 140288 * v**9 * u**10
        - 2097152 * u**11 * v**2 + 1572864 * u**11 * v**4 - 507904 * u**11 * v**6
        - 16384 * u**11 * v**8 + 65536 * u**12 * v**5
        + 65536 * u**12 * v - 131072 * u**12 * v**3 + 1048576 * u**11
    )
    return v * terms


def uv_B(u: Fraction, v: Fraction) -> Fraction:
    f = _factors(u, v)
    prod = Fraction(4)
    for k in ("F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8"):
        prod *= f[k]
    return prod * (16 * u - v) ** 2 * (u - 4 * v) ** 2 * u * u * v ** 3


def uv_sections(u: Fraction, v: Fraction) -> dict[str, PointQ]:
    f = _factors(u, v)
    F1, F2, F3, F4, F5, F6, F7, F8 = (f[f"F{i}"] for i in range(1, 9))
    G, H1, H2, K, L, M, N = (f[k] for k in ("G", "H1", "H2", "K", "L", "M", "N"))
    a16, a4 = 16 * u - v, u - 4 * v
    p2, m2 = 2 * u + v, 2 * u - v
    return {
        "P": PointQ(
            -4 * F4 * F8 * a4**2 * u**2 * a16**2 * v**3,
            8 * G * F4 * F8 * m2**2 * p2**2 * a4**2 * u**2 * a16**2 * v**3,
        ),
        "R": PointQ(
            4 * F7 * F2 * v * a16 * a4 * u * F1 * F8,
            4 * F1 * F8 * F2 * F7 * H1 * H2 * p2 * m2 * v**2 * a16 * a4 * u,
        ),
        "T1": PointQ(
            -16 * F7 * F5 * a16 * a4 * u * F6 * F4,
            8 * F7 * F5 * a16 * a4 * u * F6 * K * L * G * F4,
        ),
        "T2": PointQ(
            -4 * F1 * F3 * F7 * F2 * F8 * a4 * u / v**2,
            4 * F1 * F3 * F7 * F2 * p2 * m2 * M * G * F8 * a4 * u / v**3,
        ),
        "T3": PointQ(
            a16 * F4 * F8 * F3 * N**2,
            2 * F3 * m2 * p2 * H2 * H1 * K * N * F8 * F4 * a16,
        ),
    }


@dataclass(frozen=True)
class UVFamilyCurve:
    params: UVParams
    A: Fraction
    B: Fraction
    sections: dict = field(hash=False)

    @property
    def curve(self) -> CurveQ:
        return CurveQ(0, self.A, 0, self.B, 0)

    def points(self) -> list[PointQ]:
        return [self.sections[k] for k in SECTION_NAMES]


def uv_curve(q) -> UVFamilyCurve:
    q = _params(q)
    A, B = uv_A(q.u, q.v), uv_B(q.u, q.v)
    if B == 0 or A * A == 4 * B:
        raise SingularCurveError(f"family curve is singular at {q}")
    fam = UVFamilyCurve(q, A, B, uv_sections(q.u, q.v))
    E = fam.curve
    for name, pt in fam.sections.items():
        if not on_curve(E, pt):
            raise AssertionError(f"section {name} is off the family curve at {q}")
    return fam


def induced_to_family(q) -> tuple[Isomorphism, "UVFamilyCurve"]:
    """The Q-isomorphism from the triple's induced curve to the (A, B) model."""
    q = _params(q)
    fam = uv_curve(q)
    ind = induced_curve(uv_to_triple(q))
    iso = isomorphic_over_q(ind.curve, fam.curve)
    if iso is None:
        raise AssertionError(f"induced curve and family model are not isomorphic at {q}")
    return iso, fam


def uv_certify(q, extra_points=None):
    """Certify a rank lower bound from the five sections via the 2-descent."""
    from .descent import independence_bound

    fam = uv_curve(q)
    points = fam.points() + list(extra_points or [])
    return independence_bound(fam.curve, points)


def rank11_parameter_list() -> list[UVParams]:
    """The sixteen published (u, v) with rank 11."""
    from .constants import load_constants

    return [UVParams(rat(u), rat(v)) for u, v in load_constants()["rank11"]["params"]]
