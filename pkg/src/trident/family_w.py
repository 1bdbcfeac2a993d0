"""The rank >= 4 family over Q(a), its rank-6 substitutions and the rank >= 7 intersections.

Two substitutions a(w2), a(w3) give the same curve when (w2, w3) lies on one
of two genus-one conditions. Both reduce to a single quartic in w3 being a
square; its rational points come from a Weierstrass model, and every one of
them yields a curve carrying seven independent points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import RatLike, is_square_rat, poly_eval, rat, rat_str, rational_roots
from .curve import (
    CurveQ,
    INFINITY,
    PointQ,
    SingularCurveError,
    _add,
    lift_x,
    neg,
)


class DegenerateSpecializationError(ValueError):
    pass


class OffLocusError(ValueError):
    """The pair (w2, w3) satisfies neither intersection condition."""


def _short(A: Fraction, B: Fraction) -> CurveQ:
    if B == 0 or A * A == 4 * B:
        raise SingularCurveError("y^2 = x^3 + A x^2 + B x is singular")
    return CurveQ(0, A, 0, B, 0)


def _lift_all(E: CurveQ, xs: Sequence[Fraction], label: str) -> list[PointQ]:
    pts = []
    for i, x in enumerate(xs, 1):
        P = lift_x(E, x)
        if P is None:
            raise AssertionError(f"{label}{i} = {rat_str(x)} does not lift to a rational point")
        pts.append(P)
    return pts


# ---------------------------------------------------------------------------
# base family over Q(a)

BAD_A = (Fraction(0), Fraction(-20, 3), Fraction(4, 9), Fraction(-16, 9), Fraction(-80, 9))


def base_coefficients(a: RatLike) -> tuple[Fraction, Fraction]:
    a = rat(a)
    A = -2 * (-51200 + 109440 * a + 38880 * a**2 + 55404 * a**3 + 6561 * a**4)
    B = 243 * a**2 * (20 + 3 * a) * (-4 + 9 * a) * (16 + 9 * a) * (80 + 9 * a) * (320 + 81 * a**2)
    return A, B


def base_xs(a: RatLike) -> list[Fraction]:
    a = rat(a)
    return [
        81 * a**2 * (-4 + 9 * a) * (80 + 9 * a),
        27 * a * (20 + 3 * a) * (-4 + 9 * a) * (80 + 9 * a),
        Fraction(1, 441) * (-4 + 9 * a) * (80 + 9 * a) * (160 + 171 * a) ** 2,
        3 * (20 + 3 * a) * (-4 + 9 * a) * (320 + 81 * a**2),
    ]


def base_family(a: RatLike) -> tuple[CurveQ, list[PointQ]]:
    """y^2 = x^3 + A(a) x^2 + B(a) x with its four points."""
    a = rat(a)
    if a in BAD_A:
        raise DegenerateSpecializationError(f"a = {rat_str(a)} makes B(a) vanish")
    E = _short(*base_coefficients(a))
    return E, _lift_all(E, base_xs(a), "x")


def _substitution_parts(i: int, w: Fraction) -> tuple[Fraction, Fraction]:
    if i == 1:
        return (-2 * (-27 + 13 * w**2) * (-13 + 27 * w**2),
                9 * (9 + 178 * w**2 + 9 * w**4))
    if i == 2:
        return (-64 * (831744 - 40128 * w + 4288 * w**2 - 44 * w**3 + w**4),
                9 * (-1520 + 88 * w + w**2) * (-2736 - 264 * w + 5 * w**2))
    if i == 3:
        return (10732176 + 628992 * w + 19192 * w**2 + 576 * w**3 + 9 * w**4,
                36 * w * (27 + w) * (364 + 9 * w))
    if i == 4:
        return (5 * (-10 + 6 * w + w**2) * (-18 - 18 * w + 5 * w**2),
                9 * (12 - 2 * w + w**2) * (3 - w + w**2))
    if i == 5:
        return (5 * (584820 + 135432 * w - 18288 * w**2 + 396 * w**3 + 5 * w**4),
                9 * (684 - 66 * w + w**2) * (171 - 33 * w + w**2))
    raise ValueError(f"substitution index must be 1..5, got {i}")


def substitution(i: int, w: RatLike) -> Fraction:
    """The value of a for the i-th rank-6 substitution."""
    num, den = _substitution_parts(i, rat(w))
    if den == 0:
        raise DegenerateSpecializationError(f"substitution {i} has a pole at w = {rat_str(rat(w))}")
    return num / den


# ---------------------------------------------------------------------------
# the curves attached to substitutions 2 and 3


@dataclass(frozen=True)
class SubstitutionCurve:
    """y^2 = x^3 + a x^2 + b x with six x-coordinates of points."""

    w: Fraction
    a: Fraction
    b: Fraction
    xs: tuple[Fraction, ...]

    @property
    def curve(self) -> CurveQ:
        return _short(self.a, self.b)

    def points(self) -> list[PointQ]:
        return _lift_all(self.curve, self.xs, "x")


def curve62(w2: RatLike) -> SubstitutionCurve:
    w = rat(w2)
    a62 = (
        79573 * w**16 + 2281840 * w**15 - 791687936 * w**14 - 34844285696 * w**13
        + 3065917324288 * w**12 + 556971294060544 * w**11 - 64165839736733696 * w**10
        + 3360211454234263552 * w**9 - 130403990149389221888 * w**8
        + 3064512846261648359424 * w**7 - 53369552205989831245824 * w**6
        + 422490869190468915167232 * w**5 + 2120995723090424777146368 * w**4
        - 21983951517250398896259072 * w**3 - 455536370311599498486349824 * w**2
        + 1197427029434259336824094720 * w + 38082411231292796255084740608
    )
    f0 = w**4 - 44 * w**3 + 4288 * w**2 - 40128 * w + 831744
    f1 = w**4 + 352 * w**3 - 50720 * w**2 + 321024 * w + 831744
    f2 = 3 * w**4 + 352 * w**3 + 15328 * w**2 - 642048 * w + 5822208
    f3 = 7 * w**4 - 704 * w**3 + 15328 * w**2 + 321024 * w + 2495232
    f4 = 7 * w**4 - 176 * w**3 + 11680 * w**2 - 160512 * w + 5822208
    f5 = 7 * w**4 + 352 * w**3 - 61664 * w**2 + 321024 * w + 5822208
    f6 = 59 * w**4 + 3344 * w**3 - 572128 * w**2 + 3049728 * w + 49072896
    g = 13 * w**4 - 2552 * w**3 + 330784 * w**2 - 2327424 * w + 10812672
    h = w**2 - 912
    b62 = -5184 * f0**2 * f1 * f2 * f3 * f4 * f5 * f6
    xs = (
        -576 * f0**2 * f4 * f5,
        36 * f0 * f4 * f5 * f6,
        Fraction(-16, 49) * f4 * f5 * g**2,
        Fraction(-27, 4) * f2 * f3 * f4 * f6,
        -108 * h**2 * f1 * f5 * f6,
        324 * h**2 * f1 * f4 * f5,
    )
    return SubstitutionCurve(w, a62, b62, xs)


def curve63(w3: RatLike) -> SubstitutionCurve:
    w = rat(w3)
    a63 = (
        -13122 * w**16 - 7348320 * w**15 - 1570137696 * w**14 - 206172584064 * w**13
        - 19541430237312 * w**12 - 1402008391816704 * w**11 - 77606011598363136 * w**10
        - 3410103604914358272 * w**9 - 123219415654113963008 * w**8
        - 3723833136566479233024 * w**7 - 92542375014630498607104 * w**6
        - 1825654232153731017572352 * w**5 - 27787335201034030779236352 * w**4
        - 320143070559304939026382848 * w**3 - 2662401630093588063697895424 * w**2
        - 13606503227295711027839631360 * w - 26532681293226636504287281152
    )
    g0 = w**4 + 72 * w**3 + 8504 * w**2 + 550368 * w + 10732176
    g1 = 3 * w**4 + 144 * w**3 + 3160 * w**2 + 157248 * w + 3577392
    g2 = 3 * w**4 + 1152 * w**3 + 71144 * w**2 + 1257984 * w + 3577392
    g3 = 9 * w**4 + 504 * w**3 + 8504 * w**2 + 78624 * w + 1192464
    g4 = 9 * w**4 + 576 * w**3 + 19192 * w**2 + 628992 * w + 10732176
    g5 = 9 * w**4 + 1152 * w**3 + 58040 * w**2 + 1257984 * w + 10732176
    g6 = 9 * w**4 + 2736 * w**3 + 164872 * w**2 + 2987712 * w + 10732176
    k = 171 * w**4 + 16704 * w**3 + 753128 * w**2 + 18240768 * w + 203911344
    b63 = 81 * g0 * g1 * g2 * g3 * g4**2 * g5 * g6
    xs = (
        9 * g1 * g2 * g4**2,
        9 * g1 * g2 * g4 * g6,
        Fraction(1, 49) * g1 * g2 * k**2,
        27 * g0 * g1 * g3 * g6,
        27 * (w**2 - 1092) ** 2 * g2 * g5 * g6,
        81 * (w**2 + 54 * w + 1092) ** 2 * g1 * g2 * g5,
    )
    return SubstitutionCurve(w, a63, b63, xs)


# ---------------------------------------------------------------------------
# intersection conditions


def condition_values(w2: RatLike, w3: RatLike) -> tuple[Fraction, Fraction]:
    """Values of the two conditions under which substitutions 2 and 3 agree."""
    p, q = rat(w2), rat(w3)
    ca = (p**2 * q**2 + 72 * p**2 * q + 88 * p * q**2 + 1820 * p**2 - 1520 * q**2
          - 96096 * p - 65664 * q - 995904)
    cb = (5 * p**2 * q**2 + 21 * p**2 * q - 264 * p * q**2 + 3276 * p**2 - 2736 * q**2
          + 288288 * p - 196992 * q - 4979520)
    return ca, cb


def _condition_quadratic(which: str, w3: Fraction) -> list[Fraction]:
    """Coefficients (constant term first) of a condition as a polynomial in w2."""
    q = w3
    if which == "A":
        return [-1520 * q**2 - 65664 * q - 995904, 88 * q**2 - 96096, q**2 + 72 * q + 1820]
    if which == "B":
        return [-2736 * q**2 - 196992 * q - 4979520, -264 * q**2 + 288288, 5 * q**2 + 21 * q + 3276]
    raise ValueError(f"condition must be 'A' or 'B', got {which!r}")


def locus_w2(w3: RatLike, which: str) -> list[Fraction]:
    """Rational w2 with the chosen condition vanishing at (w2, w3)."""
    coeffs = _condition_quadratic(which, rat(w3))
    if all(c == 0 for c in coeffs):
        raise DegenerateSpecializationError("condition vanishes identically in w2")
    return rational_roots(coeffs)


def coincidence_check(w2: RatLike, w3: RatLike) -> bool:
    """True iff b63 a62^2 = b62 a63^2, i.e. the two curves are twists by a square."""
    c2, c3 = curve62(w2), curve63(w3)
    return c3.b * c2.a**2 == c2.b * c3.a**2


# ---------------------------------------------------------------------------
# quartics and their Weierstrass models

QUARTICS = {
    "w3": (54, 2736, 66592, 2987712, 64393056),
    "w5": (1, -1188, 43920, -406296, 116964),
}


def _quartic_coeffs(which) -> tuple[int, ...]:
    if isinstance(which, str):
        try:
            return QUARTICS[which]
        except KeyError:
            raise ValueError(f"unknown quartic {which!r}") from None
    return tuple(which)


def quartic_value(which, w: RatLike) -> tuple[Fraction, bool]:
    """Exact value of the quartic (leading coefficient first) and whether it is a square."""
    c = _quartic_coeffs(which)
    val = poly_eval([rat(x) for x in reversed(c)], rat(w))
    return val, is_square_rat(val) is not None


@dataclass(frozen=True)
class QuarticModel:
    """Y^2 = q4 w^4 + q3 w^3 + q2 w^2 + q1 w + q0 with a known point (w0, y0), y0 != 0."""

    coeffs: tuple[Fraction, ...]
    w0: Fraction
    y0: Fraction

    def __post_init__(self):
        c = tuple(rat(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "w0", rat(self.w0))
        object.__setattr__(self, "y0", rat(self.y0))
        if len(c) != 5 or c[0] == 0:
            raise ValueError("need a quartic with nonzero leading coefficient")
        if self.value(self.w0) != self.y0**2:
            raise ValueError("known point is not on the quartic")
        if self.y0 == 0:
            raise ValueError("known point must have y0 != 0")
        from sympy import Poly, symbols

        x = symbols("x")
        if Poly(list(c), x).discriminant() == 0:
            raise ValueError("quartic has a repeated root")

    @classmethod
    def seeded(cls, which, w0: RatLike) -> "QuarticModel":
        c = _quartic_coeffs(which)
        val, ok = quartic_value(c, w0)
        if not ok:
            raise ValueError(f"the quartic is not a square at w = {rat_str(rat(w0))}")
        return cls(tuple(rat(x) for x in c), rat(w0), is_square_rat(val))

    def value(self, w: Fraction) -> Fraction:
        return poly_eval(list(reversed(self.coeffs)), w)

    def shifted(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        """(a, b, c, d, q) with Q(w0 + z) = a z^4 + b z^3 + c z^2 + d z + q^2."""
        q4, q3, q2, q1, q0 = self.coeffs
        w0 = self.w0
        a = q4
        b = 4 * q4 * w0 + q3
        c = 6 * q4 * w0**2 + 3 * q3 * w0 + q2
        d = 4 * q4 * w0**3 + 3 * q3 * w0**2 + 2 * q2 * w0 + q1
        return a, b, c, d, self.y0


@dataclass(frozen=True)
class WeierstrassReduction:
    """Birational map between a quartic with a known point and a long Weierstrass curve.

    With z = w - w0 and Q(w0 + z) = a z^4 + b z^3 + c z^2 + d z + q^2 the
    classical formulas are
        x = (2q(Y + q) + d z) / z^2,
        y = (4q^2 (Y + q) + 2q(d z + c z^2) - d^2 z^2 / (2q)) / z^3,
    landing on y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
    a1 = d/q, a2 = c - d^2/(4q^2), a3 = 2qb, a4 = -4q^2 a, a6 = a2 a4.
    """

    quartic: QuarticModel
    curve: CurveQ

    def forward(self, w: RatLike, Y: RatLike) -> PointQ:
        w, Y = rat(w), rat(Y)
        if self.quartic.value(w) != Y * Y:
            raise ValueError("point is not on the quartic")
        a, b, c, d, q = self.quartic.shifted()
        z = w - self.quartic.w0
        if z == 0:
            if Y == q:
                return INFINITY
            return PointQ(-self.curve.a2, self.curve.a1 * self.curve.a2 - self.curve.a3)
        x = (2 * q * (Y + q) + d * z) / z**2
        y = (4 * q * q * (Y + q) + 2 * q * (d * z + c * z * z) - d * d * z * z / (2 * q)) / z**3
        return PointQ(x, y)

    def inverse(self, P: PointQ) -> tuple[Fraction, Fraction] | None:
        """(w, Y) on the quartic, or None for the points with no affine image."""
        a, b, c, d, q = self.quartic.shifted()
        if P.is_infinity:
            return self.quartic.w0, q
        if P.y == 0:
            return None
        z = (2 * q * (P.x + c) - d * d / (2 * q)) / P.y
        Y = -q + z * (z * P.x - d) / (2 * q)
        if z == 0:
            return self.quartic.w0, Y
        return self.quartic.w0 + z, Y


def quartic_to_weierstrass(Q: QuarticModel) -> WeierstrassReduction:
    a, b, c, d, q = Q.shifted()
    a1 = d / q
    a2 = c - d * d / (4 * q * q)
    a3 = 2 * q * b
    a4 = -4 * q * q * a
    E = CurveQ(a1, a2, a3, a4, a2 * a4)
    if E.disc == 0:
        raise ValueError("degenerate quartic: the Weierstrass model is singular")
    return WeierstrassReduction(Q, E)


def generate_w_solutions(which, count: int, seeds: Sequence[RatLike] = ()) -> list[Fraction]:
    """Distinct w with the quartic a square, seeds first, then new ones from the group law."""
    if count <= 0:
        return []
    seeds = [rat(s) for s in seeds]
    if not seeds:
        seeds = _small_solutions(which)
    if not seeds:
        raise ValueError("no rational point on the quartic to start from")
    red = quartic_to_weierstrass(QuarticModel.seeded(which, seeds[0]))
    E = red.curve
    out: list[Fraction] = []

    def take(w):
        if w not in out:
            out.append(w)

    gens = []
    for s in seeds:
        take(s)
        val, _ = quartic_value(which, s)
        gens.append(red.forward(s, is_square_rat(val)))
    gens = [P for P in gens if not P.is_infinity]
    frontier = list(gens)
    seen = set(frontier)
    while len(out) < count and frontier:
        nxt = []
        for P in frontier:
            for G in gens:
                for R in (_add(E, P, G), _add(E, P, neg(E, G))):
                    if R in seen:
                        continue
                    seen.add(R)
                    nxt.append(R)
                    back = red.inverse(R)
                    if back is not None:
                        take(back[0])
        frontier = nxt
        if len(seen) > 10000:
            break
    return out[:count]


def _small_solutions(which, bound: int = 200) -> list[Fraction]:
    out = []
    for w in range(-bound, bound + 1):
        if quartic_value(which, w)[1]:
            out.append(Fraction(w))
    return out


# ---------------------------------------------------------------------------
# seven points


@dataclass(frozen=True)
class SevenPoints:
    w2: Fraction
    w3: Fraction
    curve: CurveQ
    points: tuple[PointQ, ...]
    ratio_identities: tuple[bool, ...]


def seven_points(w2: RatLike, w3: RatLike) -> SevenPoints:
    """Seven points on the w3-curve for a pair on the intersection locus."""
    w2, w3 = rat(w2), rat(w3)
    if 0 not in condition_values(w2, w3):
        raise OffLocusError(f"({rat_str(w2)}, {rat_str(w3)}) satisfies neither condition")
    c2, c3 = curve62(w2), curve63(w3)
    if c2.a == 0 or c3.a == 0:
        raise DegenerateSpecializationError("a62 or a63 vanishes")
    if c3.b * c2.a**2 != c2.b * c3.a**2:
        raise OffLocusError("the two curves do not coincide at this pair")
    ratios = tuple(x3 * c2.a == x2 * c3.a for x2, x3 in zip(c2.xs, c3.xs))
    xs = list(c3.xs) + [c2.xs[5] * c3.a / c2.a]
    E = c3.curve
    return SevenPoints(w2, w3, E, tuple(_lift_all(E, xs, "x")), ratios)


# ---------------------------------------------------------------------------
# the (w2, w5) intersection


def condition_values_w5(w2: RatLike, w5: RatLike) -> tuple[Fraction, Fraction]:
    """Values of the two conditions under which substitutions 2 and 5 give isomorphic curves."""
    p, q = rat(w2), rat(w5)
    ca = 9 * p**2 * q - 4 * p * q**2 - 198 * p**2 + 528 * q**2 + 1368 * p - 8208 * q
    cb = (11 * p**2 * q**2 - 171 * p**2 * q - 76 * p * q**2 + 25992 * p
          + 155952 * q - 3430944)
    return ca, cb


def locus_w5(w2: RatLike, which: str) -> list[Fraction]:
    """Rational w5 with the chosen (w2, w5) condition vanishing."""
    p = rat(w2)
    if which == "A":
        coeffs = [-198 * p**2 + 1368 * p, 9 * p**2 - 8208, 528 - 4 * p]
    elif which == "B":
        coeffs = [25992 * p - 3430944, 155952 - 171 * p**2, 11 * p**2 - 76 * p]
    else:
        raise ValueError(f"condition must be 'A' or 'B', got {which!r}")
    if all(c == 0 for c in coeffs):
        raise DegenerateSpecializationError("condition vanishes identically in w5")
    return rational_roots(coeffs)


def w5_coincidence(w2: RatLike, w5: RatLike) -> bool:
    """Whether the base curves at substitution 2 (w2) and substitution 5 (w5) are Q-isomorphic."""
    from .curve import isomorphic_over_q

    E2, _ = base_family(substitution(2, w2))
    E5, _ = base_family(substitution(5, w5))
    return isomorphic_over_q(E2, E5) is not None
