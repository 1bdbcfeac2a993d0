"""Rational Diophantine triples and their induced curves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import RatLike, is_square_rat, rat, rat_str
from .curve import PointQ, SingularCurveError, SplitCurve, on_curve


class DegenerateTripleError(ValueError):
    pass


class DegenerateParametersError(ValueError):
    pass


@dataclass(frozen=True)
class DiophTriple:
    a: Fraction
    b: Fraction
    c: Fraction
    r: Fraction
    s: Fraction
    t: Fraction

    @property
    def elements(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def to_json(self):
        return [rat_str(v) for v in self.elements]


@dataclass(frozen=True)
class TripleParams:
    t1: Fraction
    t2: Fraction
    t3: Fraction

    def __post_init__(self):
        for name in ("t1", "t2", "t3"):
            object.__setattr__(self, name, rat(getattr(self, name)))


def validate_triple(a: RatLike, b: RatLike, c: RatLike) -> DiophTriple:
    """Check that ab+1, ac+1, bc+1 are squares; return the triple with witnesses."""
    a, b, c = rat(a), rat(b), rat(c)
    if 0 in (a, b, c):
        raise DegenerateTripleError("triple has a zero element")
    if len({a, b, c}) < 3:
        raise DegenerateTripleError("triple elements are not distinct")
    witnesses = []
    for (p, q) in ((a, b), (a, c), (b, c)):
        w = is_square_rat(p * q + 1)
        if w is None:
            raise DegenerateTripleError(f"{rat_str(p)}·{rat_str(q)}+1 not a square")
        witnesses.append(w)
    return DiophTriple(a, b, c, *witnesses)


@dataclass(frozen=True)
class InducedCurve:
    """The curve y^2 = (x+ab)(x+ac)(x+bc) and its five visible points."""

    triple: DiophTriple
    split: SplitCurve
    A: PointQ
    B: PointQ
    C: PointQ
    P: PointQ
    S: PointQ

    @property
    def curve(self):
        return self.split.curve


def induced_curve(T: DiophTriple) -> InducedCurve:
    a, b, c = T.elements
    try:
        split = SplitCurve(-a * b, -a * c, -b * c)
    except SingularCurveError as exc:
        raise DegenerateTripleError(f"induced curve is singular: {exc}") from None
    out = InducedCurve(
        T,
        split,
        A=PointQ(-b * c, 0),
        B=PointQ(-a * c, 0),
        C=PointQ(-a * b, 0),
        P=PointQ(0, a * b * c),
        S=PointQ(1, T.r * T.s * T.t),
    )
    E = split.curve
    assert on_curve(E, out.P) and on_curve(E, out.S)
    return out


def lasic(p: TripleParams) -> tuple[Fraction, Fraction, Fraction]:
    """Lasic's parametrization of rational Diophantine triples."""
    t1, t2, t3 = p.t1, p.t2, p.t3
    den = (t1 * t2 * t3 - 1) * (t1 * t2 * t3 + 1)
    if den == 0:
        raise DegenerateParametersError("t1*t2*t3 = +-1")
    a = 2 * t1 * (1 + t1 * t2 * (1 + t2 * t3)) / den
    b = 2 * t2 * (1 + t2 * t3 * (1 + t3 * t1)) / den
    c = 2 * t3 * (1 + t3 * t1 * (1 + t1 * t2)) / den
    return a, b, c


def lasic_triple(p: TripleParams) -> DiophTriple:
    return validate_triple(*lasic(p))


def square_conditions(p: TripleParams) -> tuple[bool, bool, bool]:
    """Whether t3(t3-t2), t1(t1-t3), t2(t2-t1) are rational squares."""
    t1, t2, t3 = p.t1, p.t2, p.t3
    return tuple(
        is_square_rat(v) is not None
        for v in (t3 * (t3 - t2), t1 * (t1 - t3), t2 * (t2 - t1))
    )


def rank_jump_abscissa(p: TripleParams) -> Fraction:
    t1, t2, t3 = p.t1, p.t2, p.t3
    m = t1 * t2 * t3
    den = t3 * (m - 1) ** 2 * (m + 1) ** 2
    if den == 0:
        raise DegenerateParametersError("zero denominator in the rank-jump abscissa")
    return (
        -4 * (t2 * t2 * t3 - t3 + t2) * (t3 * t1 * t1 * t2 + 1 + t3 * t1)
        * (t2 * t3 + t2 * t3 * t3 * t1 + 1) / den
    )


def rank_jump_point(p: TripleParams, T: DiophTriple) -> PointQ | None:
    """The extra point on the induced curve that exists when t3(t3-t2) is a square.

    Returns None when the cubic is not a square at that abscissa, or when
    the point degenerates to 2-torsion (y = 0).
    """
    a, b, c = T.elements
    if p.t2 * p.t3 == 0:
        raise DegenerateParametersError("t2*t3 = 0")
    x = rank_jump_abscissa(p)
    y = is_square_rat((x + a * b) * (x + a * c) * (x + b * c))
    if y is None or y == 0:
        return None
    return PointQ(x, y)


def cuboid_sides(m: RatLike) -> tuple[Fraction, Fraction, Fraction]:
    """The parametric almost-perfect cuboid (s1, s2, s4)."""
    m = rat(m)
    s1 = 2 * (m * m + m + 1) * (m * m - 1) ** 2 * (m * m + 1 + 4 * m)
    s2 = 4 * (m * m + m + 1) * (2 * m + 1) * (m * m - 1) * (2 * m + m * m)
    s4 = (2 * m + 1) * (2 * m + m * m) * (3 * m * m + 2 * m + 1) * (m * m + 2 * m + 3)
    return s1, s2, s4


def cuboid_params(m: RatLike) -> TripleParams:
    """t1 = -s1^2, t2 = s2^2, t3 = s2^2 + s4^2 from the cuboid sides."""
    s1, s2, s4 = cuboid_sides(m)
    if s1 == 0 or s2 == 0 or s4 == 0:
        raise DegenerateParametersError(f"cuboid side vanishes at m = {rat_str(rat(m))}")
    p = TripleParams(-s1 * s1, s2 * s2, s2 * s2 + s4 * s4)
    if abs(p.t1 * p.t2 * p.t3) == 1:
        raise DegenerateParametersError("t1*t2*t3 = +-1")
    return p
