"""Weierstrass curves over Q with exact arithmetic.

The long form ``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` is the master
representation. Split curves (three rational 2-torsion abscissas) are a
constrained view used by the descent code.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .arith import (
    RatLike,
    int_sqrt,
    integer_roots,
    is_square_rat,
    legendre,
    rat,
    rat_root,
    rat_str,
    rational_roots,
)


class SingularCurveError(ValueError):
    pass


class NotOnCurveError(ValueError):
    pass


class NotSplitError(ValueError):
    """The 2-division cubic does not have three distinct rational roots."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class PointQ:
    """Affine rational point, or the point at infinity when x is None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", rat(self.x))
            object.__setattr__(self, "y", rat(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        if self.is_infinity:
            return "PointQ(O)"
        return f"PointQ({rat_str(self.x)}, {rat_str(self.y)})"

    def to_json(self):
        if self.is_infinity:
            return "O"
        return [rat_str(self.x), rat_str(self.y)]

    @classmethod
    def from_json(cls, obj) -> "PointQ":
        if obj == "O" or obj is None:
            return INFINITY
        x, y = obj
        return cls(rat(x), rat(y))


INFINITY = PointQ()


@dataclass(frozen=True)
class CurveQ:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.disc == 0:
            raise SingularCurveError(f"singular curve {self.ainvs_str()}")

    @classmethod
    def short(cls, a4: RatLike, a6: RatLike) -> "CurveQ":
        return cls(0, 0, 0, a4, a6)

    @classmethod
    def from_ainvs(cls, ainvs: Iterable[RatLike]) -> "CurveQ":
        return cls(*[rat(a) for a in ainvs])

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def ainvs_str(self) -> list[str]:
        return [rat_str(a) for a in self.ainvs]

    def __repr__(self):
        return f"CurveQ([{', '.join(self.ainvs_str())}])"

    # standard formulary
    @property
    def b2(self):
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def disc(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j(self):
        return self.c4 ** 3 / self.disc

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    def to_json(self):
        return {"ainvs": self.ainvs_str()}

    @classmethod
    def from_json(cls, obj) -> "CurveQ":
        if isinstance(obj, dict):
            obj = obj["ainvs"]
        return cls.from_ainvs(obj)


def invariants_c4_c6_disc_j(E: CurveQ):
    return E.c4, E.c6, E.disc, E.j


# ---------------------------------------------------------------------------
# group law


def on_curve(E: CurveQ, P: PointQ) -> bool:
    if P.is_infinity:
        return True
    x, y = P.x, P.y
    a1, a2, a3, a4, a6 = E.ainvs
    return y * y + a1 * x * y + a3 * y == ((x + a2) * x + a4) * x + a6


def _check(E: CurveQ, *points: PointQ) -> None:
    for P in points:
        if not on_curve(E, P):
            raise NotOnCurveError(f"{P!r} is not on {E!r}")


def neg(E: CurveQ, P: PointQ) -> PointQ:
    if P.is_infinity:
        return P
    return PointQ(P.x, -P.y - E.a1 * P.x - E.a3)


def _add(E: CurveQ, P: PointQ, Q: PointQ) -> PointQ:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = E.ainvs
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return PointQ(x3, y3)


def add(E: CurveQ, P: PointQ, Q: PointQ) -> PointQ:
    _check(E, P, Q)
    return _add(E, P, Q)


def _mul(E: CurveQ, n: int, P: PointQ) -> PointQ:
    if n < 0:
        return _mul(E, -n, neg(E, P))
    result = INFINITY
    addend = P
    while n:
        if n & 1:
            result = _add(E, result, addend)
        n >>= 1
        if n:
            addend = _add(E, addend, addend)
    return result


def mul(E: CurveQ, n: int, P: PointQ) -> PointQ:
    _check(E, P)
    return _mul(E, n, P)


def lift_x(E: CurveQ, x: RatLike) -> PointQ | None:
    """A point with the given abscissa, or None when y would be irrational."""
    x = rat(x)
    a1, a2, a3, a4, a6 = E.ainvs
    lin = a1 * x + a3
    disc = lin * lin + 4 * (((x + a2) * x + a4) * x + a6)
    root = is_square_rat(disc)
    if root is None:
        return None
    return PointQ(x, (root - lin) / 2)


# ---------------------------------------------------------------------------
# coordinate changes


@dataclass(frozen=True)
class Isomorphism:
    """The change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

    ``map_point`` sends points of the source curve to the target curve.
    """

    u: Fraction
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.u == 0:
            raise ValueError("isomorphism needs u != 0")

    def apply(self, E: CurveQ) -> CurveQ:
        u, r, s, t = self.u, self.r, self.s, self.t
        a1, a2, a3, a4, a6 = E.ainvs
        return CurveQ(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u ** 2,
            (a3 + r * a1 + 2 * t) / u ** 3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4,
            (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6,
        )

    def map_point(self, P: PointQ) -> PointQ:
        if P.is_infinity:
            return P
        u, r, s, t = self.u, self.r, self.s, self.t
        xr = P.x - r
        return PointQ(xr / u ** 2, (P.y - s * xr - t) / u ** 3)

    def unmap_point(self, P: PointQ) -> PointQ:
        if P.is_infinity:
            return P
        u, r, s, t = self.u, self.r, self.s, self.t
        return PointQ(u * u * P.x + r, u ** 3 * P.y + s * u * u * P.x + t)

    def inverse(self) -> "Isomorphism":
        u, r, s, t = self.u, self.r, self.s, self.t
        return Isomorphism(1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)

    def then(self, other: "Isomorphism") -> "Isomorphism":
        """Apply ``self`` first, then ``other``."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Isomorphism(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 * u1 * s1 * r2 + u1 ** 3 * t2,
        )

    def to_json(self):
        return [rat_str(v) for v in (self.u, self.r, self.s, self.t)]


IDENTITY = Isomorphism(1)


def transform(E: CurveQ, u: RatLike, r: RatLike = 0, s: RatLike = 0, t: RatLike = 0):
    """Apply a [u, r, s, t] substitution; returns the new curve and the map."""
    iso = Isomorphism(u, r, s, t)
    return iso.apply(E), iso


class UnsupportedIsomorphismError(ValueError):
    pass


def isomorphic_over_q(E1: CurveQ, E2: CurveQ) -> Isomorphism | None:
    """An isomorphism E1 -> E2 defined over Q, or None if none exists.

    j = 0 and j = 1728 are handled through the sixth and fourth roots of the
    c6 and c4 ratios respectively.
    """
    if E1.j != E2.j:
        return None
    c4a, c6a, c4b, c6b = E1.c4, E1.c6, E2.c4, E2.c6
    if c4a == 0:
        u = rat_root(c6a / c6b, 6)
    elif c6a == 0:
        u = rat_root(c4a / c4b, 4)
    else:
        u2 = (c6a / c6b) / (c4a / c4b)
        u = is_square_rat(u2)
        if u is not None and (u ** 4 != c4a / c4b or u ** 6 != c6a / c6b):
            u = None
    if u is None:
        return None
    for uu in (u, -u):
        s = (uu * E2.a1 - E1.a1) / 2
        r = (uu * uu * E2.a2 - E1.a2 + s * E1.a1 + s * s) / 3
        t = (uu ** 3 * E2.a3 - E1.a3 - r * E1.a1) / 2
        iso = Isomorphism(uu, r, s, t)
        if iso.apply(E1) == E2:
            return iso
    return None


def integral_model(E: CurveQ) -> tuple[CurveQ, Isomorphism]:
    """Scale to integral coefficients with u = 1/D, D the lcm of denominators."""
    D = 1
    for a in E.ainvs:
        D = _lcm(D, a.denominator)
    if D == 1:
        return E, IDENTITY
    return transform(E, Fraction(1, D))


# ---------------------------------------------------------------------------
# split curves


@dataclass(frozen=True)
class SplitCurve:
    """y^2 = (x - e1)(x - e2)(x - e3) with rational e1 < e2 < e3."""

    e1: Fraction
    e2: Fraction
    e3: Fraction

    def __post_init__(self):
        es = sorted(rat(e) for e in (self.e1, self.e2, self.e3))
        if es[0] == es[1] or es[1] == es[2]:
            raise SingularCurveError(f"repeated root in {es}")
        for name, e in zip(("e1", "e2", "e3"), es):
            object.__setattr__(self, name, e)

    @property
    def roots(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.e1, self.e2, self.e3)

    @property
    def A(self) -> Fraction:
        return -(self.e1 + self.e2 + self.e3)

    @property
    def B(self) -> Fraction:
        return self.e1 * self.e2 + self.e1 * self.e3 + self.e2 * self.e3

    @property
    def C(self) -> Fraction:
        return -self.e1 * self.e2 * self.e3

    @property
    def curve(self) -> CurveQ:
        return CurveQ(0, self.A, 0, self.B, self.C)

    def two_torsion(self) -> list[PointQ]:
        return [PointQ(e, 0) for e in self.roots]

    def to_json(self):
        return {"roots": [rat_str(e) for e in self.roots]}

    @classmethod
    def from_json(cls, obj) -> "SplitCurve":
        return cls(*[rat(e) for e in obj["roots"]])


def split_model(E: CurveQ) -> tuple[SplitCurve, Isomorphism]:
    """Complete the square and find the three rational 2-torsion abscissas."""
    iso = Isomorphism(1, 0, -E.a1 / 2, -E.a3 / 2)
    F = iso.apply(E)
    roots = rational_roots([F.a6, F.a4, F.a2, 1])
    if len(roots) != 3:
        raise NotSplitError(f"{E!r} has {len(roots)} rational 2-torsion abscissas")
    return SplitCurve(*roots), iso


def split_form(E: CurveQ) -> SplitCurve:
    return split_model(E)[0]


def _least_lambda(N: int) -> int:
    """Least positive integer whose square is divisible by N."""
    from sympy import factorint

    lam = 1
    for p, e in factorint(N).items():
        lam *= p ** ((e + 1) // 2)
    return lam


def integral_split_model(S: SplitCurve) -> tuple[SplitCurve, Isomorphism]:
    """Shift the smallest root to 0 and scale (x, y) -> (l^2 x, l^3 y) to clear denominators.

    The returned isomorphism maps points of ``S.curve`` to the new curve.
    """
    d2, d3 = S.e2 - S.e1, S.e3 - S.e1
    lam = _least_lambda(_lcm(d2.denominator, d3.denominator))
    iso = Isomorphism(Fraction(1, lam), S.e1, 0, 0)
    return SplitCurve(0, d2 * lam * lam, d3 * lam * lam), iso


# ---------------------------------------------------------------------------
# torsion


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_sub(p: list[int], q: list[int]) -> list[int]:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]


def _poly_pow(p: list[int], k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def division_polynomials(E: CurveQ, nmax: int) -> dict[int, list[int]]:
    """Reduced division polynomials f_n (psi_n for odd n, psi_n/psi_2 for even n).

    Needs an integral model; coefficients ordered from the constant term up.
    """
    b2, b4, b6, b8 = (int(v) for v in (E.b2, E.b4, E.b6, E.b8))
    F = [b6, 2 * b4, b2, 4]
    F2 = _poly_mul(F, F)
    f: dict[int, list[int]] = {
        0: [0],
        1: [1],
        2: [1],
        3: [b8, 3 * b6, 3 * b4, b2, 3],
        4: [b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2],
    }

    def get(n: int) -> list[int]:
        if n in f:
            return f[n]
        m = n // 2
        if n % 2:
            t1 = _poly_mul(get(m + 2), _poly_pow(get(m), 3))
            t2 = _poly_mul(get(m - 1), _poly_pow(get(m + 1), 3))
            if m % 2 == 0:
                t1 = _poly_mul(F2, t1)
            else:
                t2 = _poly_mul(F2, t2)
            f[n] = _poly_sub(t1, t2)
        else:
            inner = _poly_sub(
                _poly_mul(get(m + 2), _poly_pow(get(m - 1), 2)),
                _poly_mul(get(m - 2), _poly_pow(get(m + 1), 2)),
            )
            f[n] = _poly_mul(get(m), inner)
        return f[n]

    for n in range(nmax + 1):
        get(n)
    return f


@functools.lru_cache(maxsize=256)
def torsion_model(E: CurveQ) -> tuple[CurveQ, Isomorphism]:
    """An isomorphic model y^2 = x^3 + a x^2 + b x + c with integer a, b, c.

    Torsion points on such a model have integer coordinates.
    """
    Ei, iso1 = integral_model(E)
    iso2 = Isomorphism(Fraction(1, 2), 0, -Ei.a1 / 2, -Ei.a3 / 2)
    W = iso2.apply(Ei)
    assert W.is_integral() and W.a1 == 0 and W.a3 == 0
    return W, iso1.then(iso2)


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i, v in enumerate(sieve) if v]


def _count_mod_p(W: CurveQ, p: int) -> int:
    a, b, c = int(W.a2) % p, int(W.a4) % p, int(W.a6) % p
    total = p + 1
    for x in range(p):
        total += legendre(((x + a) * x + b) * x + c, p)
    return total


def torsion_order_bound(E: CurveQ, nprimes: int = 20) -> int:
    """gcd of #E(F_p) over the first good odd primes; a multiple of #E(Q)_tors."""
    W, _ = torsion_model(E)
    disc = int(W.disc)
    m = 0
    used = 0
    for p in _small_primes(2000)[1:]:
        if disc % p == 0:
            continue
        m = gcd(m, _count_mod_p(W, p))
        used += 1
        if used >= nprimes or m == 1:
            break
    return m


def _integral_points_with_x(W: CurveQ, xs: Iterable[int]) -> list[PointQ]:
    out = []
    for x in xs:
        rhs = ((x + W.a2) * x + W.a4) * x + W.a6
        if rhs < 0:
            continue
        y = int_sqrt(int(rhs))
        if y is None:
            continue
        out.append(PointQ(x, y))
        if y:
            out.append(PointQ(x, -y))
    return out


def _closure(W: CurveQ, points: Iterable[PointQ]) -> set[PointQ]:
    group = {INFINITY}
    for P in points:
        if P in group:
            continue
        new = set(group)
        frontier = set(group)
        while frontier:
            nxt = set()
            for Q in frontier:
                R = _add(W, Q, P)
                if R not in new:
                    new.add(R)
                    nxt.add(R)
            frontier = nxt
        group = new
        if len(group) > 16:
            raise RuntimeError("torsion closure exceeded Mazur's bound; input is not torsion")
    return group


def _halves(W: CurveQ, P: PointQ) -> list[PointQ]:
    """Integral points Q on W with 2Q = P."""
    b2, b4, b6, b8 = (int(v) for v in (W.b2, W.b4, W.b6, W.b8))
    if P.is_infinity:
        xs = integer_roots([b6, 2 * b4, b2, 4])
    else:
        x0 = int(P.x)
        # x(2Q) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6)
        quartic = [-b8 - x0 * b6, -2 * b6 - 2 * b4 * x0, -b4 - b2 * x0, -4 * x0, 1]
        xs = integer_roots(quartic)
    return [Q for Q in _integral_points_with_x(W, xs) if _add(W, Q, Q) == P]


def torsion_subgroup(E: CurveQ) -> list[PointQ]:
    """All rational torsion points of E, with O first.

    The order is bounded by point counts mod small primes; 2-power torsion is
    found by exact halving, odd torsion from integer roots of division
    polynomials on an integral model.
    """
    W, iso = torsion_model(E)
    m = torsion_order_bound(E)
    group = _closure(W, _halves(W, INFINITY))
    odd = [n for n in (3, 5, 7, 9) if m % n == 0]
    if odd:
        f = division_polynomials(W, max(odd))
        for n in odd:
            cands = _integral_points_with_x(W, integer_roots(f[n]))
            group = _closure(W, list(group) + [Q for Q in cands if _mul(W, n, Q) == INFINITY])
    tried: set[PointQ] = set()
    while m % (2 * len(group)) == 0:
        todo = [P for P in group if P not in tried]
        if not todo:
            break
        grown = False
        for P in todo:
            tried.add(P)
            hs = [Q for Q in _halves(W, P) if Q not in group]
            if hs:
                group = _closure(W, list(group) + hs)
                grown = True
                break
        if not grown:
            break
    pts = sorted((iso.unmap_point(P) for P in group if not P.is_infinity), key=lambda P: (P.x, P.y))
    return [INFINITY] + pts


def is_torsion(E: CurveQ, P: PointQ) -> bool:
    """True iff kP = O for some 1 <= k <= 12."""
    _check(E, P)
    if P.is_infinity:
        return True
    W, iso = torsion_model(E)
    Q = iso.map_point(P)
    R = Q
    for _ in range(12):
        if R.is_infinity:
            return True
        if R.x.denominator != 1 or R.y.denominator != 1:
            return False
        R = _add(W, R, Q)
    return False


def point_order(E: CurveQ, P: PointQ) -> int | None:
    """Order of P if it is at most 12, else None (infinite order)."""
    _check(E, P)
    R = P
    for k in range(1, 13):
        if R.is_infinity:
            return k
        R = _add(E, R, P)
    return None
