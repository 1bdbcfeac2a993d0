"""Rank lower bounds from the 2-descent map on curves with full rational 2-torsion.

For y^2 = (x-e1)(x-e2)(x-e3) the map P -> (x-e1, x-e2) mod squares is a
homomorphism E(Q) -> (Q*/Q*^2)^2 killing 2E(Q). If the images of some points
are F2-independent modulo the images of the torsion points, those points are
Z-independent modulo torsion: reduce any relation until one coefficient is
odd and read it mod 2. Square classes are tracked over a coprime basis so no
integer factorization is needed.

When a combination of the points lands in 2E(Q) + torsion the plain F2 count
undercounts. Such a combination is halved exactly and one of its points is
swapped for the half; the swap keeps the rank of the span, so the count on
the new set bounds the rank of the original points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import (
    CoprimeBasis,
    SquareClass,
    coprime_basis,
    is_square_rat,
    rat,
    square_class,
)
from .curve import (
    CurveQ,
    NotOnCurveError,
    PointQ,
    SplitCurve,
    _add,
    is_torsion,
    lift_x,
    on_curve,
    split_model,
    torsion_subgroup,
)


class TorsionPointError(ValueError):
    """Raised by the height code when a multiple of the point is O."""


@dataclass(frozen=True)
class DescentImage:
    first: SquareClass
    second: SquareClass

    def __mul__(self, other: "DescentImage") -> "DescentImage":
        return DescentImage(self.first * other.first, self.second * other.second)

    def is_identity(self) -> bool:
        return self.first.is_identity() and self.second.is_identity()

    def bits(self) -> list[int]:
        return self.first.bits() + self.second.bits()


def descent_values(roots: Sequence[Fraction], P: PointQ) -> tuple[Fraction, Fraction]:
    """The two rationals whose square classes form the image of P."""
    e1, e2, e3 = roots
    if P.is_infinity:
        return Fraction(1), Fraction(1)
    x = P.x
    if x == e1:
        return (e1 - e2) * (e1 - e3), e1 - e2
    if x == e2:
        return e2 - e1, (e2 - e1) * (e2 - e3)
    return x - e1, x - e2


def _basis_for(values) -> CoprimeBasis:
    ints = []
    for q in values:
        ints.extend((q.numerator, q.denominator))
    return coprime_basis(ints)


def descent_image(S: SplitCurve, P: PointQ, basis: CoprimeBasis | None = None,
                  roots: Sequence[Fraction] | None = None) -> DescentImage:
    """Image of P under the (x-e1, x-e2) map.

    ``roots`` picks which two roots play e1 and e2 (default: sorted order).
    """
    roots = tuple(rat(e) for e in roots) if roots is not None else S.roots
    if sorted(roots) != list(S.roots):
        raise ValueError("roots must be a permutation of the curve's roots")
    if not on_curve(S.curve, P):
        raise NotOnCurveError(f"{P!r} is not on the split curve")
    vals = descent_values(roots, P)
    if basis is None:
        basis = _basis_for(vals)
    return DescentImage(square_class(vals[0], basis), square_class(vals[1], basis))


def _bits_to_int(bits: list[int]) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b:
            out |= 1 << i
    return out


def halve(S: SplitCurve, Q: PointQ) -> list[PointQ]:
    """All rational R with 2R = Q on the split curve.

    Q is in 2E(Q) iff every x(Q) - e_i is a square; with r_i those roots the
    halves have x = x(Q) + r1 r2 + r1 r3 + r2 r3 for suitable signs.
    """
    C = S.curve
    if Q.is_infinity:
        return [PointQ()] + S.two_torsion()
    roots = [is_square_rat(Q.x - e) for e in S.roots]
    if any(r is None for r in roots):
        return []
    r1, r2, r3 = roots
    out = []
    for s2 in (1, -1):
        for s3 in (1, -1):
            a, b, c = r1, s2 * r2, s3 * r3
            x = Q.x + a * b + a * c + b * c
            R = lift_x(C, x)
            if R is None:
                continue
            for cand in (R, PointQ(R.x, -R.y)):
                if cand not in out and _add(C, cand, cand) == Q:
                    out.append(cand)
    return out


@dataclass(frozen=True)
class Halving:
    """``points[index]`` was replaced by ``half``, where 2*half = sum(points[combo]) + torsion."""

    index: int
    combo: tuple[int, ...]
    torsion: PointQ
    half: PointQ

    def to_json(self):
        return {
            "index": self.index,
            "combo": list(self.combo),
            "torsion": self.torsion.to_json(),
            "half": self.half.to_json(),
        }


@dataclass
class IndependenceCertificate:
    """F2 certificate; ``points`` are the inputs on the split model, ``working`` the rows' points."""

    curve: SplitCurve
    points: list[PointQ]
    working: list[PointQ]
    halvings: list[Halving]
    torsion: list[PointQ]
    basis: CoprimeBasis
    rows: list[list[int]]
    torsion_rows: list[list[int]]
    bound: int
    independent: list[int]
    dependency: list[int] | None = None
    dependency_is_torsion: bool | None = None
    curve_id: str = ""
    source_curve: CurveQ | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "curve_id": self.curve_id,
            "curve": self.curve.to_json(),
            "points": [P.to_json() for P in self.points],
            "working_points": [P.to_json() for P in self.working],
            "halvings": [h.to_json() for h in self.halvings],
            "torsion": [P.to_json() for P in self.torsion],
            "basis": [str(b) for b in self.basis.elements],
            "columns": ["sign1"] + [f"p{i}_1" for i in range(len(self.basis))]
            + ["sign2"] + [f"p{i}_2" for i in range(len(self.basis))],
            "rows": ["".join(map(str, r)) for r in self.rows],
            "torsion_rows": ["".join(map(str, r)) for r in self.torsion_rows],
            "bound": self.bound,
            "independent": self.independent,
        }
        if self.source_curve is not None:
            out["source_curve"] = self.source_curve.to_json()
        if self.dependency is not None:
            out["dependency"] = self.dependency
            out["dependency_is_torsion"] = self.dependency_is_torsion
        return out


def f2_rank_modulo(rows: list[int], subspace: list[int]) -> tuple[list[int], list[int] | None]:
    """Greedy F2 elimination of ``rows`` modulo the span of ``subspace``.

    Returns the indices of rows independent modulo the subspace and the first
    dependent combination found (a list of row indices), if any.
    """
    pivots: dict[int, tuple[int, int]] = {}

    def reduce(v: int, combo: int) -> tuple[int, int]:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                break
            pv, pc = pivots[top]
            v ^= pv
            combo ^= pc
        return v, combo

    for v in subspace:
        v, _ = reduce(v, 0)
        if v:
            pivots[v.bit_length() - 1] = (v, 0)
    independent = []
    dependency = None
    for i, v in enumerate(rows):
        v, combo = reduce(v, 1 << i)
        if v:
            pivots[v.bit_length() - 1] = (v, combo)
            independent.append(i)
        elif dependency is None:
            dependency = [k for k in range(len(rows)) if combo >> k & 1]
    return independent, dependency


def verify_certificate(cert: dict) -> int:
    """Recompute the bound of a serialized certificate from its points.

    Rebuilds the basis, re-derives every image row and reruns the F2 algebra;
    returns the bound, raising if anything disagrees with the stored data.
    """
    S = SplitCurve.from_json(cert["curve"])
    C = S.curve
    current = [PointQ.from_json(p) for p in cert["points"]]
    for h in cert.get("halvings", []):
        half = PointQ.from_json(h["half"])
        total = PointQ.from_json(h["torsion"])
        for k in h["combo"]:
            total = _add(C, total, current[k])
        if h["index"] not in h["combo"] or _add(C, half, half) != total:
            raise ValueError("halving record does not check out")
        current[h["index"]] = half
    points = [PointQ.from_json(p) for p in cert.get("working_points", cert["points"])]
    if points != current:
        raise ValueError("working points do not follow from the halvings")
    torsion = [PointQ.from_json(p) for p in cert["torsion"]]
    basis = CoprimeBasis(tuple(int(b) for b in cert["basis"]))
    rows = [descent_image(S, P, basis).bits() for P in points]
    trows = [descent_image(S, T, basis).bits() for T in torsion]
    if ["".join(map(str, r)) for r in rows] != cert["rows"]:
        raise ValueError("certificate rows do not match the points")
    if ["".join(map(str, r)) for r in trows] != cert["torsion_rows"]:
        raise ValueError("certificate torsion rows do not match")
    ind, _ = f2_rank_modulo([_bits_to_int(r) for r in rows], [_bits_to_int(r) for r in trows])
    if len(ind) != cert["bound"]:
        raise ValueError(f"recomputed bound {len(ind)} != stored {cert['bound']}")
    return len(ind)


def independence_bound(E: CurveQ | SplitCurve, points: Sequence[PointQ],
                       curve_id: str = "") -> IndependenceCertificate:
    """Certify that the returned number of the given points are independent mod torsion.

    ``E`` may be any model with full rational 2-torsion; points are moved to
    the split model first.
    """
    if isinstance(E, SplitCurve):
        S, source = E, None
        pts = list(points)
    else:
        S, iso = split_model(E)
        source = E
        for P in points:
            if not on_curve(E, P):
                raise NotOnCurveError(f"{P!r} is not on {E!r}")
        pts = [iso.map_point(P) for P in points]
    C = S.curve
    for P in pts:
        if not on_curve(C, P):
            raise NotOnCurveError(f"{P!r} is not on the split model")
    torsion = torsion_subgroup(C)
    working = list(pts)
    halvings: list[Halving] = []
    seen = {tuple(working)}
    for _ in range(8 * len(pts) + 8):
        basis, rows, trows, independent, dependency = _eliminate(S, working, torsion)
        if dependency is None:
            break
        total = PointQ()
        for k in dependency:
            total = _add(C, total, working[k])
        step = None
        for T in torsion:
            halves = halve(S, _add(C, total, T))
            if halves:
                step = Halving(dependency[-1], tuple(dependency), T, halves[0])
                break
        if step is None:
            break
        trial = list(working)
        trial[step.index] = step.half
        if tuple(trial) in seen:
            break  # e.g. {P, 2P}: halving just cycles
        seen.add(tuple(trial))
        halvings.append(step)
        working = trial
    cert = IndependenceCertificate(
        curve=S,
        points=pts,
        working=working,
        halvings=halvings,
        torsion=torsion,
        basis=basis,
        rows=rows,
        torsion_rows=trows,
        bound=len(independent),
        independent=independent,
        curve_id=curve_id,
        source_curve=source,
    )
    if dependency is not None:
        total = PointQ()
        for k in dependency:
            total = _add(C, total, working[k])
        cert.dependency = dependency
        cert.dependency_is_torsion = is_torsion(C, total)
    return cert


def _eliminate(S: SplitCurve, points: list[PointQ], torsion: list[PointQ]):
    values = []
    for P in points + torsion:
        values.extend(descent_values(S.roots, P))
    basis = _basis_for(values)
    rows = [descent_image(S, P, basis).bits() for P in points]
    trows = [descent_image(S, T, basis).bits() for T in torsion]
    independent, dependency = f2_rank_modulo(
        [_bits_to_int(r) for r in rows], [_bits_to_int(r) for r in trows]
    )
    return basis, rows, trows, independent, dependency


# ---------------------------------------------------------------------------
# heuristic heights (never used for certification)


def naive_height(x: Fraction) -> float:
    x = rat(x)
    return math.log(max(abs(x.numerator), x.denominator))


def canonical_height(E: CurveQ, P: PointQ, n: int = 4) -> float:
    """h(x(2^n P)) / 4^n; the error decays like 4^-n times a curve constant."""
    if n < 1:
        raise ValueError("doubling depth must be at least 1")
    if not on_curve(E, P):
        raise NotOnCurveError(f"{P!r} is not on {E!r}")
    if P.is_infinity:
        raise TorsionPointError("point at infinity")
    Q = P
    for _ in range(n):
        Q = _add(E, Q, Q)
        if Q.is_infinity:
            raise TorsionPointError(f"{P!r} is torsion")
    return naive_height(Q.x) / 4 ** n


def height_pairing_matrix(E: CurveQ, points: Sequence[PointQ], n: int = 4) -> np.ndarray:
    k = len(points)
    h = [canonical_height(E, P, n) for P in points]
    M = np.zeros((k, k))
    for i in range(k):
        M[i, i] = h[i]
        for j in range(i + 1, k):
            S = _add(E, points[i], points[j])
            hs = 0.0 if S.is_infinity else canonical_height(E, S, n)
            M[i, j] = M[j, i] = (hs - h[i] - h[j]) / 2
    return M


def regulator_heuristic(E: CurveQ, points: Sequence[PointQ], n: int = 4) -> float:
    """Determinant of the approximate height pairing; corroborates, never certifies."""
    return float(np.linalg.det(height_pairing_matrix(E, points, n)))
