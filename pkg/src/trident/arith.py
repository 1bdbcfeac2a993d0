"""Exact integer and rational primitives.

Rationals are ``fractions.Fraction`` throughout: always in lowest terms with a
positive denominator, so equality is structural. Square classes in Q*/Q*^2 are
represented over a pairwise-coprime basis built by gcd splitting, which avoids
factoring the 50-digit integers that show up in the record curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

RatLike = Union[int, str, Fraction]


class IncompleteBasisError(ValueError):
    """A value does not factor completely over the supplied coprime basis."""

    def __init__(self, residue: int):
        super().__init__(f"residue {residue} does not factor over the basis")
        self.residue = residue


def rat(x: RatLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip().replace(" ", ""))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(q: Fraction) -> str:
    """Serialize as ``"num/den"`` (``"num"`` when the denominator is 1)."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def int_sqrt(n: int) -> int | None:
    if n < 0:
        raise ValueError("int_sqrt of a negative integer")
    k = isqrt(n)
    return k if k * k == n else None


def int_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None."""
    if n < 0:
        raise ValueError("int_root of a negative integer")
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def rat_root(q: RatLike, k: int) -> Fraction | None:
    """Rational k-th root (the positive one for even k), or None."""
    q = rat(q)
    if q < 0:
        if k % 2 == 0:
            return None
        r = rat_root(-q, k)
        return None if r is None else -r
    num = int_root(q.numerator, k)
    den = int_root(q.denominator, k) if num is not None else None
    if den is None:
        return None
    return Fraction(num, den)


def is_square_rat(q: RatLike) -> Fraction | None:
    """Nonnegative rational square root of ``q``, or None if ``q`` is not a square."""
    q = rat(q)
    if q < 0:
        return None
    num = int_sqrt(q.numerator)
    if num is None:
        return None
    den = int_sqrt(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def squarefree_part_small(n: int) -> int:
    """Squarefree part by trial division. Only meant for small test values."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1
    return sign * out * n


# ---------------------------------------------------------------------------
# coprime bases


@dataclass(frozen=True)
class CoprimeBasis:
    """Pairwise-coprime integers > 1, none of them a perfect square.

    The non-square condition makes exponent parities a faithful picture of
    square classes: a product of basis powers is a square exactly when every
    exponent is even.
    """

    elements: tuple[int, ...] = ()

    def __post_init__(self):
        for i, b in enumerate(self.elements):
            if b <= 1:
                raise ValueError(f"basis element {b} must exceed 1")
            for c in self.elements[i + 1:]:
                if gcd(b, c) != 1:
                    raise ValueError(f"basis elements {b} and {c} are not coprime")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def refine(self, values: Iterable[int]) -> "CoprimeBasis":
        """Return a basis over which the old elements and ``values`` all factor."""
        return coprime_basis(list(self.elements) + list(values))

    def factor(self, n: int) -> tuple[int, list[int]]:
        """Exponents of ``|n|`` over the basis; returns (residue, exponents).

        A residue other than 1 means ``n`` does not factor over the basis.
        """
        n = abs(n)
        if n == 0:
            raise ValueError("cannot factor zero")
        exps = []
        for b in self.elements:
            e = 0
            if n % b == 0:
                n //= b
                e = 1
                while n % b == 0:
                    n //= b
                    e += 1
            exps.append(e)
        return n, exps


def _split_into(basis: list[int], n: int) -> None:
    work = [n]
    while work:
        m = work.pop()
        if m == 1:
            continue
        for i, b in enumerate(basis):
            g = gcd(m, b)
            if g > 1:
                basis.pop(i)
                work.extend((b // g, g, m // g))
                break
        else:
            basis.append(m)


def _strip_squares(b: int) -> int:
    while True:
        r = int_sqrt(b)
        if r is None:
            return b
        b = r


def coprime_basis(values: Sequence[int]) -> CoprimeBasis:
    """Factor refinement of ``values`` by repeated gcd splitting.

    Every ``|v|`` is a product of powers of the returned elements. Perfect
    squares are replaced by their roots, which keeps coprimality.
    """
    basis: list[int] = []
    for v in values:
        if v == 0:
            raise ValueError("coprime_basis: zero value")
        v = abs(v)
        if v > 1:
            _split_into(basis, v)
    out = sorted({_strip_squares(b) for b in basis})
    return CoprimeBasis(tuple(out))


# ---------------------------------------------------------------------------
# square classes


@dataclass(frozen=True)
class SquareClass:
    """A coset of Q*^2 in Q*: a sign and exponent parities over a basis."""

    sign: int
    parities: tuple[int, ...]
    basis: CoprimeBasis

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.basis != other.basis:
            raise ValueError("square classes over different bases")
        return SquareClass(
            self.sign * other.sign,
            tuple(a ^ b for a, b in zip(self.parities, other.parities)),
            self.basis,
        )

    def is_identity(self) -> bool:
        return self.sign == 1 and not any(self.parities)

    def bits(self) -> list[int]:
        """Sign bit followed by parities; the F2 coordinates of the class."""
        return [0 if self.sign == 1 else 1, *self.parities]

    def representative(self) -> int:
        """The squarefree-over-basis integer representing this class."""
        out = self.sign
        for b, e in zip(self.basis.elements, self.parities):
            if e:
                out *= b
        return out


def square_class(q: RatLike, basis: CoprimeBasis) -> SquareClass:
    q = rat(q)
    if q == 0:
        raise ValueError("square class of zero")
    parities = [0] * len(basis)
    for part in (q.numerator, q.denominator):
        residue, exps = basis.factor(part)
        if residue != 1:
            raise IncompleteBasisError(residue)
        parities = [p ^ (e & 1) for p, e in zip(parities, exps)]
    return SquareClass(1 if q > 0 else -1, tuple(parities), basis)


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol (a/p) for an odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"legendre needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


# ---------------------------------------------------------------------------
# exact root finding


def _trim(c: list[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_eval(c: Sequence, x):
    """Horner evaluation; coefficients are ordered from the constant term up."""
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _root_cells(c: list[int]) -> set[int]:
    """Integers k such that every real root of c lies in some [k, k+1]."""
    d = len(c) - 1
    if d <= 0:
        return set()
    if d == 1:
        return {(-c[0]) // c[1]}
    lead = abs(c[-1])
    bound = 1 + max(abs(a) for a in c[:-1]) // lead + 1
    deriv = [i * c[i] for i in range(1, d + 1)]
    crit = sorted(k for k in _root_cells(deriv) if -bound - 1 <= k <= bound)
    cells = set(crit)
    start = -bound
    for k in crit + [bound]:
        lo, hi = start, k
        if lo <= hi:
            flo, fhi = poly_eval(c, lo), poly_eval(c, hi)
            if flo == 0:
                cells.add(lo)
            if fhi == 0:
                cells.add(hi)
            if _sign(flo) * _sign(fhi) < 0:
                slo = _sign(flo)
                while hi - lo > 1:
                    mid = (lo + hi) // 2
                    fm = poly_eval(c, mid)
                    if fm == 0:
                        lo = hi = mid
                        break
                    if _sign(fm) == slo:
                        lo = mid
                    else:
                        hi = mid
                cells.add(lo)
        start = k + 1
    return cells


def integer_roots(coeffs: Sequence[int]) -> list[int]:
    """All integer roots of an integer polynomial, found without factoring.

    The real line is cut into pieces where the polynomial is monotone (using
    the same routine on the derivative) and each piece is bisected exactly.
    """
    c = _trim([int(a) for a in coeffs])
    if not c:
        raise ValueError("zero polynomial")
    roots = set()
    if c[0] == 0:
        roots.add(0)
    for k in _root_cells(c):
        for x in (k, k + 1):
            if poly_eval(c, x) == 0:
                roots.add(x)
    return sorted(roots)


def rational_roots(coeffs: Sequence[RatLike]) -> list[Fraction]:
    """All rational roots of a polynomial with rational coefficients."""
    q = [rat(a) for a in coeffs]
    while q and q[-1] == 0:
        q.pop()
    if not q:
        raise ValueError("zero polynomial")
    den = 1
    for a in q:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in q]
    d = len(ints) - 1
    lead = ints[-1]
    # x = X / lead turns the polynomial into a monic integer one in X
    if d == 0:
        return []
    monic = [ints[i] * lead ** (d - 1 - i) for i in range(d)] + [1]
    return sorted(Fraction(X, lead) for X in integer_roots(monic))
