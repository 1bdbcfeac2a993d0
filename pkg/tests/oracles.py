"""Reference computations that share no code with the package."""

from fractions import Fraction

import sympy


def is_rational_square(q) -> bool:
    q = sympy.Rational(q.numerator, q.denominator) if isinstance(q, Fraction) else sympy.Rational(q)
    if q < 0:
        return False
    return sympy.sqrt(q).is_Rational


def same_square_class(q1, q2) -> bool:
    return is_rational_square(Fraction(q1) * Fraction(q2))


def squarefree_part(n: int) -> int:
    out = -1 if n < 0 else 1
    for p, e in sympy.factorint(abs(n)).items():
        if e % 2:
            out *= p
    return out


def brute_point_count(ainvs, p: int) -> int:
    a1, a2, a3, a4, a6 = (int(a) % p for a in ainvs)
    count = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0:
                count += 1
    return count


def quartic_j(a, b, c, d, e) -> Fraction:
    """j-invariant of the Jacobian of Y^2 = a w^4 + b w^3 + c w^2 + d w + e via the I, J invariants."""
    a, b, c, d, e = (Fraction(v) for v in (a, b, c, d, e))
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c**3
    return 6912 * I**3 / (4 * I**3 - J * J)


def short_add(A, B, P, Q):
    """Chord-tangent addition on y^2 = x^3 + A x^2 + B x; None is the identity."""
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + 2 * A * x1 + B) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - A - x1 - x2
    return (x3, -(y1 + lam * (x3 - x1)))


def discriminant(ainvs) -> int:
    a1, a2, a3, a4, a6 = (int(a) for a in ainvs)
    b2 = a1 * a1 + 4 * a2
    b4 = a1 * a3 + 2 * a4
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def mestre_nagao_brute(ainvs, N: int) -> float:
    import math

    D = discriminant(ainvs)
    total = 0.0
    for p in sympy.primerange(2, N + 1):
        if D % p == 0:
            continue
        n = brute_point_count(ainvs, p)
        a = p + 1 - n
        total += (2 - a) / n * math.log(p)
    return total
