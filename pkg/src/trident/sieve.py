"""Point counts over F_p, the Mestre-Nagao sum, and the staged (u, v) grid search."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .arith import rat_str
from .curve import CurveQ, integral_model
from .triples import DegenerateParametersError


class BadPrimeError(ValueError):
    """The prime divides the discriminant of the integral model."""


@lru_cache(maxsize=None)
def primes_up_to(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return tuple(int(p) for p in np.nonzero(sieve)[0])


@lru_cache(maxsize=None)
def _chi_table(p: int) -> np.ndarray:
    """Quadratic character of every residue mod an odd prime p."""
    chi = -np.ones(p, dtype=np.int64)
    chi[0] = 0
    squares = (np.arange(1, p, dtype=np.int64) ** 2) % p
    chi[squares] = 1
    return chi


def _require_integral(E: CurveQ) -> tuple[int, ...]:
    if not E.is_integral():
        raise ValueError("point counting needs an integral model")
    return tuple(int(a) for a in E.ainvs)


def count_points_brute(E: CurveQ, p: int) -> int:
    """#E(F_p) by looping over all (x, y); the long form, so any p works."""
    a1, a2, a3, a4, a6 = (a % p for a in _require_integral(E))
    n = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                n += 1
    return n


def ap(E: CurveQ, p: int) -> int:
    """Trace of Frobenius p + 1 - #E(F_p) at a prime of good reduction."""
    a1, a2, a3, a4, a6 = _require_integral(E)
    if E.disc % p == 0:
        raise BadPrimeError(f"{p} divides the discriminant")
    if p == 2:
        return p + 1 - count_points_brute(E, p)
    # complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2, b4, b6 = (int(v) % p for v in (E.b2, E.b4, E.b6))
    x = np.arange(p, dtype=np.int64)
    f = (((4 * x + b2) % p * x % p + 2 * b4) % p * x % p + b6) % p
    return -int(_chi_table(p)[f].sum())


def good_primes(E: CurveQ, N: int) -> list[int]:
    D = int(E.disc)
    return [p for p in primes_up_to(N) if D % p]


def mestre_nagao(E: CurveQ, N: int) -> float:
    """Sum over good p <= N of (2 - a_p)/(p + 1 - a_p) * log p, on an integral model."""
    if N < 2:
        raise ValueError("N must be at least 2")
    if not E.is_integral():
        E, _ = integral_model(E)
    total = 0.0
    for p in good_primes(E, N):
        a = ap(E, p)
        total += (2 - a) / (p + 1 - a) * math.log(p)
    return total


# ---------------------------------------------------------------------------
# grid search


@dataclass(frozen=True)
class StageConfig:
    n1: int = 100
    n2: int = 1000
    s1_min: float = float("-inf")
    s2_min: float = float("-inf")
    certify: bool = False
    # filter on the global root number; left unimplemented on purpose
    root_number: Callable[[CurveQ], int] | None = None


@dataclass
class SieveRecord:
    u: Fraction
    v: Fraction
    S1: float | None = None
    S2: float | None = None
    flags: dict = field(default_factory=dict)
    certified_bound: int | None = None
    skipped: str | None = None

    def to_json(self) -> str:
        out = {"u": rat_str(self.u), "v": rat_str(self.v)}
        if self.skipped is not None:
            out["skipped"] = self.skipped
        else:
            out["S1"] = self.S1
            out["S2"] = self.S2
            out["flags"] = self.flags
            if self.certified_bound is not None:
                out["certified_bound"] = self.certified_bound
        return json.dumps(out, sort_keys=True)


def _rationals(num_max: int, den_max: int) -> list[Fraction]:
    vals = {Fraction(n, d) for d in range(1, den_max + 1) for n in range(-num_max, num_max + 1)}
    return sorted(vals, key=lambda q: (q.denominator, q.numerator))


def grid_cells(u_num_max: int, u_den_max: int, v_num_max: int, v_den_max: int,
               diag: bool = False) -> list[tuple[Fraction, Fraction]]:
    """Cells ordered by (denominators, numerators); ``diag`` keeps only u = v."""
    us = _rationals(u_num_max, u_den_max)
    if diag:
        return [(u, u) for u in us]
    vs = _rationals(v_num_max, v_den_max)
    cells = [(u, v) for u in us for v in vs]
    cells.sort(key=lambda c: (c[0].denominator, c[1].denominator, c[0].numerator, c[1].numerator))
    return cells


def evaluate_cell(cell: tuple[Fraction, Fraction], config: StageConfig) -> SieveRecord:
    from .curve import SingularCurveError
    from .family_uv import uv_certify, uv_curve

    u, v = cell
    rec = SieveRecord(u, v)
    try:
        fam = uv_curve((u, v))
    except (DegenerateParametersError, SingularCurveError, ZeroDivisionError) as exc:
        rec.skipped = str(exc) or type(exc).__name__
        return rec
    E, _ = integral_model(fam.curve)
    rec.S1 = round(mestre_nagao(E, config.n1), 12)
    rec.flags["stage1"] = rec.S1 >= config.s1_min
    if rec.flags["stage1"]:
        rec.S2 = round(mestre_nagao(E, config.n2), 12)
        rec.flags["stage2"] = rec.S2 >= config.s2_min
    else:
        rec.flags["stage2"] = False
    if config.root_number is not None:
        raise NotImplementedError("root-number filtering is not implemented")
    if config.certify and rec.flags["stage2"]:
        rec.certified_bound = uv_certify((u, v)).bound
    return rec


def _evaluate_star(args):
    return evaluate_cell(*args)


def thread_count(flag: int | None = None) -> int:
    """Flags beat the TRIDENT_THREADS environment variable, which beats 1."""
    if flag is not None:
        return max(1, flag)
    env = os.environ.get("TRIDENT_THREADS")
    return max(1, int(env)) if env else 1


def sieve_grid(cells, config: StageConfig = StageConfig(), threads: int | None = None
               ) -> Iterator[SieveRecord]:
    """Evaluate every cell; records come out in input order whatever the parallelism."""
    cells = list(cells)
    n = thread_count(threads)
    if n == 1 or len(cells) < 2:
        for c in cells:
            yield evaluate_cell(c, config)
        return
    with ProcessPoolExecutor(max_workers=n) as pool:
        yield from pool.map(_evaluate_star, [(c, config) for c in cells], chunksize=4)
