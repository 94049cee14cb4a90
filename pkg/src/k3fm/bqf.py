"""
Indefinite binary quadratic forms a x^2 + b x y + c y^2.

Reduction theory follows the usual cycle picture: a form is reduced when
|sqrt(D) - 2|a|| < b < sqrt(D), the reduction operator ``rho_step``
permutes reduced forms, and each proper equivalence class of discriminant
D owns exactly one cycle.  Every comparison with sqrt(D) is done on
integers via ``math.isqrt`` or by squaring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

from sympy import divisors, factorint

from .lattice import IntegerLattice


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_discriminant(D: int) -> bool:
    return D > 0 and D % 4 in (0, 1) and not is_square(D)


def is_fundamental_discriminant(D: int) -> bool:
    if not is_discriminant(D):
        return False
    if D % 4 == 1:
        return all(e == 1 for e in factorint(D).values())
    m = D // 4
    return m % 4 in (2, 3) and all(e == 1 for e in factorint(m).values())


def _check_disc(D):
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a positive non-square discriminant")


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        D = self.disc
        if D <= 0 or is_square(D):
            raise ValueError(f"form {tuple(self)} has discriminant {D}; need positive non-square")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def transform(self, M) -> "BinaryQuadraticForm":
        """f(p X + q Y, r X + s Y) for M = ((p, q), (r, s))."""
        (p, q), (r, s) = M
        a, b, c = self
        return BinaryQuadraticForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def __repr__(self):
        return f"BQF({self.a}, {self.b}, {self.c})"


def is_reduced(f: BinaryQuadraticForm) -> bool:
    """|sqrt(D) - 2|a|| < b < sqrt(D), on integers."""
    D = f.disc
    _check_disc(D)
    a2, b = 2 * abs(f.a), f.b
    if b <= 0 or b * b >= D:
        return False
    if D >= (a2 + b) ** 2:
        return False
    return a2 - b <= 0 or (a2 - b) ** 2 < D


def _rho_parts(f: BinaryQuadraticForm):
    a, b, c = f
    if c == 0:
        raise ValueError(f"{f!r}: c = 0, discriminant is a square")
    D = f.disc
    s = isqrt(D)
    m = 2 * abs(c)
    if c * c < D:
        # the unique b' = -b mod 2|c| in (sqrt(D) - 2|c|, sqrt(D))
        b2 = s - (s + b) % m
    else:
        b2 = (-b) % m
        if b2 > abs(c):
            b2 -= m
    return b2, (b2 * b2 - D) // (4 * c), (b + b2) // (2 * c)


def rho_step(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """(a, b, c) -> (c, b', (b'^2 - D) / 4c), properly equivalent to f."""
    b2, c2, _ = _rho_parts(f)
    return BinaryQuadraticForm(f.c, b2, c2)


def rho_matrix(f: BinaryQuadraticForm):
    """The SL2(Z) matrix M with f.transform(M) == rho_step(f)."""
    _, _, t = _rho_parts(f)
    return ((0, -1), (1, t))


def reduce_form(f: BinaryQuadraticForm, max_steps: Optional[int] = None) -> BinaryQuadraticForm:
    if max_steps is None:
        max_steps = 10 * max(f.disc.bit_length(), abs(f.a).bit_length(), abs(f.c).bit_length()) + 10
    g = f
    for _ in range(max_steps):
        if is_reduced(g):
            return g
        g = rho_step(g)
    raise RuntimeError(f"{f!r} not reduced after {max_steps} steps")


def cycle(f: BinaryQuadraticForm) -> list[BinaryQuadraticForm]:
    """The rho-cycle of reduced forms through the reduction of f,
    rotated to start at its lexicographically least member."""
    g = reduce_form(f)
    out = [g]
    h = rho_step(g)
    while h != g:
        out.append(h)
        h = rho_step(h)
        if len(out) > 4 * g.disc:
            raise RuntimeError("rho_step failed to close a cycle")
    i = out.index(min(out))
    return out[i:] + out[:i]


def reduced_forms(D: int, primitive: bool = True) -> list[BinaryQuadraticForm]:
    """Every reduced form of discriminant D, sorted."""
    _check_disc(D)
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (D - b * b) % 4:
            continue
        N = (D - b * b) // 4  # = -ac > 0
        for d in divisors(N):
            for a in (d, -d):
                f = BinaryQuadraticForm(a, b, -N // a)
                if is_reduced(f) and (not primitive or f.is_primitive()):
                    out.append(f)
    return sorted(out)


def cycles(D: int) -> list[list[BinaryQuadraticForm]]:
    """Partition of the primitive reduced forms of discriminant D into cycles."""
    left = set(reduced_forms(D))
    out = []
    for f in sorted(left):
        if f in left:
            cyc = cycle(f)
            left.difference_update(cyc)
            out.append(cyc)
    return out


def narrow_class_number(D: int) -> int:
    return len(cycles(D))


@dataclass(frozen=True)
class PellSolution:
    """Fundamental solution of x^2 - D y^2 = 4 * norm_sign."""

    x: int
    y: int
    norm_sign: int


def principal_form(D: int) -> BinaryQuadraticForm:
    _check_disc(D)
    s = isqrt(D)
    b = s if (s - D) % 2 == 0 else s - 1
    return BinaryQuadraticForm(1, b, (b * b - D) // 4)


def pell_fundamental(D: int) -> PellSolution:
    """Least solution of x^2 - D y^2 = +-4, norm -1 preferred.

    Walks the principal cycle tracking the accumulated change of
    variables M; when the current form has leading coefficient +-1 the
    first column (x, y) of M represents +-1 by the principal form
    (1, b, c), so (2x + b y, y) solves the norm equation.  The first hit
    is the fundamental unit.
    """
    f0 = principal_form(D)
    f = f0
    M = ((1, 0), (0, 1))
    for _ in range(4 * D + 4):
        (p, q), (r, s) = M
        (p2, q2), (r2, s2) = rho_matrix(f)
        M = ((p * p2 + q * r2, p * q2 + q * s2), (r * p2 + s * r2, r * q2 + s * s2))
        f = rho_step(f)
        if f.a in (1, -1):
            x, y = M[0][0], M[1][0]
            X, Y = abs(2 * x + f0.b * y), abs(y)
            assert X * X - D * Y * Y == 4 * f.a
            return PellSolution(X, Y, f.a)
    raise RuntimeError(f"no unit found for D = {D}")


def wide_class_number(D: int) -> int:
    """Ideal class number of the real quadratic order of discriminant D."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    h = narrow_class_number(D)
    if pell_fundamental(D).norm_sign == -1:
        return h
    if h % 2:
        raise ArithmeticError(f"odd narrow class number {h} with no unit of norm -1 (D = {D})")
    return h // 2


def form_to_lattice(f: BinaryQuadraticForm) -> IntegerLattice:
    """Even rank-2 lattice [[2a, b], [b, 2c]] of determinant -D."""
    return IntegerLattice(((2 * f.a, f.b), (f.b, 2 * f.c)), label=f"({f.a},{f.b},{f.c})")


def brute_equiv_oracle(f: BinaryQuadraticForm, g: BinaryQuadraticForm,
                       coeff_bound: int, proper: bool = True):
    """Search for M = ((p, q), (r, s)) with f.transform(M) == g and
    det M = 1 (or +-1 when ``proper`` is False), over first columns with
    |p|, |r| <= coeff_bound.

    For a fixed first column the second is q0 + k p, s0 + k r, and the
    middle coefficient moves by 2 k g.a, so at most one k works.  Returns
    the matrix, or None.  Independent of the cycle machinery and meant
    for tests.
    """
    if f.disc != g.disc:
        return None
    rng = range(-coeff_bound, coeff_bound + 1)
    dets = (1,) if proper else (1, -1)
    for p, r in itertools.product(rng, rng):
        if gcd(p, r) != 1 or f(p, r) != g.a:
            continue
        u, v = _bezout(p, r)  # u p + v r = 1
        for det in dets:
            q0, s0 = -v * det, u * det  # p s0 - q0 r = det
            b0 = f.transform(((p, q0), (r, s0))).b
            k, rem = divmod(g.b - b0, 2 * g.a)
            if rem:
                continue
            M = ((p, q0 + k * p), (r, s0 + k * r))
            if f.transform(M) == g:
                return M
    return None


def _bezout(a: int, b: int):
    """(u, v) with u a + v b = gcd(a, b) = 1."""
    old_r, r, old_u, u, old_v, v = a, b, 1, 0, 0, 1
    while r:
        t = old_r // r
        old_r, r = r, old_r - t * r
        old_u, u = u, old_u - t * u
        old_v, v = v, old_v - t * v
    if old_r < 0:
        old_u, old_v = -old_u, -old_v
    return old_u, old_v
