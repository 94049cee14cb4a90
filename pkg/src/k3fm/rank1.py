"""
Fourier-Mukai partners of a K3 surface with NS(X) = Z H, (H^2) = 2n.

The partners are the moduli spaces M_H((r, H, s)) with rs = n,
gcd(r, s) = 1 and r >= s.  Besides enumerating them, this module builds
the arithmetic objects behind that statement inside the extended
Neron-Severi lattice U + <2n> (basis e, H, f): the isotropic pair
v = (r, 1, s), u = (l, k, m) with <u, v> = 1, the generator pi of their
orthogonal complement, and exhaustive checks of the two congruence
lemmas that separate the partners.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from sympy import divisors as _divisors, factorint, totient


# -- elementary arithmetic -----------------------------------------------

def prime_factorization(n: int) -> list[tuple[int, int]]:
    if n < 1:
        raise ValueError(f"prime_factorization needs n >= 1, got {n}")
    return sorted(factorint(n).items())


def tau(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(prime_factorization(n))


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    return int(totient(m))


def expected_partner_count(n: int) -> int:
    """2^(tau(n) - 1), read as 1 at n = 1."""
    return 2 ** max(tau(n) - 1, 0)


# -- partners ------------------------------------------------------------

@dataclass(frozen=True)
class ExtendedNSVector:
    """a e + c H + b f in U + <2n>."""

    a: int
    c: int
    b: int
    n: int

    def __iter__(self):
        yield self.a
        yield self.c
        yield self.b

    def pair(self, other: "ExtendedNSVector") -> int:
        if other.n != self.n:
            raise ValueError("vectors live in different lattices")
        return 2 * self.n * self.c * other.c - self.a * other.b - self.b * other.a

    @property
    def square(self) -> int:
        return self.pair(self)


@dataclass(frozen=True)
class PartnerDescriptor:
    """Labels the moduli space M_H((r, H, s))."""

    r: int
    s: int
    n: int

    def __post_init__(self):
        if self.r * self.s != self.n or gcd(self.r, self.s) != 1 or not self.r >= self.s >= 1:
            raise ValueError(f"({self.r}, {self.s}) is not a special pair for n = {self.n}")

    @property
    def mukai_vector(self) -> ExtendedNSVector:
        return ExtendedNSVector(self.r, 1, self.s, self.n)


def enumerate_partners(n: int) -> list[PartnerDescriptor]:
    """Coprime factorizations n = r s with r >= s, by descending r."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    out = []
    for s in _divisors(n):
        r = n // s
        if r < s:
            break
        if gcd(r, s) == 1:
            out.append(PartnerDescriptor(r, s, n))
    return out


def mukai_vector(rk: int, c: int, c2: int, n: int) -> ExtendedNSVector:
    """(rk, c1, c1^2/2 - c2 + rk) for a sheaf with c1 = c H, (H^2) = 2n."""
    if rk <= 0:
        raise ValueError(f"rank must be positive, got {rk}")
    return ExtendedNSVector(rk, c, c * c * n - c2 + rk, n)


def is_special(v: ExtendedNSVector) -> bool:
    return v.c == 1 and v.a > 0 and gcd(v.a, v.b) == 1 and v.a * v.b == v.n


# -- the hyperbolic pair and its complement ------------------------------

def _k_order(bound):
    yield 0
    for k in range(1, bound + 1):
        yield -k
        yield k


def _signed_divisors(N):
    ds = _divisors(N)
    return [-d for d in reversed(ds)] + list(ds)


def _solutions_for_k(n, r, s, k):
    """All (l, m) with l m = n k^2 and r m + s l = 2 n k - 1."""
    rhs = 2 * n * k - 1
    N = n * k * k
    sols = []
    if N == 0:
        # one of l, m vanishes
        if rhs % r == 0:
            sols.append((0, rhs // r))
        if rhs % s == 0:
            sols.append((rhs // s, 0))
        return sorted(set(sols))
    for l in _signed_divisors(N):
        m = N // l
        if r * m + s * l == rhs:
            sols.append((l, m))
    return sols


def solve_hyperbolic_partner(n: int, r: int, s: int, k_bound: int) -> Optional[tuple[int, int, int]]:
    """A vector u = (l, k, m) with <u, u> = 0 and <u, (r, 1, s)> = 1.

    k is scanned as 0, -1, 1, -2, 2, ...; for the first k admitting a
    solution the one with the smallest (m, l) is returned.  Returns None
    if nothing exists with |k| <= k_bound.
    """
    if r < 1 or s < 1 or r * s != n or gcd(r, s) != 1:
        raise ValueError(f"need coprime positive r, s with rs = n, got r={r}, s={s}, n={n}")
    for k in _k_order(k_bound):
        sols = _solutions_for_k(n, r, s, k)
        if sols:
            l, m = min(sols, key=lambda lm: (lm[1], lm[0]))
            return l, k, m
    return None


def satisfies_hyperbolic_equations(n, r, s, l, k, m) -> bool:
    """rs = n, lm = n k^2, -mr - ls + 2nk = 1."""
    return r * s == n and l * m == n * k * k and -m * r - l * s + 2 * n * k == 1


def pi_vector(n: int, r: int, s: int, l: int, k: int, m: int) -> ExtendedNSVector:
    """Generator of the orthogonal complement of Z u + Z v."""
    if not satisfies_hyperbolic_equations(n, r, s, l, k, m):
        raise ValueError(f"(r,s,l,k,m) = {(r, s, l, k, m)} violates the hyperbolic equations for n = {n}")
    return ExtendedNSVector(2 * n * (-l + r * k), r * m - l * s, 2 * n * (m - s * k), n)


@dataclass(frozen=True)
class Lemma23Check:
    n: int
    r: int
    s: int
    u: Optional[tuple[int, int, int]]
    pi: Optional[ExtendedNSVector]
    ok: bool


def check_lemma23(n: int, k_bound: Optional[int] = None) -> list[Lemma23Check]:
    """For every partner of n: find u, build pi and verify
    <pi, u> = <pi, v> = 0, <pi, pi> = 2n and gcd(rm - ls, 2n) = 1."""
    k_bound = n if k_bound is None else k_bound
    out = []
    for p in enumerate_partners(n):
        u = solve_hyperbolic_partner(n, p.r, p.s, k_bound)
        if u is None:
            out.append(Lemma23Check(n, p.r, p.s, None, None, False))
            continue
        l, k, m = u
        v = p.mukai_vector
        uu = ExtendedNSVector(l, k, m, n)
        pi = pi_vector(n, p.r, p.s, l, k, m)
        ok = (
            v.square == 0 and uu.square == 0 and uu.pair(v) == 1
            and pi.pair(uu) == 0 and pi.pair(v) == 0 and pi.square == 2 * n
            and gcd(pi.c, 2 * n) == 1
        )
        out.append(Lemma23Check(n, p.r, p.s, u, pi, ok))
    return out


# -- the congruence lemmas -----------------------------------------------

def check_lemma24_congruence(n: int, sol, sol2) -> Optional[int]:
    """Compare x = rm - ls and x' = r'm' - l's' modulo 2n.

    ``sol`` and ``sol2`` are tuples (r, s, l, k, m).  Returns +1 when
    x' = x, -1 when x' = -x (+1 wins if both hold), None otherwise.
    """
    for t in (sol, sol2):
        if len(t) != 5 or not satisfies_hyperbolic_equations(n, *t):
            raise ValueError(f"{t!r} is not a solution of the hyperbolic equations for n = {n}")
    r, s, l, k, m = sol
    r2, s2, l2, k2, m2 = sol2
    x = r * m - l * s
    x2 = r2 * m2 - l2 * s2
    if (x2 - x) % (2 * n) == 0:
        return 1
    if (x2 + x) % (2 * n) == 0:
        return -1
    return None


def hyperbolic_solutions(n: int, bound: int, signed: bool = False) -> list[tuple[int, int, int, int, int]]:
    """All (r, s, l, k, m) solving the hyperbolic equations in the box
    0 <= k <= bound, 0 <= l, m <= n bound^2 (naturals), or with
    |k|, |l|, |m| bounded the same way when ``signed``.  r, s > 0."""
    box = n * bound * bound
    ks = range(-bound, bound + 1) if signed else range(0, bound + 1)
    out = []
    for r in _divisors(n):
        s = n // r
        for k in ks:
            for l, m in _solutions_for_k(n, r, s, k):
                if signed:
                    if abs(l) <= box and abs(m) <= box:
                        out.append((r, s, l, k, m))
                elif 0 <= l <= box and 0 <= m <= box:
                    out.append((r, s, l, k, m))
    return sorted(out)


@dataclass(frozen=True)
class Lemma25Counterexample:
    n: int
    case: int  # 1: same residue but r' != r; 2: opposite residue but r' != s
    sol: tuple[int, int, int, int, int]
    sol2: tuple[int, int, int, int, int]


def search_lemma25_counterexamples(n: int, bound: int, signed: bool = False) -> list[Lemma25Counterexample]:
    """Pairs of solutions where x' = +-x mod 2n but r' is not r (resp. s).

    With ``signed=False`` this checks the statement over natural numbers;
    ``signed=True`` repeats the search with negative l, k, m allowed and
    is diagnostic only.
    """
    if n < 1 or bound < 1:
        raise ValueError("n and bound must be positive")
    sols = hyperbolic_solutions(n, bound, signed)
    mod = 2 * n
    bad = []
    for t in sols:
        x = t[0] * t[4] - t[2] * t[1]
        for t2 in sols:
            x2 = t2[0] * t2[4] - t2[2] * t2[1]
            if (x2 - x) % mod == 0 and t2[0] != t[0]:
                bad.append(Lemma25Counterexample(n, 1, t, t2))
            if (x2 + x) % mod == 0 and t2[0] != t[1]:
                bad.append(Lemma25Counterexample(n, 2, t, t2))
    return bad
