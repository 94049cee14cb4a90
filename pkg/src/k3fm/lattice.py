"""
Even integral lattices given by Gram matrices.

Everything here is exact: Python integers and ``fractions.Fraction``.
A lattice is a frozen value; all operations are pure functions.

Sign convention for the hyperbolic plane: U has Gram [[0, -1], [-1, 0]]
in the basis (e, f).  With this choice the extended Neron-Severi lattice
U + <2n> in the basis (e, H, f) pairs

    <(a, c, b), (a', c', b')> = 2n c c' - a b' - b a'.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence


class LatticeError(ValueError):
    """Raised for malformed Gram matrices and invalid lattice requests."""


def _as_int_matrix(rows) -> tuple[tuple[int, ...], ...]:
    out = []
    for i, row in enumerate(rows):
        r = []
        for j, x in enumerate(row):
            if isinstance(x, bool) or int(x) != x:
                raise LatticeError(f"gram[{i}][{j}] = {x!r} is not an integer")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class IntegerLattice:
    """An even nondegenerate lattice, stored as its Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        g = _as_int_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0:
            raise LatticeError("gram matrix is empty")
        for i, row in enumerate(g):
            if len(row) != n:
                raise LatticeError(f"gram row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            if g[i][i] % 2:
                raise LatticeError(f"gram[{i}][{i}] = {g[i][i]} is odd (lattice not even)")
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise LatticeError(
                        f"gram[{i}][{j}] = {g[i][j]} but gram[{j}][{i}] = {g[j][i]} (not symmetric)"
                    )
        if bareiss_det(g) == 0:
            raise LatticeError("gram matrix is degenerate (determinant 0)")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"IntegerLattice{name}(rank={self.rank}, gram={[list(r) for r in self.gram]})"


@dataclass(frozen=True, order=True)
class Signature:
    positive: int
    negative: int

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(self.positive + other.positive, self.negative + other.negative)

    def __iter__(self):
        yield self.positive
        yield self.negative


@dataclass(frozen=True)
class SmithDecomposition:
    """``left * M * right == diag`` with unimodular ``left`` and ``right``."""

    left: tuple[tuple[int, ...], ...]
    diag: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def invariants(self) -> tuple[int, ...]:
        k = min(len(self.diag), len(self.diag[0]) if self.diag else 0)
        return tuple(self.diag[i][i] for i in range(k))


# -- construction --------------------------------------------------------

E8_MINUS_GRAM = (
    (-2, 1, 0, 0, 0, 0, 0, 0),
    (1, -2, 1, 0, 0, 0, 0, 0),
    (0, 1, -2, 1, 0, 0, 0, 1),
    (0, 0, 1, -2, 1, 0, 0, 0),
    (0, 0, 0, 1, -2, 1, 0, 0),
    (0, 0, 0, 0, 1, -2, 1, 0),
    (0, 0, 0, 0, 0, 1, -2, 0),
    (0, 0, 1, 0, 0, 0, 0, -2),
)

U_GRAM = ((0, -1), (-1, 0))


def direct_sum(lattices: Sequence[IntegerLattice], label: Optional[str] = None) -> IntegerLattice:
    """Orthogonal direct sum (block diagonal Gram matrix)."""
    if not lattices:
        raise LatticeError("direct_sum of an empty list")
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i, row in enumerate(L.gram):
            for j, x in enumerate(row):
                g[off + i][off + j] = x
        off += L.rank
    if label is None and len(lattices) == 1:
        label = lattices[0].label
    return IntegerLattice(tuple(map(tuple, g)), label)


def standard_lattice(name: str, param: Optional[int] = None) -> IntegerLattice:
    """Named lattices used throughout the package.

    ``U``, ``E8_minus``, ``rank1`` (<d>, d even nonzero), ``lambda_n``
    (<-2n> + U^2 + E8(-1)^2), ``lambda_K3`` (U^3 + E8(-1)^2) and
    ``extended_NS`` (U + <2n> in the basis e, H, f).
    """
    if name == "U":
        return IntegerLattice(U_GRAM, "U")
    if name == "E8_minus":
        return IntegerLattice(E8_MINUS_GRAM, "E8(-1)")
    if name == "rank1":
        if param is None or param == 0 or param % 2:
            raise LatticeError(f"rank1 needs an even nonzero d, got {param!r}")
        return IntegerLattice(((param,),), f"<{param}>")
    if name == "lambda_K3":
        U = standard_lattice("U")
        E8 = standard_lattice("E8_minus")
        return direct_sum([U, U, U, E8, E8], label="Lambda_K3")
    if name in ("lambda_n", "extended_NS"):
        if param is None or param < 1:
            raise LatticeError(f"{name} needs n >= 1, got {param!r}")
        n = param
        if name == "extended_NS":
            gram = ((0, 0, -1), (0, 2 * n, 0), (-1, 0, 0))
            return IntegerLattice(gram, f"NS~(n={n})")
        U = standard_lattice("U")
        E8 = standard_lattice("E8_minus")
        return direct_sum(
            [IntegerLattice(((-2 * n,),)), U, U, E8, E8], label=f"Lambda_{n}"
        )
    raise LatticeError(f"unknown standard lattice {name!r}")


# -- arithmetic ----------------------------------------------------------

def pairing(L: IntegerLattice, x: Sequence[int], y: Sequence[int]):
    """``x^T G y``.  Rational vectors are accepted and give a rational."""
    n = L.rank
    if len(x) != n or len(y) != n:
        raise LatticeError(f"vectors of length {len(x)}, {len(y)} for a rank {n} lattice")
    g = L.gram
    return sum(x[i] * g[i][j] * y[j] for i in range(n) if x[i] for j in range(n))


def determinant(L: IntegerLattice) -> int:
    return bareiss_det(L.gram)


def signature(L: IntegerLattice) -> Signature:
    """Inertia of the Gram matrix by exact symmetric elimination.

    A zero diagonal is repaired by the congruence e_i -> e_i + e_j, which
    makes the new diagonal entry 2 g_ij != 0.
    """
    a = [[Fraction(x) for x in row] for row in L.gram]
    pos = neg = 0
    while a:
        n = len(a)
        p = next((i for i in range(n) if a[i][i] != 0), None)
        if p is None:
            i, j = next((i, j) for i in range(n) for j in range(n) if a[i][j] != 0)
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            p = i
        piv = a[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        rest = [k for k in range(n) if k != p]
        a = [[a[r][c] - a[r][p] * a[p][c] / piv for c in rest] for r in rest]
    return Signature(pos, neg)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _nearest_quotient(x: int, p: int) -> int:
    q, r = divmod(x, p)
    return q + 1 if 2 * abs(r) > abs(p) else q


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Deterministic: pivots are chosen as the entry of least absolute value,
    first in row-major order.
    """
    a = [[int(x) for x in row] for row in M]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    P = _identity(rows)
    Q = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        P[dst] = [x + k * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in a:
            row[dst] += k * row[src]
        for row in Q:
            row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            # Euclid on column t, then row t, always pivoting on the smallest
            # entry so that intermediate coefficients stay small
            while any(a[i][t] for i in range(t + 1, rows)):
                _, i = min((abs(a[i][t]), i) for i in range(t, rows) if a[i][t])
                swap_rows(t, i)
                for i in range(t + 1, rows):
                    if a[i][t]:
                        add_row(i, t, -_nearest_quotient(a[i][t], a[t][t]))
            if any(a[t][j] for j in range(t + 1, cols)):
                _, j = min((abs(a[t][j]), j) for j in range(t, cols) if a[t][j])
                swap_cols(t, j)
                for j in range(t + 1, cols):
                    if a[t][j]:
                        add_col(j, t, -_nearest_quotient(a[t][j], a[t][t]))
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                 if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            P[t] = [-x for x in P[t]]
        t += 1

    tup = lambda m: tuple(tuple(r) for r in m)
    return SmithDecomposition(tup(P), tup(a), tup(Q))


def discriminant_form(L: IntegerLattice):
    """The discriminant form (L*/L, q_L) in its Smith presentation.

    If ``P G Q = D`` then L* = Q D^{-1} Z^n, so the columns of Q divided
    by the invariant factors d_i > 1 lift a set of cyclic generators.
    """
    from .discform import FiniteQuadraticForm

    snf = smith_normal_form(L.gram)
    n = L.rank
    d = snf.invariants
    lifts = []
    orders = []
    for i in range(n):
        if d[i] == 1:
            continue
        lifts.append(tuple(Fraction(snf.right[r][i], d[i]) for r in range(n)))
        orders.append(d[i])
    k = len(lifts)
    q = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            v = pairing(L, lifts[i], lifts[j])
            q[i][j] = q[j][i] = v % 2 if i == j else v % 1
    return FiniteQuadraticForm(tuple(orders), tuple(map(tuple, q)), lifts=tuple(lifts))
