"""
Counting Fourier-Mukai partners by double cosets.

For NS(X) = S with genus representatives S_1, ..., S_m the number of
partners is

    sum_i | O(S_i) \\ O(A_{S_i}) / O_Hodge(T(X)) |

where both groups act through their images in the isometry group of the
discriminant form.  Callers supply those images; nothing here computes
O(S_i) for an indefinite lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from sympy import isprime

from . import bqf
from .discform import (
    DiscIsometry,
    DiscSubgroup,
    FiniteQuadraticForm,
    compose,
    enumerate_isometries,
    find_isomorphism,
    plus_minus_identity,
)
from .lattice import discriminant_form, standard_lattice
from .rank1 import euler_phi


class NotASubgroup(ValueError):
    pass


def _check_subgroup(G: DiscSubgroup, full: set, side: str):
    if not set(G.elements) <= full:
        raise NotASubgroup(f"{side} contains non-isometries of the form")
    if not G.is_group():
        raise NotASubgroup(f"{side} is not closed under composition")


def double_coset_count(A: FiniteQuadraticForm, left: DiscSubgroup, right: DiscSubgroup,
                       bound: Optional[int] = None) -> int:
    """Number of double cosets left \\ O(A) / right."""
    full = enumerate_isometries(A, bound).elements
    full_set = set(full)
    _check_subgroup(left, full_set, "left")
    _check_subgroup(right, full_set, "right")
    seen = set()
    count = 0
    for g in full:
        if g in seen:
            continue
        count += 1
        for l in left:
            lg = compose(A, l, g)
            for r in right:
                seen.add(compose(A, lg, r))
    return count


def conjugate_subgroup(src: FiniteQuadraticForm, dst: FiniteQuadraticForm,
                       psi, H: DiscSubgroup) -> DiscSubgroup:
    """Transport H <= O(src) to O(dst) along an isometry psi: src -> dst."""
    psi_inv = inverse_isomorphism(src, dst, psi)
    els = set()
    for h in H:
        # psi o h o psi^-1, evaluated generator by generator of dst
        imgs = []
        for col in psi_inv.images:
            y = h.apply(src, col)
            imgs.append(psi.apply(dst, y))
        els.add(DiscIsometry.from_images(imgs))
    return DiscSubgroup(dst, tuple(sorted(els)))


def inverse_isomorphism(src, dst, psi):
    pre = {psi.apply(dst, x): x for x in src.elements()}
    k = dst.rank
    return DiscIsometry.from_images(
        [pre[dst.reduce(tuple(int(i == j) for i in range(k)))] for j in range(k)]
    )


@dataclass(frozen=True)
class GenusRep:
    form: FiniteQuadraticForm
    left: DiscSubgroup  # image of O(S_i) in O(A_{S_i})
    label: Optional[str] = None


@dataclass(frozen=True)
class CountingInput:
    genus_reps: tuple[GenusRep, ...]
    hodge_image: DiscSubgroup  # image of O_Hodge(T(X)) in O(A_S)


@dataclass(frozen=True)
class FMCount:
    total: int
    breakdown: tuple[int, ...] = field(default=())


def fm_count(inp: CountingInput, bound: Optional[int] = None) -> FMCount:
    """Sum of double-coset counts over the genus representatives."""
    if not inp.genus_reps:
        raise ValueError("at least one genus representative is required")
    H = inp.hodge_image
    parts = []
    for rep in inp.genus_reps:
        A = rep.form
        if A == H.form:
            right = H
        else:
            psi = find_isomorphism(H.form, A, bound)
            if psi is None:
                raise ValueError(f"genus representative {rep.label or A} has a different discriminant form")
            right = conjugate_subgroup(H.form, A, psi, H)
        parts.append(double_coset_count(A, rep.left, right, bound))
    return FMCount(sum(parts), tuple(parts))


def rank1_counting_input(n: int) -> CountingInput:
    """<2n> with O(<2n>) = {+-1} and Hodge group {+-id}.

    rk T(X) = 21 is odd, so the Hodge group has order 2I with
    phi(2I) | 21, forcing I = 1.  The genus of <2n> has one class.
    """
    if n < 2:
        raise ValueError(f"rank-1 counting needs n >= 2, got {n}")
    A = discriminant_form(standard_lattice("rank1", 2 * n))
    pm = plus_minus_identity(A)
    return CountingInput((GenusRep(A, pm, f"<{2 * n}>"),), pm)


def rank1_fm_count(n: int) -> int:
    return fm_count(rank1_counting_input(n)).total


def gamma_quotient_order(n: int) -> int:
    """|O(A_{Lambda_n})| / |{+-id}|, the order of the Galois group of
    the covering of period spaces.  Assumes O(Lambda_n) -> O(A) is onto."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    A = discriminant_form(standard_lattice("lambda_n", n))
    order = len(enumerate_isometries(A))
    if order % 2:
        raise ArithmeticError(f"|O(A)| = {order} is odd")
    return order // 2


def hodge_order_check(two_I: int, rank_T: int) -> bool:
    """Can a cyclic Hodge group of order 2I act on T of rank rank_T?"""
    if two_I < 2 or two_I % 2:
        raise ValueError(f"Hodge group order must be even and positive, got {two_I}")
    return rank_T % euler_phi(two_I) == 0


def rank2_fm_count(p: int) -> int:
    """(h(p) + 1) / 2 for rho = 2, det NS = -p."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p % 4 != 1:
        raise ValueError(f"p = {p} is not 1 mod 4; no even rank-2 lattice has determinant -p")
    h = bqf.wide_class_number(p)
    if h % 2 == 0:
        raise ArithmeticError(f"class number h({p}) = {h} is even")
    return (h + 1) // 2
