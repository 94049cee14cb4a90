import itertools
from fractions import Fraction

import pytest

from k3fm.discform import (
    BoundExceeded,
    DiscIsometry,
    FiniteQuadraticForm,
    NotAnIsometry,
    compose,
    enumerate_isometries,
    find_isomorphism,
    identity,
    inverse,
    is_isometry,
    is_isomorphic,
    negate,
    q_value,
    same_genus,
    scalar,
    subgroup_from_generators,
)
from k3fm.lattice import IntegerLattice, discriminant_form, direct_sum, standard_lattice
from k3fm.rank1 import tau

Z12 = FiniteQuadraticForm.cyclic(12, Fraction(1, 12))


def mult(F, a):
    return scalar(F, a)


def test_q_value():
    F = discriminant_form(standard_lattice("rank1", 12))
    assert q_value(F, (1,)) == Fraction(1, 12)
    assert q_value(F, (0,)) == 0
    assert q_value(F, (5,)) == Fraction(1, 12)
    with pytest.raises(ValueError):
        q_value(F, (1, 2))


def test_q_value_uses_bilinear_terms():
    F = discriminant_form(standard_lattice("U"))
    assert F.rank == 0
    # Z/2 x Z/2 with q = [[0, 1/2], [1/2, 0]]: q(1,1) = 0 + 0 + 2 * 1/2 = 1
    G = FiniteQuadraticForm((2, 2), ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    assert q_value(G, (1, 1)) == 1


def test_form_validation():
    with pytest.raises(ValueError):
        FiniteQuadraticForm((4, 6), ((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        FiniteQuadraticForm((4,), ((Fraction(1, 3),),))
    with pytest.raises(ValueError):
        FiniteQuadraticForm((1,), ((0,),))


def test_negate():
    triv = FiniteQuadraticForm((), ())
    assert negate(triv) == triv
    assert negate(Z12).q_gram == ((Fraction(23, 12),),)
    F = discriminant_form(standard_lattice("extended_NS", 6))
    assert negate(negate(F)) == F


def test_enumerate_isometries_examples():
    O = enumerate_isometries(Z12)
    assert [g.matrix[0][0] for g in O] == [1, 5, 7, 11]
    assert len(enumerate_isometries(FiniteQuadraticForm.cyclic(2, Fraction(1, 2)))) == 1
    O4 = enumerate_isometries(FiniteQuadraticForm.cyclic(4, Fraction(1, 4)))
    assert [g.matrix[0][0] for g in O4] == [1, 3]
    assert len(enumerate_isometries(FiniteQuadraticForm((), ()))) == 1


def brute_units_preserving(d, q):
    """x -> a x with a a unit mod d and a^2 q = q mod 2."""
    from math import gcd
    return [a for a in range(d) if gcd(a, d) == 1 and (a * a * q - q) % 2 == 0]


@pytest.mark.parametrize("n", [2, 3, 4, 6, 12, 30, 60])
def test_cyclic_isometries_match_unit_count(n):
    F = discriminant_form(standard_lattice("rank1", 2 * n))
    O = enumerate_isometries(F)
    assert [g.matrix[0][0] for g in O] == brute_units_preserving(2 * n, Fraction(1, 2 * n))
    assert len(O) == 2 ** tau(n)


def test_isometries_of_noncyclic_form():
    # discriminant form of U(2)
    G = FiniteQuadraticForm((2, 2), ((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
    O = enumerate_isometries(G)
    assert len(O) == 2  # identity and the swap
    assert O.is_group()
    # q = 1 on both generators, orthogonal
    H = FiniteQuadraticForm((2, 2), ((1, 0), (0, 1)))
    assert len(enumerate_isometries(H)) == 2


def test_bound():
    with pytest.raises(BoundExceeded):
        enumerate_isometries(Z12, bound=10)


def test_bound_env(monkeypatch):
    monkeypatch.setenv("FM_ISOM_BOUND", "5")
    with pytest.raises(BoundExceeded):
        enumerate_isometries(Z12)


def test_is_isomorphic():
    ok, w = is_isomorphic(Z12, Z12)
    assert ok and w == identity(Z12)
    A = discriminant_form(standard_lattice("rank1", 12))
    B = discriminant_form(standard_lattice("extended_NS", 6))
    assert is_isomorphic(A, B)[0]
    assert not is_isomorphic(Z12, negate(Z12))[0]
    assert find_isomorphism(Z12, FiniteQuadraticForm.cyclic(4, Fraction(1, 4))) is None


def test_isomorphism_witness_is_isometry():
    A = FiniteQuadraticForm.cyclic(13, Fraction(2, 13))
    B = FiniteQuadraticForm.cyclic(13, Fraction(8, 13))
    w = find_isomorphism(A, B)
    assert w is not None and is_isometry(A, w, B)
    assert q_value(B, w.apply(B, (1,))) == Fraction(2, 13)


def test_subgroup_from_generators():
    assert [g.matrix for g in subgroup_from_generators(Z12, [])] == [((1,),)]
    pm = subgroup_from_generators(Z12, [mult(Z12, -1)])
    assert [g.matrix[0][0] for g in pm] == [1, 11]
    full = subgroup_from_generators(Z12, [mult(Z12, 5), mult(Z12, 7)])
    assert len(full) == 4
    with pytest.raises(NotAnIsometry):
        subgroup_from_generators(Z12, [mult(Z12, 2)])


def test_compose_and_inverse():
    F = discriminant_form(standard_lattice("rank1", 60))
    for g in enumerate_isometries(F):
        assert compose(F, g, inverse(F, g)) == identity(F)


def test_same_genus():
    ns = direct_sum([standard_lattice("U"), standard_lattice("rank1", 12)])
    permuted = IntegerLattice(((12, 0, 0), (0, 0, -1), (0, -1, 0)))
    assert same_genus(ns, permuted)
    assert same_genus(IntegerLattice(((2, 15), (15, -2))), IntegerLattice(((6, 13), (13, -10))))
    assert not same_genus(standard_lattice("U"), IntegerLattice(((2, 0), (0, -2))))


def test_same_genus_signature_matters():
    # A2 and A2(-1): both |det| = 3 but signatures (2,0) and (0,2)
    a2 = IntegerLattice(((2, -1), (-1, 2)))
    a2m = IntegerLattice(((-2, 1), (1, -2)))
    assert not same_genus(a2, a2m)
    assert same_genus(a2, IntegerLattice(((2, 1), (1, 2))))


def brute_isometry_count(F):
    """Count bijective homomorphisms preserving q on every element."""
    els = list(F.elements())
    count = 0
    for imgs in itertools.product(els, repeat=F.rank):
        if any(not F.is_zero([d * v for v in y]) for d, y in zip(F.orders, imgs)):
            continue
        image = {F.reduce([sum(x[j] * imgs[j][i] for j in range(F.rank)) for i in range(F.rank)]): x
                 for x in els}
        if len(image) == len(els) and all(q_value(F, y) == q_value(F, x) for y, x in image.items()):
            count += 1
    return count


@pytest.mark.parametrize("gram", [
    ((2, 1), (1, -2)), ((4, 2, 0), (2, 4, 0), (0, 0, -2)), ((2, 0), (0, -6)),
    ((2, 1, 0), (1, -2, 1), (0, 1, 4)), ((2, 0, 0), (0, 2, 0), (0, 0, 6)),
])
def test_isometry_group_against_brute_force(gram):
    F = discriminant_form(IntegerLattice(gram))
    assert len(enumerate_isometries(F)) == brute_isometry_count(F)


def test_bilinear_diagonal_is_q_mod_1():
    F = FiniteQuadraticForm((2, 6), ((Fraction(3, 2), 0), (0, Fraction(1, 6))))
    for x in F.elements():
        assert F.b(x, x) == q_value(F, x) % 1
    assert DiscIsometry(((0, 1), (3, 2))) in set(enumerate_isometries(F).elements)
