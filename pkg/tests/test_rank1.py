import itertools
from math import gcd

import pytest

from k3fm.lattice import discriminant_form, pairing, standard_lattice
from k3fm.rank1 import (
    ExtendedNSVector,
    PartnerDescriptor,
    check_lemma23,
    check_lemma24_congruence,
    enumerate_partners,
    euler_phi,
    expected_partner_count,
    hyperbolic_solutions,
    is_special,
    mukai_vector,
    pi_vector,
    prime_factorization,
    search_lemma25_counterexamples,
    solve_hyperbolic_partner,
    tau,
)


def trial_division(n):
    out, p = [], 2
    while n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    return out


@pytest.mark.parametrize("n,want", [(12, [(2, 2), (3, 1)]), (1, []), (30, [(2, 1), (3, 1), (5, 1)])])
def test_prime_factorization(n, want):
    assert prime_factorization(n) == want


def test_prime_factorization_against_trial_division():
    for n in range(1, 500):
        assert prime_factorization(n) == trial_division(n)


def test_tau():
    assert tau(12) == tau(6) == 2
    assert tau(8) == tau(2) == 1
    assert tau(1) == 0


def test_euler_phi():
    assert [euler_phi(m) for m in (1, 2, 12)] == [1, 1, 4]
    for m in range(1, 200):
        assert euler_phi(m) == sum(1 for a in range(1, m + 1) if gcd(a, m) == 1)


@pytest.mark.parametrize("f", [prime_factorization, tau, euler_phi, enumerate_partners])
def test_zero_rejected(f):
    with pytest.raises(ValueError):
        f(0)


def test_enumerate_partners_examples():
    assert [(p.r, p.s) for p in enumerate_partners(6)] == [(6, 1), (3, 2)]
    assert [(p.r, p.s) for p in enumerate_partners(1)] == [(1, 1)]
    assert [(p.r, p.s) for p in enumerate_partners(30)] == [(30, 1), (15, 2), (10, 3), (6, 5)]


def test_enumerate_partners_brute():
    for n in range(1, 121):
        want = sorted(((r, n // r) for r in range(1, n + 1)
                       if n % r == 0 and gcd(r, n // r) == 1 and r >= n // r), reverse=True)
        assert [(p.r, p.s) for p in enumerate_partners(n)] == want
        assert len(want) == expected_partner_count(n)


def test_partner_descriptor_invariants():
    with pytest.raises(ValueError):
        PartnerDescriptor(2, 3, 6)
    with pytest.raises(ValueError):
        PartnerDescriptor(4, 2, 8)


def test_mukai_vector():
    assert tuple(mukai_vector(1, 0, 0, 5)) == (1, 0, 1)
    assert tuple(mukai_vector(1, 0, 1, 5)) == (1, 0, 0)
    assert tuple(mukai_vector(3, 1, 4, 6)) == (3, 1, 5)
    with pytest.raises(ValueError):
        mukai_vector(0, 1, 0, 1)


def test_special_vectors_come_from_sheaves():
    for n in range(1, 61):
        for p in enumerate_partners(n):
            v = mukai_vector(p.r, 1, n + p.r - p.s, n)
            assert v == ExtendedNSVector(p.r, 1, p.s, n)
            assert is_special(v)


def test_is_special():
    assert is_special(ExtendedNSVector(3, 1, 2, 6))
    assert not is_special(ExtendedNSVector(3, 1, 5, 6))
    assert is_special(ExtendedNSVector(1, 1, 1, 1))
    assert not is_special(ExtendedNSVector(2, 1, 2, 4))
    assert not is_special(ExtendedNSVector(6, 2, 1, 6))


def test_extended_ns_pairing_matches_gram():
    ns = standard_lattice("extended_NS", 7)
    for x, y in itertools.product(itertools.product(range(-2, 3), repeat=3), repeat=2):
        if sum(map(abs, x)) + sum(map(abs, y)) > 5:
            continue
        assert ExtendedNSVector(*x, 7).pair(ExtendedNSVector(*y, 7)) == pairing(ns, x, y)


@pytest.mark.parametrize("n,r,s,bound,want", [
    (6, 3, 2, 3, (-2, -1, -3)),
    (6, 2, 3, 3, (-3, -1, -2)),
    (1, 1, 1, 1, (0, 0, -1)),
])
def test_solve_hyperbolic_partner(n, r, s, bound, want):
    assert solve_hyperbolic_partner(n, r, s, bound) == want


def box_solutions(n, r, s, k):
    box = n * max(abs(k), 1) ** 2 + 1
    return sorted((l, m) for l in range(-box, box + 1) for m in range(-box, box + 1)
                  if l * m == n * k * k and -m * r - l * s + 2 * n * k == 1)


@pytest.mark.parametrize("n", [1, 2, 6, 10, 12])
def test_solve_hyperbolic_partner_against_box_search(n):
    for p in enumerate_partners(n):
        for r, s in {(p.r, p.s), (p.s, p.r)}:
            l, k, m = solve_hyperbolic_partner(n, r, s, n)
            for k2 in [0] + [x for j in range(1, abs(k) + 1) for x in (-j, j)]:
                sols = box_solutions(n, r, s, k2)
                if k2 == k:
                    assert (l, m) == min(sols, key=lambda t: (t[1], t[0]))
                    break
                assert sols == []


def test_solve_hyperbolic_partner_not_found():
    # n = 6, (3, 2) needs |k| = 1
    assert solve_hyperbolic_partner(6, 3, 2, 0) is None
    with pytest.raises(ValueError):
        solve_hyperbolic_partner(6, 4, 2, 3)


@pytest.mark.parametrize("args,want", [
    ((6, 3, 2, -2, -1, -3), (-12, -5, -12)),
    ((6, 2, 3, -3, -1, -2), (12, 5, 12)),
    ((1, 1, 1, 0, 0, -1), (0, -1, -2)),
])
def test_pi_vector(args, want):
    pi = pi_vector(*args)
    assert tuple(pi) == want
    assert pi.square == 2 * args[0]


def test_pi_vector_rejects_bad_input():
    with pytest.raises(ValueError):
        pi_vector(6, 3, 2, 1, 1, 1)


@pytest.mark.parametrize("n", range(1, 61))
def test_hyperbolic_partner_structure(n):
    ns = standard_lattice("extended_NS", n)
    A = discriminant_form(ns)
    for c in check_lemma23(n):
        assert c.ok
        l, k, m = c.u
        v, u, pi = (c.r, 1, c.s), (l, k, m), tuple(c.pi)
        assert pairing(ns, v, v) == pairing(ns, u, u) == 0
        assert pairing(ns, u, v) == 1
        assert pairing(ns, pi, u) == pairing(ns, pi, v) == 0
        assert pairing(ns, pi, pi) == 2 * n
        # the lattice splits as (Z u + Z v) + Z pi: the basis change is unimodular
        det = (v[0] * (u[1] * pi[2] - u[2] * pi[1]) - v[1] * (u[0] * pi[2] - u[2] * pi[0])
               + v[2] * (u[0] * pi[1] - u[1] * pi[0]))
        assert abs(det) == 1
        # pi / 2n has order 2n modulo the lattice, so it generates A = Z/2n
        order = next(t for t in range(1, 2 * n + 1)
                     if all((t * x) % (2 * n) == 0 for x in pi))
        assert order == 2 * n == A.order


def test_congruence_sign():
    a = (3, 2, -2, -1, -3)
    b = (2, 3, -3, -1, -2)
    assert check_lemma24_congruence(6, a, a) == 1
    assert check_lemma24_congruence(6, a, b) == -1
    with pytest.raises(ValueError):
        check_lemma24_congruence(6, a, (3, 2, 0, 0, 0))


def test_congruence_on_all_solutions():
    # the congruence holds whenever the two tuples share a partner up to swap
    for n in range(2, 16):
        sols = hyperbolic_solutions(n, 4, signed=True)
        for t, t2 in itertools.product(sols, repeat=2):
            sign = check_lemma24_congruence(n, t, t2)
            if t2[0] == t[0]:
                assert sign is not None


def test_natural_solutions_do_not_exist():
    # rm + ls >= 2 sqrt(rs lm) = 2nk > 2nk - 1 for naturals
    for n in range(1, 25):
        assert hyperbolic_solutions(n, 8) == []


@pytest.mark.parametrize("n,bound", [(6, 10), (1, 5), (12, 10)])
def test_congruence_search_naturals(n, bound):
    assert search_lemma25_counterexamples(n, bound) == []


def test_congruence_search_signed():
    total = 0
    for n in range(1, 21):
        total += len(hyperbolic_solutions(n, 12, signed=True))
        assert search_lemma25_counterexamples(n, 12, signed=True) == []
    assert total > 0


def brute_signed_solutions(n, bound):
    box = n * bound * bound
    out = []
    for r in range(1, n + 1):
        if n % r:
            continue
        s = n // r
        for k in range(-bound, bound + 1):
            for l in range(-box, box + 1):
                # m from the linear equation
                num = 2 * n * k - 1 - l * s
                if num % r:
                    continue
                m = num // r
                if abs(m) <= box and l * m == n * k * k:
                    out.append((r, s, l, k, m))
    return sorted(out)


@pytest.mark.parametrize("n", [1, 2, 5, 6])
def test_hyperbolic_solutions_against_brute(n):
    assert hyperbolic_solutions(n, 3, signed=True) == brute_signed_solutions(n, 3)
