from fractions import Fraction
from itertools import product

import pytest

from wittk.abgroup import FinAbGroup
from wittk.homology import (
    ChainComplex,
    Monomial,
    basis,
    boundary_matrix,
    expected_homology,
    faces,
    homology,
    iota_check,
    iota_cycles,
)

GRID = [(s, a) for a in range(2, 6) for s in range(1, 11)]


def brute_basis(s, a, e):
    out = []
    for left, right in product(range(a), repeat=2):
        if left + 1 + right >= a:
            continue
        for ks in product(range(1, a), repeat=e):
            if left + right + sum(ks) == s - 1:
                out.append(Monomial(left, right, ks))
    return sorted(out)


def rank_mod(M, p=None):
    """Rank over Q (p=None) or F_p by plain elimination."""
    if not M or not M[0]:
        return 0
    A = [[Fraction(v) if p is None else v % p for v in row] for row in M]
    r = 0
    for c in range(len(A[0])):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c] if p is None else pow(A[r][c], -1, p)
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c] * inv
                A[i] = [(x - f * y) if p is None else (x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
    return r


def betti(s, a, p=None):
    cc = ChainComplex.build(s, a)
    ranks = {e: rank_mod(M, p) for e, M in cc.boundaries.items()}
    return [len(cc.bases[e]) - ranks.get(e, 0) - ranks.get(e + 1, 0) for e in range(s)]


class TestBasis:
    def test_s3_a2(self):
        assert basis(3, 2, 2) == (Monomial(0, 0, (1, 1)),)
        assert basis(3, 2, 1) == ()

    def test_s4_a3(self):
        assert basis(4, 3, 3) == (Monomial(0, 0, (1, 1, 1)),)
        assert [len(basis(4, 3, e)) for e in range(4)] == [0, 2, 4, 1]

    @pytest.mark.parametrize("s,a", GRID)
    def test_brute_force(self, s, a):
        for e in range(s):
            assert list(basis(s, a, e)) == brute_basis(s, a, e)

    def test_str(self):
        assert str(Monomial(0, 0, (1, 1))) == "x0 (x) x (x) x"
        assert str(Monomial(2, 1, (3,))) == "x^2x0x (x) x^3"


class TestBoundary:
    def test_all_faces_die(self):
        assert faces(Monomial(0, 0, (1, 1)), 2) == []
        assert boundary_matrix(3, 2, 2) == []

    def test_faces_s4_a3(self):
        # d0 -> x0x (x) x, d1 -> x0 (x) x^2, d2 -> x x0 (x) x
        got = dict((f, sgn) for sgn, f in faces(Monomial(0, 0, (1, 1)), 3))
        assert got == {Monomial(0, 1, (1,)): 1, Monomial(0, 0, (2,)): -1, Monomial(1, 0, (1,)): 1}

    @pytest.mark.parametrize("s,a", GRID)
    def test_d_squared(self, s, a):
        assert ChainComplex.build(s, a).d_squared_is_zero()

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            boundary_matrix(3, 2, 0)


class TestHomology:
    def test_s3_a2(self):
        assert homology(3, 2) == [FinAbGroup(), FinAbGroup(), FinAbGroup.free(1)]

    def test_s4_a2(self):
        h = homology(4, 2)
        assert h[3] == FinAbGroup.free(1)
        assert all(g.is_trivial for g in h[:3])

    def test_s4_a3(self):
        h = homology(4, 3)
        assert h[2] == FinAbGroup.free(1)
        assert sum(len(g.divisors) for g in h) == 1

    @pytest.mark.parametrize("s,a", GRID)
    def test_grid(self, s, a):
        h = homology(s, a)
        exp = expected_homology(s, a)
        for e, g in enumerate(h):
            assert g == exp.get(e, FinAbGroup())

    @pytest.mark.parametrize("s,a", GRID)
    def test_euler_characteristic(self, s, a):
        [(deg, g)] = expected_homology(s, a).items()
        assert ChainComplex.build(s, a).euler_characteristic() == (-1) ** deg * g.rank

    @pytest.mark.parametrize("s,a", [(s, a) for s, a in GRID if s <= 8])
    def test_betti_numbers_independent_of_snf(self, s, a):
        [(deg, g)] = expected_homology(s, a).items()
        expected = [g.rank if e == deg else 0 for e in range(s)]
        # equal Betti numbers over Q, F_2, F_3 and F_5 rule out small torsion
        for p in (None, 2, 3, 5):
            assert betti(s, a, p) == expected


class TestIota:
    def test_cycles_s4_a2(self):
        degree, chains = iota_cycles(4, 2)
        assert degree == 3
        assert chains == [{Monomial(0, 0, (1, 1, 1)): 1}]

    def test_cycles_s6_a3(self):
        degree, chains = iota_cycles(6, 3)
        assert degree == 3 and len(chains) == 2

    @pytest.mark.parametrize("s,a", GRID)
    def test_iota(self, s, a):
        rep = iota_check(s, a)
        assert rep.ok, rep.to_json()
        assert rep.degree == max(expected_homology(s, a))
