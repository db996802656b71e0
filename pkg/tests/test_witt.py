from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from wittk.errors import IncompatibleOperands, MissingUnit, NotPrime, TruncationMismatch
from wittk.trunc import TruncationSet, build_poset
from wittk.witt import (
    Integers,
    IntegersMod,
    PosetWittVector,
    PrimeField,
    Rationals,
    WittVector,
    arith,
    frobenius,
    from_ghost,
    generalized_verschiebung,
    ghost,
    teichmuller,
    verschiebung,
)
from wittk.words import Word, canonical_form

Z, Q, F2, F3 = Integers(), Rationals(), PrimeField(2), PrimeField(3)


def closure(gens):
    return TruncationSet(d for m in gens for d in range(1, m + 1) if m % d == 0)


truncation_sets = st.lists(st.integers(1, 12), min_size=1, max_size=4).map(closure)


@st.composite
def vectors(draw, ring, trunc=None, lo=-3, hi=3):
    S = trunc if trunc is not None else draw(truncation_sets)
    if ring.kind == "Q":
        coords = draw(st.lists(st.fractions(min_value=lo, max_value=hi, max_denominator=4),
                               min_size=len(S), max_size=len(S)))
    elif ring.kind == "Z":
        coords = draw(st.lists(st.integers(lo, hi), min_size=len(S), max_size=len(S)))
    else:
        coords = draw(st.lists(st.integers(0, ring.modulus - 1), min_size=len(S), max_size=len(S)))
    return WittVector(S, tuple(coords), ring)


@st.composite
def pairs(draw, ring, size=2, max_elem=12):
    S = draw(st.lists(st.integers(1, max_elem), min_size=1, max_size=4).map(closure))
    return tuple(draw(vectors(ring, S)) for _ in range(size))


class TestGhost:
    def test_teichmuller(self):
        S = TruncationSet.initial(3)
        g = ghost(teichmuller(5, S, Z))
        assert [g[m] for m in S] == [5, 25, 125]

    def test_coordinate_two(self):
        x = WittVector(TruncationSet([1, 2, 4]), (0, 1, 0), Z)
        assert list(ghost(x).values()) == [0, 2, 2]

    def test_zero(self):
        assert not any(ghost(WittVector.zero(TruncationSet.initial(5), Z)).values())

    @settings(max_examples=100, deadline=None)
    @given(pairs(Z))
    def test_ring_hom_over_integers(self, xy):
        x, y = xy
        gx, gy = ghost(x), ghost(y)
        assert ghost(x + y) == {m: gx[m] + gy[m] for m in gx}
        assert ghost(x * y) == {m: gx[m] * gy[m] for m in gx}

    @settings(max_examples=100, deadline=None)
    @given(pairs(Q))
    def test_ring_hom_over_rationals(self, xy):
        x, y = xy
        gx, gy = ghost(x), ghost(y)
        assert ghost(x + y) == {m: gx[m] + gy[m] for m in gx}
        assert ghost(x * y) == {m: gx[m] * gy[m] for m in gx}

    @settings(max_examples=50, deadline=None)
    @given(pairs(Q))
    def test_bijective_over_rationals(self, xy):
        x, y = xy
        assert from_ghost(ghost(x), x.trunc, Q) == x
        gx, gy = ghost(x), ghost(y)
        assert from_ghost({m: gx[m] * gy[m] - gy[m] for m in gx}, x.trunc, Q) == x * y - y


class TestArith:
    def test_f2_doubling(self):
        one = WittVector.of([1, 0], F2)
        assert (one + one).coords == (0, 1)

    def test_f2_order_four(self):
        assert (WittVector.of([1, 1], F2) + WittVector.of([1, 0], F2)).is_zero()

    def test_w2_f2_table_is_cyclic_of_order_four(self):
        elems = [WittVector.of(c, F2) for c in product(range(2), repeat=2)]
        for x in elems:
            for y in elems:
                assert (x + y).coords == oracles.witt2_add(x.coords, y.coords, 2)
        one = WittVector.of([1, 0], F2)
        multiples = [WittVector.zero(one.trunc, F2)]
        for _ in range(3):
            multiples.append(multiples[-1] + one)
        assert len(set(multiples)) == 4
        assert (multiples[-1] + one).is_zero()

    def test_teichmuller_multiplicative(self):
        S = TruncationSet.initial(6)
        for ring in (Z, F3, IntegersMod(4)):
            for a, b in [(2, 3), (1, 2), (2, 2)]:
                assert teichmuller(a, S, ring) * teichmuller(b, S, ring) == teichmuller(a * b, S, ring)

    def test_arith_dispatch(self):
        x, y = WittVector.of([1, 0], F2), WittVector.of([1, 1], F2)
        assert arith("add", x, y) == x + y
        assert arith("mul", x, y) == x * y
        assert arith("neg", x) == -x
        with pytest.raises(ValueError):
            arith("div", x, y)

    def test_incompatible(self):
        with pytest.raises(IncompatibleOperands):
            WittVector.of([1, 0], F2) + WittVector.of([1, 0], F3)
        with pytest.raises(IncompatibleOperands):
            WittVector.of([1, 0], F2) + WittVector.of([1, 0, 0], F2)

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            PrimeField(4)

    @pytest.mark.parametrize("ring", [F2, F3, IntegersMod(4)], ids=str)
    @settings(max_examples=70, deadline=None)
    @given(data=st.data())
    def test_ring_axioms(self, ring, data):
        x, y, z = data.draw(pairs(ring, 3, 8))
        zero = WittVector.zero(x.trunc, ring)
        one = WittVector.one(x.trunc, ring)
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + zero == x and x * one == x
        assert x + (-x) == zero

    @pytest.mark.parametrize("p", [2, 3, 5])
    @settings(max_examples=30, deadline=None)
    @given(data=st.data())
    def test_reduction_is_functorial(self, p, data):
        x, y = data.draw(pairs(Z, 2, 10))
        Fp = PrimeField(p)
        red = lambda v: WittVector(v.trunc, v.coords, Fp)
        assert red(x + y) == red(x) + red(y)
        assert red(x * y) == red(x) * red(y)
        assert red(-x) == -red(x)


class TestOperators:
    def test_teichmuller_needs_unit(self):
        with pytest.raises(MissingUnit):
            teichmuller(1, TruncationSet([]), Z)

    def test_teichmuller_zero(self):
        assert teichmuller(0, TruncationSet.initial(4), F2).is_zero()

    def test_verschiebung_shift(self):
        x = WittVector.of([1], F2)
        assert verschiebung(2, x, TruncationSet.initial(2)).coords == (0, 1)

    def test_verschiebung_identity(self):
        x = WittVector.of([1, 2, 0, 1], F3)
        assert verschiebung(1, x, x.trunc) == x

    def test_verschiebung_checks_truncation(self):
        with pytest.raises(TruncationMismatch):
            verschiebung(2, WittVector.of([1, 0], F2), TruncationSet.initial(2))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 12), st.data())
    def test_verschiebung_ghost(self, r, size, data):
        S = TruncationSet.initial(size)
        x = data.draw(vectors(Z, S.quotient(r)))
        g, gx = ghost(verschiebung(r, x, S)), ghost(x)
        assert g == {m: (r * gx[m // r] if m % r == 0 else 0) for m in S}

    def test_verschiebung_injective(self):
        S = TruncationSet.initial(6)
        seen = {}
        for coords in product(range(2), repeat=3):
            x = WittVector.of(coords, F2)
            v = verschiebung(2, x, S)
            assert v not in seen
            seen[v] = x

    def test_frobenius_teichmuller(self):
        S = TruncationSet.initial(6)
        for r in range(1, 4):
            assert frobenius(r, teichmuller(3, S, Z)) == teichmuller(3**r, S.quotient(r), Z)

    def test_frobenius_of_shifted_unit(self):
        S = TruncationSet.initial(6)
        one = WittVector.one(S.quotient(2), Z)
        assert frobenius(2, verschiebung(2, one, S)) == WittVector.one(S.quotient(2), Z).scale(2)

    def test_frobenius_kills_coordinate_two(self):
        x = WittVector.of([0, 1, 0, 0], F2)
        assert frobenius(3, x).coords == (0,)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 12), st.data())
    def test_fv_is_multiplication(self, r, size, data):
        S = TruncationSet.initial(size)
        x = data.draw(vectors(Z, S.quotient(r)))
        assert frobenius(r, verschiebung(r, x, S)) == x.scale(r)


def _element_map(n, a, b, N):
    """Brute-force v_a^b on elements: (label, power) -> (label, power)."""
    out = {}
    for orbit in oracles.block_classes(n, a, N):
        w = min(orbit)
        es = oracles.orbit_period(orbit, a)
        s = canonical_form(Word(w[: len(w) // es], n), a)
        image = oracles.block_orbit(w, b)
        et = oracles.orbit_period(image, b)
        t = canonical_form(Word(w[: len(w) // et], n), b)
        out[(str(s), es)] = (str(t), et)
    return out


class TestGeneralizedVerschiebung:
    def test_classical_case(self):
        src = build_poset(1, 2, 4)
        x = PosetWittVector(src, (WittVector.of([1, 2], Z),))
        y = generalized_verschiebung(2, 1, 1, 4, x)
        [vec] = y.components
        assert vec == verschiebung(2, WittVector.of([1, 2], Z), TruncationSet.initial(4))

    def test_zero(self):
        src = build_poset(2, 2, 4)
        out = generalized_verschiebung(2, 1, 2, 4, PosetWittVector.zero(src, F3))
        assert all(v.is_zero() for v in out.components)

    def test_ghost_matrix_n2_a2_N2(self):
        src = build_poset(2, 2, 2)
        labels = [str(c.label) for c in src.components]
        for i, lab in enumerate(labels):
            comps = tuple(WittVector.of([1 if j == i else 0], Q) for j in range(len(labels)))
            out = generalized_verschiebung(2, 1, 2, 2, PosetWittVector(src, comps)).ghost()
            nonzero = {k: v for k, v in out.items() if v}
            expected = {"x1x1": {("x1", 2): 2}, "x2x2": {("x2", 2): 2},
                        "x1x2": {("x1x2", 1): 1}, "x2x1": {("x1x2", 1): 1}}[lab]
            assert nonzero == expected

    @pytest.mark.parametrize("n,a,b,N", [(2, 2, 1, 4), (2, 4, 2, 4), (3, 2, 1, 2)])
    @settings(max_examples=10, deadline=None)
    @given(data=st.data())
    def test_ghost_formula(self, n, a, b, N, data):
        src = build_poset(n, a, N)
        comps = tuple(data.draw(vectors(Q, TruncationSet.initial(c.size))) for c in src.components)
        x = PosetWittVector(src, comps)
        out = generalized_verschiebung(a, b, n, N, x).ghost()
        gin = x.ghost()
        expected = {k: Fraction(0) for k in out}
        for s, t in _element_map(n, a, b, N).items():
            expected[t] += Fraction(t[1], s[1]) * gin[s]
        assert out == expected
