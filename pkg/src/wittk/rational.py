"""Rational K-groups of Z<x_1..x_n>/(m^a).

K_{2q} and K_{2q-1} (tensored with Q) are the kernel and cokernel of

    V_a^1 : Q{S_n(a, [a(q-1)+1, aq])} -> Q{S_n(1, [a(q-1)+1, aq])}

whose entry at (t, s) is |t|/|s| when s maps to t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from .words import (
    BlockClass,
    Word,
    canonical_form,
    divisors,
    fiber,
    lyndon_words,
    necklace_count,
)

# explicit word enumeration is used while n^(aq) stays below this
EXPLICIT_LIMIT = 1 << 12


@dataclass(frozen=True)
class WordBasis:
    n: int
    a: int
    M: int
    N: int
    classes: tuple[BlockClass, ...]

    @classmethod
    def build(cls, n: int, a: int, M: int, N: int) -> "WordBasis":
        found = set()
        for length in range(max(M, 1), N + 1):
            if length % a:
                continue
            for letters in product(range(1, n + 1), repeat=length):
                found.add(canonical_form(Word(letters, n), a))
        return cls(n, a, M, N, tuple(sorted(found, key=lambda c: c.sort_key)))

    def __len__(self) -> int:
        return len(self.classes)


def rank_q(rows: list[list[Fraction]]) -> int:
    """Rank by exact Gaussian elimination over Q."""
    A = [list(map(Fraction, r)) for r in rows]
    if not A or not A[0]:
        return 0
    r = 0
    ncols = len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, len(A)):
            if A[i][c]:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def _entry(s: BlockClass) -> tuple[BlockClass, int]:
    """Image of an a-class in the cyclic words and the coefficient |t|/|s|."""
    t = canonical_form(s.canonical, 1)
    ratio, rem = divmod(t.period, s.period)
    assert rem == 0, f"|s| = {s.period} does not divide |t| = {t.period}"
    return t, ratio


def rational_v_matrix(n: int, a: int, q: int) -> tuple[list[list[Fraction]], WordBasis, WordBasis]:
    """Explicit matrix of V_a^1 on the word bases, with the bases used."""
    lo, hi = a * (q - 1) + 1, a * q
    src = WordBasis.build(n, a, lo, hi)
    tgt = WordBasis.build(n, 1, lo, hi)
    row = {c.canonical.letters: i for i, c in enumerate(tgt.classes)}
    M = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
    for j, s in enumerate(src.classes):
        t, ratio = _entry(s)
        M[row[t.canonical.letters]][j] = Fraction(ratio)
    return M, src, tgt


def cyclic_word_count(n: int, length: int) -> int:
    """Cyclic words of a given length, by Burnside: (1/l) sum_{d|l} phi(d) n^(l/d)."""
    total = sum(_phi(d) * n ** (length // d) for d in divisors(length))
    return total // length


def _phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@dataclass
class RationalReport:
    n: int
    a: int
    q: int
    dim_even: int
    dim_odd: int
    source_dim: int
    target_dim: int
    method: str
    checks: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "params": {"n": self.n, "a": self.a, "q": self.q},
            "dim_K_even": self.dim_even,
            "dim_K_odd": self.dim_odd,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "method": self.method,
            "checks": dict(self.checks),
        }


def _explicit(n: int, a: int, q: int):
    M, src, tgt = rational_v_matrix(n, a, q)
    r = rank_q(M)
    top = [row for row, c in zip(M, tgt.classes) if c.length == a * q]
    return len(src), len(tgt), r, rank_q(top), len(top)


def _blocks(n: int, a: int, q: int):
    """Same numbers, one representative block per root length.

    Sources all have length aq, so the matrix is block diagonal over the
    cyclic words w of length aq; the block of w = root^(aq/t) depends only on
    t = len(root), and there are necklace_count(n, t) such roots.
    """
    lo, hi = a * (q - 1) + 1, a * q
    first_root: dict[int, tuple[int, ...]] = {}
    for t in divisors(hi):
        root = next((w for w in lyndon_words(n, t) if len(w) == t), None)
        if root is not None:
            first_root[t] = root
    src_dim = r = top_rank = top_rows = 0
    for t, root in sorted(first_root.items()):
        mult = necklace_count(n, t)
        w = canonical_form(Word(root * (hi // t), n), 1)
        sources = fiber(w, a)
        block = [[Fraction(w.period, s.period) for s in sources]]
        assert all(_entry(s)[0] == w for s in sources)
        br = rank_q(block)
        src_dim += mult * len(sources)
        r += mult * br
        top_rank += mult * br
        top_rows += mult
    tgt_dim = sum(
        necklace_count(n, t) for length in range(lo, hi + 1) for t in divisors(length)
    )
    return src_dim, tgt_dim, r, top_rank, top_rows


def kgroups_rational(n: int, a: int, q: int, method: str = "auto") -> RationalReport:
    if a < 2:
        raise ValueError("a must be at least 2")
    if method == "auto":
        method = "explicit" if n ** (a * q) <= EXPLICIT_LIMIT else "blocks"
    if method == "explicit":
        src_dim, tgt_dim, r, top_rank, top_rows = _explicit(n, a, q)
    elif method == "blocks":
        src_dim, tgt_dim, r, top_rank, top_rows = _blocks(n, a, q)
    else:
        raise ValueError(f"unknown method {method!r}")
    dim_even, dim_odd = src_dim - r, tgt_dim - r
    lo, hi = a * (q - 1) + 1, a * q
    closed_odd = sum(cyclic_word_count(n, length) for length in range(lo, hi))
    fiber_sum = sum(necklace_count(n, t) * (gcd(t, a) - 1) for t in divisors(hi))
    checks = {
        "top_block_surjective": top_rank == top_rows,
        "odd_closed_form": dim_odd == closed_odd,
        "even_fiber_sum": dim_even == fiber_sum,
    }
    return RationalReport(n, a, q, dim_even, dim_odd, src_dim, tgt_dim, method, checks)
