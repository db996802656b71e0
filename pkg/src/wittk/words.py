"""Words in x1..xn, block-cyclic equivalence and necklace enumeration.

A word is a tuple of 1-based letter indices.  Two words of length divisible
by ``a`` are ``a``-equivalent when one is a rotation of the other by a
multiple of ``a`` letters; ``a = 1`` gives ordinary cyclic words.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

from .errors import BlockMismatch, EmptyWord


@dataclass(frozen=True, order=True)
class Word:
    letters: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"alphabet size must be positive, got {self.n}")
        for c in self.letters:
            if not 1 <= c <= self.n:
                raise ValueError(f"letter {c} outside 1..{self.n}")

    @classmethod
    def parse(cls, text: str, n: int) -> "Word":
        """Parse ``"x1x2x1"`` (or ``"1,2,1"``) into a word."""
        text = text.strip()
        if "x" in text:
            parts = [p for p in text.split("x") if p]
        else:
            parts = [p for p in text.replace(" ", "").split(",") if p]
        return cls(tuple(int(p) for p in parts), n)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(f"x{c}" for c in self.letters)

    def __pow__(self, e: int) -> "Word":
        return Word(self.letters * e, self.n)

    def rotate(self, r: int) -> "Word":
        r %= max(len(self.letters), 1)
        return Word(self.letters[r:] + self.letters[:r], self.n)


@dataclass(frozen=True)
class BlockClass:
    """An a-equivalence class, stored through its minimal representative."""

    canonical: Word
    a: int
    period: int

    @property
    def length(self) -> int:
        return len(self.canonical)

    @property
    def root(self) -> Word:
        """The first ``length / period`` letters; ``canonical == root ** period``."""
        return Word(self.canonical.letters[: self.length // self.period], self.canonical.n)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.length, self.canonical.letters)

    def __str__(self) -> str:
        return str(self.canonical)


def least_rotation(seq: Sequence) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    s = list(seq) * 2
    size = len(seq)
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % size if size else 0


def smallest_period(letters: Sequence[int]) -> int:
    """Least t dividing len(letters) with letters equal to its rotation by t."""
    size = len(letters)
    pi = [0] * size
    for i in range(1, size):
        j = pi[i - 1]
        while j and letters[i] != letters[j]:
            j = pi[j - 1]
        if letters[i] == letters[j]:
            j += 1
        pi[i] = j
    t = size - pi[-1]
    return t if size % t == 0 else size


def _check(w: Word, a: int) -> None:
    if a < 1:
        raise ValueError(f"block size must be positive, got {a}")
    if not w.letters:
        raise EmptyWord("the empty word has no block class")
    if len(w) % a:
        raise BlockMismatch(f"block size {a} does not divide length {len(w)} of {w}")


def block_period_of(letters: Sequence[int], a: int) -> int:
    # periods admissible for block size a are the multiples of lcm(t, a)
    t = smallest_period(letters)
    return len(letters) * gcd(t, a) // (t * a)


def canonical_form(w: Word, a: int) -> BlockClass:
    _check(w, a)
    letters = w.letters
    blocks = [letters[i : i + a] for i in range(0, len(letters), a)]
    k = least_rotation(blocks)
    canon = letters[k * a :] + letters[: k * a]
    return BlockClass(Word(canon, w.n), a, block_period_of(canon, a))


def block_period(w: Word, a: int) -> tuple[Word, int]:
    """Return ``(root, e)`` with ``w`` a-equivalent to ``root ** e``, e maximal."""
    cls = canonical_form(w, a)
    return cls.root, cls.period


def equivalent(u: Word, v: Word, a: int) -> bool:
    return len(u) == len(v) and canonical_form(u, a) == canonical_form(v, a)


def lyndon_words(n: int, max_length: int) -> Iterator[tuple[int, ...]]:
    """Yield all Lyndon words of length <= max_length in lexicographic order.

    Duval's successor algorithm; letters are 1-based.
    """
    if n < 1 or max_length < 1:
        return
    w = [0]
    while w:
        yield tuple(c + 1 for c in w)
        m = len(w)
        while len(w) < max_length:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1


def aperiodic_necklaces(n: int, length: int) -> list[BlockClass]:
    """All irreducible cyclic words of exactly ``length`` letters.

    Each Lyndon word is the least rotation of its necklace, so it doubles as
    the canonical representative.
    """
    return [
        BlockClass(Word(w, n), 1, 1)
        for w in lyndon_words(n, length)
        if len(w) == length
    ]


@lru_cache(maxsize=None)
def mobius(m: int) -> int:
    result, k = 1, 2
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            result = -result
        k += 1
    return -result if m > 1 else result


def divisors(m: int) -> list[int]:
    small = [d for d in range(1, int(m**0.5) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def necklace_count(n: int, length: int) -> int:
    """Number of aperiodic necklaces, (1/l) * sum_{d|l} mu(d) n^(l/d)."""
    total = sum(mobius(d) * n ** (length // d) for d in divisors(length))
    return total // length


def fiber(w: BlockClass, a: int) -> list[BlockClass]:
    """The a-classes lying over the cyclic word ``w`` under v_a^1."""
    if w.a != 1:
        raise ValueError("fiber expects a cyclic word (block size 1)")
    _check(w.canonical, a)
    t = w.length // w.period
    seen = {canonical_form(w.canonical.rotate(r), a) for r in range(t)}
    return sorted(seen, key=lambda c: c.canonical.letters)
