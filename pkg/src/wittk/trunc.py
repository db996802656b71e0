"""Truncation sets and the word truncation posets S_n(a, N)."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .errors import DivisibilityError
from .words import BlockClass, Word, canonical_form, lyndon_words


@dataclass(frozen=True)
class TruncationSet:
    """A finite set of positive integers closed under taking divisors."""

    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int]):
        elems = tuple(sorted(set(elements)))
        if elems and elems[0] < 1:
            raise ValueError("truncation sets contain positive integers only")
        members = set(elems)
        for m in elems:
            for d in range(1, m):
                if m % d == 0 and d not in members:
                    raise ValueError(f"{d} divides {m} but is missing")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def initial(cls, n: int) -> "TruncationSet":
        """{1, ..., n}; empty for n = 0."""
        return cls(range(1, n + 1))

    @classmethod
    def p_typical(cls, p: int, c: int) -> "TruncationSet":
        return cls(p**i for i in range(c))

    def __contains__(self, m: int) -> bool:
        return m in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def quotient(self, r: int) -> "TruncationSet":
        """S / r = {s : r*s in S}."""
        return TruncationSet(m // r for m in self.elements if m % r == 0)

    def is_initial(self) -> bool:
        return self.elements == tuple(range(1, len(self.elements) + 1))


@dataclass(frozen=True)
class Component:
    label: BlockClass
    size: int


@dataclass(frozen=True)
class TruncationPoset:
    """S_n(a, N) split into components S_n(a, N)[w] = {1, ..., floor(N / l(w))}."""

    n: int
    a: int
    N: int
    components: tuple[Component, ...]
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index", {c.label.canonical.letters: i for i, c in enumerate(self.components)}
        )

    def index(self, label: BlockClass | Word | tuple[int, ...]) -> int:
        if isinstance(label, BlockClass):
            label = label.canonical.letters
        elif isinstance(label, Word):
            label = label.letters
        return self._index[label]

    def __len__(self) -> int:
        return len(self.components)

    @property
    def total(self) -> int:
        """Number of elements of the poset."""
        return sum(c.size for c in self.components)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "N": self.N,
            "components": [{"label": str(c.label), "size": c.size} for c in self.components],
        }


def irreducible_classes(n: int, a: int, N: int) -> list[BlockClass]:
    """Irreducible a-classes of length <= N, sorted by (length, letters).

    Over an aperiodic necklace of length t the word root^(a/g), g = gcd(t, a),
    has length lcm(t, a) and splits into g distinct a-classes of period 1;
    these are all the irreducible a-classes.
    """
    out: list[BlockClass] = []
    for root in lyndon_words(n, N):
        t = len(root)
        g = gcd(t, a)
        length = t * a // g
        if length > N:
            continue
        if a == 1:
            # a Lyndon word is already the least rotation of its necklace
            out.append(BlockClass(Word(root, n), 1, 1))
            continue
        w = Word(root * (a // g), n)
        classes = {canonical_form(w.rotate(r), a) for r in range(g)}
        out.extend(classes)
    out.sort(key=lambda c: c.sort_key)
    return out


def build_poset(n: int, a: int, N: int) -> TruncationPoset:
    if min(n, a, N) < 1:
        raise ValueError("n, a and N must be positive")
    comps = tuple(Component(c, N // c.length) for c in irreducible_classes(n, a, N))
    return TruncationPoset(n, a, N, comps)


@dataclass(frozen=True)
class Route:
    """A component of S_n(a,N) and the component of S_n(b,N) it maps into."""

    source: int
    target: int
    ratio: int


def vmap_components(
    n: int, a: int, b: int, N: int,
    source: TruncationPoset | None = None,
    target: TruncationPoset | None = None,
) -> list[Route]:
    """Component routing of v_a^b : S_n(a,N) -> S_n(b,N).

    ``ratio`` is the b-period of the image of a source label, so the power
    u^e lands on root^(ratio*e) and the ghost coefficient |t|/|s| equals ratio.
    """
    if a % b:
        raise DivisibilityError(f"{b} does not divide {a}")
    source = source or build_poset(n, a, N)
    target = target or build_poset(n, b, N)
    routes = []
    for i, comp in enumerate(source.components):
        image = canonical_form(comp.label.canonical, b)
        root = canonical_form(image.root, b)
        routes.append(Route(i, target.index(root), image.period))
    return routes
