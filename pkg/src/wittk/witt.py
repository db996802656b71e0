"""Big Witt vectors over exact coefficient rings.

Every ring operation goes through ghost coordinates: coordinates are lifted
to Python integers (or fractions over Q), the operation is performed
componentwise on ghost vectors, and the result is recovered by the recursion

    z_m = (w_m - sum_{d | m, d < m} d * z_d^(m/d)) / m.

For integral inputs of an integral operation the division is exact, and the
answer reduces correctly to Z/m by functoriality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .errors import (
    DivisibilityError,
    IncompatibleOperands,
    InternalIntegralityError,
    MissingUnit,
    NotPrime,
    TruncationMismatch,
)
from .trunc import TruncationPoset, build_poset, vmap_components, TruncationSet


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    kind: str  # "Z", "Q", "Z/m" or "F_p"
    modulus: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "Q", "Z/m", "F_p"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Z/m" and self.modulus < 2:
            raise ValueError("Z/m needs m >= 2")
        if self.kind == "F_p" and not is_prime(self.modulus):
            raise NotPrime(f"{self.modulus} is not prime")

    @property
    def torsion_free(self) -> bool:
        return self.kind in ("Z", "Q")

    def __call__(self, c) -> int | Fraction:
        """Coerce ``c`` into a canonical element."""
        if self.kind == "Q":
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"{c} is not an element of {self}")
            c = c.numerator
        c = int(c)
        return c % self.modulus if self.modulus else c

    def __str__(self) -> str:
        if self.kind == "Z/m":
            return f"Z/{self.modulus}"
        if self.kind == "F_p":
            return f"F{self.modulus}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        """Accepts ``Z``, ``Q``, ``Z/4``, ``F2``, ``GF(3)``."""
        t = text.strip().upper().replace(" ", "")
        if t == "Z":
            return Integers()
        if t == "Q":
            return Rationals()
        if t.startswith("Z/"):
            return IntegersMod(int(t[2:]))
        if t.startswith("GF(") and t.endswith(")"):
            return PrimeField(int(t[3:-1]))
        if t.startswith("F"):
            return PrimeField(int(t[1:]))
        raise ValueError(f"cannot parse ring {text!r}")


def Integers() -> CoefficientRing:
    return CoefficientRing("Z")


def Rationals() -> CoefficientRing:
    return CoefficientRing("Q")


def IntegersMod(m: int) -> CoefficientRing:
    return CoefficientRing("Z/m", m)


def PrimeField(p: int) -> CoefficientRing:
    return CoefficientRing("F_p", p)


@lru_cache(maxsize=None)
def _proper_divisors(elements: tuple[int, ...]) -> dict[int, tuple[int, ...]]:
    return {m: tuple(d for d in elements if d < m and m % d == 0) for m in elements}


def _ghost_of(elements: tuple[int, ...], coords: Sequence) -> dict:
    x = dict(zip(elements, coords))
    divs = _proper_divisors(elements)
    return {m: m * x[m] + sum(d * x[d] ** (m // d) for d in divs[m]) for m in elements}


def _solve_ghost(elements: tuple[int, ...], ghost: Mapping, exact_int: bool) -> list:
    divs = _proper_divisors(elements)
    z: dict = {}
    for m in elements:
        rest = ghost[m] - sum(d * z[d] ** (m // d) for d in divs[m])
        if exact_int:
            q, r = divmod(rest, m)
            if r:
                raise InternalIntegralityError(
                    f"ghost recursion: {rest} not divisible by {m}"
                )
            z[m] = q
        else:
            z[m] = rest / m
    return [z[m] for m in elements]


@dataclass(frozen=True)
class WittVector:
    trunc: TruncationSet
    coords: tuple
    ring: CoefficientRing

    def __post_init__(self) -> None:
        if len(self.coords) != len(self.trunc):
            raise TruncationMismatch(
                f"{len(self.coords)} coordinates for a truncation set of size {len(self.trunc)}"
            )
        object.__setattr__(self, "coords", tuple(self.ring(c) for c in self.coords))

    @classmethod
    def of(cls, coords: Sequence, ring: CoefficientRing) -> "WittVector":
        """Witt vector on {1, ..., len(coords)}."""
        return cls(TruncationSet.initial(len(coords)), tuple(coords), ring)

    @classmethod
    def zero(cls, trunc: TruncationSet, ring: CoefficientRing) -> "WittVector":
        return cls(trunc, (0,) * len(trunc), ring)

    @classmethod
    def one(cls, trunc: TruncationSet, ring: CoefficientRing) -> "WittVector":
        return teichmuller(1, trunc, ring)

    def __getitem__(self, m: int):
        return self.coords[self.trunc.elements.index(m)]

    def as_dict(self) -> dict:
        return dict(zip(self.trunc.elements, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    # lifting -------------------------------------------------------------

    def _lift(self) -> tuple:
        return self.coords

    def _from_lifted_ghost(self, ghost: Mapping, trunc: TruncationSet | None = None) -> "WittVector":
        trunc = self.trunc if trunc is None else trunc
        exact_int = self.ring.kind != "Q"
        return WittVector(trunc, tuple(_solve_ghost(trunc.elements, ghost, exact_int)), self.ring)

    def lifted_ghost(self) -> dict:
        """Ghost coordinates of the canonical integer (or rational) lift."""
        return _ghost_of(self.trunc.elements, self._lift())

    # arithmetic ----------------------------------------------------------

    def _binary(self, other: "WittVector", op: Callable) -> "WittVector":
        if not isinstance(other, WittVector):
            return NotImplemented
        if other.trunc != self.trunc or other.ring != self.ring:
            raise IncompatibleOperands(
                f"cannot combine vectors over {self.trunc.elements}/{self.ring} "
                f"and {other.trunc.elements}/{other.ring}"
            )
        gx, gy = self.lifted_ghost(), other.lifted_ghost()
        return self._from_lifted_ghost({m: op(gx[m], gy[m]) for m in gx})

    def __add__(self, other: "WittVector") -> "WittVector":
        return self._binary(other, lambda u, v: u + v)

    def __sub__(self, other: "WittVector") -> "WittVector":
        return self._binary(other, lambda u, v: u - v)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return self._binary(other, lambda u, v: u * v)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __neg__(self) -> "WittVector":
        g = self.lifted_ghost()
        return self._from_lifted_ghost({m: -v for m, v in g.items()})

    def scale(self, k: int) -> "WittVector":
        """The k-fold sum ``x + ... + x`` (k may be negative)."""
        g = self.lifted_ghost()
        return self._from_lifted_ghost({m: k * v for m, v in g.items()})

    def restrict(self, trunc: TruncationSet) -> "WittVector":
        """Restriction to a smaller truncation set (a ring map)."""
        x = self.as_dict()
        try:
            return WittVector(trunc, tuple(x[m] for m in trunc.elements), self.ring)
        except KeyError:
            raise TruncationMismatch(f"{trunc.elements} is not contained in {self.trunc.elements}")

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def ghost(x: WittVector) -> dict:
    """Ghost coordinates w_m = sum_{d | m} d * x_d^(m/d), as ring elements."""
    return {m: x.ring(v) for m, v in x.lifted_ghost().items()}


def from_ghost(values: Mapping, trunc: TruncationSet, ring: CoefficientRing) -> WittVector:
    """Inverse of the ghost map over Q, or over Z when the preimage is integral."""
    if not ring.torsion_free:
        raise ValueError("the ghost map is only invertible over torsion-free rings")
    exact_int = ring.kind == "Z"
    return WittVector(trunc, tuple(_solve_ghost(trunc.elements, values, exact_int)), ring)


def arith(op: str, x: WittVector, y: WittVector | None = None) -> WittVector:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "sub":
        return x - y
    raise ValueError(f"unknown operation {op!r}")


def teichmuller(c, trunc: TruncationSet, ring: CoefficientRing) -> WittVector:
    if 1 not in trunc:
        raise MissingUnit("the Teichmuller lift needs 1 in the truncation set")
    return WittVector(trunc, tuple(c if m == 1 else 0 for m in trunc.elements), ring)


def verschiebung(r: int, x: WittVector, target: TruncationSet) -> WittVector:
    """V_r : W_{S/r} -> W_S, a pure coordinate shift (V_r x)_{rm} = x_m."""
    if r < 1:
        raise ValueError("r must be positive")
    if target.quotient(r) != x.trunc:
        raise TruncationMismatch(
            f"source {x.trunc.elements} is not {target.elements} / {r}"
        )
    src = x.as_dict()
    coords = tuple(src[m // r] if m % r == 0 else 0 for m in target.elements)
    return WittVector(target, coords, x.ring)


def frobenius(r: int, x: WittVector) -> WittVector:
    """F_r : W_S -> W_{S/r}, determined by ghost(F_r x)_m = ghost(x)_{rm}."""
    if r < 1:
        raise ValueError("r must be positive")
    target = x.trunc.quotient(r)
    g = x.lifted_ghost()
    return x._from_lifted_ghost({m: g[r * m] for m in target.elements}, target)


# truncation-poset Witt vectors ----------------------------------------------


@dataclass(frozen=True)
class PosetWittVector:
    """A Witt vector on S_n(a, N), stored as one ordinary vector per component."""

    poset: TruncationPoset
    components: tuple[WittVector, ...]

    def __post_init__(self) -> None:
        if len(self.components) != len(self.poset.components):
            raise TruncationMismatch("one Witt vector per component is required")
        for comp, vec in zip(self.poset.components, self.components):
            if len(vec.trunc) != comp.size or not vec.trunc.is_initial():
                raise TruncationMismatch(f"component {comp.label} needs {{1..{comp.size}}}")

    @classmethod
    def zero(cls, poset: TruncationPoset, ring: CoefficientRing) -> "PosetWittVector":
        return cls(poset, tuple(WittVector.zero(TruncationSet.initial(c.size), ring)
                                for c in poset.components))

    def by_label(self) -> dict[str, WittVector]:
        return {str(c.label): v for c, v in zip(self.poset.components, self.components)}

    def ghost(self) -> dict[tuple[str, int], object]:
        """Ghost coordinates indexed by (component label, power)."""
        out = {}
        for comp, vec in zip(self.poset.components, self.components):
            for m, v in ghost(vec).items():
                out[(str(comp.label), m)] = v
        return out


def generalized_verschiebung(
    a: int, b: int, n: int, N: int, x: PosetWittVector, target: TruncationPoset | None = None
) -> PosetWittVector:
    """V_a^b : W_{S_n(a,N)} -> W_{S_n(b,N)}.

    A component labelled u whose image has b-period r contributes V_r of its
    vector to the component of the image's root; contributions to the same
    target are added as Witt vectors.
    """
    if a % b:
        raise DivisibilityError(f"{b} does not divide {a}")
    if (x.poset.n, x.poset.a, x.poset.N) != (n, a, N):
        raise TruncationMismatch("input does not live on S_n(a, N)")
    target = target or build_poset(n, b, N)
    ring = x.components[0].ring if x.components else None
    if ring is None:
        return PosetWittVector.zero(target, Integers())
    out = list(PosetWittVector.zero(target, ring).components)
    for route in vmap_components(n, a, b, N, x.poset, target):
        dest = out[route.target]
        out[route.target] = dest + verschiebung(route.ratio, x.components[route.source], dest.trunc)
    return PosetWittVector(target, tuple(out))
