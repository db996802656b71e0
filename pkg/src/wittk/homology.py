"""Integral homology of the cyclic-polytope quotients X_{s,a}.

X_{s,a} is generated by the (s-1)-simplex x0 (x) x (x) ... (x) x with the
Hochschild faces and the relations x^a = * and x^(i-1) x0 x^(a-i) = *.  A
non-degenerate e-simplex is a monomial

    x^k0' x0 x^k0'' (x) x^k1 (x) ... (x) x^ke

with k0' + k0'' + k1 + ... + ke = s - 1, k0' + 1 + k0'' < a and 1 <= ki < a.
The basepoint is not a generator, so the complex computes reduced homology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .abgroup import FinAbGroup, Matrix, invariant_factors, rank


class Monomial(NamedTuple):
    k0_left: int
    k0_right: int
    ks: tuple[int, ...]

    def __str__(self) -> str:
        def power(k: int) -> str:
            return "" if k == 0 else ("x" if k == 1 else f"x^{k}")

        head = f"{power(self.k0_left)}x0{power(self.k0_right)}"
        return " (x) ".join([head] + [power(k) for k in self.ks])


def _compositions(total: int, parts: int, lo: int, hi: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, min(hi, total - lo * (parts - 1)) + 1):
        for rest in _compositions(total - first, parts - 1, lo, hi):
            yield (first,) + rest


@lru_cache(maxsize=None)
def basis(s: int, a: int, e: int) -> tuple[Monomial, ...]:
    """Non-degenerate e-simplices of X_{s,a} in lexicographic order."""
    if a < 2 or s < 1:
        raise ValueError("need a >= 2 and s >= 1")
    out = []
    for left in range(a - 1):
        for right in range(a - 1 - left):
            rest = s - 1 - left - right
            if rest < 0:
                continue
            for ks in _compositions(rest, e, 1, a - 1):
                out.append(Monomial(left, right, ks))
    out.sort()
    return tuple(out)


def faces(m: Monomial, a: int) -> list[tuple[int, Monomial]]:
    """Nonzero terms (sign, face) of the boundary of m."""
    e = len(m.ks)
    out = []
    if e == 0:
        return out
    k = m.ks
    # d_0 multiplies the first x-factor onto the right of the x0 block
    if m.k0_left + 1 + m.k0_right + k[0] < a:
        out.append((1, Monomial(m.k0_left, m.k0_right + k[0], k[1:])))
    for i in range(1, e):
        if k[i - 1] + k[i] < a:
            sign = -1 if i % 2 else 1
            out.append((sign, Monomial(m.k0_left, m.k0_right, k[: i - 1] + (k[i - 1] + k[i],) + k[i + 1 :])))
    # d_e moves the last factor around to the left of the x0 block
    if k[-1] + m.k0_left + 1 + m.k0_right < a:
        sign = -1 if e % 2 else 1
        out.append((sign, Monomial(m.k0_left + k[-1], m.k0_right, k[:-1])))
    return out


@lru_cache(maxsize=None)
def _boundary(s: int, a: int, e: int) -> tuple[tuple[int, ...], ...]:
    rows, cols = basis(s, a, e - 1), basis(s, a, e)
    index = {m: i for i, m in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, m in enumerate(cols):
        for sign, f in faces(m, a):
            M[index[f]][j] += sign
    return tuple(tuple(r) for r in M)


def boundary_matrix(s: int, a: int, e: int) -> Matrix:
    """Matrix of d : C_e -> C_{e-1} (rows index the degree e-1 basis)."""
    if e < 1:
        raise ValueError("boundaries start in degree 1")
    return [list(r) for r in _boundary(s, a, e)]


@dataclass
class ChainComplex:
    s: int
    a: int
    bases: dict[int, tuple[Monomial, ...]] = field(default_factory=dict)
    boundaries: dict[int, Matrix] = field(default_factory=dict)

    @classmethod
    def build(cls, s: int, a: int) -> "ChainComplex":
        cc = cls(s, a)
        for e in range(s):
            cc.bases[e] = basis(s, a, e)
        for e in range(1, s):
            cc.boundaries[e] = boundary_matrix(s, a, e)
        return cc

    @property
    def top(self) -> int:
        return max(self.bases)

    def d_squared_is_zero(self) -> bool:
        for e in range(2, self.top + 1):
            A, B = self.boundaries[e - 1], self.boundaries[e]
            for i in range(len(A)):
                for j in range(len(B[0]) if B else 0):
                    if sum(A[i][k] * B[k][j] for k in range(len(B))):
                        return False
        return True

    def euler_characteristic(self) -> int:
        return sum((-1) ** e * len(b) for e, b in self.bases.items())


def _rank(M: Matrix) -> int:
    return rank(M) if M and M[0] else 0


def homology(s: int, a: int) -> list[FinAbGroup]:
    """Reduced integral homology H_e for e = 0, ..., s-1."""
    cc = ChainComplex.build(s, a)
    ranks = {e: _rank(M) for e, M in cc.boundaries.items()}
    out = []
    for e in range(cc.top + 1):
        cycles = len(cc.bases[e]) - ranks.get(e, 0)
        nxt = cc.boundaries.get(e + 1)
        torsion = [d for d in invariant_factors(nxt) if d > 1] if nxt and nxt[0] else []
        free = cycles - ranks.get(e + 1, 0)
        out.append(FinAbGroup.from_orders(torsion + [0] * free))
    return out


def expected_homology(s: int, a: int) -> dict[int, FinAbGroup]:
    """The nonzero groups predicted for X_{s,a}, keyed by degree."""
    d = (s - 1) // a
    if s % a:
        return {2 * d: FinAbGroup.free(1)}
    return {2 * d + 1: FinAbGroup.free(a - 1)}


def iota_cycles(s: int, a: int) -> tuple[int, list[dict[Monomial, int]]]:
    """The explicit generating cycles and their degree."""
    d = (s - 1) // a
    if s % a:
        degree = 2 * d
        admissible = set(basis(s, a, degree))
        chain: dict[Monomial, int] = {}
        # x0 x^k0'' (x) x (x) x^k2 (x) ... (x) x (x) x^k2d, k0'' + k2 + ... + k2d = s-d-1
        for right in range(0, s - d):
            for evens in _compositions(s - d - 1 - right, d, 1, a - 1):
                ks = tuple(v for k in evens for v in (1, k))
                m = Monomial(0, right, ks)
                if m in admissible:
                    chain[m] = 1
        return degree, [chain]
    degree = 2 * d + 1
    ks = (1, a - 1) * d + (1,)
    return degree, [{Monomial(i, a - i - 2, ks): 1} for i in range(a - 1)]


@dataclass
class IotaReport:
    s: int
    a: int
    degree: int
    cycles: list[str]
    all_cycles: bool
    independent: bool
    generates: bool

    @property
    def ok(self) -> bool:
        return self.all_cycles and self.independent and self.generates

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "cycles": self.cycles,
            "all_cycles": self.all_cycles,
            "independent": self.independent,
            "generates": self.generates,
            "ok": self.ok,
        }


def iota_check(s: int, a: int) -> IotaReport:
    """Check the explicit cycles are cycles that freely generate H_degree.

    With B the boundaries and Z the cycles in degree e, the cycles generate
    Z/B when the lattice L spanned by them and B has rank(Z) and is
    saturated (all invariant factors 1), because Z itself is saturated.
    """
    degree, chains = iota_cycles(s, a)
    cc_basis = basis(s, a, degree)
    index = {m: i for i, m in enumerate(cc_basis)}
    vecs = []
    for chain in chains:
        v = [0] * len(cc_basis)
        for m, c in chain.items():
            v[index[m]] = c
        vecs.append(v)

    down = boundary_matrix(s, a, degree) if degree >= 1 else []
    all_cycles = all(
        not any(sum(row[j] * v[j] for j in range(len(v))) for row in down) for v in vecs
    )
    up = boundary_matrix(s, a, degree + 1) if degree + 1 < s else [[] for _ in cc_basis]
    cols = [list(row) for row in up]
    for v in vecs:
        for i, row in enumerate(cols):
            row.append(v[i])
    lattice = invariant_factors(cols) if cols and cols[0] else []
    rank_up = _rank(up)
    cycle_rank = len(cc_basis) - _rank(down)
    independent = len(lattice) - rank_up == len(vecs)
    generates = len(lattice) == cycle_rank and all(f == 1 for f in lattice)
    return IotaReport(
        s, a, degree,
        [" + ".join(str(m) for m in chain) for chain in chains],
        all_cycles, independent, generates,
    )
