"""Finitely generated abelian groups, Smith normal form, kernels and cokernels.

Matrices are lists of rows of Python ints.  A group is stored in invariant
factor form d_1 | d_2 | ... with free summands written as trailing zeros.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [() for _ in range(cols)]
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def _snf(A: Sequence[Sequence[int]], track: bool):
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = identity(m) if track else None
    V = identity(n) if track else None

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        D[dst] = [x + k * y for x, y in zip(D[dst], D[src])]
        if track:
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in D:
            row[dst] += k * row[src]
        if track:
            for row in V:
                row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # least absolute nonzero entry of the trailing block
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // piv))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // piv))
                    if D[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the pivot
                cands = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                cands += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility of the remaining block by the pivot
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if track:
                U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U A V = D`` and U, V unimodular."""
    return _snf(A, track=True)


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form, in divisibility order."""
    _, D, _ = _snf(A, track=False)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(D[i][i])
    return out


def rank(A: Sequence[Sequence[int]]) -> int:
    return len(invariant_factors(A)) if A and A[0] else 0


# groups -----------------------------------------------------------------


def _factor(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    k = 2
    while k * k <= m:
        while m % k == 0:
            out[k] = out.get(k, 0) + 1
            m //= k
        k += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _from_elementary(prime_powers: Counter, free: int) -> tuple[int, ...]:
    by_prime: dict[int, list[int]] = {}
    for (p, e), mult in prime_powers.items():
        by_prime.setdefault(p, []).extend([e] * mult)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for p, exps in by_prime.items():
        exps.sort(reverse=True)
        for i, e in enumerate(exps):
            factors[length - 1 - i] *= p**e
    return tuple(factors) + (0,) * free


@dataclass(frozen=True)
class FinAbGroup:
    """Z/d_1 + ... + Z/d_k with d_i | d_{i+1}; a divisor 0 is a copy of Z."""

    divisors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ds = tuple(int(d) for d in self.divisors)
        object.__setattr__(self, "divisors", ds)
        for d in ds:
            if d == 1 or d < 0:
                raise ValueError(f"invalid invariant factor {d}")
        for x, y in zip(ds, ds[1:]):
            if y % x if x else y != 0:
                raise ValueError(f"{ds} is not in invariant factor form")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FinAbGroup":
        """Canonical form of Z/o_1 + Z/o_2 + ... (o = 0 means Z, o = 1 trivial)."""
        powers: Counter = Counter()
        free = 0
        for o in orders:
            o = abs(int(o))
            if o == 0:
                free += 1
            elif o > 1:
                for p, e in _factor(o).items():
                    powers[(p, e)] += 1
        return cls(_from_elementary(powers, free))

    @classmethod
    def cyclic(cls, m: int) -> "FinAbGroup":
        return cls.from_orders([m])

    @classmethod
    def free(cls, r: int) -> "FinAbGroup":
        return cls((0,) * r)

    @classmethod
    def direct_sum(cls, groups: Iterable["FinAbGroup"], multiplicities: Iterable[int] | None = None) -> "FinAbGroup":
        groups = list(groups)
        mults = list(multiplicities) if multiplicities is not None else [1] * len(groups)
        powers: Counter = Counter()
        free = 0
        for g, k in zip(groups, mults):
            for p, e, c in g.elementary_divisors():
                powers[(p, e)] += c * k
            free += g.rank * k
        return cls(_from_elementary(powers, free))

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.direct_sum([self, other])

    def __mul__(self, k: int) -> "FinAbGroup":
        return FinAbGroup.direct_sum([self], [k])

    __rmul__ = __mul__

    def elementary_divisors(self) -> list[tuple[int, int, int]]:
        """Triples (p, e, multiplicity) for the summands Z/p^e."""
        counts: Counter = Counter()
        for d in self.torsion:
            for p, e in _factor(d).items():
                counts[(p, e)] += 1
        return sorted((p, e, c) for (p, e), c in counts.items())

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_trivial(self) -> bool:
        return not self.divisors

    @property
    def order(self) -> int | None:
        """Number of elements, or None for infinite groups."""
        return prod(self.divisors) if self.is_finite else None

    def to_json(self) -> dict:
        return {"divisors": list(self.divisors)}

    def __str__(self) -> str:
        if not self.divisors:
            return "0"
        parts = []
        torsion = Counter(self.torsion)
        for d in sorted(torsion):
            c = torsion[d]
            parts.append(f"(Z/{d})^{c}" if c > 1 else f"Z/{d}")
        if self.rank:
            parts.append(f"Z^{self.rank}" if self.rank > 1 else "Z")
        return " + ".join(parts)


@dataclass(frozen=True)
class AbHom:
    """A homomorphism Z^s/(orders) -> Z^t/(orders) given on generators.

    ``matrix`` has one row per target generator and one column per source
    generator.  An order of 0 means a free generator.
    """

    source_orders: tuple[int, ...]
    target_orders: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        src = tuple(int(o) for o in self.source_orders)
        tgt = tuple(int(o) for o in self.target_orders)
        M = tuple(tuple(int(v) for v in row) for row in self.matrix)
        if len(M) != len(tgt) or any(len(row) != len(src) for row in M):
            raise ValueError(f"matrix shape does not match {len(tgt)}x{len(src)}")
        # reduce entries, then check M * diag(src) lies in the target relations
        M = tuple(tuple(v % t if t else v for v in row) for row, t in zip(M, tgt))
        for row, t in zip(M, tgt):
            for v, s in zip(row, src):
                image = v * s
                if (image % t if t else image) != 0:
                    raise ValueError("matrix does not respect the source relations")
        object.__setattr__(self, "source_orders", src)
        object.__setattr__(self, "target_orders", tgt)
        object.__setattr__(self, "matrix", M)

    @property
    def source(self) -> FinAbGroup:
        return FinAbGroup.from_orders(self.source_orders)

    @property
    def target(self) -> FinAbGroup:
        return FinAbGroup.from_orders(self.target_orders)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            (sum(v * c for v, c in zip(row, x)) % t) if t else sum(v * c for v, c in zip(row, x))
            for row, t in zip(self.matrix, self.target_orders)
        )


def _relations(orders: Sequence[int]) -> Matrix:
    """Columns o_i * e_i for the nonzero orders."""
    k = len(orders)
    cols = [i for i, o in enumerate(orders) if o]
    return [[orders[i] if i == c else 0 for c in cols] for i in range(k)]


def _hstack(A: Matrix, B: Matrix) -> Matrix:
    return [list(a) + list(b) for a, b in zip(A, B)]


def _presented(rows: int, A: Matrix) -> FinAbGroup:
    """The group Z^rows / column span of A."""
    if rows == 0:
        return FinAbGroup()
    facs = invariant_factors(A) if A and A[0] else []
    return FinAbGroup.from_orders(facs + [0] * (rows - len(facs)))


def integer_kernel(A: Matrix, ncols: int) -> Matrix:
    """Basis (as columns of an ncols x k matrix) of {x in Z^ncols : A x = 0}."""
    if not A:
        return identity(ncols)
    U, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    return [row[r:] for row in V]


@lru_cache(maxsize=200_000)
def cokernel(h: AbHom) -> FinAbGroup:
    t = len(h.target_orders)
    A = _hstack([list(r) for r in h.matrix], _relations(h.target_orders))
    return _presented(t, A)


@lru_cache(maxsize=200_000)
def kernel(h: AbHom) -> FinAbGroup:
    """ker h as (preimage of the target relations) / (source relations)."""
    s = len(h.source_orders)
    if s == 0:
        return FinAbGroup()
    A = _hstack([list(r) for r in h.matrix], _relations(h.target_orders))
    K = integer_kernel(A, len(A[0]) if A else s) if A else identity(s)
    gens = [row for row in K[:s]]  # s x k, preimage lattice generators
    if not gens or not gens[0]:
        return FinAbGroup()
    U, D, _V = smith_normal_form(gens)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    diag = [D[i][i] for i in range(r)]
    # coordinates of the source relations in the basis U^{-1} diag(d) of the lattice
    rel = _relations(h.source_orders)
    coords: Matrix = [[0] * len(rel[0]) for _ in range(r)] if rel and rel[0] else [[] for _ in range(r)]
    if rel and rel[0]:
        Urel = matmul(U, rel)
        for i in range(len(Urel)):
            for j, v in enumerate(Urel[i]):
                if i < r:
                    q, rem = divmod(v, diag[i])
                    assert rem == 0, "source relation outside the preimage lattice"
                    coords[i][j] = q
                else:
                    assert v == 0, "source relation outside the preimage lattice"
    return _presented(r, coords)


def image_order(h: AbHom) -> int:
    """|im h| for a finite source."""
    src = h.source.order
    ker = kernel(h).order
    if src is None or ker is None:
        raise ValueError("image order requires a finite source")
    return src // ker


# block decomposition ------------------------------------------------------


@dataclass
class SparseHom:
    """A large homomorphism stored as {(row, col): value}, split before SNF."""

    source_orders: list[int]
    target_orders: list[int]
    entries: dict[tuple[int, int], int]

    def blocks(self) -> list[AbHom]:
        """Connected blocks of the row/column incidence graph.

        The full map is the direct sum of the returned maps, so kernels and
        cokernels may be computed block by block.
        """
        s, t = len(self.source_orders), len(self.target_orders)
        parent = list(range(s + t))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (i, j), v in self.entries.items():
            if v:
                a, b = find(s + i), find(j)
                if a != b:
                    parent[a] = b
        rows: dict[int, list[int]] = {}
        cols: dict[int, list[int]] = {}
        for j in range(s):
            cols.setdefault(find(j), []).append(j)
        for i in range(t):
            rows.setdefault(find(s + i), []).append(i)
        out = []
        for root in sorted(set(rows) | set(cols)):
            r, c = rows.get(root, []), cols.get(root, [])
            ci = {j: k for k, j in enumerate(c)}
            M = [[0] * len(c) for _ in r]
            for a, i in enumerate(r):
                for j in c:
                    v = self.entries.get((i, j), 0)
                    if v:
                        M[a][ci[j]] = v
            out.append(AbHom(
                tuple(self.source_orders[j] for j in c),
                tuple(self.target_orders[i] for i in r),
                tuple(tuple(row) for row in M),
            ))
        return out
