"""Group structure of W_n(F_p) and the relative K-groups of F_p<x_1..x_n>/(m^a).

W_n(F_p) splits as the sum over d <= n prime to p of the p-typical pieces
Z/p^c(n,d), c(n,d) = #{i >= 0 : d p^i <= n}.  The splitting is computed, not
assumed: the d-th coordinate of x is read off from F_d(x) restricted to
{1, p, ..., p^(c-1)} by extracting base-p digits.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .abgroup import AbHom, FinAbGroup, SparseHom, cokernel, kernel
from .errors import NotPrime, ParameterError, TruncationMismatch
from .trunc import TruncationSet, build_poset, vmap_components
from .witt import PrimeField, WittVector, frobenius, is_prime, verschiebung
from .words import lyndon_words


@dataclass(frozen=True)
class WittFpStructure:
    n: int
    p: int
    summands: tuple[tuple[int, int], ...]  # (d, c(n, d))

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.p**c for _, c in self.summands)

    @property
    def group(self) -> FinAbGroup:
        return FinAbGroup.from_orders(self.orders)


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


@lru_cache(maxsize=None)
def structure(n: int, p: int) -> WittFpStructure:
    _require_prime(p)
    if n < 0:
        raise ValueError("n must be non-negative")
    summands = []
    for d in range(1, n + 1):
        if d % p == 0:
            continue
        c, m = 0, d
        while m <= n:
            c += 1
            m *= p
        summands.append((d, c))
    return WittFpStructure(n, p, tuple(summands))


def _decode_p_typical(y: WittVector, p: int, c: int) -> int:
    """Integer N mod p^c with y = N * 1 in W_{1,p,..,p^(c-1)}(F_p).

    Peel off the bottom digit m0 by subtracting m0 * 1; the rest is V_p of a
    shorter vector, and over F_p that equals p times any lift of it.
    """
    total, weight = 0, 1
    for level in range(c, 0, -1):
        m0 = y[1]
        total += m0 * weight
        weight *= p
        rest = y - WittVector.one(y.trunc, y.ring).scale(m0)
        if level > 1:
            shorter = TruncationSet.p_typical(p, level - 1)
            y = WittVector(shorter, tuple(rest[p * m] for m in shorter.elements), y.ring)
    return total % p**c


def decompose(x: WittVector) -> tuple[int, ...]:
    """Coordinates of x in sum_d Z/p^c(n,d), ordered by d."""
    if x.ring.kind != "F_p":
        raise ValueError("decompose works over a prime field")
    if not x.trunc.is_initial():
        raise TruncationMismatch("decompose expects the truncation set {1..n}")
    p, n = x.ring.modulus, len(x.trunc)
    out = []
    for d, c in structure(n, p).summands:
        y = frobenius(d, x).restrict(TruncationSet.p_typical(p, c))
        out.append(_decode_p_typical(y, p, c))
    return tuple(out)


@lru_cache(maxsize=None)
def generators(n: int, p: int) -> tuple[WittVector, ...]:
    """Witt vectors g_d with decompose(g_d) the d-th unit vector.

    decompose(V_k[1]) has entry k in every component d' with k | d', so the
    g_d are combinations of the V_k[1] solving a unitriangular system.
    """
    st = structure(n, p)
    ring = PrimeField(p)
    S = TruncationSet.initial(n)
    if n == 0:
        return ()
    modulus = p ** max(c for _, c in st.summands)
    ds = [d for d, _ in st.summands]
    shifted = {k: verschiebung(k, WittVector.one(TruncationSet.initial(n // k), ring), S) for k in ds}
    gens = []
    for d in ds:
        coeff: dict[int, int] = {}
        for k in ds:
            if k % d:
                continue
            acc = sum(j * coeff[j] for j in coeff if k % j == 0)
            target = 1 if k == d else 0
            coeff[k] = (target - acc) * pow(k, -1, modulus) % modulus
        g = WittVector.zero(S, ring)
        for k, ck in coeff.items():
            if ck:
                g = g + shifted[k].scale(ck)
        gens.append(g)
    return tuple(gens)


def encode(residues, n: int, p: int) -> WittVector:
    """Inverse of decompose."""
    st = structure(n, p)
    if len(residues) != len(st.summands):
        raise ValueError("one residue per summand is required")
    x = WittVector.zero(TruncationSet.initial(n), PrimeField(p))
    for m, g in zip(residues, generators(n, p)):
        if m:
            x = x + g.scale(int(m))
    return x


@lru_cache(maxsize=None)
def verschiebung_matrix(r: int, m: int, M: int, p: int) -> AbHom:
    """Matrix of V_r : W_m(F_p) -> W_M(F_p) in the decompose bases.

    Source coordinates above floor(M / r) are discarded by restriction.
    """
    _require_prime(p)
    if r < 1:
        raise ValueError("r must be positive")
    src, tgt = structure(m, p), structure(M, p)
    need = M // r
    if m < need:
        raise TruncationMismatch(f"V_{r} into W_{M} needs a source of length >= {need}, got {m}")
    target = TruncationSet.initial(M)
    cols = []
    for g in generators(m, p):
        shifted = verschiebung(r, g.restrict(TruncationSet.initial(need)), target)
        cols.append(decompose(shifted))
    rows = tuple(tuple(col[i] for col in cols) for i in range(len(tgt.summands)))
    return AbHom(src.orders, tgt.orders, rows)


# K-groups -----------------------------------------------------------------


@dataclass
class PathReport:
    odd: FinAbGroup
    even: FinAbGroup

    def to_json(self) -> dict:
        return {"K_odd": self.odd.to_json(), "K_even": self.even.to_json()}


@dataclass
class NecklaceSummary:
    """Corollary contribution of all necklaces of one length."""

    length: int
    g: int
    count: int
    odd: FinAbGroup
    even: FinAbGroup

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "g": self.g,
            "necklaces": self.count,
            "K_odd": self.odd.to_json(),
            "K_even": self.even.to_json(),
        }


@dataclass
class KGroupReport:
    n: int
    a: int
    q: int
    p: int
    theorem_path: PathReport
    corollary_path: PathReport
    per_necklace: list[NecklaceSummary] = field(default_factory=list)
    source_size: int = 0  # |S_n(a, aq)|
    target_size: int = 0  # |S_n(1, aq)|

    @property
    def odd(self) -> FinAbGroup:
        return self.theorem_path.odd

    @property
    def even(self) -> FinAbGroup:
        return self.theorem_path.even

    @property
    def crosscheck(self) -> bool:
        return (self.theorem_path.odd == self.corollary_path.odd
                and self.theorem_path.even == self.corollary_path.even)

    def to_json(self) -> dict:
        return {
            "params": {"n": self.n, "a": self.a, "q": self.q, "p": self.p},
            "K_odd": self.odd.to_json(),
            "K_even": self.even.to_json(),
            "crosscheck": self.crosscheck,
            "theorem_path": self.theorem_path.to_json(),
            "corollary_path": self.corollary_path.to_json(),
            "poset_sizes": {"S_n(a,aq)": self.source_size, "S_n(1,aq)": self.target_size},
            "per_necklace": [s.to_json() for s in self.per_necklace],
        }


def _kernel_cokernel(h: AbHom) -> tuple[FinAbGroup, FinAbGroup]:
    return kernel(h), cokernel(h)


def assemble_va1(n: int, a: int, q: int, p: int):
    """V_a^1 : W_{S_n(a,aq)}(F_p) -> W_{S_n(1,aq)}(F_p) as a sparse matrix.

    Returns the matrix and the two posets.
    """
    N = a * q
    src, tgt = build_poset(n, a, N), build_poset(n, 1, N)
    src_off, tgt_off = [], []
    src_orders: list[int] = []
    tgt_orders: list[int] = []
    for comp in src.components:
        src_off.append(len(src_orders))
        src_orders.extend(structure(comp.size, p).orders)
    for comp in tgt.components:
        tgt_off.append(len(tgt_orders))
        tgt_orders.extend(structure(comp.size, p).orders)
    entries: dict[tuple[int, int], int] = {}
    for route in vmap_components(n, a, 1, N, src, tgt):
        s_size = src.components[route.source].size
        t_size = tgt.components[route.target].size
        block = verschiebung_matrix(route.ratio, s_size, t_size, p)
        r0, c0 = tgt_off[route.target], src_off[route.source]
        for i, row in enumerate(block.matrix):
            for j, v in enumerate(row):
                if v:
                    key = (r0 + i, c0 + j)
                    entries[key] = (entries.get(key, 0) + v) % tgt_orders[r0 + i]
    return SparseHom(src_orders, tgt_orders, entries), src, tgt


def theorem_path(n: int, a: int, q: int, p: int, workers: int = 1) -> tuple[PathReport, int, int]:
    hom, src, tgt = assemble_va1(n, a, q, p)
    blocks = hom.blocks()
    unique = list(dict.fromkeys(blocks))
    if workers > 1 and len(unique) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(zip(unique, pool.map(_kernel_cokernel, unique, chunksize=64)))
    else:
        results = {b: _kernel_cokernel(b) for b in unique}
    kers = [results[b][0] for b in blocks]
    cokers = [results[b][1] for b in blocks]
    report = PathReport(odd=FinAbGroup.direct_sum(cokers), even=FinAbGroup.direct_sum(kers))
    return report, src.total, tgt.total


def corollary_path(n: int, a: int, q: int, p: int) -> tuple[PathReport, list[NecklaceSummary]]:
    counts: dict[int, int] = {}
    for w in lyndon_words(n, a * q):
        counts[len(w)] = counts.get(len(w), 0) + 1
    summaries = []
    for length in sorted(counts):
        g = gcd(a, length)
        small, big = g * q // length, a * q // length
        odd = cokernel(verschiebung_matrix(a // g, small, big, p))
        even = structure(small, p).group * (g - 1)
        summaries.append(NecklaceSummary(length, g, counts[length], odd, even))
    odd = FinAbGroup.direct_sum([s.odd for s in summaries], [s.count for s in summaries])
    even = FinAbGroup.direct_sum([s.even for s in summaries], [s.count for s in summaries])
    return PathReport(odd, even), summaries


def kgroups_fp(n: int, a: int, q: int, p: int, workers: int | None = None) -> KGroupReport:
    """K_{2q-1} and K_{2q} of F_p<x_1..x_n>/(m^a) relative to the ideal m.

    Computed twice: as kernel and cokernel of the assembled V_a^1, and as the
    per-necklace sum of classical cokernels and kernels.
    """
    _require_prime(p)
    if a < 2:
        raise ParameterError("a must be at least 2")
    if n < 1 or q < 1:
        raise ParameterError("n and q must be positive")
    if workers is None:
        workers = int(os.environ.get("WITTK_THREADS", "1") or 1)
    thm, s_size, t_size = theorem_path(n, a, q, p, workers)
    cor, summaries = corollary_path(n, a, q, p)
    return KGroupReport(n, a, q, p, thm, cor, summaries, s_size, t_size)
