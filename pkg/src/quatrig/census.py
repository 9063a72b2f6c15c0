"""Exact enumeration engines: the empirical counting functions on the left
side of every counting theorem, and the Dirichlet-coefficient oracle that
reproduces them through an entirely independent route (exact multiplication
of Euler factors).

Enumeration order is deterministic: ramification data is generated by a
bounded product-of-primes DFS over ascending primes, and shard partitions
(keyed by the largest ramified prime) merge by addition, so sharded and
unsharded runs are identical.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm

import numpy as np

from . import arith
from .arith import kronecker_symbol, ramanujan_sum, shared_sieve
from .brauer import QuaternionAlgebraQ
from .fields import (
    PlaceQ,
    QuadraticField,
    SplittingType,
    independent_mod_squares,
    splitting,
)


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same census disagree."""


class DependentDiscriminants(ValueError):
    """The given discriminants are multiplicatively dependent mod squares."""


@dataclass(frozen=True)
class CountTable:
    """Census results: exact counts at an ascending list of thresholds."""

    thresholds: tuple[int, ...]
    counts: tuple[int, ...]
    spec: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if list(self.thresholds) != sorted(self.thresholds):
            raise ValueError("thresholds must be ascending")
        if any(b < a for a, b in zip(self.counts, self.counts[1:])):
            raise InternalInconsistency("counts must be nondecreasing in x")

    def count_at(self, x: int) -> int:
        idx = self.thresholds.index(x)
        return self.counts[idx]

    def rows(self):
        return list(zip(self.thresholds, self.counts))


def _counts_at_thresholds(sorted_discs: list[int], weights: list[int], thresholds) -> list[int]:
    prefix = [0]
    for w in weights:
        prefix.append(prefix[-1] + w)
    out = []
    for x in thresholds:
        idx = bisect.bisect_right(sorted_discs, x)
        out.append(prefix[idx])
    return out


# -- central simple algebra enumeration ------------------------------------

def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _csa_disc_counts(m: int, n: int, bound: int, division_only: bool = False,
                     shards: int = 1) -> list[tuple[int, int]]:
    """Sorted (disc, multiplicity) pairs for central simple algebras of
    degree n over Q whose local denominators all divide m and |disc| <= bound.

    Each finite ramified prime chooses a denominator d | m (d > 1) and a
    numerator coprime to d; the real place may carry 1/2 when m is even.  The
    integrality of the invariant sum is tracked exactly as a distribution of
    residues mod m.
    """
    if n % m != 0:
        raise ValueError("m must divide n")
    if bound < 1:
        return []
    opts = []
    for d in _divisors(m):
        if d == 1:
            continue
        weight = n * n - n * n // d
        residues = tuple((a * (m // d)) % m for a in range(1, d) if gcd(a, d) == 1)
        opts.append((d, weight, residues))

    shard_counts: list[dict[int, int]] = [dict() for _ in range(max(1, shards))]

    def ways(dist, lcm_f):
        total = 0
        if not division_only or lcm_f == n:
            total += dist[0]
        if m % 2 == 0:
            if not division_only or lcm(lcm_f, 2) == n:
                total += dist[m // 2]
        return total

    def emit(disc, dist, lcm_f, largest):
        w = ways(dist, lcm_f)
        if w:
            bucket = shard_counts[largest % max(1, shards)]
            bucket[disc] = bucket.get(disc, 0) + w

    if not opts:
        # m = 1: the matrix algebra alone
        counts = {1: 1} if (not division_only or n == 1) else {}
        items = sorted(counts.items())
        return items

    min_weight = min(w for _, w, _ in opts)
    max_prime = 1
    while (max_prime + 1) ** min_weight <= bound:
        max_prime += 1
    primes = [int(p) for p in shared_sieve(max(max_prime, 2)).primes_upto(max(max_prime, 2))]

    init = [0] * m
    init[0] = 1
    emit(1, init, 1, 0)

    def rec(start, disc, dist, lcm_f, largest):
        for k in range(start, len(primes)):
            p = primes[k]
            if disc * p ** min_weight > bound:
                break
            for d, weight, residues in opts:
                nd = disc * p ** weight
                if nd > bound:
                    continue
                ndist = [0] * m
                for r, cnt in enumerate(dist):
                    if cnt:
                        for s in residues:
                            ndist[(r + s) % m] += cnt
                nl = lcm(lcm_f, d)
                emit(nd, ndist, nl, p)
                rec(k + 1, nd, ndist, nl, p)

    rec(0, 1, init, 1, 0)

    merged: dict[int, int] = {}
    for bucket in shard_counts:
        for disc, cnt in bucket.items():
            merged[disc] = merged.get(disc, 0) + cnt
    return sorted(merged.items())


def census_csa(m: int, n: int, thresholds, shards: int = 1) -> CountTable:
    """N_{m,n}(x): central simple algebras of dimension n^2 whose division
    degree divides m, counted by exhaustive generation of Hasse data."""
    thresholds = sorted(int(x) for x in thresholds)
    pairs = _csa_disc_counts(m, n, thresholds[-1], shards=shards)
    discs = [d for d, _ in pairs]
    weights = [w for _, w in pairs]
    counts = _counts_at_thresholds(discs, weights, thresholds)
    return CountTable(tuple(thresholds), tuple(counts),
                      {"kind": "csa", "m": m, "n": n})


def count_csa(m: int, n: int, x: int, shards: int = 1) -> int:
    return census_csa(m, n, [x], shards=shards).counts[0]


def census_division(n: int, thresholds, shards: int = 1) -> CountTable:
    """Division algebras of dimension n^2, counted two independent ways: a
    direct enumeration requiring division degree exactly n, and the Moebius
    inclusion-exclusion over the N_{m,n}.  Raises InternalInconsistency if
    the routes disagree anywhere."""
    if n < 2:
        raise ValueError("n must be >= 2")
    thresholds = sorted(int(x) for x in thresholds)
    bound = thresholds[-1]
    pairs = _csa_disc_counts(n, n, bound, division_only=True, shards=shards)
    direct = _counts_at_thresholds([d for d, _ in pairs], [w for _, w in pairs], thresholds)

    table = shared_sieve(n)
    incl_excl = [0] * len(thresholds)
    for m in _divisors(n):
        mu = table.mu(n // m)
        if mu == 0:
            continue
        sub = census_csa(m, n, thresholds, shards=shards)
        incl_excl = [a + mu * b for a, b in zip(incl_excl, sub.counts)]
    if direct != incl_excl:
        raise InternalInconsistency(
            f"division census mismatch: direct {direct} vs inclusion-exclusion {incl_excl}")
    return CountTable(tuple(thresholds), tuple(direct), {"kind": "division", "n": n})


def count_division(n: int, x: int, shards: int = 1) -> int:
    return census_division(n, [x], shards=shards).counts[0]


# -- fundamental discriminants (vectorized) ---------------------------------

@lru_cache(maxsize=8)
def fundamental_discriminants(limit: int) -> np.ndarray:
    """All fundamental discriminants with |delta| <= limit, sorted by |delta|
    with the negative one first on ties."""
    table = shared_sieve(max(limit, 4))
    sq = table.squarefree_flags()[:limit + 1]
    n = np.arange(limit + 1)
    # delta = +-n with n = 1 mod 4 squarefree (sign fixed by n mod 4), or
    # delta = 4m with m = 2, 3 mod 4 squarefree
    pos_mask = (n % 4 == 1) & sq
    neg_mask = (n % 4 == 3) & sq
    idx4 = n[n % 4 == 0]
    q = idx4 // 4
    pos4 = idx4[((q % 4 == 2) | (q % 4 == 3)) & sq[q]]
    neg4 = idx4[((q % 4 == 1) | (q % 4 == 2)) & sq[q]]
    pos_mask[pos4] = True
    neg_mask[neg4] = True
    pos_mask[:2] = False
    neg_mask[:2] = False
    deltas = np.concatenate([-n[neg_mask], n[pos_mask]])
    order = np.lexsort((deltas > 0, np.abs(deltas)))
    return deltas[order]


def fundamental_discriminant_count(x: int) -> int:
    """Exact number of fundamental discriminants delta != 1 with |delta| <= x."""
    if x < 1:
        raise ValueError("x must be >= 1")
    return len(fundamental_discriminants(x))


@lru_cache(maxsize=64)
def _kronecker_residue_table(p: int) -> np.ndarray:
    """(delta|p) as a function of delta mod p (odd p) or delta mod 8 (p = 2)."""
    if p == 2:
        t = np.zeros(8, dtype=np.int8)
        t[[1, 7]] = 1
        t[[3, 5]] = -1
        return t
    t = np.full(p, -1, dtype=np.int8)
    t[0] = 0
    t[np.unique(np.arange(1, p, dtype=np.int64) ** 2 % p)] = 1
    return t


def _kronecker_vec(p: int, deltas: np.ndarray) -> np.ndarray:
    if p == 2:
        return _kronecker_residue_table(2)[deltas % 8]
    return _kronecker_residue_table(p)[deltas % p]


def _embeds_mask(algebra: QuaternionAlgebraQ, deltas: np.ndarray) -> np.ndarray:
    ok = np.ones(len(deltas), dtype=bool)
    for v in sorted(algebra.ramification, key=lambda v: (v.is_infinite, v.norm)):
        if v.is_infinite:
            ok &= deltas < 0
        else:
            ok &= _kronecker_vec(v.p, deltas) != 1
    return ok


def count_embedding_quads(algebra: QuaternionAlgebraQ, x: int,
                          not_totally_complex: bool = False) -> int:
    """Number of quadratic fields with |delta| <= x embedding into the
    algebra (no ramified place splits); the option restricts to real fields."""
    if x < 1:
        raise ValueError("x must be >= 1")
    deltas = fundamental_discriminants(x)
    ok = _embeds_mask(algebra, deltas)
    if not_totally_complex:
        ok &= deltas > 0
    return int(ok.sum())


def census_embedding_quads(algebra: QuaternionAlgebraQ, thresholds,
                           not_totally_complex: bool = False) -> CountTable:
    thresholds = sorted(int(x) for x in thresholds)
    deltas = fundamental_discriminants(thresholds[-1])
    ok = _embeds_mask(algebra, deltas)
    if not_totally_complex:
        ok &= deltas > 0
    admissible = np.sort(np.abs(deltas[ok]))
    counts = [int(np.searchsorted(admissible, x, side="right")) for x in thresholds]
    return CountTable(tuple(thresholds), tuple(counts),
                      {"kind": "embed_quads", "ram": sorted(map(repr, algebra.ramification)),
                       "not_totally_complex": not_totally_complex})


# -- quaternion algebras with prescribed subfields ---------------------------

def _nonsplit_primes(deltas: tuple[int, ...], limit: int) -> list[int]:
    """Finite primes p <= limit that split in none of the given fields."""
    if limit < 2:
        return []
    primes = shared_sieve(limit).primes_upto(limit)
    keep = np.ones(len(primes), dtype=bool)
    for d in deltas:
        vals = np.array([kronecker_symbol(d, int(p)) for p in primes], dtype=np.int8)
        keep &= vals != 1
    return [int(p) for p in primes[keep]]


def _subfield_census_products(deltas: tuple[int, ...], y: int, shards: int = 1):
    """Squarefree products q <= y of primes nonsplit in every field, as
    (q, parity) pairs; q = 1 included."""
    qs = _nonsplit_primes(deltas, y)
    buckets: list[list[tuple[int, int]]] = [[] for _ in range(max(1, shards))]
    buckets[0].append((1, 0))

    def rec(i, prod, t):
        for k in range(i, len(qs)):
            p = qs[k]
            nxt = prod * p
            if nxt > y:
                break
            buckets[p % max(1, shards)].append((nxt, (t + 1) % 2))
            rec(k + 1, nxt, t + 1)

    rec(0, 1, 0)
    out = []
    for b in buckets:
        out.extend(b)
    return out


def check_independent(deltas) -> None:
    for d in deltas:
        if not arith.is_fundamental_discriminant(d):
            raise arith.InvalidDiscriminant(f"{d} is not a fundamental discriminant")
    if not independent_mod_squares(deltas):
        raise DependentDiscriminants(
            f"discriminants {tuple(deltas)} satisfy a multiplicative relation mod squares")


def census_quat_with_subfields(deltas, thresholds, shards: int = 1) -> CountTable:
    """Quaternion algebras over Q admitting every field Q(sqrt(delta_i)) as a
    maximal subfield, with |disc| <= x.  Ramification stays inside the places
    nonsplit in every field; when the real place qualifies (all delta_i < 0)
    it absorbs either parity of the finite part, otherwise only even sets
    count."""
    deltas = tuple(int(d) for d in deltas)
    check_independent(deltas)
    thresholds = sorted(int(x) for x in thresholds)
    y = isqrt(thresholds[-1])
    infinity_available = all(d < 0 for d in deltas)
    pairs = _subfield_census_products(deltas, y, shards=shards)
    if infinity_available:
        discs = sorted(q * q for q, _ in pairs)
    else:
        discs = sorted(q * q for q, t in pairs if t == 0)
    counts = _counts_at_thresholds(discs, [1] * len(discs), thresholds)
    return CountTable(tuple(thresholds), tuple(counts),
                      {"kind": "quat_subfields", "deltas": list(deltas)})


def count_quat_with_subfields(deltas, x: int, shards: int = 1) -> int:
    return census_quat_with_subfields(deltas, [x], shards=shards).counts[0]


# -- Dirichlet-coefficient oracle -------------------------------------------

def _multiply_factor(arr: list[int], terms, n_max: int) -> list[int]:
    out = arr.copy()
    for pw, c in terms:
        if c == 0:
            continue
        for i in range(1, n_max // pw + 1):
            if arr[i]:
                out[i * pw] += c * arr[i]
    return out


def dirichlet_coefficients_csa(m: int, n: int, n_max: int) -> list[int]:
    """Coefficients a_N (N <= n_max) of the generating Dirichlet series whose
    partial sums equal the N_{m,n} census: exact root-of-unity averaging of
    Euler products, with Ramanujan sums as the closed-form numerators."""
    if n % m != 0:
        raise ValueError("m must divide n")
    weights = [(d, n * n - n * n // d) for d in _divisors(m) if d > 1]
    min_w = min((w for _, w in weights), default=None)
    acc = [0] * (n_max + 1)
    for j in range(m):
        arr = [0] * (n_max + 1)
        arr[1] = 1
        if min_w is not None:
            max_p = int(round(n_max ** (1.0 / min_w))) + 1
            while max_p ** min_w > n_max:
                max_p -= 1
            if max_p >= 2:
                for p in shared_sieve(max_p).primes_upto(max_p):
                    p = int(p)
                    terms = [(p ** w, ramanujan_sum(d, j)) for d, w in weights
                             if p ** w <= n_max]
                    arr = _multiply_factor(arr, terms, n_max)
        real_factor = (1 + (-1) ** j) if m % 2 == 0 else 1
        if real_factor:
            for i in range(1, n_max + 1):
                acc[i] += real_factor * arr[i]
    for i in range(1, n_max + 1):
        if acc[i] % m != 0:
            raise InternalInconsistency(f"coefficient at {i} not divisible by {m}")
        acc[i] //= m
        if acc[i] < 0:
            raise InternalInconsistency(f"negative coefficient at {i}")
    return acc


def dirichlet_coefficients_embed(deltas, n_max: int) -> list[int]:
    """Coefficients a_N of the series counting quaternion algebras admitting
    all the given subfields, |disc| = N."""
    deltas = tuple(int(d) for d in deltas)
    check_independent(deltas)
    y = isqrt(n_max)
    primes = _nonsplit_primes(deltas, y)
    c0 = [0] * (n_max + 1)
    c0[1] = 1
    c1 = c0.copy()
    for p in primes:
        c0 = _multiply_factor(c0, [(p * p, 1)], n_max)
        c1 = _multiply_factor(c1, [(p * p, -1)], n_max)
    r1p = 1 if all(d < 0 for d in deltas) else 0
    out = [0] * (n_max + 1)
    for i in range(1, n_max + 1):
        num = (2 if r1p else 1) * c0[i] + (0 if r1p else 1) * c1[i]
        if num % 2 != 0:
            raise InternalInconsistency(f"odd numerator at {i}")
        out[i] = num // 2
        if out[i] < 0:
            raise InternalInconsistency(f"negative coefficient at {i}")
    return out


# -- splitting statistics ----------------------------------------------------

def splitting_density(place: PlaceQ, x: int) -> tuple[Fraction, Fraction, Fraction]:
    """Empirical (split, inert, ramified) frequencies of a place over all
    fundamental |delta| <= x, as exact fractions summing to one."""
    if x < 100:
        raise ValueError("x must be >= 100")
    deltas = fundamental_discriminants(x)
    total = len(deltas)
    if place.is_infinite:
        split = int((deltas > 0).sum())
        return (Fraction(split, total), Fraction(0), Fraction(total - split, total))
    kv = _kronecker_vec(place.p, deltas)
    split = int((kv == 1).sum())
    inert = int((kv == -1).sum())
    ram = total - split - inert
    return (Fraction(split, total), Fraction(inert, total), Fraction(ram, total))


def smallest_inert_prime(field: QuadraticField) -> int:
    """Least rational prime inert in the field."""
    limit = 64
    while True:
        for p in shared_sieve(limit).primes_upto(limit):
            if splitting(field, PlaceQ.finite(int(p))) is SplittingType.INERT:
                return int(p)
        limit *= 4


def smallest_inert_stats(x: int) -> dict:
    """Empirical view of the effective-Chebotarev exponent: the maximum of
    log(p)/log(d_L) over fundamental |delta| <= x, p the least inert prime."""
    import math

    deltas = fundamental_discriminants(x)
    best = (0.0, 0, 0)
    for d in deltas.tolist():
        f = QuadraticField(int(d))
        p = smallest_inert_prime(f)
        ratio = math.log(p) / math.log(abs(d)) if abs(d) > 1 else 0.0
        if ratio > best[0]:
            best = (ratio, int(d), p)
    return {"max_ratio": best[0], "delta": best[1], "prime": best[2], "x": x}


def count_squarefree(x: int) -> int:
    return arith.count_squarefree(x)
