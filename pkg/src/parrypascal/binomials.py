"""Binomial coefficients of words (scattered-subword counts), exact and mod a prime."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    for d in range(3, math.isqrt(q) + 1, 2):
        if q % d == 0:
            return False
    return True


def _require_prime(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"modulus {q} is not prime")


@dataclass(frozen=True)
class ResidueSpec:
    """Select the entries congruent to ``r`` modulo the prime ``q``."""

    q: int = 2
    r: int = 1

    def __post_init__(self):
        _require_prime(self.q)
        if not 1 <= self.r < self.q:
            raise ValueError(f"residue must satisfy 1 <= r < q, got r={self.r}, q={self.q}")


def binom_words(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of occurrences of ``v`` as a scattered subword of ``u``.

    Runs ``binom(ua, vb) = binom(u, vb) + [a == b] binom(u, v)`` over the
    prefixes of ``u``, keeping one vector indexed by the prefixes of ``v``.
    """
    n = len(v)
    if n > len(u):
        return 0
    counts = [1] + [0] * n
    for a in u:
        for j in range(n, 0, -1):
            if v[j - 1] == a:
                counts[j] += counts[j - 1]
    return counts[n]


def binom_words_mod(u: Sequence[int], v: Sequence[int], q: int) -> int:
    _require_prime(q)
    n = len(v)
    if n > len(u):
        return 0
    counts = [1] + [0] * n
    for a in u:
        for j in range(n, 0, -1):
            if v[j - 1] == a:
                counts[j] = (counts[j] + counts[j - 1]) % q
    return counts[n] % q


def binom_row(u: Sequence[int], vs: Sequence[Sequence[int]], q: int | None = None) -> list[int]:
    """``[binom(u, v) for v in vs]`` sharing work between words with common prefixes.

    For each ``v`` the vector ``c_v[i] = binom(u[:i], v)`` is derived from the
    vector of ``v[:-1]``, so a prefix-closed list costs ``O(|u|)`` per word.
    """
    if q is not None:
        _require_prime(q)
    u = tuple(u)
    L = len(u)
    cache: dict[tuple[int, ...], list[int]] = {(): [1] * (L + 1)}

    def vector(v: tuple[int, ...]) -> list[int]:
        got = cache.get(v)
        if got is not None:
            return got
        # iterative descent: find the longest cached prefix first
        k = len(v)
        while v[:k] not in cache:
            k -= 1
        for end in range(k + 1, len(v) + 1):
            parent = cache[v[: end - 1]]
            a = v[end - 1]
            vec = [0] * (L + 1)
            for i in range(1, L + 1):
                x = vec[i - 1] + (parent[i - 1] if u[i - 1] == a else 0)
                vec[i] = x % q if q is not None else x
            cache[v[:end]] = vec
        return cache[v]

    out = []
    for v in vs:
        v = tuple(v)
        if len(v) > L:
            out.append(0)
        else:
            val = vector(v)[L]
            out.append(val % q if q is not None else val)
    return out


def lucas_binom_mod(m: int, n: int, p: int) -> int:
    """``C(m, n) mod p`` as the product of the digitwise binomials in base ``p``."""
    _require_prime(p)
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    result = 1
    while m or n:
        mi, ni = m % p, n % p
        if mi < ni:
            return 0
        result = result * math.comb(mi, ni) % p
        m //= p
        n //= p
    return result


MAX_BRUTE_FORCE_LENGTH = 20


def brute_force_count(u: Sequence, v: Sequence) -> int:
    """Count increasing index tuples ``i_1 < ... < i_k`` with ``u[i_j] == v[j]``."""
    if len(u) > MAX_BRUTE_FORCE_LENGTH:
        raise ValueError(f"|u| = {len(u)} exceeds the enumeration guard {MAX_BRUTE_FORCE_LENGTH}")
    v = tuple(v)
    return sum(
        1 for idx in itertools.combinations(range(len(u)), len(v)) if tuple(u[i] for i in idx) == v
    )
