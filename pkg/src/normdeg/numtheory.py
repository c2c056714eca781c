"""Integer arithmetic: factorization, divisor functions, primes, exact ratios.

All functions are pure and exact; no floating point is used anywhere.
ExactRatio is the stdlib Fraction, which already guarantees reduced form
and a positive denominator.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .errors import SieveExhaustedError

# Exact rational values used throughout the package.
ExactRatio = Fraction

_TRIAL_LIMIT = 10**6
# Deterministic Miller-Rabin witness set, valid far beyond 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def ratio(num: int, den: int = 1) -> Fraction:
    """Exact reduced fraction num/den."""
    return Fraction(num, den)


def format_ratio(q: Fraction) -> str:
    """Render a ratio as 'num/den', denominator always present."""
    return f"{q.numerator}/{q.denominator}"


def parse_ratio(text: str) -> Fraction:
    """Parse 'a/b' or a bare integer into an exact ratio."""
    parts = text.strip().split("/")
    if len(parts) == 1:
        return Fraction(int(parts[0]))
    if len(parts) == 2:
        return Fraction(int(parts[0]), int(parts[1]))
    raise ValueError(f"not a ratio: {text!r}")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = 2
        y = 2
        d = 1
        q = 1
        ys = x
        m = 128
        while d == 1:
            x = y
            for _ in range(m):
                y = (y * y + c) % n
            k = 0
            while k < m and d == 1:
                ys = y
                for _ in range(min(m, m - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                d = math.gcd(q, n)
        if d == n:
            # backtrack one step at a time
            d = 1
            y = ys
            while d == 1:
                y = (y * y + c) % n
                d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1  # cycle degenerated; retry with the next polynomial


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs with primes increasing.

    Trial division up to 10**6, then Pollard rho with Miller-Rabin on the
    remaining cofactor. factorize(1) == [].
    """
    if n < 1:
        raise ValueError(f"factorize requires a positive integer, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    # wheel over residues coprime to 30
    d = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d <= _TRIAL_LIMIT:
        while n % d == 0:
            n //= d
            out[d] = out.get(d, 0) + 1
        d += increments[i]
        i = (i + 1) & 7
    if n > 1:
        if d * d > n:
            out[n] = out.get(n, 0) + 1  # cofactor has no divisor <= sqrt, prime
        else:
            _factor_into(n, out)
    return sorted(out.items())


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        pk = 1
        new = []
        for _ in range(e):
            pk *= p
            new.extend(d * pk for d in divs)
        divs.extend(new)
    return sorted(divs)


def tau(n: int) -> int:
    """Number of divisors of n."""
    out = 1
    for _, e in factorize(n):
        out *= e + 1
    return out


def sigma(n: int) -> int:
    """Sum of divisors of n."""
    out = 1
    for p, e in factorize(n):
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def gcd_divisor_sum(n: int, r: int) -> int:
    """Sum of gcd(k, r) over all divisors k of n."""
    return sum(math.gcd(k, r) for k in divisors(n))


class _PrimeCache:
    """Grow-only sieve of consecutive primes, safe for concurrent readers."""

    _HARD_LIMIT = 1 << 26

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._limit = 0
        self._primes: list[int] = []

    def _grow(self, limit: int) -> None:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0] = sieve[1] = 0
        for i in range(2, math.isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
        self._primes = [i for i in range(limit + 1) if sieve[i]]
        self._limit = limit

    def take(self, start_index: int, count: int) -> list[int]:
        if start_index < 0 or count < 0:
            raise ValueError("prime indices must be nonnegative")
        need = start_index + count
        with self._lock:
            while len(self._primes) < need:
                if self._limit >= self._HARD_LIMIT:
                    raise SieveExhaustedError(
                        f"prime index {need - 1} beyond sieve bound {self._HARD_LIMIT}"
                    )
                self._grow(max(1 << 16, self._limit * 2))
            return self._primes[start_index : start_index + count]


_prime_cache = _PrimeCache()


def nth_primes(start_index: int, count: int) -> list[int]:
    """`count` consecutive primes starting at 0-based `start_index` (p_0 = 2)."""
    return _prime_cache.take(start_index, count)
