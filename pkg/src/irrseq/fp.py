"""Arithmetic in the prime field F_p and dense linear algebra over it.

Field elements are plain Python ints reduced to the canonical range
[0, p).  Matrices and vectors are lists (of lists) of such ints.  The
module provides the 2-adic valuation, a deterministic primality test,
the Legendre symbol, square roots modulo p, and nullspace computation
for the linear systems that arise when factoring transformed
polynomials.
"""

from __future__ import annotations

import functools
import math

from .errors import NonResidueError

#: Largest supported modulus; intermediate products must fit comfortably
#: in Python ints and in the packed-multiplication kernels.
MAX_PRIME_BITS = 62

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def nu2(m: int) -> int:
    """Exponent of the largest power of 2 dividing m (m must be >= 1)."""
    if m < 1:
        raise ValueError(f"2-adic valuation requires a positive integer, got {m}")
    return (m & -m).bit_length() - 1


def _miller_rabin(n: int, base: int) -> bool:
    d = n - 1
    r = nu2(d)
    d >>= r
    x = pow(base % n, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


@functools.lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2**62.

    Trial division below 2**32, fixed Miller-Rabin bases above (known to
    be deterministic far beyond the 62-bit input range accepted here).
    """
    if n < 2:
        return False
    if n.bit_length() > MAX_PRIME_BITS:
        raise ValueError(f"modulus too large: {n} needs more than {MAX_PRIME_BITS} bits")
    for small in (2, 3, 5, 7, 11, 13):
        if n == small:
            return True
        if n % small == 0:
            return False
    if n < 1 << 32:
        f = 17
        limit = math.isqrt(n)
        while f <= limit:
            if n % f == 0:
                return False
            f += 2
        return True
    return all(_miller_rabin(n, b) for b in _MR_BASES if b < n)


def require_odd_prime(p: int) -> int:
    """Validate p as an odd prime modulus and return it."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise ValueError(f"prime modulus must be an int, got {type(p).__name__}")
    if p == 2:
        raise ValueError("characteristic 2 is not supported, the modulus must be odd")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p): 0 if p | a, +1 for squares, -1 otherwise."""
    ls = pow(a % p, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


def fp_sqrt(a: int, p: int) -> int:
    """Square root of a modulo the odd prime p.

    Requires a to be 0 or a quadratic residue; the smaller of the two
    roots is returned so the result is deterministic.  Tonelli-Shanks is
    used for p = 1 (mod 4), with the non-residue found by scanning
    upward from 2.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise NonResidueError(f"{a} is not a quadratic residue modulo {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


def _rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    # In-place reduced row echelon form; returns (matrix, pivot columns).
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, m) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return rows, pivots


def solve_nullspace(matrix: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right kernel of a matrix over F_p.

    Every returned vector v satisfies M v = 0, the vectors are linearly
    independent and span the kernel, and the basis is in the canonical
    reduced form (one vector per free column, free coordinate set to 1,
    ordered by free column index).  The empty list means the kernel is
    trivial.
    """
    if not matrix:
        return []
    ncols = len(matrix[0])
    if any(len(row) != ncols for row in matrix):
        raise ValueError("matrix rows must all have the same length")
    rows = [[v % p for v in row] for row in matrix]
    rref, pivots = _rref(rows, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, col in enumerate(pivots):
            vec[col] = (-rref[r][free]) % p
        basis.append(vec)
    return basis


def matvec(matrix: list[list[int]], vec: list[int], p: int) -> list[int]:
    """Matrix-vector product over F_p."""
    return [sum(a * b for a, b in zip(row, vec)) % p for row in matrix]
