"""Exact linear algebra over a prime field, vectorized with int64 numpy.

Entries stay in [0, p); p must be below 2^31 so products of two residues
fit in int64 without overflow.  Pivoting is deterministic: the first
nonzero entry in the column, scanning down.
"""

from __future__ import annotations

import numpy as np

from .errors import BadRange, NotPrime

MAX_PRIME = 2**31 - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for everything below 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not prime")
    if p > MAX_PRIME:
        raise BadRange(f"prime {p} exceeds the int64-safe cap {MAX_PRIME}")
    return p


def as_residues(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def matmul_mod(a, b, p: int) -> np.ndarray:
    """a @ b mod p without int64 overflow (split b into 16-bit halves)."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    hi, lo = b >> 16, b & 0xFFFF
    return ((a @ hi % p) * (1 << 16) + a @ lo) % p


def rref_mod(a, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form; returns (matrix, rank, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank_mod(a, p: int) -> int:
    return rref_mod(a, p)[1]


def nullspace_mod(a, p: int) -> np.ndarray:
    """Matrix whose columns are a basis of the right kernel of a mod p."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    cols = a.shape[1]
    red, _, pivots = rref_mod(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-red[i, f]) % p
    return basis


def left_annihilator(b, p: int) -> np.ndarray:
    """Matrix whose rows span {c : c b = 0 mod p}."""
    b = np.atleast_2d(np.asarray(b, dtype=np.int64))
    return nullspace_mod(b.T, p).T


def solve_mod(a, b, p: int) -> np.ndarray:
    """Solve a x = b mod p for a with full column rank; b may be a matrix."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64)) % p
    b = np.asarray(b, dtype=np.int64) % p
    single = b.ndim == 1
    if single:
        b = b[:, None]
    m = a.shape[1]
    red, rank, pivots = rref_mod(np.hstack([a, b]), p)
    if any(pc >= m for pc in pivots):
        raise ArithmeticError("inconsistent linear system")
    if rank != m:
        raise ArithmeticError("coefficient matrix is column rank deficient")
    x = np.zeros((m, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = red[i, m:]
    return x[:, 0] if single else x
