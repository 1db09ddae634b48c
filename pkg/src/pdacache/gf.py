"""Table-driven arithmetic over GF(2^16), vectorized with numpy.

Elements are ints in [0, 65536). Addition is XOR. Multiplication goes
through exp/log tables built from a primitive polynomial; the exp table is
doubled so that log a + log b never needs a modulo. All array entries travel
as int64 so they can index the tables and XOR freely.
"""

from __future__ import annotations

import numpy as np

ORDER = 1 << 16
_PRIMITIVE_POLY = 0x1100B  # x^16 + x^12 + x^3 + x + 1

_EXP = np.zeros(2 * (ORDER - 1), dtype=np.int64)
_LOG = np.zeros(ORDER, dtype=np.int64)


def _init_tables() -> None:
    x = 1
    for i in range(ORDER - 1):
        _EXP[i] = x
        _LOG[x] = i
        x <<= 1
        if x & ORDER:
            x ^= _PRIMITIVE_POLY
    _EXP[ORDER - 1:] = _EXP[:ORDER - 1]


_init_tables()


def mul(a, b) -> np.ndarray:
    """Elementwise product with numpy broadcasting."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = _EXP[_LOG[a] + _LOG[b]]
    return np.where((a == 0) | (b == 0), 0, out)


def inv(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if np.any(a == 0):
        raise ZeroDivisionError("inverse of 0 in GF(2^16)")
    return _EXP[(ORDER - 1) - _LOG[a]]


def power(a: int, e: int) -> int:
    """Scalar a**e with a**0 == 1."""
    if e == 0:
        return 1
    if a == 0:
        return 0
    return int(_EXP[(int(_LOG[a]) * e) % (ORDER - 1)])


def matmul(a, b) -> np.ndarray:
    """Matrix product over the field: (m x n) @ (n x p)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    m, n = a.shape
    n2, p = b.shape
    if n != n2:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    out = np.zeros((m, p), dtype=np.int64)
    for i in range(m):
        prod = mul(a[i, :, None], b)
        out[i] = np.bitwise_xor.reduce(prod, axis=0) if n else 0
    return out


def solve(a, b) -> np.ndarray:
    """Solve a @ x = b for x; a must be square and nonsingular."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 1:
        b = b[:, None]
    m = a.shape[0]
    if a.shape != (m, m) or b.shape[0] != m:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    aug = np.concatenate([a, b], axis=1).copy()
    for col in range(m):
        nz = np.nonzero(aug[col:, col])[0]
        if nz.size == 0:
            raise ZeroDivisionError(f"singular matrix (no pivot in column {col})")
        piv = col + int(nz[0])
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        pval = int(aug[col, col])
        if pval != 1:
            aug[col] = mul(aug[col], inv(pval))
        rows = np.nonzero(aug[:, col])[0]
        rows = rows[rows != col]
        if rows.size:
            aug[rows] ^= mul(aug[rows, col][:, None], aug[col][None, :])
    return aug[:, m:]


def identity(m: int) -> np.ndarray:
    return np.eye(m, dtype=np.int64)
