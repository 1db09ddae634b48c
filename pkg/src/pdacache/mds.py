"""Systematic maximum-distance-separable erasure codec over GF(2^16).

An (n, k) codec turns k source payloads into n packets: packets 0..k-1 are
the sources, packets k..n-1 parity. Any k of the n packets reconstruct the
sources exactly. Payloads are processed as 16-bit big-endian symbols; an
odd-length payload is zero-padded to even and every emitted packet carries
the padded length, so a caller that needs the original length must record
it before encoding.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import gf


def _vandermonde(n: int, k: int) -> np.ndarray:
    v = np.zeros((n, k), dtype=np.int64)
    for i in range(n):
        for j in range(k):
            v[i, j] = gf.power(i, j)
    return v


def _to_symbols(payload: bytes) -> np.ndarray:
    if len(payload) & 1:
        payload = payload + b"\x00"
    return np.frombuffer(payload, dtype=">u2").astype(np.int64)


def _to_bytes(symbols: np.ndarray) -> bytes:
    return symbols.astype(">u2").tobytes()


class MdsCodec:
    """Erasure codec; `parity` is the (n-k) x k block of the systematic
    generator [I | parity^T]^T.

    The single-parity case is hard-coded as a plain XOR of the k sources.
    Larger parity blocks come from a Vandermonde matrix re-expressed over a
    systematic basis, which keeps every square parity submatrix invertible
    and hence the code MDS.
    """

    def __init__(self, n: int, k: int):
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
        if n > gf.ORDER - 1:
            raise ValueError(f"n={n} exceeds {gf.ORDER - 1} (field size limit)")
        self.n = n
        self.k = k
        self.parity = self._build_parity(n, k)

    @staticmethod
    def _build_parity(n: int, k: int) -> np.ndarray:
        m = n - k
        if m == 0:
            return np.zeros((0, k), dtype=np.int64)
        if m == 1:
            return np.ones((1, k), dtype=np.int64)
        v = _vandermonde(n, k)
        top_inv = gf.solve(v[:k], gf.identity(k))
        return gf.matmul(v[k:], top_inv)

    def encode(self, source: Sequence[bytes]) -> list[bytes]:
        """Produce the n packets for k equal-length source payloads."""
        if len(source) != self.k:
            raise ValueError(f"expected {self.k} source payloads, got {len(source)}")
        length = len(source[0])
        for i, p in enumerate(source):
            if len(p) != length:
                raise ValueError(f"payload {i} has length {len(p)}, expected {length}")
        syms = np.stack([_to_symbols(p) for p in source])
        parity = gf.matmul(self.parity, syms)
        packets = [_to_bytes(row) for row in syms]
        packets += [_to_bytes(row) for row in parity]
        return packets

    def decode(self, packets: Iterable[tuple[int, bytes]]) -> list[bytes]:
        """Reconstruct the k source payloads from any k (or more) packets.

        `packets` yields (index, payload) pairs. Sources present among the
        inputs are taken verbatim; each missing source is solved from the
        parity equations. Raises ValueError on duplicate indices, length
        mismatches, or fewer than k packets.
        """
        have: dict[int, bytes] = {}
        length = None
        for idx, payload in packets:
            if not 0 <= idx < self.n:
                raise ValueError(f"packet index {idx} out of range [0, {self.n})")
            if idx in have:
                raise ValueError(f"duplicate packet index {idx}")
            if length is None:
                length = len(payload)
            elif len(payload) != length:
                raise ValueError(f"packet {idx} has length {len(payload)}, expected {length}")
            have[idx] = payload
        if len(have) < self.k:
            raise ValueError(f"need at least {self.k} packets, got {len(have)}")
        if length is not None and length & 1:
            have = {i: p + b"\x00" for i, p in have.items()}

        present = sorted(i for i in have if i < self.k)
        missing = [i for i in range(self.k) if i not in have]
        if not missing:
            return [have[i] for i in range(self.k)]

        parity_idx = sorted(i for i in have if i >= self.k)[:len(missing)]
        rows = self.parity[[i - self.k for i in parity_idx]]
        rhs = np.stack([_to_symbols(have[i]) for i in parity_idx])
        if present:
            known = np.stack([_to_symbols(have[i]) for i in present])
            rhs = rhs ^ gf.matmul(rows[:, present], known)
        solved = gf.solve(rows[:, missing], rhs)

        out: list[bytes] = []
        fill = iter(range(len(missing)))
        for i in range(self.k):
            if i in have:
                out.append(have[i])
            else:
                out.append(_to_bytes(solved[next(fill)]))
        return out
