"""End-to-end caching simulation driven by a placement delivery array.

Placement fills every user cache according to the star pattern; delivery
broadcasts one XOR signal per integer slot; each user peels its signals
with cached packets and reassembles its requested file bit-exactly.

Two placement modes:

  uncoded  the array must be blank-free and valid; each file splits into F
           raw packets and user k caches packet j of every file wherever
           (j, k) is a star. Memory ratio Z/F, delivery rate S/F.

  coded    the array is a reduced one (blanks where useless stars were
           deleted, the same count Z' in every column); each file splits
           into F - Z' source packets, expanded to F codeword packets by a
           systematic MDS code. Users cache codeword packets at the
           surviving stars. Memory ratio (Z-Z')/(F-Z'), rate S/(F-Z').

Files are zero-padded up to a whole number of packets (packet payloads are
16-bit aligned in coded mode); the pad is stripped on decode.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .mds import MdsCodec
from .pda import BLANK, STAR, Pda, Position, validate

UNCODED = "uncoded"
CODED = "coded"


@dataclass
class Library:
    """N equal-length files."""

    file_len: int
    files: list[bytes]

    def __post_init__(self):
        if self.file_len < 1 or not self.files:
            raise ValueError("library needs at least one nonempty file")
        for i, f in enumerate(self.files):
            if len(f) != self.file_len:
                raise ValueError(f"file {i} has length {len(f)}, expected {self.file_len}")

    @property
    def N(self) -> int:
        return len(self.files)

    @staticmethod
    def seeded(n_files: int, file_len: int, seed: int) -> "Library":
        rng = random.Random(seed)
        return Library(file_len, [rng.randbytes(file_len) for _ in range(n_files)])

    @staticmethod
    def from_dir(path: str | Path) -> "Library":
        files = sorted(p for p in Path(path).iterdir() if p.is_file())
        if not files:
            raise ValueError(f"no files in {path}")
        data = [p.read_bytes() for p in files]
        return Library(len(data[0]), data)


@dataclass
class Signal:
    slot: int
    payload: bytes
    contributors: tuple[Position, ...]  # (row, user) pairs, row-major order


@dataclass
class DeliveryTranscript:
    signals: list[Signal]

    def contributor_counts(self) -> dict[int, int]:
        return {sig.slot: len(sig.contributors) for sig in self.signals}


@dataclass
class PlacementState:
    mode: str
    pda: Pda
    stars_per_column: int       # Z of the unreduced array (blanks counted)
    blanks_per_column: int      # Z' (0 in uncoded mode)
    source_packets: int         # packets a file splits into before coding
    packet_len: int
    file_len: int
    library: Library
    server_packets: list[list[bytes]]   # per file, one payload per row
    cache_rows: list[frozenset[int]]    # per user
    slot_positions: list[list[Position]]
    memory_ratio: Fraction
    codec: MdsCodec | None

    @property
    def padded_file_len(self) -> int:
        return self.source_packets * self.packet_len

    def cached_packet(self, user: int, file_index: int, row: int) -> bytes:
        """Read one packet out of a user's cache; raises if it is not there."""
        if row not in self.cache_rows[user]:
            raise LookupError(
                f"user {user} holds no cached packet for row {row}: the array "
                f"does not support this decode")
        return self.server_packets[file_index][row]


def _split(padded: bytes, count: int, size: int) -> list[bytes]:
    return [padded[i * size:(i + 1) * size] for i in range(count)]


def _xor(chunks: list[bytes], size: int) -> bytes:
    acc = 0
    for c in chunks:
        acc ^= int.from_bytes(c, "big")
    return acc.to_bytes(size, "big")


def place(pda: Pda, library: Library, mode: str) -> PlacementState:
    """Run the placement phase; validates the array for the chosen mode."""
    if mode not in (UNCODED, CODED):
        raise ValueError(f"mode must be {UNCODED!r} or {CODED!r}, got {mode!r}")

    if mode == UNCODED:
        params = validate(pda)  # rejects blanks
        zprime = 0
    else:
        relaxed = Pda([[STAR if e == BLANK else e for e in row] for row in pda.grid])
        params = validate(relaxed)
        blank_counts = [sum(1 for j in range(pda.F) if pda.grid[j][k] == BLANK)
                        for k in range(pda.K)]
        lo, hi = min(blank_counts), max(blank_counts)
        if lo != hi:
            raise ValueError(
                f"coded placement needs a uniformly reduced array: column "
                f"{blank_counts.index(lo)} has {lo} blanks, column "
                f"{blank_counts.index(hi)} has {hi}")
        zprime = lo

    f, z, s = params.F, params.Z, params.S
    source = f - zprime
    packet_len = -(-library.file_len // source)
    if mode == CODED and packet_len & 1:
        packet_len += 1  # 16-bit symbols
    padded = source * packet_len

    codec = None
    server: list[list[bytes]] = []
    if mode == UNCODED:
        for data in library.files:
            server.append(_split(data.ljust(padded, b"\x00"), f, packet_len))
    else:
        codec = MdsCodec(f, source)
        for data in library.files:
            server.append(codec.encode(_split(data.ljust(padded, b"\x00"),
                                              source, packet_len)))

    cache_rows = [frozenset(j for j in range(f) if pda.grid[j][k] == STAR)
                  for k in range(pda.K)]
    slots: list[list[Position]] = [[] for _ in range(s)]
    for j, k, v in pda.integer_cells():
        slots[v].append((j, k))

    return PlacementState(
        mode=mode, pda=pda, stars_per_column=z, blanks_per_column=zprime,
        source_packets=source, packet_len=packet_len, file_len=library.file_len,
        library=library, server_packets=server, cache_rows=cache_rows,
        slot_positions=slots, memory_ratio=Fraction(z - zprime, f - zprime),
        codec=codec)


def deliver(state: PlacementState, requests: list[int]) -> DeliveryTranscript:
    """Broadcast phase: one signal per slot, in ascending slot order.

    `requests[k]` is the file index user k wants; repeats are fine.
    """
    if len(requests) != state.pda.K:
        raise ValueError(f"expected {state.pda.K} requests, got {len(requests)}")
    for k, d in enumerate(requests):
        if not 0 <= d < state.library.N:
            raise ValueError(f"request {d} of user {k} out of range [0, {state.library.N})")
    signals = []
    for s, positions in enumerate(state.slot_positions):
        payload = _xor([state.server_packets[requests[k]][j] for j, k in positions],
                       state.packet_len)
        signals.append(Signal(s, payload, tuple(positions)))
    return DeliveryTranscript(signals)


def decode_user(state: PlacementState, transcript: DeliveryTranscript,
                requests: list[int], user: int) -> bytes:
    """Reassemble the file requested by `user` from signals plus cache."""
    want = requests[user]
    recovered: dict[int, bytes] = {}
    for sig in transcript.signals:
        mine = [(j, k) for j, k in sig.contributors if k == user]
        if not mine:
            continue
        row = mine[0][0]
        chunks = [sig.payload]
        for j, k in sig.contributors:
            if (j, k) != (row, user):
                chunks.append(state.cached_packet(user, requests[k], j))
        recovered[row] = _xor(chunks, state.packet_len)

    if state.mode == UNCODED:
        parts = []
        for j in range(state.pda.F):
            if j in state.cache_rows[user]:
                parts.append(state.cached_packet(user, want, j))
            elif j in recovered:
                parts.append(recovered[j])
            else:
                raise LookupError(f"packet {j} neither cached nor delivered to user {user}")
        data = b"".join(parts)
    else:
        pieces = [(j, payload) for j, payload in recovered.items()]
        pieces += [(j, state.cached_packet(user, want, j))
                   for j in sorted(state.cache_rows[user])]
        sources = state.codec.decode(pieces)
        data = b"".join(sources)
    return data[:state.file_len]


def run_and_verify(pda: Pda, library: Library, requests: list[int],
                   mode: str) -> dict:
    """Place, deliver, decode every user, and report.

    The report carries exact rationals: `rate` is slots per source packet
    count and `memory_ratio` the cached fraction of a file.
    """
    state = place(pda, library, mode)
    transcript = deliver(state, requests)
    ok = all(decode_user(state, transcript, requests, k) == library.files[requests[k]]
             for k in range(pda.K))
    s = len(transcript.signals)
    return {
        "ok": ok,
        "rate": Fraction(s, state.source_packets),
        "memory_ratio": state.memory_ratio,
        "bytes_sent": s * state.packet_len,
        "mode": mode,
        "users": pda.K,
        "rows": pda.F,
        "slots": s,
        "stars_per_column": state.stars_per_column,
        "blanks_per_column": state.blanks_per_column,
        "source_packets": state.source_packets,
        "packet_len": state.packet_len,
        "padded_file_len": state.padded_file_len,
        "file_len": library.file_len,
    }
