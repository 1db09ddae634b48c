"""Placement delivery arrays: parsing, validation, star classification, reduction.

An F x K array over stars and integers drives a coded caching scheme: a star
at (j, k) means user k caches packet j of every file, an integer s means user
k recovers packet j from broadcast slot s. The array is valid when

  C1: every column contains the same number of stars (called Z),
  C2: every integer in [0, S) occurs at least once,
  C3: two cells holding the same integer sit in distinct rows and distinct
      columns, and both cross positions hold stars.

A star is "useful" when some integer occurs both in its row and in its
column; it then sits inside that integer's subarray, where it provides the
side information that lets a user cancel interference during delivery. All
other stars are useless: deleting them frees cache space without touching
any delivery slot. `reduce` replaces useless stars by blanks; blank-bearing
arrays arise only this way and are rejected by `validate`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final, Iterator

STAR: Final = "*"
BLANK: Final = "-"

# an entry is a nonnegative int, STAR, or BLANK
Entry = int | str
Position = tuple[int, int]  # (row, column)


class PdaError(Exception):
    """Base class for array handling failures."""


class ParseError(PdaError):
    """Malformed array text; carries the 1-based line and token column."""

    def __init__(self, message: str, line: int, column: int | None = None):
        at = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{message} ({at})")
        self.line = line
        self.column = column


class ValidationError(PdaError):
    """A defining condition failed.

    `condition` is "C1", "C2", "C3" or "blanks". For C3 failures `pair`
    holds the two offending positions (row-major scan order) and
    `subcondition` one of "same-row", "same-column", "first-cross-not-star",
    "second-cross-not-star".
    """

    def __init__(self, condition: str, message: str,
                 pair: tuple[Position, Position] | None = None,
                 subcondition: str | None = None):
        super().__init__(f"{condition}: {message}")
        self.condition = condition
        self.pair = pair
        self.subcondition = subcondition


class ReductionError(PdaError):
    """Reduction is only defined when every column loses the same star count."""


@dataclass
class Pda:
    """A rectangular grid of entries. Construction checks shape, not C1-C3."""

    grid: list[list[Entry]]

    def __post_init__(self):
        if not self.grid or not self.grid[0]:
            raise ValueError("grid must have at least one row and one column")
        width = len(self.grid[0])
        for j, row in enumerate(self.grid):
            if len(row) != width:
                raise ValueError(f"ragged grid: row {j} has {len(row)} entries, expected {width}")
            for k, e in enumerate(row):
                if e is STAR or e == STAR or e == BLANK:
                    continue
                if isinstance(e, int) and not isinstance(e, bool) and e >= 0:
                    continue
                raise ValueError(f"bad entry {e!r} at ({j}, {k})")

    @property
    def F(self) -> int:
        return len(self.grid)

    @property
    def K(self) -> int:
        return len(self.grid[0])

    def has_blanks(self) -> bool:
        return any(e == BLANK for row in self.grid for e in row)

    def star_positions(self) -> list[Position]:
        return [(j, k) for j, row in enumerate(self.grid)
                for k, e in enumerate(row) if e == STAR]

    def integer_cells(self) -> Iterator[tuple[int, int, int]]:
        """Yield (row, column, value) for integer entries in row-major order."""
        for j, row in enumerate(self.grid):
            for k, e in enumerate(row):
                if isinstance(e, int):
                    yield j, k, e


@dataclass(frozen=True)
class PdaParams:
    """Validated array parameters.

    K users (columns), F packets per file (rows), Z stars per column, S
    broadcast slots. `gain_profile[s]` is the occurrence count of integer s,
    i.e. how many users are served by slot s.
    """

    K: int
    F: int
    Z: int
    S: int
    gain_profile: tuple[int, ...]


def _parse_token(tok: str, line: int, column: int) -> Entry:
    if tok == STAR:
        return STAR
    if tok == BLANK:
        return BLANK
    if tok.isdigit():
        return int(tok)
    if tok[0] == "-" and tok[1:].isdigit():
        raise ParseError(f"negative integer {tok!r}", line, column)
    raise ParseError(f"malformed token {tok!r}", line, column)


def parse(text: str) -> Pda:
    """Parse array text. No condition checking; blanks are allowed.

    Format: first line `F K`, then F lines of K whitespace-separated tokens
    (`*` star, `-` blank, decimal integer). Lines starting with `#` and
    blank lines are skipped.
    """
    header: tuple[int, int] | None = None
    body: list[tuple[int, list[str]]] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 2 or not all(t.isdigit() for t in toks):
                raise ParseError("header must be two positive integers `F K`", lineno)
            f, k = int(toks[0]), int(toks[1])
            if f < 1 or k < 1:
                raise ParseError("F and K must be positive", lineno)
            header = (f, k)
            continue
        if len(body) == header[0]:
            raise ParseError(f"expected {header[0]} rows, found extra content", lineno)
        body.append((lineno, toks))
    if header is None:
        raise ParseError("missing header line", last_line or 1)
    f, k = header
    if len(body) != f:
        raise ParseError(f"expected {f} rows, found {len(body)}", last_line or 1)
    grid: list[list[Entry]] = []
    for lineno, toks in body:
        if len(toks) != k:
            raise ParseError(f"expected {k} tokens, found {len(toks)}", lineno,
                             column=min(len(toks) + 1, k + 1))
        grid.append([_parse_token(t, lineno, c) for c, t in enumerate(toks, start=1)])
    return Pda(grid)


def serialize(pda: Pda) -> str:
    """Render array text; parse(serialize(p)) == p."""
    tokens = [[str(e) for e in row] for row in pda.grid]
    width = max(len(t) for row in tokens for t in row)
    lines = [f"{pda.F} {pda.K}"]
    lines += [" ".join(t.rjust(width) for t in row) for row in tokens]
    return "\n".join(lines) + "\n"


def validate(pda: Pda) -> PdaParams:
    """Check C1-C3 and return the array parameters.

    S is inferred from content as max integer + 1. Raises ValidationError
    naming the violated condition; blank entries are rejected outright.
    """
    grid = pda.grid
    for j, k in ((j, k) for j, row in enumerate(grid) for k, e in enumerate(row) if e == BLANK):
        raise ValidationError("blanks", f"blank entry at ({j}, {k}); validate a blank-free array")

    star_counts = [sum(1 for j in range(pda.F) if grid[j][k] == STAR) for k in range(pda.K)]
    z = star_counts[0]
    for k, c in enumerate(star_counts):
        if c != z:
            raise ValidationError("C1", f"column 0 has {z} stars but column {k} has {c}")

    seen: dict[int, list[Position]] = {}
    for j, k, s in pda.integer_cells():
        positions = seen.setdefault(s, [])
        for j0, k0 in positions:
            pair = ((j0, k0), (j, k))
            if j0 == j:
                raise ValidationError("C3", f"integer {s} occurs twice in row {j} "
                                      f"at {pair}", pair, "same-row")
            if k0 == k:
                raise ValidationError("C3", f"integer {s} occurs twice in column {k} "
                                      f"at {pair}", pair, "same-column")
            if grid[j0][k] != STAR:
                raise ValidationError("C3", f"integer {s} at {pair}: cross cell "
                                      f"({j0}, {k}) holds {grid[j0][k]!r}, not a star",
                                      pair, "first-cross-not-star")
            if grid[j][k0] != STAR:
                raise ValidationError("C3", f"integer {s} at {pair}: cross cell "
                                      f"({j}, {k0}) holds {grid[j][k0]!r}, not a star",
                                      pair, "second-cross-not-star")
        positions.append((j, k))

    if not seen:
        raise ValidationError("C2", "no integer occurs in the array")
    s_count = max(seen) + 1
    for v in range(s_count):
        if v not in seen:
            raise ValidationError("C2", f"integer {v} never occurs "
                                  f"(values up to {s_count - 1} are present)")

    gain = tuple(len(seen[s]) for s in range(s_count))
    return PdaParams(K=pda.K, F=pda.F, Z=z, S=s_count, gain_profile=gain)


def integer_positions(pda: Pda, s: int) -> list[Position]:
    """All positions of integer s in row-major order; s must occur."""
    if not isinstance(s, int) or s < 0:
        raise ValueError(f"integer value must be a nonnegative int, got {s!r}")
    found = [(j, k) for j, k, v in pda.integer_cells() if v == s]
    if not found:
        raise ValueError(f"integer {s} out of range: it does not occur in the array")
    return found


@dataclass
class StarClassification:
    useful: set[Position]
    useless: set[Position]
    per_column_useless: list[int]


def classify_stars(pda: Pda) -> StarClassification:
    """Split stars into useful and useless.

    A star at (j, k) is useful iff some integer occurs both in row j and in
    column k. Presence is tracked with one bitmask per row and per column,
    so the test is a single AND per star. Expects a validated array; blank
    entries are ignored.
    """
    row_mask = [0] * pda.F
    col_mask = [0] * pda.K
    for j, k, s in pda.integer_cells():
        bit = 1 << s
        row_mask[j] |= bit
        col_mask[k] |= bit
    useful: set[Position] = set()
    useless: set[Position] = set()
    per_column = [0] * pda.K
    for j, k in pda.star_positions():
        if row_mask[j] & col_mask[k]:
            useful.add((j, k))
        else:
            useless.add((j, k))
            per_column[k] += 1
    return StarClassification(useful, useless, per_column)


def reduce(pda: Pda) -> tuple[Pda, int]:
    """Blank out the useless stars; returns (reduced array, per-column count).

    Requires every column to hold the same number of useless stars, so that
    the surviving array still supports a uniform cache budget. Integer
    entries are never touched.
    """
    cls = classify_stars(pda)
    counts = cls.per_column_useless
    lo, hi = min(counts), max(counts)
    if lo != hi:
        k_lo, k_hi = counts.index(lo), counts.index(hi)
        raise ReductionError(
            f"useless star count differs across columns: column {k_lo} has {lo}, "
            f"column {k_hi} has {hi}; reduction requires a uniform count")
    grid = [row[:] for row in pda.grid]
    for j, k in cls.useless:
        grid[j][k] = BLANK
    return Pda(grid), lo


def canonical_relabel(pda: Pda) -> Pda:
    """Rename integers to first-occurrence order (row-major scan).

    Two arrays are equal up to integer renaming iff their canonical
    relabelings are equal.
    """
    mapping: dict[int, int] = {}
    grid: list[list[Entry]] = []
    for row in pda.grid:
        out: list[Entry] = []
        for e in row:
            if isinstance(e, int):
                out.append(mapping.setdefault(e, len(mapping)))
            else:
                out.append(e)
        grid.append(out)
    return Pda(grid)
