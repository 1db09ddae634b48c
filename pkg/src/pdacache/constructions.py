"""Generators for placement delivery arrays.

`construct` builds arrays from two nested families of subsets of a ground
set [0, H): rows are indexed by the b-subsets, columns by the r-subsets, and
a cell carries an integer exactly when its row and column subsets intersect
in `lam` elements. The integer is a pair made of the symmetric part
(union minus intersection) plus a second component that differs between the
two labeling rules; the choice of rule decides which stars end up useless.

`mn_pda` builds the classic single-family baseline (rows indexed by
t-subsets of the user set, a star wherever the user belongs to the row
subset). Every star of that array is useful.

Subsets are handled as bitmasks and enumerated in colexicographic order,
which for masks is plain numeric order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .pda import Pda, PdaParams, STAR, Entry

RULE_I: str = "I"
RULE_II: str = "II"


def comb(n: int, k: int) -> int:
    """Binomial coefficient with C(n, k) = 0 outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _subset_masks(h: int, t: int) -> list[int]:
    masks = [0]
    if t > 0:
        masks = [sum(1 << i for i in c) for c in combinations(range(h), t)]
    masks.sort()
    return masks


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def enumerate_subsets(h: int, t: int) -> list[tuple[int, ...]]:
    """All t-subsets of [0, h) in colexicographic order."""
    if not 0 <= t <= h:
        raise ValueError(f"subset size {t} out of range for ground set of {h}")
    return [_mask_to_tuple(m) for m in _subset_masks(h, t)]


@dataclass(frozen=True)
class ConstructionParams:
    """Ground set size H, column subset size r, row subset size b,
    intersection size lam, and labeling rule ("I" or "II")."""

    H: int
    r: int
    b: int
    lam: int
    rule: str

    def check(self) -> None:
        if self.rule not in (RULE_I, RULE_II):
            raise ValueError(f"rule must be {RULE_I!r} or {RULE_II!r}, got {self.rule!r}")
        if self.H > 64:
            raise ValueError(f"ground set size {self.H} exceeds 64 (bitmask width)")
        if not 0 < self.r < self.H:
            raise ValueError(f"need 0 < r < H, got r={self.r}, H={self.H}")
        if not 0 < self.b < self.H:
            raise ValueError(f"need 0 < b < H, got b={self.b}, H={self.H}")
        if self.lam < 1:
            raise ValueError(f"intersection size must be positive, got {self.lam}")
        if self.lam >= min(self.r, self.b):
            raise ValueError(
                f"need lam < min(r, b), got lam={self.lam}, r={self.r}, b={self.b}")
        if self.r + self.b > self.H + self.lam:
            raise ValueError(
                f"need r + b <= H + lam, got r+b={self.r + self.b}, "
                f"H+lam={self.H + self.lam}")


def construct(params: ConstructionParams) -> Pda:
    """Build the subset-intersection array for `params`.

    Integer labels are assigned in canonical order of the underlying
    (symmetric part, second component) bitmask pairs, so output is
    deterministic; any consumer that needs a different labeling can rename.
    """
    params.check()
    h, r, b, lam = params.H, params.r, params.b, params.lam
    rows = _subset_masks(h, b)
    cols = _subset_masks(h, r)
    cells: dict[tuple[int, int], tuple[int, int]] = {}
    for i, bm in enumerate(rows):
        for j, am in enumerate(cols):
            inter = am & bm
            if inter.bit_count() != lam:
                continue
            sym = (am | bm) & ~inter
            second = inter if params.rule == RULE_I else am & ~bm
            cells[(i, j)] = (sym, second)
    ids = {lab: n for n, lab in enumerate(sorted(set(cells.values())))}
    grid: list[list[Entry]] = [[STAR] * len(cols) for _ in rows]
    for (i, j), lab in cells.items():
        grid[i][j] = ids[lab]
    return Pda(grid)


def predicted_params(params: ConstructionParams) -> PdaParams:
    """Closed-form parameters the constructed array must validate to."""
    params.check()
    h, r, b, lam = params.H, params.r, params.b, params.lam
    k = comb(h, r)
    f = comb(h, b)
    z = f - comb(r, lam) * comb(h - r, b - lam)
    sym = r + b - 2 * lam
    if params.rule == RULE_I:
        s = comb(h, sym) * comb(h - sym, lam)
        gain = comb(sym, r - lam)
    else:
        s = comb(h, sym) * comb(sym, r - lam)
        gain = comb(h - sym, lam)
    return PdaParams(K=k, F=f, Z=z, S=s, gain_profile=(gain,) * s)


def mn_pda(k_users: int, t: int) -> Pda:
    """Baseline array: rows are the t-subsets of the user set [0, K).

    Cell (T, k) is a star iff k is in T, otherwise the colex index of
    T + {k} among the (t+1)-subsets. Validates to
    (K, C(K,t), C(K-1,t-1), C(K,t+1)) and has no useless stars.
    """
    if not 0 < t < k_users:
        raise ValueError(f"need 0 < t < K, got t={t}, K={k_users}")
    rows = _subset_masks(k_users, t)
    bigger = {m: n for n, m in enumerate(_subset_masks(k_users, t + 1))}
    grid: list[list[Entry]] = []
    for tm in rows:
        grid.append([STAR if tm >> k & 1 else bigger[tm | 1 << k]
                     for k in range(k_users)])
    return Pda(grid)
