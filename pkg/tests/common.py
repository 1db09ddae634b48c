"""Shared fixtures and slow reference oracles for the test suite.

The 6x6 array below is the hand-checkable worked example used throughout:
it validates to (K, F, Z, S) = (6, 6, 2, 12), every slot serves two users,
and its six useless stars sit on the anti-diagonal. Expected values frozen
here were derived by hand from the array text.
"""

from __future__ import annotations

import random

from pdacache import (STAR, ConstructionParams, Pda, construct, mn_pda, parse)

SIX_BY_SIX_TEXT = """\
6 6
* 0 1 2  3  *
0 * 4 5  *  6
1 4 * *  7  8
2 5 * *  9 10
3 * 7 9  * 11
* 6 8 10 11 *
"""

SIX_BY_SIX_REDUCED_TEXT = """\
6 6
* 0 1 2  3  -
0 * 4 5  -  6
1 4 * -  7  8
2 5 - *  9 10
3 - 7 9  * 11
- 6 8 10 11 *
"""

# slot -> (row, user) contributor pairs, one 2-served XOR signal each
DELIVERY_TABLE_6X6 = {
    0: {(0, 1), (1, 0)},
    1: {(0, 2), (2, 0)},
    2: {(0, 3), (3, 0)},
    3: {(0, 4), (4, 0)},
    4: {(1, 2), (2, 1)},
    5: {(1, 3), (3, 1)},
    6: {(1, 5), (5, 1)},
    7: {(2, 4), (4, 2)},
    8: {(2, 5), (5, 2)},
    9: {(3, 4), (4, 3)},
    10: {(3, 5), (5, 3)},
    11: {(4, 5), (5, 4)},
}

# user -> rows cached under uncoded placement (star rows of each column)
CACHE_ROWS_6X6 = {0: {0, 5}, 1: {1, 4}, 2: {2, 3}, 3: {2, 3}, 4: {1, 4}, 5: {0, 5}}

# valid array whose useless stars are not uniform across columns ([1, 0, 1])
NONUNIFORM_USELESS_TEXT = """\
4 3
* 0 1
0 * *
1 2 *
* * 2
"""


def six_by_six() -> Pda:
    return parse(SIX_BY_SIX_TEXT)


def six_by_six_reduced() -> Pda:
    return parse(SIX_BY_SIX_REDUCED_TEXT)


def reference_accepts(pda: Pda) -> bool:
    """Quadratic acceptance oracle, straight from the three definitions.

    Scans every pair of integer cells for the cross-star condition instead
    of grouping by value; intended for grids up to about 10^4 cells.
    """
    if pda.has_blanks():
        return False
    star_counts = [sum(1 for j in range(pda.F) if pda.grid[j][k] == STAR)
                   for k in range(pda.K)]
    if len(set(star_counts)) != 1:
        return False
    cells = list(pda.integer_cells())
    values = {s for _, _, s in cells}
    if not values or values != set(range(max(values) + 1)):
        return False
    for a in range(len(cells)):
        j1, k1, s1 = cells[a]
        for b in range(a + 1, len(cells)):
            j2, k2, s2 = cells[b]
            if s1 != s2:
                continue
            if j1 == j2 or k1 == k2:
                return False
            if pda.grid[j1][k2] != STAR or pda.grid[j2][k1] != STAR:
                return False
    return True


def classification_by_subarrays(pda: Pda) -> tuple[set, set]:
    """Reference star split: materialize each integer's subarray.

    Integer s spans the rows and columns of its occurrences; every star
    inside that row/column product is useful. Quadratic and obvious.
    """
    rows_of: dict[int, set[int]] = {}
    cols_of: dict[int, set[int]] = {}
    for j, k, s in pda.integer_cells():
        rows_of.setdefault(s, set()).add(j)
        cols_of.setdefault(s, set()).add(k)
    stars = set(pda.star_positions())
    useful = set()
    for s in rows_of:
        for j, k in stars:
            if j in rows_of[s] and k in cols_of[s]:
                useful.add((j, k))
    return useful, stars - useful


def all_construction_params(max_h: int) -> list[ConstructionParams]:
    """Every generator-admissible (H, r, b, lam, rule) with H <= max_h."""
    out = []
    for h in range(2, max_h + 1):
        for r in range(1, h):
            for b in range(1, h):
                for lam in range(1, min(r, b)):
                    if r + b <= h + lam:
                        out.append(ConstructionParams(h, r, b, lam, "I"))
                        out.append(ConstructionParams(h, r, b, lam, "II"))
    return out


def sample_arrays() -> list[Pda]:
    """A battery of small valid arrays of varied shape."""
    arrays = [six_by_six(), parse(NONUNIFORM_USELESS_TEXT)]
    arrays += [construct(p) for p in all_construction_params(5)]
    arrays += [mn_pda(k, t) for k in range(2, 6) for t in range(1, k)]
    return arrays


def mutate(pda: Pda, rng: random.Random) -> Pda:
    """Random single-cell edit; may or may not break validity."""
    grid = [row[:] for row in pda.grid]
    j = rng.randrange(pda.F)
    k = rng.randrange(pda.K)
    top = max((s for _, _, s in pda.integer_cells()), default=0)
    grid[j][k] = rng.choice([STAR] + list(range(top + 2)))
    return Pda(grid)
