"""Linear matroids over Q with exact rank computations, the base-polytope
minimum of the sup norm, and bias certificates.

The optimum value is computed from rank differences: the best ratio
(r(N) - r(N \\ A)) / |A| over nonempty subsets A of the ground set.  An
independent oracle recovers the same number from the polytope definition by
searching candidate levels and testing, with exact rational arithmetic,
whether some convex combination of basis indicators stays inside the box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import EnumerationCapError

ORACLE_GROUND_CAP = 10


class LinearMatroid:
    """Ground set of rational row vectors with a cached rank oracle."""

    def __init__(self, rows):
        self.ground = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if self.ground:
            self.ncols = len(self.ground[0])
            if any(len(row) != self.ncols for row in self.ground):
                raise ValueError("ragged rows")
        else:
            self.ncols = 0
        self._rank_cache = {}

    @property
    def size(self):
        return len(self.ground)

    def rank(self, indices):
        """Dimension of the span of the selected rows, by exact elimination."""
        key = frozenset(indices)
        cached = self._rank_cache.get(key)
        if cached is not None:
            return cached
        rows = [list(self.ground[i]) for i in sorted(key)]
        rank = 0
        for col in range(self.ncols):
            piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = 1 / rows[rank][col]
            for r in range(rank + 1, len(rows)):
                if rows[r][col] != 0:
                    f = rows[r][col] * inv
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
            rank += 1
        self._rank_cache[key] = rank
        return rank

    def full_rank(self):
        return self.rank(range(self.size)) == self.ncols


class RankOracleMatroid:
    """Abstract matroid given by an explicit rank function (test utility)."""

    def __init__(self, size, rank_fn):
        self.size = size
        self._fn = rank_fn
        self._rank_cache = {}

    def rank(self, indices):
        key = frozenset(indices)
        if key not in self._rank_cache:
            self._rank_cache[key] = self._fn(key)
        return self._rank_cache[key]


@dataclass(frozen=True)
class BiasCertificate:
    """Witness subset: every basis meets it in at least beta elements."""

    subset: tuple
    alpha: int
    beta: int

    @property
    def ratio(self):
        return Fraction(self.beta, self.alpha)


def _require_full_rank(matroid):
    if isinstance(matroid, LinearMatroid) and not matroid.full_rank():
        raise ValueError("not full rank")


def _subsets_by_size(universe):
    for size in range(1, len(universe) + 1):
        yield from itertools.combinations(universe, size)


def b_infinity(matroid):
    """Largest drop-rate of the rank, with a maximizing subset as certificate.

    Ties are broken by smallest subset size, then lexicographically.
    """
    if matroid.size == 0:
        raise ValueError("empty ground set")
    _require_full_rank(matroid)
    universe = tuple(range(matroid.size))
    total = matroid.rank(universe)
    best = None
    witness = None
    for subset in _subsets_by_size(universe):
        rest = tuple(i for i in universe if i not in subset)
        beta = total - matroid.rank(rest)
        ratio = Fraction(beta, len(subset))
        if best is None or ratio > best:
            best = ratio
            witness = BiasCertificate(subset=subset, alpha=len(subset), beta=beta)
    return best, witness


def is_biased(matroid, alpha, beta):
    """Whether some alpha-element subset meets every basis in >= beta elements."""
    if not 1 <= beta <= alpha <= matroid.size:
        raise ValueError("need 1 <= beta <= alpha <= ground size")
    universe = tuple(range(matroid.size))
    total = matroid.rank(universe)
    for subset in itertools.combinations(universe, alpha):
        rest = tuple(i for i in universe if i not in subset)
        if total - matroid.rank(rest) >= beta:
            return True, subset
    return False, None


def bases(matroid):
    """All maximal independent subsets, by exhaustive rank checks."""
    universe = tuple(range(matroid.size))
    total = matroid.rank(universe)
    return [b for b in itertools.combinations(universe, total) if matroid.rank(b) == total]


def b_infinity_oracle(matroid):
    """Minimum sup norm over the base polytope, straight from its definition.

    Searches the candidate levels beta/alpha and, for each, decides with an
    exact phase-one simplex whether some convex combination of basis
    indicators fits under the level.  Independent of the rank-difference
    formula used by b_infinity.
    """
    if matroid.size > ORACLE_GROUND_CAP:
        raise EnumerationCapError(
            f"instance too large: more than {ORACLE_GROUND_CAP} ground elements")
    _require_full_rank(matroid)
    m = matroid.size
    total = matroid.rank(range(m))
    indicators = [frozenset(b) for b in bases(matroid)]
    candidates = sorted({Fraction(beta, alpha)
                         for alpha in range(1, m + 1) for beta in range(0, total + 1)})
    lo, hi = 0, len(candidates) - 1
    if not _box_feasible(indicators, m, candidates[hi]):
        raise AssertionError("base polytope of a full-rank matroid cannot be empty")
    while lo < hi:
        mid = (lo + hi) // 2
        if _box_feasible(indicators, m, candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def _box_feasible(indicators, m, level):
    """Is there a convex combination x of the indicators with every x_i <= level?

    Phase-one simplex with Bland's rule on: sum(theta) + a = 1, and for each
    ground element i, sum(theta_B : i in B) + s_i = level; minimize a.
    """
    k = len(indicators)
    art = k + m
    nvars = k + m + 1
    rows = []
    rhs = []
    row0 = [Fraction(1)] * k + [Fraction(0)] * m + [Fraction(1)]
    rows.append(row0)
    rhs.append(Fraction(1))
    for i in range(m):
        row = [Fraction(1) if i in b else Fraction(0) for b in indicators]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        row += [Fraction(0)]
        rows.append(row)
        rhs.append(Fraction(level))
    basis = [art] + [k + i for i in range(m)]
    cost = [Fraction(0)] * nvars
    cost[art] = Fraction(1)
    # reduced cost row: z_j = c_j - sum over rows of c_basis * row; start value
    z = [cost[j] - rows[0][j] for j in range(nvars)]  # only row 0 has a costed basic var
    value = -rhs[0]
    while True:
        enter = next((j for j in range(nvars) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        best_ratio = None
        for r in range(len(rows)):
            if rows[r][enter] > 0:
                ratio = rhs[r] / rows[r][enter]
                if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[r] < basis[leave]):
                    best_ratio = ratio
                    leave = r
        if leave is None:
            raise AssertionError("phase-one objective is unbounded")
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        rhs[leave] /= piv
        for r in range(len(rows)):
            if r != leave and rows[r][enter] != 0:
                f = rows[r][enter]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[leave])]
                rhs[r] -= f * rhs[leave]
        if z[enter] != 0:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, rows[leave])]
            value -= f * rhs[leave]
        basis[leave] = enter
    return -value == 0


def max_common_independent(m1, m2):
    """Largest common independent set of two matroids (exhaustive; test utility)."""
    if m1.size != m2.size:
        raise ValueError("matroids must share a ground set")
    universe = tuple(range(m1.size))
    best = 0
    for size in range(len(universe), 0, -1):
        for subset in itertools.combinations(universe, size):
            if m1.rank(subset) == size and m2.rank(subset) == size:
                return size
    return best
