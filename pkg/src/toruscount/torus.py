"""Tori presented by lattice data: the finite group action on the cocharacter
lattice, the multiset of coweights, the diagonalizable kernels it cuts out,
and the exact counting invariants derived from them.

Conventions: a group element is an n x n unimodular integer matrix acting on
column vectors of the rank-n lattice; coweights live in the same lattice and
transform by the same matrices.  A sub-multiset assigns to every distinct
coweight a count between 0 and its multiplicity; the kernel attached to it
depends only on which coweights remain in the complement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import NotFaithfulError, SchemaError, SpecValidationError
from .intlinalg import FinAbGroup, IntMatrix, LatticeQuotient, lattice_quotient

DEFAULT_GROUP_CAP = 10**4
DEFAULT_DISTINCT_CAP = 20


class TorusSpec:
    """Rank-n lattice with a finite group of unimodular automorphisms."""

    def __init__(self, n, generators, group_cap=DEFAULT_GROUP_CAP):
        if n < 1:
            raise SpecValidationError("dim: n = 0 rejected")
        self.n = n
        self.generators = tuple(generators)
        for idx, g in enumerate(self.generators):
            if g.rows != n or g.cols != n:
                raise SchemaError(f"generators[{idx}]: expected a {n}x{n} matrix")
            if not g.is_unimodular():
                raise SpecValidationError(f"generators[{idx}]: generator not unimodular")
        self.group_elements = self._closure(group_cap)
        self._index = {m.entries: i for i, m in enumerate(self.group_elements)}

    def _closure(self, cap):
        ident = IntMatrix.identity(self.n)
        elements = [ident]
        seen = {ident.entries}
        frontier = [ident]
        while frontier:
            nxt = []
            for e in frontier:
                for g in self.generators:
                    prod = e @ g
                    if prod.entries not in seen:
                        seen.add(prod.entries)
                        elements.append(prod)
                        nxt.append(prod)
                        if len(elements) > cap:
                            raise SpecValidationError(
                                f"generators: group closure cap exceeded ({cap})")
            frontier = nxt
        return tuple(elements)

    @property
    def order(self):
        return len(self.group_elements)

    @property
    def identity_index(self):
        return 0

    def element_index(self, matrix):
        try:
            return self._index[matrix.entries]
        except KeyError:
            raise SpecValidationError("matrix is not a group element") from None

    def compose(self, i, j):
        """Index of element_i @ element_j."""
        return self.element_index(self.group_elements[i] @ self.group_elements[j])

    def element_order(self, i):
        ident = IntMatrix.identity(self.n)
        power = self.group_elements[i]
        k = 1
        while power != ident:
            power = power @ self.group_elements[i]
            k += 1
        return k

    def word_to_index(self, word):
        """Resolve a product of generator indices (left to right) to an element index."""
        m = IntMatrix.identity(self.n)
        for w in word:
            if not 0 <= w < len(self.generators):
                raise SchemaError(f"generator index {w} out of range")
            m = m @ self.generators[w]
        return self.element_index(m)


class CoweightSystem:
    """Distinct coweights with multiplicities and the induced index permutations."""

    def __init__(self, spec, distinct, multiplicity):
        self.distinct = tuple(tuple(v) for v in distinct)
        self.multiplicity = tuple(multiplicity)
        self.m = sum(self.multiplicity)
        lookup = {}
        for i, v in enumerate(self.distinct):
            if v in lookup:
                raise SpecValidationError(f"coweights[{i}]: duplicate coweight {list(v)}")
            lookup[v] = i
        action = []
        for gi, g in enumerate(spec.group_elements):
            perm = []
            for i, v in enumerate(self.distinct):
                image = g.apply(v)
                j = lookup.get(image)
                if j is None or self.multiplicity[j] != self.multiplicity[i]:
                    raise SpecValidationError(
                        "coweights: coweight multiset not Galois-stable "
                        f"(element {gi} moves {list(v)} to {list(image)})")
                perm.append(j)
            action.append(tuple(perm))
        self.action = tuple(action)

    def __len__(self):
        return len(self.distinct)


@dataclass(frozen=True)
class SubMultiset:
    """Counts per distinct coweight; the multiplicity-weighted size is |S|."""

    counts: tuple

    @property
    def size(self):
        return sum(self.counts)


@dataclass(frozen=True, eq=False)
class DiagGroup:
    """Kernel subgroup cut out by the complement coweights, as lattice data."""

    defining_rows: IntMatrix
    quotient: LatticeQuotient

    @property
    def dimension(self):
        return self.quotient.group.free_rank

    @property
    def pi0(self):
        return FinAbGroup(self.quotient.group.invariant_factors, 0)

    @property
    def is_trivial(self):
        return self.dimension == 0 and self.pi0.is_trivial


class TorusAnalysis:
    """All invariants of one validated torus-plus-coweights input."""

    def __init__(self, spec, coweights):
        self.spec = spec
        self.coweights = coweights
        self._diag_cache = {}
        self._lambda = None

    # -- sub-multiset plumbing -------------------------------------------------

    def subsets(self):
        """Every sub-multiset, in lexicographic count-vector order."""
        ranges = [range(m + 1) for m in self.coweights.multiplicity]
        for counts in itertools.product(*ranges):
            yield SubMultiset(counts)

    def complement_support(self, s):
        return tuple(
            i for i, c in enumerate(s.counts) if c < self.coweights.multiplicity[i]
        )

    def act_on_subset(self, g_index, s):
        perm = self.coweights.action[g_index]
        counts = [0] * len(s.counts)
        for i, c in enumerate(s.counts):
            counts[perm[i]] = c
        return SubMultiset(tuple(counts))

    # -- kernels ---------------------------------------------------------------

    def diag_for_support(self, support):
        support = tuple(sorted(support))
        cached = self._diag_cache.get(support)
        if cached is None:
            rows = IntMatrix.from_rows(
                [self.coweights.distinct[i] for i in support], cols=self.spec.n
            )
            cached = DiagGroup(rows, lattice_quotient(self.spec.n, rows))
            self._diag_cache[support] = cached
        return cached

    def diag_group(self, s):
        return self.diag_for_support(self.complement_support(s))

    # -- invariants ------------------------------------------------------------

    def is_faithful(self):
        return self.diag_for_support(range(len(self.coweights))).is_trivial

    def _require_faithful(self):
        if not self.is_faithful():
            raise NotFaithfulError("not faithful")

    def invariant_A(self):
        """The conductor exponent with one maximizing sub-multiset as witness."""
        self._require_faithful()
        best = None
        witness = None
        for s in self.subsets():
            if s.size == 0:
                continue
            diag = self.diag_group(s)
            if diag.is_trivial:
                continue
            ratio = Fraction(diag.dimension + 1, s.size)
            if best is None or ratio > best:
                best = ratio
                witness = s
        return best, witness

    def sigma_set(self):
        """All nonempty sub-multisets attaining the exponent, trivial kernels included."""
        value, _ = self.invariant_A()
        out = []
        for s in self.subsets():
            if s.size == 0:
                continue
            diag = self.diag_group(s)
            if Fraction(diag.dimension + 1, s.size) == value:
                out.append(s)
        return out

    def lambda_invariant(self):
        if self._lambda is None:
            value = 1
            indices = range(len(self.coweights))
            for r in range(len(self.coweights) + 1):
                for support in itertools.combinations(indices, r):
                    value = lcm(value, self.diag_for_support(support).pi0.torsion_order)
            self._lambda = value
        return self._lambda

    def strata(self):
        """Partition of the attaining set by (kernel dimension, size)."""
        value, _ = self.invariant_A()
        out = {}
        for s in self.sigma_set():
            diag = self.diag_group(s)
            key = (diag.dimension, s.size)
            assert Fraction(key[0] + 1, key[1]) == value
            out.setdefault(key, []).append(s)
        return out

    def abscissa(self, variant):
        """Convergence abscissa: max of dim/|S| over the variant's admissible S."""
        if variant not in ("ramified", "archimedean"):
            raise ValueError("variant must be 'ramified' or 'archimedean'")
        self._require_faithful()
        best = Fraction(0)
        for s in self.subsets():
            if s.size == 0:
                continue
            diag = self.diag_group(s)
            if variant == "ramified":
                admissible = not diag.is_trivial
            else:
                admissible = diag.dimension >= 1
            if admissible:
                best = max(best, Fraction(diag.dimension, s.size))
        return best


def _require(condition, message):
    if not condition:
        raise SchemaError(message)


def load_spec(document, group_cap=DEFAULT_GROUP_CAP, distinct_cap=DEFAULT_DISTINCT_CAP):
    """Validate an input document and build the analysis object.

    Schema: {"dim": n, "generators": [n x n row-major int matrices],
    "coweights": [{"vector": [...], "multiplicity": k}, ...]}, plus optional
    keys consumed by other modules.  Raises SchemaError for shape problems and
    SpecValidationError for semantic ones.
    """
    _require(isinstance(document, dict), "document: expected a JSON object")
    _require("dim" in document, "dim: missing")
    n = document["dim"]
    _require(isinstance(n, int) and not isinstance(n, bool), "dim: expected an integer")
    if n < 1:
        raise SpecValidationError("dim: n = 0 rejected")

    raw_gens = document.get("generators", [])
    _require(isinstance(raw_gens, list), "generators: expected a list")
    generators = []
    for idx, g in enumerate(raw_gens):
        _require(
            isinstance(g, list) and all(isinstance(row, list) for row in g),
            f"generators[{idx}]: expected a row-major matrix",
        )
        _require(
            len(g) == n and all(len(row) == n for row in g),
            f"generators[{idx}]: expected a {n}x{n} matrix",
        )
        _require(
            all(isinstance(x, int) and not isinstance(x, bool) for row in g for x in row),
            f"generators[{idx}]: entries must be integers",
        )
        generators.append(IntMatrix.from_rows(g, cols=n))

    raw_cw = document.get("coweights")
    _require(isinstance(raw_cw, list), "coweights: expected a list")
    distinct = []
    multiplicity = []
    for idx, item in enumerate(raw_cw):
        _require(isinstance(item, dict) and "vector" in item,
                 f"coweights[{idx}]: expected an object with a 'vector'")
        vec = item["vector"]
        _require(
            isinstance(vec, list) and len(vec) == n
            and all(isinstance(x, int) and not isinstance(x, bool) for x in vec),
            f"coweights[{idx}].vector: expected {n} integers",
        )
        mult = item.get("multiplicity", 1)
        _require(isinstance(mult, int) and not isinstance(mult, bool),
                 f"coweights[{idx}].multiplicity: expected an integer")
        if mult < 1:
            raise SpecValidationError(f"coweights[{idx}].multiplicity: must be >= 1")
        distinct.append(tuple(vec))
        multiplicity.append(mult)

    if len(distinct) > distinct_cap:
        raise SpecValidationError(
            f"coweights: {len(distinct)} distinct coweights exceed the cap {distinct_cap}")

    spec = TorusSpec(n, generators, group_cap=group_cap)
    coweights = CoweightSystem(spec, distinct, multiplicity)
    return TorusAnalysis(spec, coweights)
