"""Exact unramified local computations: equivariant homomorphism counts into
kernel subgroups, Frobenius fixed points on component groups, and the integer
coefficients of truncated local Euler factors.

The residue field of the base has q = p^k elements; the splitting extension is
unramified of degree f, the multiplicative order of the chosen Frobenius
element.  A character chi of the kernel's lattice pairs with the Frobenius
through the dual map chi -> q*chi - Fr^{-1}(chi); counting is done with exact
cokernel orders, with brute-force enumeration as the independent oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import EnumerationCapError, SpecValidationError
from .intlinalg import (
    DEFAULT_ENUMERATION_CAP,
    IntMatrix,
    finite_cokernel_order,
    induced_endomorphism,
    lattice_quotient,
    torsion_elements,
    unimodular_inverse,
)
from .orbits import FiberTransport

DEFAULT_VECTOR_CAP = 10**6


def _prime_power_split(q):
    if q < 2:
        raise SpecValidationError(f"q: {q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    rest = q
    while rest % p == 0:
        rest //= p
    if rest != 1:
        raise SpecValidationError(f"q: {q} is not a prime power")
    return p


@dataclass(frozen=True)
class LocalData:
    """One unramified place: residue size q = p^k and a Frobenius element."""

    q: int
    p: int
    frobenius: int
    f: int


def make_local_data(analysis, q, frobenius_index=0):
    p = _prime_power_split(q)
    if not 0 <= frobenius_index < analysis.spec.order:
        raise SpecValidationError(f"frobenius: element index {frobenius_index} out of range")
    return LocalData(q=q, p=p, frobenius=frobenius_index,
                     f=analysis.spec.element_order(frobenius_index))


@dataclass(frozen=True)
class ConductorVector:
    """Nonnegative exponent per distinct coweight; |c| weights by multiplicity."""

    entries: tuple

    def weighted_size(self, multiplicity):
        return sum(c * m for c, m in zip(self.entries, multiplicity))


@dataclass(frozen=True)
class EulerFactorTruncation:
    """Coefficient of q^{-s e} for every exponent e up to the cap."""

    coefficients: tuple  # coefficients[e] for e = 0..cap
    cap: int

    def coefficient(self, e):
        return self.coefficients[e]


class LocalCalculator:
    """Local-factor computations bound to one validated torus input."""

    def __init__(self, analysis):
        self.analysis = analysis
        self.lambda_ = analysis.lambda_invariant()

    # -- plumbing ---------------------------------------------------------

    def _check_coprime(self, local):
        if gcd(local.q, self.lambda_) != 1:
            raise SpecValidationError(
                f"q not coprime to lambda: gcd({local.q}, {self.lambda_}) != 1")

    def _frobenius_inverse(self, local):
        return unimodular_inverse(self.analysis.spec.group_elements[local.frobenius])

    def _dual_map(self, local):
        """q * id - Fr^{-1} on the ambient lattice."""
        n = self.analysis.spec.n
        ainv = self._frobenius_inverse(local)
        return IntMatrix.from_rows(
            [[local.q * int(i == j) - ainv.entries[i][j] for j in range(n)] for i in range(n)],
            cols=n,
        )

    def frobenius_fixes(self, local, entries):
        perm = self.analysis.coweights.action[local.frobenius]
        return all(entries[perm[i]] == entries[i] for i in range(len(entries)))

    def _orbit_min(self, local, entries):
        perm = self.analysis.coweights.action[local.frobenius]
        out = list(entries)
        for cycle in _cycles(perm):
            low = min(entries[i] for i in cycle)
            for i in cycle:
                out[i] = low
        return tuple(out)

    # -- counts -----------------------------------------------------------

    def hom_count(self, diag, local):
        """Number of kernel points z with Fr z = z^q, by exact cokernel order."""
        self._check_coprime(local)
        combined = diag.defining_rows.stack(self._dual_map(local).transpose())
        order = finite_cokernel_order(self.analysis.spec.n, combined)
        if order is None:
            raise AssertionError("infinite cokernel: free-part injectivity violated")
        return order

    def hom_count_parts(self, diag, local):
        """(torsion cokernel order, free cokernel order); product equals hom_count."""
        self._check_coprime(local)
        phi = self._dual_map(local)
        quot = diag.quotient
        endo = induced_endomorphism(quot, phi)
        factors = endo.moduli
        r = len(factors)
        image_rows = [tuple(endo.matrix[j][i] for j in range(r)) for i in range(r)]
        modulus_rows = [tuple(d * int(i == j) for j in range(r)) for i, d in enumerate(factors)]
        torsion = finite_cokernel_order(
            r, IntMatrix.from_rows(image_rows + modulus_rows, cols=r))
        free = self._free_block_cokernel(quot, phi)
        return torsion, free

    def _free_block_cokernel(self, quot, phi):
        w = quot._u @ phi @ unimodular_inverse(quot._u)
        free = quot.free_positions
        block = IntMatrix.from_rows(
            [[w.entries[i][j] for j in free] for i in free], cols=len(free))
        order = finite_cokernel_order(len(free), block.transpose())
        if order is None:
            raise AssertionError("infinite cokernel: free-part injectivity violated")
        return order

    def hom_count_oracle(self, diag, local, cap=DEFAULT_ENUMERATION_CAP):
        """Brute force: enumerate the (q^f - 1)-torsion and test Fr z = z^q pointwise."""
        self._check_coprime(local)
        n = self.analysis.spec.n
        order_n = local.q ** local.f - 1
        scaled = IntMatrix.from_rows(
            [[order_n * int(i == j) for j in range(n)] for i in range(n)], cols=n)
        quot = lattice_quotient(n, diag.defining_rows.stack(scaled))
        factors = quot.group.invariant_factors
        reps = [quot.from_coords(tuple(int(k == j) for k in range(len(factors))))
                for j in range(len(factors))]
        ainv = self._frobenius_inverse(local)
        moved = [quot.to_coords(ainv.apply(rep)) for rep in reps]

        def value(point, coords):
            return sum(Fraction(a * b, d) for a, b, d in zip(point, coords, factors))

        count = 0
        for point in torsion_elements(quot.group, cap):
            ok = True
            for j in range(len(factors)):
                lhs = value(point, moved[j])
                rhs = Fraction(local.q * point[j], factors[j])
                if (lhs - rhs) % 1 != 0:
                    ok = False
                    break
            if ok:
                count += 1
        return count

    def a_count(self, s, local):
        """Fixed points of y -> Fr(y^q) on the component group of the kernel of S."""
        if not self.frobenius_fixes(local, s.counts):
            raise SpecValidationError("frobenius does not fix the sub-multiset")
        diag = self.analysis.diag_group(s)
        transport = FiberTransport(self.analysis, local.frobenius, s)
        factors = diag.pi0.invariant_factors
        count = 0
        for y in torsion_elements(diag.pi0):
            powered = tuple((c * local.q) % d for c, d in zip(y, factors))
            if transport.apply(powered) == tuple(y):
                count += 1
        return count

    def a_count_via_cokernel(self, s, local):
        """Torsion-part cokernel order of the dual map; the classical route."""
        if not self.frobenius_fixes(local, s.counts):
            raise SpecValidationError("frobenius does not fix the sub-multiset")
        torsion, _ = self.hom_count_parts(self.analysis.diag_group(s), local)
        return torsion

    # -- Euler factor coefficients -----------------------------------------

    def _diag_at_level(self, entries, level):
        support = tuple(i for i, c in enumerate(entries) if c <= level)
        return self.analysis.diag_for_support(support)

    def pi_leq(self, c, local):
        """Count of parameters with conductor at most c, for Frobenius-fixed c."""
        entries = tuple(c.entries) if isinstance(c, ConductorVector) else tuple(c)
        self.analysis._require_faithful()
        self._check_coprime(local)
        if not self.frobenius_fixes(local, entries):
            raise SpecValidationError("conductor vector is not fixed by the Frobenius")
        return self._pi_leq_fixed(entries, local)

    def _pi_leq_fixed(self, entries, local):
        if any(x < 0 for x in entries):
            return 0
        result = self.hom_count(self._diag_at_level(entries, 0), local)
        k = 1
        while True:
            diag = self._diag_at_level(entries, k)
            if diag.is_trivial:
                break
            result *= local.p ** diag.dimension
            k += 1
        return result

    def _pi_leq_reduced(self, entries, local):
        # non-fixed vectors reduce to their orbit-wise minimum
        if any(x < 0 for x in entries):
            return 0
        return self._pi_leq_fixed(self._orbit_min(local, entries), local)

    def pi_eq(self, c, local):
        """Count of parameters with conductor exactly c, by inclusion-exclusion.

        Zero when c is not Frobenius-fixed.  The alternating sum runs over
        decrement patterns on distinct coweights: repeated copies of a coweight
        share one entry, and each decremented coweight contributes one sign.
        """
        entries = tuple(c.entries) if isinstance(c, ConductorVector) else tuple(c)
        self.analysis._require_faithful()
        self._check_coprime(local)
        if not self.frobenius_fixes(local, entries):
            return 0
        total = 0
        for pattern in itertools.product((0, 1), repeat=len(entries)):
            lowered = tuple(x - b for x, b in zip(entries, pattern))
            term = self._pi_leq_reduced(lowered, local)
            total += -term if sum(pattern) % 2 else term
        return total

    def local_factor(self, local, cap, vector_cap=DEFAULT_VECTOR_CAP):
        """Truncated coefficient table: entry e sums pi_eq over fixed c with |c| = e."""
        self.analysis._require_faithful()
        self._check_coprime(local)
        perm = self.analysis.coweights.action[local.frobenius]
        cycles = _cycles(perm)
        weights = [sum(self.analysis.coweights.multiplicity[i] for i in cycle)
                   for cycle in cycles]
        count = 1
        for w in weights:
            count *= cap // w + 1
            if count > vector_cap:
                raise EnumerationCapError(
                    f"enumeration too large: more than {vector_cap} conductor vectors")
        coefficients = [0] * (cap + 1)
        for assignment in itertools.product(*(range(cap // w + 1) for w in weights)):
            e = sum(a * w for a, w in zip(assignment, weights))
            if e > cap:
                continue
            entries = [0] * len(perm)
            for value, cycle in zip(assignment, cycles):
                for i in cycle:
                    entries[i] = value
            coefficients[e] += self.pi_eq(tuple(entries), local)
        return EulerFactorTruncation(coefficients=tuple(coefficients), cap=cap)


def _cycles(perm):
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        j = perm[start]
        while j != start:
            cycle.append(j)
            seen[j] = True
            j = perm[j]
        out.append(tuple(cycle))
    return out
