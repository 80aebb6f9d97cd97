"""Assembly of the archimedean convergence matrices from block data, and the
bias-derived abscissa bounds that link them.

Block data describes how an m-dimensional representation splits over the real
points of a torus with n1 split, n2 compact, and n3 complex coordinate
factors: m1 and m2 rows of weights fixed by conjugation (plain and
sign-twisted), and m3 rows in swapped pairs, recorded as integer pairs
(b, b').  Every pair row must be genuinely non-fixed: some compact-factor
entry nonzero or some b different from b'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import IntMatrix
from .matroid import LinearMatroid, b_infinity


def _as_int_matrix(name, data, rows, cols):
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ValueError(f"dimension mismatch: {name} must be {rows}x{cols}")
    return IntMatrix.from_rows([[int(x) for x in r] for r in data], cols=cols)


@dataclass(frozen=True)
class ArchBlocks:
    """Validated block data for one real place."""

    n1: int
    n2: int
    n3: int
    m1: int
    m2: int
    m3: int
    A1: IntMatrix
    A2: IntMatrix
    A3: IntMatrix
    C: IntMatrix
    B1: IntMatrix
    B2: IntMatrix
    B3: tuple  # m3 rows of (b, b') integer pairs, n3 per row

    @staticmethod
    def from_dict(doc):
        try:
            n1, n2, n3 = (int(doc[k]) for k in ("n1", "n2", "n3"))
            m1, m2, m3 = (int(doc[k]) for k in ("m1", "m2", "m3"))
        except KeyError as missing:
            raise ValueError(f"dimension mismatch: missing size field {missing}") from None
        a1 = _as_int_matrix("A1", doc.get("A1", []), m1, n1)
        a2 = _as_int_matrix("A2", doc.get("A2", []), m2, n1)
        a3 = _as_int_matrix("A3", doc.get("A3", []), m3, n1)
        c = _as_int_matrix("C", doc.get("C", []), m3, n2)
        b1 = _as_int_matrix("B1", doc.get("B1", []), m1, n3)
        b2 = _as_int_matrix("B2", doc.get("B2", []), m2, n3)
        raw_b3 = doc.get("B3", [])
        if len(raw_b3) != m3 or any(len(r) != n3 for r in raw_b3):
            raise ValueError(f"dimension mismatch: B3 must be {m3}x{n3} pairs")
        b3 = tuple(
            tuple((int(p[0]), int(p[1])) for p in row) for row in raw_b3
        )
        blocks = ArchBlocks(n1, n2, n3, m1, m2, m3, a1, a2, a3, c, b1, b2, b3)
        blocks.validate()
        return blocks

    def validate(self):
        for i in range(self.m3):
            c_row = self.C.entries[i]
            pairs = self.B3[i]
            if not (any(x != 0 for x in c_row) or any(b != bp for b, bp in pairs)):
                raise ValueError(
                    f"B3/C row {i}: swapped-pair row needs a nonzero compact entry "
                    "or b != b'")

    def b3_plus(self):
        return IntMatrix.from_rows(
            [[b + bp for b, bp in row] for row in self.B3], cols=self.n3)

    def b3_minus(self):
        return IntMatrix.from_rows(
            [[b - bp for b, bp in row] for row in self.B3], cols=self.n3)


@dataclass(frozen=True)
class ArchMatrices:
    """The three assembled integer matrices, with the row-class split sizes."""

    M_re: IntMatrix
    M_int: IntMatrix
    M_prime: IntMatrix
    m1: int
    m2: int
    m3: int


def _hstack(*mats):
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("dimension mismatch: row counts differ")
    return IntMatrix.from_rows(
        [sum((list(m.entries[i]) for m in mats), []) for i in range(rows)],
        cols=sum(m.cols for m in mats),
    )


def assemble(blocks: ArchBlocks) -> ArchMatrices:
    """Stack the blocks into the real, integral, and combined matrices."""
    b3p = blocks.b3_plus()
    b3m = blocks.b3_minus()
    m_re = (
        _hstack(blocks.A1, blocks.B1)
        .stack(_hstack(blocks.A2, blocks.B2))
        .stack(_hstack(blocks.A3, b3p))
    )
    m_int = _hstack(blocks.C, b3m)

    zeros1 = IntMatrix.zeros(blocks.m1, blocks.n2)
    zeros2 = IntMatrix.zeros(blocks.m2, blocks.n2)
    neg_c = IntMatrix.from_rows(
        [[-x for x in row] for row in blocks.C.entries], cols=blocks.n2)
    plus_plus = IntMatrix.from_rows(
        [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(b3p.entries, b3m.entries)],
        cols=blocks.n3)
    plus_minus = IntMatrix.from_rows(
        [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(b3p.entries, b3m.entries)],
        cols=blocks.n3)
    m_prime = (
        _hstack(blocks.A1, zeros1, blocks.B1, blocks.B1)
        .stack(_hstack(blocks.A2, zeros2, blocks.B2, blocks.B2))
        .stack(_hstack(blocks.A3, blocks.C, plus_plus, plus_minus))
        .stack(_hstack(blocks.A3, neg_c, plus_minus, plus_plus))
    )
    return ArchMatrices(M_re=m_re, M_int=m_int, M_prime=m_prime,
                        m1=blocks.m1, m2=blocks.m2, m3=blocks.m3)


def _best_ratio(matrix, weight):
    """Max over nonempty row subsets of rank drop divided by total weight."""
    matroid = LinearMatroid(matrix.entries)
    if matroid.size == 0:
        return Fraction(0)
    universe = tuple(range(matroid.size))
    total = matroid.rank(universe)
    best = Fraction(0)
    for size in range(1, matroid.size + 1):
        for subset in itertools.combinations(universe, size):
            rest = tuple(i for i in universe if i not in subset)
            beta = total - matroid.rank(rest)
            denom = sum(weight(i) for i in subset)
            best = max(best, Fraction(beta, denom))
    return best


def arch_abscissa(mats: ArchMatrices) -> Fraction:
    """Convergence bound from weighted bias ratios of the two matrices.

    Rows among the first m1+m2 of M_re count once, swapped-pair rows twice;
    the integral matrix contributes half its plain bias ratio.
    """
    re_matroid = LinearMatroid(mats.M_re.entries)
    if mats.M_re.rows and not re_matroid.full_rank():
        raise ValueError("M_re rank deficient")
    split = mats.m1 + mats.m2
    best_re = _best_ratio(mats.M_re, lambda i: 1 if i < split else 2)
    best_int = _best_ratio(mats.M_int, lambda i: 1)
    return max(best_re, best_int / 2)


def check_domination(mats: ArchMatrices) -> bool:
    """Whether the abscissa bound is dominated by the combined matrix's optimum."""
    prime = LinearMatroid(mats.M_prime.entries)
    if not prime.full_rank():
        raise ValueError("M' rank deficient")
    value, _ = b_infinity(prime)
    return arch_abscissa(mats) <= value
