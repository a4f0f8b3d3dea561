"""The associated datum of an irreducible homogeneous bundle, two ways.

For a P-dominant highest weight lambda on X = G/P_J, every positive root
alpha outside the Levi produces one rational

    phi(alpha) = (lambda + rho, alpha) / (eta, alpha),

where eta is the minimal ample class (the sum of the fundamental weights on
the marked nodes).  The multiset of these values is the associated datum:
the bundle is Ulrich for eta exactly when the datum equals {1, ..., dim X}.

The generic construction above works for every family.  For B, C and D the
same multiset also comes in closed form, organized into matrix blocks P, Q
and R indexed by consecutive runs of marked nodes; the block shapes and
denominators depend on how the marked set meets the end of the diagram,
which is what `ClosedFormCase` classifies.  Type A has no closed form here
and is served by the generic construction only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .rootsys import (
    LieType,
    ParabolicSet,
    Root,
    RootSystem,
    Weight,
    check_nodes,
    pairing,
    phi_J_plus,
)


class UnsupportedCaseError(ValueError):
    """Raised when a closed-form construction is asked for where none exists."""


class ClosedFormCase(enum.Enum):
    BC_GENERAL = "bc-general"        # B/C, last marked node < n
    BC_LAST = "bc-last"              # B/C, last marked node = n
    D_INTERIOR = "d-interior"        # D, last marked node <= n-2
    D_SINGLE_SPIN = "d-single-spin"  # D, exactly one spin node marked
    D_BOTH_SPIN = "d-both-spin"      # D, both spin nodes marked
    GENERIC_ONLY = "generic-only"    # type A: no closed form


@dataclass(frozen=True)
class HighestWeight:
    """Coefficients a_i over the fundamental weights, plus the marked nodes.

    P-dominance (a_j >= 0 for every unmarked j) is enforced; marked
    coefficients may be any integer.
    """

    a: tuple[int, ...]
    nodes: ParabolicSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))
        if self.nodes.nodes[-1] > len(self.a):
            raise ValueError(
                f"marked node {self.nodes.nodes[-1]} exceeds weight length {len(self.a)}"
            )
        for j, coeff in enumerate(self.a, start=1):
            if coeff < 0 and j not in self.nodes:
                raise ValueError(
                    f"weight is not P-dominant: a_{j} = {coeff} on an unmarked node"
                )

    @property
    def rank(self) -> int:
        return len(self.a)

    def abar(self, k: int) -> int:
        """Shifted coefficient a_k + 1 (1-based)."""
        return self.a[k - 1] + 1


def minimal_ample_class(nodes: ParabolicSet, rank: int) -> Weight:
    """Indicator weight of the marked nodes: the minimal ample class on G/P_J."""
    if nodes.nodes[-1] > rank:
        raise ValueError(f"marked node {nodes.nodes[-1]} exceeds rank {rank}")
    return tuple(1 if j in nodes else 0 for j in range(1, rank + 1))


def phi_value(weight: HighestWeight, alpha: Root, system: RootSystem) -> Fraction:
    """(lambda + rho, alpha) / (eta, alpha) for one root outside the Levi."""
    shifted = tuple(c + 1 for c in weight.a)
    eta = minimal_ample_class(weight.nodes, system.rank)
    denom = pairing(eta, alpha, system)
    if denom == 0:
        raise ValueError(f"root {alpha} lies in the Levi subsystem")
    return pairing(shifted, alpha, system) / denom


@dataclass(frozen=True)
class DatumEntry:
    value: Fraction
    source: str


@dataclass(frozen=True)
class AssociatedDatum:
    """Datum entries frozen in (value, source) order; duplicates are kept."""

    entries: tuple[DatumEntry, ...]

    def values(self) -> list[Fraction]:
        return [e.value for e in self.entries]

    def sources_of(self, value: Fraction) -> list[str]:
        return [e.source for e in self.entries if e.value == value]

    def __len__(self) -> int:
        return len(self.entries)


def _freeze_entries(pairs: list[tuple[Fraction, str]]) -> AssociatedDatum:
    ordered = sorted(pairs, key=lambda p: (p[0], p[1]))
    return AssociatedDatum(tuple(DatumEntry(v, s) for v, s in ordered))


def datum_generic(weight: HighestWeight, system: RootSystem) -> AssociatedDatum:
    """One entry phi(alpha) per positive root outside the Levi."""
    if weight.rank != system.rank:
        raise ValueError(
            f"dimension mismatch: weight length {weight.rank}, rank {system.rank}"
        )
    entries = []
    for alpha in phi_J_plus(system, weight.nodes):
        label = "phi[" + ",".join(str(c) for c in alpha) + "]"
        entries.append((phi_value(weight, alpha, system), label))
    return _freeze_entries(entries)


@dataclass(frozen=True)
class CaseClassification:
    """Closed-form case tag plus the normalized marked set it applies to."""

    case: ClosedFormCase
    nodes: ParabolicSet
    swapped: bool  # True when the D spin swap n <-> n-1 was applied


def classify_case(lie_type: LieType, nodes: ParabolicSet) -> CaseClassification:
    """Decide which closed-form family serves (lie_type, nodes).

    For D with node n marked but not n-1, the diagram swap n <-> n-1 is an
    isomorphism of the underlying variety, so the marked set is normalized to
    end at n-1 and `swapped` records that the last two weight coefficients
    must be exchanged alongside.
    """
    n = lie_type.rank
    if nodes.nodes[-1] > n:
        raise ValueError(f"marked node {nodes.nodes[-1]} exceeds rank {n}")
    if lie_type.family == "A":
        return CaseClassification(ClosedFormCase.GENERIC_ONLY, nodes, False)
    if lie_type.family in ("B", "C"):
        case = ClosedFormCase.BC_LAST if nodes.nodes[-1] == n else ClosedFormCase.BC_GENERAL
        return CaseClassification(case, nodes, False)
    has_last = n in nodes
    has_prev = (n - 1) in nodes
    if has_last and has_prev:
        return CaseClassification(ClosedFormCase.D_BOTH_SPIN, nodes, False)
    if has_last:
        mirrored = tuple(sorted(d if d != n else n - 1 for d in nodes))
        return CaseClassification(ClosedFormCase.D_SINGLE_SPIN, ParabolicSet(mirrored), True)
    if has_prev:
        return CaseClassification(ClosedFormCase.D_SINGLE_SPIN, nodes, False)
    return CaseClassification(ClosedFormCase.D_INTERIOR, nodes, False)


def normalize_weight(weight: HighestWeight, lie_type: LieType) -> HighestWeight:
    """Apply the D spin swap to the weight when classify_case calls for it."""
    cls = classify_case(lie_type, weight.nodes)
    if not cls.swapped:
        return weight
    a = list(weight.a)
    a[-1], a[-2] = a[-2], a[-1]
    return HighestWeight(tuple(a), cls.nodes)


def epsilon_constant(family: str) -> Fraction:
    """Short-node constant for B (1/2) and C (1)."""
    if family == "B":
        return Fraction(1, 2)
    if family == "C":
        return Fraction(1)
    raise ValueError(f"epsilon constant is only defined for B and C, not {family!r}")


@dataclass(frozen=True)
class MatrixBlock:
    """One closed-form block: label, block indices, and its (u, v) -> value grid."""

    label: str
    i: int
    j: int | None
    entries: tuple[tuple[int, int, Fraction], ...]

    def value(self, u: int, v: int) -> Fraction:
        for uu, vv, val in self.entries:
            if (uu, vv) == (u, v):
                return val
        raise KeyError((u, v))

    @property
    def source_prefix(self) -> str:
        if self.j is None:
            return f"{self.label}[{self.i}]"
        return f"{self.label}[{self.i},{self.j}]"


@dataclass(frozen=True)
class DatumMatrices:
    """All closed-form blocks for one weight, plus the case they realize."""

    case: ClosedFormCase
    nodes: ParabolicSet
    blocks: tuple[MatrixBlock, ...]

    def flatten(self) -> AssociatedDatum:
        pairs = []
        for block in self.blocks:
            prefix = block.source_prefix
            for u, v, val in block.entries:
                pairs.append((val, f"{prefix}({u},{v})"))
        return _freeze_entries(pairs)

    def entry_count(self) -> int:
        return sum(len(b.entries) for b in self.blocks)


def _segment_sum(prefix: list[int], a: int, b: int) -> int:
    """Sum of abar_k over a <= k <= b, zero when the range is empty."""
    if b < a:
        return 0
    return prefix[b] - prefix[a - 1]


def datum_closed_form(weight: HighestWeight, system: RootSystem) -> DatumMatrices:
    """Evaluate the closed-form blocks for B, C and D marked sets.

    The construction runs on the normalized weight (D spin swap applied when
    needed).  Conventions throughout: d_0 = 0, d_{s+1} = n, abar_k = a_k + 1,
    and empty index ranges contribute nothing.
    """
    lie_type = system.lie_type
    if weight.rank != system.rank:
        raise ValueError(
            f"dimension mismatch: weight length {weight.rank}, rank {system.rank}"
        )
    cls = classify_case(lie_type, weight.nodes)
    if cls.case is ClosedFormCase.GENERIC_ONLY:
        raise UnsupportedCaseError(
            "type A has no closed-form datum; use datum_generic"
        )
    norm = normalize_weight(weight, lie_type)
    n = system.rank
    s = norm.nodes.s
    d = (0,) + norm.nodes.nodes + (n,)
    abar = [0] + [norm.abar(k) for k in range(1, n + 1)]
    prefix = [0] * (n + 1)
    for k in range(1, n + 1):
        prefix[k] = prefix[k - 1] + abar[k]

    def seg(a: int, b: int) -> int:
        return _segment_sum(prefix, a, b)

    blocks: list[MatrixBlock] = []

    def p_block(label: str, i: int, j: int) -> None:
        cells = []
        for u in range(1, d[i] - d[i - 1] + 1):
            for v in range(1, d[j + 1] - d[j] + 1):
                num = seg(d[i] - u + 1, d[j] + v - 1)
                cells.append((u, v, Fraction(num, j - i + 1)))
        if cells:
            blocks.append(MatrixBlock(label, i, j, tuple(cells)))

    if cls.case in (ClosedFormCase.BC_GENERAL, ClosedFormCase.BC_LAST):
        # two_eps = 2 * epsilon, an integer: 1 for B and 2 for C.
        two_eps = int(2 * epsilon_constant(lie_type.family))
        spin_term = two_eps * abar[n]
        if cls.case is ClosedFormCase.BC_GENERAL:
            for i in range(1, s + 1):
                for j in range(i, s + 1):
                    p_block("P", i, j)
                    cells = []
                    for u in range(1, d[i] - d[i - 1] + 1):
                        for v in range(1, d[j + 1] - d[j] + 1):
                            num = seg(d[i - 1] + u, n - 1) + seg(d[j] + v, n - 1) + spin_term
                            cells.append((u, v, Fraction(num, 2 * s + 1 - (i + j))))
                    blocks.append(MatrixBlock("Q", i, j, tuple(cells)))
            for i in range(1, s + 1):
                cells = []
                width = d[i] - d[i - 1]
                for u in range(1, width + 1):
                    for v in range(u, width + 1):
                        num = seg(d[i - 1] + u, n - 1) + seg(d[i - 1] + v, n - 1) + spin_term
                        cells.append((u, v, Fraction(num, 2 * (s + 1 - i))))
                if cells:
                    blocks.append(MatrixBlock("R", i, None, tuple(cells)))
        else:
            for i in range(1, s):
                for j in range(i, s):
                    p_block("P~", i, j)
                    cells = []
                    for u in range(1, d[i] - d[i - 1] + 1):
                        for v in range(1, d[j + 1] - d[j] + 1):
                            num = seg(d[i - 1] + u, n - 1) + seg(d[j] + v, n - 1) + spin_term
                            cells.append((u, v, Fraction(num, 2 * s + two_eps - (i + j + 1))))
                    blocks.append(MatrixBlock("Q~", i, j, tuple(cells)))
            for i in range(1, s + 1):
                cells = []
                width = d[i] - d[i - 1]
                for u in range(1, width + 1):
                    for v in range(u, width + 1):
                        num = seg(d[i - 1] + u, n - 1) + seg(d[i - 1] + v, n - 1) + spin_term
                        cells.append((u, v, Fraction(num, 2 * s + two_eps - 2 * i)))
                if cells:
                    blocks.append(MatrixBlock("R~", i, None, tuple(cells)))
    elif cls.case is ClosedFormCase.D_INTERIOR:
        for i in range(1, s + 1):
            for j in range(i, s + 1):
                p_block("P", i, j)
                cells = []
                for u in range(1, d[i] - d[i - 1] + 1):
                    for v in range(1, d[j + 1] - d[j] + 1):
                        num = seg(d[i - 1] + u, n - 2) + seg(d[j] + v, n)
                        cells.append((u, v, Fraction(num, 2 * s + 1 - (i + j))))
                blocks.append(MatrixBlock("Q", i, j, tuple(cells)))
        for i in range(1, s + 1):
            cells = []
            width = d[i] - d[i - 1]
            for u in range(1, width + 1):
                for v in range(u + 1, width + 1):
                    num = seg(d[i - 1] + u, n - 2) + seg(d[i - 1] + v, n)
                    cells.append((u, v, Fraction(num, 2 * (s + 1 - i))))
            if cells:
                blocks.append(MatrixBlock("R", i, None, tuple(cells)))
    elif cls.case is ClosedFormCase.D_SINGLE_SPIN:
        for i in range(1, s + 1):
            for j in range(i, s + 1):
                p_block("P~", i, j)
                if i == s:
                    continue
                cells = []
                for u in range(1, d[i] - d[i - 1] + 1):
                    for v in range(1, d[j + 1] - d[j] + 1):
                        num = seg(d[i - 1] + u, n - 2) + seg(d[j] + v, n)
                        cells.append((u, v, Fraction(num, 2 * s - (i + j))))
                blocks.append(MatrixBlock("Q~", i, j, tuple(cells)))
        for i in range(1, s + 1):
            cells = []
            width = d[i] - d[i - 1]
            for u in range(1, width + 1):
                for v in range(u + 1, width + 1):
                    num = seg(d[i - 1] + u, n - 2) + seg(d[i - 1] + v, n)
                    cells.append((u, v, Fraction(num, 2 * (s - i) + 1)))
            if cells:
                blocks.append(MatrixBlock("R~", i, None, tuple(cells)))
    elif cls.case is ClosedFormCase.D_BOTH_SPIN:
        for i in range(1, s):
            for j in range(i, s):
                p_block("P^", i, j)
                cells = []
                for u in range(1, d[i] - d[i - 1] + 1):
                    for v in range(1, d[j + 1] - d[j] + 1):
                        num = seg(d[i - 1] + u, n - 2) + seg(d[j] + v, n)
                        cells.append((u, v, Fraction(num, 2 * s - 1 - (i + j))))
                blocks.append(MatrixBlock("Q^", i, j, tuple(cells)))
        for i in range(1, s):
            cells = []
            width = d[i] - d[i - 1]
            for u in range(1, width + 1):
                for v in range(u + 1, width + 1):
                    num = seg(d[i - 1] + u, n - 2) + seg(d[i - 1] + v, n)
                    cells.append((u, v, Fraction(num, 2 * (s - i))))
            if cells:
                blocks.append(MatrixBlock("R^", i, None, tuple(cells)))
    else:  # pragma: no cover - enum is exhaustive
        raise RuntimeError(f"unhandled case {cls.case}")

    return DatumMatrices(cls.case, cls.nodes, tuple(blocks))


@dataclass(frozen=True)
class DatumComparison:
    equal: bool
    detail: str | None


def datum_equivalent(weight: HighestWeight, system: RootSystem) -> DatumComparison:
    """Compare the generic and closed-form data as multisets.

    On a mismatch, report the largest value whose multiplicities differ,
    together with its provenance on both sides.
    """
    generic = datum_generic(weight, system)
    closed = datum_closed_form(weight, system).flatten()
    from collections import Counter

    gen_counts = Counter(generic.values())
    clo_counts = Counter(closed.values())
    if gen_counts == clo_counts:
        return DatumComparison(True, None)
    mismatched = [v for v in set(gen_counts) | set(clo_counts) if gen_counts[v] != clo_counts[v]]
    worst = max(mismatched)
    detail = (
        f"value {worst}: {gen_counts[worst]}x generic ({', '.join(generic.sources_of(worst)) or 'absent'})"
        f" vs {clo_counts[worst]}x closed form ({', '.join(closed.sources_of(worst)) or 'absent'})"
    )
    return DatumComparison(False, detail)
