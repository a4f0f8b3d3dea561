"""Exact root-system combinatorics for the classical families A, B, C and D.

Roots are stored in the simple-root basis and weights in the
fundamental-weight basis, so the invariant bilinear form reduces to a single
formula,

    (mu, alpha) = sum_j c_j * m_j * d_j,

for alpha = sum_j c_j alpha_j, mu = sum_j m_j lambda_j and symmetrizer
d_j = (alpha_j, alpha_j) / 2.  Long roots are normalized to squared length 2,
which puts d_j = 1 on every long node, d_n = 1/2 for B_n and d_n = 2 for C_n.
All arithmetic is exact (int / Fraction); nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

Root = tuple[int, ...]
Weight = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D")

# Smallest rank at which each family is connected and non-redundant.  C_2 is
# accepted even though it duplicates B_2 under the node swap 1 <-> 2; the two
# presentations must (and do) agree on every verdict.
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


@dataclass(frozen=True)
class LieType:
    """A classical family letter together with the rank."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(
                f"unknown family {self.family!r}: expected one of {', '.join(FAMILIES)}"
            )
        floor = MIN_RANK[self.family]
        if self.rank < floor:
            raise ValueError(
                f"type {self.family} requires rank >= {floor}, got {self.rank}"
            )


@dataclass(frozen=True)
class ParabolicSet:
    """Marked Dynkin nodes d_1 < ... < d_s (1-based)."""

    nodes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if not self.nodes:
            raise ValueError("at least one node must be marked")
        if any(d < 1 for d in self.nodes):
            raise ValueError(f"node indices are 1-based, got {self.nodes}")
        if any(a >= b for a, b in zip(self.nodes, self.nodes[1:])):
            raise ValueError(f"nodes must be strictly increasing, got {self.nodes}")

    @property
    def s(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.nodes)

    def __contains__(self, node: int) -> bool:
        return node in self.nodes


@dataclass(frozen=True)
class RootSystem:
    """Positive roots of one classical type, frozen in lexicographic order."""

    lie_type: LieType
    positive_roots: tuple[Root, ...]
    symmetrizer: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def rho(self) -> Weight:
        """Half-sum of positive roots: all-ones in fundamental coordinates."""
        return (1,) * self.rank


def _simple_bilinear(lie_type: LieType) -> list[list[Fraction]]:
    """Gram matrix (alpha_i, alpha_j) of the simple roots."""
    n = lie_type.rank
    form = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        form[i][i] = Fraction(2)
    for i in range(n - 1):
        form[i][i + 1] = form[i + 1][i] = Fraction(-1)
    if lie_type.family == "B":
        form[n - 1][n - 1] = Fraction(1)
    elif lie_type.family == "C":
        form[n - 1][n - 1] = Fraction(4)
        form[n - 2][n - 1] = form[n - 1][n - 2] = Fraction(-2)
    elif lie_type.family == "D":
        # The spin node n hangs off node n-2, not node n-1.
        form[n - 2][n - 1] = form[n - 1][n - 2] = Fraction(0)
        form[n - 3][n - 1] = form[n - 1][n - 3] = Fraction(-1)
    return form


def symmetrizer(lie_type: LieType) -> tuple[Fraction, ...]:
    """d_j = (alpha_j, alpha_j)/2 in the long-root normalization."""
    form = _simple_bilinear(lie_type)
    return tuple(form[i][i] / 2 for i in range(lie_type.rank))


@lru_cache(maxsize=None)
def cartan_matrix(lie_type: LieType) -> tuple[tuple[int, ...], ...]:
    """Integer matrix C with C[i][j] = <alpha_j, alpha_i^v>.

    Column j holds the fundamental-weight coordinates of alpha_j, and row i
    evaluates <., alpha_i^v> on simple-root coordinates.
    """
    form = _simple_bilinear(lie_type)
    n = lie_type.rank
    rows = []
    for i in range(n):
        half = form[i][i] / 2
        row = []
        for j in range(n):
            entry = form[i][j] / half
            if entry.denominator != 1:
                raise RuntimeError("Cartan entry is not an integer")
            row.append(int(entry))
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def build_root_system(lie_type: LieType) -> RootSystem:
    """Generate every positive root by closing the simple ones under strings.

    For a positive root a and simple root alpha_j, the string through a in
    the alpha_j direction satisfies p - q = <a, alpha_j^v>, where p is the
    number of steps the string continues below a.  So a + alpha_j is a root
    exactly when p - <a, alpha_j^v> >= 1.  Working height by height keeps
    every candidate's downward string already available.
    """
    n = lie_type.rank
    cartan = cartan_matrix(lie_type)
    simple = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    known: set[Root] = set(simple)
    layer = list(simple)
    while layer:
        grown: list[Root] = []
        for root in layer:
            for j in range(n):
                m = sum(c * cartan[j][k] for k, c in enumerate(root) if c)
                p = 0
                probe = list(root)
                while True:
                    probe[j] -= 1
                    if probe[j] < 0 or tuple(probe) not in known:
                        break
                    p += 1
                if p - m >= 1:
                    up = tuple(c + (1 if k == j else 0) for k, c in enumerate(root))
                    if up not in known:
                        known.add(up)
                        grown.append(up)
        layer = grown
    return RootSystem(lie_type, tuple(sorted(known)), symmetrizer(lie_type))


def pairing(mu: Weight, alpha: Root, system: RootSystem) -> Fraction:
    """Exact value of (mu, alpha) for mu in fundamental, alpha in simple-root coordinates."""
    n = system.rank
    if len(mu) != n or len(alpha) != n:
        raise ValueError(
            f"dimension mismatch: rank {n}, weight length {len(mu)}, root length {len(alpha)}"
        )
    total = Fraction(0)
    for c, m, d in zip(alpha, mu, system.symmetrizer):
        if c and m:
            total += c * m * d
    return total


def check_nodes(system: RootSystem, nodes: ParabolicSet) -> None:
    """Reject marked nodes that fall outside 1..rank."""
    if nodes.nodes[-1] > system.rank:
        raise ValueError(
            f"marked node {nodes.nodes[-1]} exceeds rank {system.rank}"
        )


def phi_J_plus(system: RootSystem, nodes: ParabolicSet) -> tuple[Root, ...]:
    """Positive roots with support meeting the marked nodes, in canonical order."""
    check_nodes(system, nodes)
    marked = [d - 1 for d in nodes]
    return tuple(r for r in system.positive_roots if any(r[k] for k in marked))


def dimension(system: RootSystem, nodes: ParabolicSet) -> int:
    """dim G/P_J = number of positive roots outside the Levi subsystem."""
    return len(phi_J_plus(system, nodes))
