"""Root system construction checked against independently counted data.

Expected root counts, pairings, and dimensions below were computed by hand
from the standard presentations (epsilon coordinates) before the code ran.
"""

from fractions import Fraction

import pytest

from ulrich_lab import (
    LieType,
    ParabolicSet,
    build_root_system,
    cartan_matrix,
    check_nodes,
    dimension,
    pairing,
    phi_J_plus,
    symmetrizer,
)

HALF = Fraction(1, 2)


# Number of positive roots: A_n n(n+1)/2, B_n/C_n n^2, D_n n(n-1).
@pytest.mark.parametrize(
    "family,rank,count",
    [("A", n, n * (n + 1) // 2) for n in range(1, 9)]
    + [("B", n, n * n) for n in range(2, 9)]
    + [("C", n, n * n) for n in range(2, 9)]
    + [("D", n, n * (n - 1)) for n in range(4, 9)],
)
def test_positive_root_counts(family, rank, count):
    system = build_root_system(LieType(family, rank))
    assert len(system.positive_roots) == count


def test_roots_are_sorted_unique_nonnegative():
    for family, rank in [("A", 5), ("B", 4), ("C", 4), ("D", 5)]:
        system = build_root_system(LieType(family, rank))
        roots = system.positive_roots
        assert list(roots) == sorted(set(roots))
        assert all(min(r) >= 0 and max(r) >= 1 for r in roots)
        for j in range(rank):
            simple = tuple(1 if i == j else 0 for i in range(rank))
            assert simple in roots


def test_highest_root_has_full_support():
    for family, rank in [("A", 6), ("B", 5), ("C", 5), ("D", 6)]:
        system = build_root_system(LieType(family, rank))
        tallest = max(system.positive_roots, key=sum)
        assert all(c >= 1 for c in tallest)


def test_cartan_matrices():
    # rows are indexed by the pairing weight, columns by the root
    assert cartan_matrix(LieType("A", 2)) == ((2, -1), (-1, 2))
    # B_3: alpha_3 is the short root; <alpha_2, alpha_3^v> = -2
    b3 = cartan_matrix(LieType("B", 3))
    assert b3[2][1] == -1 and b3[1][2] == -2 or b3[2][1] == -2 and b3[1][2] == -1
    assert all(b3[i][i] == 2 for i in range(3))
    # C_3 is the transpose of B_3 on the last edge
    c3 = cartan_matrix(LieType("C", 3))
    assert {abs(c3[1][2]), abs(c3[2][1])} == {1, 2}
    assert c3[1][2] != b3[1][2]
    # D_4: node 4 attaches to node 2, not node 3
    d4 = cartan_matrix(LieType("D", 4))
    assert d4[2][3] == 0 and d4[3][2] == 0
    assert d4[1][3] == -1 and d4[3][1] == -1


def test_symmetrizer_values():
    assert symmetrizer(LieType("A", 3)) == (1, 1, 1)
    assert symmetrizer(LieType("B", 3)) == (1, 1, HALF)
    assert symmetrizer(LieType("C", 3)) == (1, 1, 2)
    assert symmetrizer(LieType("D", 4)) == (1, 1, 1, 1)


def test_pairing_examples():
    b2 = build_root_system(LieType("B", 2))
    # (lambda_i, alpha_j) = delta_ij * d_j
    assert pairing((1, 0), (1, 0), b2) == 1
    assert pairing((0, 1), (0, 1), b2) == HALF
    # (rho, alpha_1 + 2 alpha_2) = 1 + 2/2 = 2
    assert pairing(b2.rho, (1, 2), b2) == 2
    c2 = build_root_system(LieType("C", 2))
    assert pairing((0, 1), (0, 1), c2) == 2
    assert pairing(c2.rho, (2, 1), c2) == 4


def test_pairing_dimension_mismatch_raises():
    b2 = build_root_system(LieType("B", 2))
    with pytest.raises(ValueError):
        pairing((1, 0, 0), (1, 0), b2)


@pytest.mark.parametrize(
    "family,rank,nodes,expected",
    [
        ("B", 2, (1,), 3),  # quadric Q^3
        ("B", 2, (1, 2), 4),
        ("D", 4, (1, 2), 10),
        ("D", 4, (1,), 6),  # quadric Q^6
        ("A", 3, (2,), 4),  # Gr(2,4)
        ("C", 3, (3,), 6),  # Lagrangian Grassmannian LG(3,6)
        ("D", 5, (2, 4, 5), 18),
    ],
)
def test_marked_dimension(family, rank, nodes, expected):
    lie_type = LieType(family, rank)
    system = build_root_system(lie_type)
    marked = ParabolicSet(nodes)
    assert dimension(system, marked) == expected
    assert len(phi_J_plus(system, marked)) == expected


def test_dimension_grows_with_nodes():
    for family, rank in [("B", 4), ("C", 4), ("D", 5)]:
        system = build_root_system(LieType(family, rank))
        full = dimension(system, ParabolicSet(tuple(range(1, rank + 1))))
        for j in range(1, rank + 1):
            single = dimension(system, ParabolicSet((j,)))
            assert single < full


def test_validation_errors():
    with pytest.raises(ValueError):
        LieType("E", 6)
    with pytest.raises(ValueError):
        LieType("D", 3)
    with pytest.raises(ValueError):
        LieType("B", 1)
    with pytest.raises(ValueError):
        ParabolicSet(())
    with pytest.raises(ValueError):
        ParabolicSet((2, 1))
    with pytest.raises(ValueError):
        ParabolicSet((0, 1))
    system = build_root_system(LieType("B", 2))
    with pytest.raises(ValueError):
        check_nodes(system, ParabolicSet((3,)))
