"""Ulrich verdicts, bundle ranks, and lemma-derived divisibility filters.

`is_ulrich` is the authoritative test: it builds the generic associated
datum and compares it, as a multiset, with {1, ..., dim X}.  On failure it
reports one obstruction in a fixed priority order (non-integer entry, then
duplicate, then out-of-range, then missing), always the smallest offending
value, so callers get a stable explanation.

`filter_rules` turns the divisibility facts about Ulrich weights on the
closed-form B/C/D marked sets into data.  Every rule is a *necessary*
condition on the shifted coefficients abar_k = a_k + 1: a weight that
breaks a rule cannot be Ulrich, while passing all rules proves nothing.
Rule indices refer to the caller's own coordinates; for a D marked set
ending at the spin node n the rules are derived on the mirrored diagram
and affected indices are mapped back through the swap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .datum import (
    AssociatedDatum,
    ClosedFormCase,
    HighestWeight,
    classify_case,
    datum_generic,
    epsilon_constant,
)
from .rootsys import LieType, ParabolicSet, RootSystem, pairing


@dataclass(frozen=True)
class FailureWitness:
    """Why a datum is not {1, ..., dim X}: an obstruction kind and its value."""

    kind: str
    value: Fraction


@dataclass(frozen=True)
class UlrichVerdict:
    is_ulrich: bool
    dim: int
    datum: AssociatedDatum
    witness: FailureWitness | None


def is_ulrich(weight: HighestWeight, system: RootSystem) -> UlrichVerdict:
    """Decide whether the bundle is Ulrich for the minimal ample class."""
    datum = datum_generic(weight, system)
    dim = len(datum)
    values = datum.values()  # ascending, by construction
    non_integer = [v for v in values if v.denominator != 1]
    if non_integer:
        return UlrichVerdict(
            False, dim, datum, FailureWitness("non-integer entry", non_integer[0])
        )
    duplicates = [v for v, w in zip(values, values[1:]) if v == w]
    if duplicates:
        return UlrichVerdict(
            False, dim, datum, FailureWitness("duplicate entry", duplicates[0])
        )
    out_of_range = [v for v in values if v < 1 or v > dim]
    if out_of_range:
        return UlrichVerdict(
            False, dim, datum, FailureWitness("value out of range", out_of_range[0])
        )
    # len(values) == dim, so integral + distinct + in range already forces the
    # full run {1, ..., dim}; the missing-value branch guards the logic should
    # a datum variant with a different entry count ever be flattened here.
    present = set(values)
    for t in range(1, dim + 1):
        if t not in present:
            return UlrichVerdict(
                False, dim, datum, FailureWitness("missing value", Fraction(t))
            )
    return UlrichVerdict(True, dim, datum, None)


def bundle_rank(weight: HighestWeight, system: RootSystem) -> int:
    """Rank of the bundle: the Weyl dimension of its inducing Levi module."""
    if weight.rank != system.rank:
        raise ValueError(
            f"dimension mismatch: weight length {weight.rank}, rank {system.rank}"
        )
    marked = [d - 1 for d in weight.nodes]
    shifted = tuple(c + 1 for c in weight.a)
    result = Fraction(1)
    for alpha in system.positive_roots:
        if any(alpha[k] for k in marked):
            continue  # outside the Levi
        result *= pairing(shifted, alpha, system) / pairing(system.rho, alpha, system)
    if result.denominator != 1 or result <= 0:
        raise RuntimeError(
            f"Weyl dimension came out as {result}; weight is not dominant for the Levi"
        )
    return int(result)


@dataclass(frozen=True)
class FilterRule:
    """One necessary condition on an Ulrich weight's shifted coefficients.

    kind 'divides'       modulus | abar(index)
    kind 'odd' / 'even'  parity of abar(index)
    kind 'distinct-marked'  marked abar values are pairwise distinct
    kind 'min-one'          smallest marked abar value is 1
    kind 'neq-last-pair'    abar(n-1) != abar(n)
    kind 'divides-diff'     modulus | abar(n) - abar(n-1)
    kind 'node-spacing'     marked set must be 1..n-1 after the spin swap
    """

    label: str
    kind: str
    index: int | None = None
    modulus: int | None = None


@dataclass(frozen=True)
class FilterViolation:
    rule: FilterRule
    requirement: str
    actual: str


@dataclass(frozen=True)
class FilterReport:
    passed: bool
    case: ClosedFormCase
    rules: tuple[FilterRule, ...]
    violations: tuple[FilterViolation, ...]


def _lcm_range(lo: int, hi: int) -> int:
    """lcm of the integers lo..hi, 1 when the range is empty."""
    return lcm(*range(lo, hi + 1)) if hi >= lo else 1


def filter_rules(lie_type: LieType, nodes: ParabolicSet) -> tuple[FilterRule, ...]:
    """All divisibility and parity rules for this marked set, weight-free.

    Trivial rules (modulus 1) are dropped.  Conventions: d_0 = 0,
    d_{s+1} = n, and an interior run for block index i is
    d_{i-1}+1 <= k <= d_i - 1.
    """
    cls = classify_case(lie_type, nodes)
    case = cls.case
    if case is ClosedFormCase.GENERIC_ONLY:
        return ()
    n = lie_type.rank
    s = cls.nodes.s
    d = (0,) + cls.nodes.nodes + (n,)

    def back(k: int) -> int:
        """Translate a normalized index to the caller's coordinates."""
        if not cls.swapped:
            return k
        if k == n - 1:
            return n
        if k == n:
            return n - 1
        return k

    rules: list[FilterRule] = []

    def divides(label: str, k: int, modulus: int) -> None:
        if modulus > 1:
            rules.append(FilterRule(label, "divides", back(k), modulus))

    if case is ClosedFormCase.BC_GENERAL:
        for i in range(1, s + 2):
            modulus = _lcm_range(1, 2 * s - i + 1)
            for k in range(d[i - 1] + 1, d[i]):
                divides("interior-lcm", k, modulus)
        # lcm(1..s) divides e * abar(n), so abar(n) itself is constrained by
        # lcm(1..s) for C (e = 1) and by 2 lcm(1..s) for B (e = 1/2).
        base = _lcm_range(1, s)
        divides("last-node-lcm", n, 2 * base if lie_type.family == "B" else base)
    elif case is ClosedFormCase.BC_LAST:
        two_eps = int(2 * epsilon_constant(lie_type.family))
        for i in range(1, s + 1):
            members = list(range(1, s - i + 1)) + list(
                range(s - i + two_eps, 2 * s + two_eps - i)
            )
            modulus = lcm(*members) if members else 1
            for k in range(d[i - 1] + 1, d[i]):
                divides("interior-lcm", k, modulus)
    elif case is ClosedFormCase.D_INTERIOR:
        for k in range(1, d[1]):
            divides("interior-lcm", k, _lcm_range(1, 2 * s - 1))
        for i in range(2, s + 2):
            low = _lcm_range(1, 2 * s - 2 * i + 1)
            high = _lcm_range(2 * s - 2 * i + 3, 2 * s - i + 1)
            for k in range(d[i - 1] + 1, d[i]):
                divides("interior-lcm", k, low)
                divides("interior-lcm", k, high)
        rules.append(FilterRule("spin-distinct", "neq-last-pair"))
        divides("spin-lcm", n, _lcm_range(1, s))
    elif case is ClosedFormCase.D_SINGLE_SPIN:
        if s >= 2:
            rules.append(FilterRule("node-spacing", "node-spacing"))
        for k in range(1, d[1]):
            divides("interior-lcm", k, _lcm_range(1, 2 * s - 2))
        for i in range(2, s + 1):
            low = _lcm_range(1, 2 * s - 2 * i)
            high = _lcm_range(2 * s - 2 * i + 2, 2 * s - i)
            for k in range(d[i - 1] + 1, d[i]):
                divides("interior-lcm", k, low)
                divides("interior-lcm", k, high)
        if s >= 2:
            divides("spin-lcm", n, _lcm_range(1, s))
    elif case is ClosedFormCase.D_BOTH_SPIN:
        for k in range(1, d[1]):
            divides("interior-lcm", k, _lcm_range(1, 2 * s - 3))
        for i in range(2, s):
            low = _lcm_range(1, 2 * s - 2 * i - 1)
            high = _lcm_range(2 * s - 2 * i + 1, 2 * s - i - 1)
            for k in range(d[i - 1] + 1, d[i]):
                divides("interior-lcm", k, low)
                divides("interior-lcm", k, high)
        for i in range(1, s):
            for k in range(d[i - 1] + 1, d[i]):
                rules.append(FilterRule("interior-even", "even", k))
        diff_modulus = _lcm_range(1, s - 1)
        if diff_modulus > 1:
            rules.append(
                FilterRule("spin-difference-lcm", "divides-diff", n, diff_modulus)
            )
    else:  # pragma: no cover - enum is exhaustive
        raise RuntimeError(f"unhandled case {case}")

    for node in cls.nodes:
        rules.append(FilterRule("marked-odd", "odd", back(node)))
    if s >= 2:
        rules.append(FilterRule("marked-distinct", "distinct-marked"))
    rules.append(FilterRule("smallest-marked-one", "min-one"))
    return tuple(dict.fromkeys(rules))


def necessary_filters(
    weight: HighestWeight,
    system: RootSystem,
    case: ClosedFormCase | None = None,
) -> FilterReport:
    """Evaluate every filter rule against one weight.

    The optional `case` is a cross-check: pass what you believe the marked
    set classifies as, and a mismatch raises instead of silently testing
    the wrong rules.
    """
    cls = classify_case(system.lie_type, weight.nodes)
    if case is not None and case is not cls.case:
        raise ValueError(
            f"marked set classifies as {cls.case.value}, not {case.value}"
        )
    rules = filter_rules(system.lie_type, weight.nodes)
    n = system.rank
    marked_values = tuple(weight.abar(node) for node in weight.nodes)
    violations: list[FilterViolation] = []

    def fail(rule: FilterRule, requirement: str, actual: str) -> None:
        violations.append(FilterViolation(rule, requirement, actual))

    for rule in rules:
        if rule.kind == "divides":
            value = weight.abar(rule.index)
            if value % rule.modulus != 0:
                fail(
                    rule,
                    f"{rule.modulus} | abar({rule.index})",
                    f"abar({rule.index}) = {value}",
                )
        elif rule.kind == "odd":
            value = weight.abar(rule.index)
            if value % 2 == 0:
                fail(rule, f"abar({rule.index}) odd", f"abar({rule.index}) = {value}")
        elif rule.kind == "even":
            value = weight.abar(rule.index)
            if value % 2 != 0:
                fail(rule, f"abar({rule.index}) even", f"abar({rule.index}) = {value}")
        elif rule.kind == "distinct-marked":
            if len(set(marked_values)) != len(marked_values):
                fail(
                    rule,
                    "marked abar values pairwise distinct",
                    f"marked abar values = {marked_values}",
                )
        elif rule.kind == "min-one":
            smallest = min(marked_values)
            if smallest != 1:
                fail(
                    rule,
                    "smallest marked abar value = 1",
                    f"smallest marked abar value = {smallest}",
                )
        elif rule.kind == "neq-last-pair":
            if weight.abar(n) == weight.abar(n - 1):
                fail(
                    rule,
                    f"abar({n - 1}) != abar({n})",
                    f"both = {weight.abar(n)}",
                )
        elif rule.kind == "divides-diff":
            diff = weight.abar(n) - weight.abar(n - 1)
            if diff % rule.modulus != 0:
                fail(
                    rule,
                    f"{rule.modulus} | abar({n}) - abar({n - 1})",
                    f"abar({n}) - abar({n - 1}) = {diff}",
                )
        elif rule.kind == "node-spacing":
            expected = tuple(range(1, n))
            if cls.nodes.nodes != expected:
                fail(
                    rule,
                    "marked set must be 1..n-1 after the spin swap",
                    f"normalized marked nodes = {cls.nodes.nodes}",
                )
        else:  # pragma: no cover - kinds are exhaustive
            raise RuntimeError(f"unhandled rule kind {rule.kind}")

    return FilterReport(not violations, cls.case, rules, tuple(violations))
