"""Which involution classes give a connected commuting graph, how large the
diameter is expected to be, and invariants that certify disconnection."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import ceil
from typing import Hashable, Literal

from cix.algebra import (
    ClassSpec,
    GroupElement,
    LabelledCycleType,
    canonical_rep,
    conjugate,
    labelled_cycle_type,
    labelled_cycles,
    multiply,
    project_to_weyl,
)
from cix.errors import ConnectedClassError, DisconnectedClassError

Case = Literal["i", "ii", "iii", "iv", "v"]


@dataclass(frozen=True)
class DiameterBound:
    """``kind`` is ``"exact"`` (lo == hi), ``"interval"`` or ``"upper"``
    (lo is None).  ``key`` names the rule that produced it."""

    kind: Literal["exact", "interval", "upper"]
    lo: int | None
    hi: int
    key: str

    def admits(self, d: int) -> bool:
        return (self.lo is None or d >= self.lo) and d <= self.hi

    def __str__(self) -> str:
        if self.kind == "exact":
            return f"= {self.hi} [{self.key}]"
        if self.kind == "interval":
            return f"in [{self.lo}, {self.hi}] [{self.key}]"
        return f"<= {self.hi} [{self.key}]"


@dataclass(frozen=True)
class ConnectivityVerdict:
    spec: ClassSpec
    connected: bool
    case: Case | None
    bound: DiameterBound | None

    @property
    def verdict(self) -> str:
        return "connected" if self.connected else "disconnected"

    def __str__(self) -> str:
        if self.connected:
            return f"connected, diameter {self.bound}"
        return f"disconnected (case {self.case})"


def disconnection_case(t: LabelledCycleType, n: int) -> Case | None:
    m, k_e, k_o, l = t
    if m == 0 and l == 0:
        return "i"
    if m > 0 and l == 0 and (k_e == 1 or k_o == 1):
        return "ii"
    if m > 0 and max(k_e, k_o, l) == 1:
        return "iii"
    if n == 4 and m == 1:
        return "iv"
    if n == 6 and m == 1 and k_e == 2 and k_o == 2:
        return "v"
    return None


def classify_connectivity(spec: ClassSpec) -> ConnectivityVerdict:
    case = disconnection_case(spec.type, spec.n)
    if case is not None:
        return ConnectivityVerdict(spec, False, case, None)
    return ConnectivityVerdict(spec, True, None, _bound(spec))


def dual_spec(spec: ClassSpec) -> ClassSpec:
    m, k_e, k_o, l = spec.type
    return ClassSpec(spec.n, LabelledCycleType(m, k_o, k_e, l))


def expected_diameter(spec: ClassSpec) -> DiameterBound:
    verdict = classify_connectivity(spec)
    if not verdict.connected:
        raise DisconnectedClassError(f"{spec} is disconnected (case {verdict.case})")
    assert verdict.bound is not None
    return verdict.bound


def _bound(spec: ClassSpec) -> DiameterBound:
    n = spec.n
    m, k_e, k_o, l = spec.type
    if m == 0 and k_e == 0 and k_o == 0:
        # the identity alone
        return DiameterBound("exact", 0, 0, "single-vertex")
    if m == 0:
        # l >= 1 here; the first matching line wins
        q = ceil(n / l)
        if 2 * l >= n:
            return DiameterBound("exact", 2, 2, "m0-many-fixed")
        if k_e == 0 or k_o == 0:
            return DiameterBound("exact", q, q, "m0-one-parity")
        if l == 1:
            return DiameterBound("exact", n + 1, n + 1, "m0-one-fixed")
        return DiameterBound("interval", q, q + 2, "m0-mixed")

    exact: list[DiameterBound] = []
    upper: list[DiameterBound] = []
    if k_e == 0 and k_o == 0:
        if (n, m) in ((2, 1), (4, 2)):
            exact.append(DiameterBound("exact", 2, 2, "small-rank-disc-table"))
        if 2 * m == n:
            upper.append(DiameterBound("upper", None, 3, "pairs-only"))
        if n >= 5 and l >= 2:
            upper.append(DiameterBound("upper", None, 5, "pairs-and-fixed"))
    if l == 0 and min(k_e, k_o) == 0 and (m > 1 or max(k_e, k_o) >= 3):
        upper.append(DiameterBound("upper", None, n, "l0-one-parity"))
    if m == 1 and l == 0 and min(k_e, k_o) == 2 and max(k_e, k_o) >= 3:
        upper.append(DiameterBound("upper", None, n + 1, "l0-two-of-one-parity"))
    if n >= 7 and l == 0 and k_e >= 2 and k_o >= 2:
        hi = n if m >= 2 else n + 2
        upper.append(DiameterBound("upper", None, hi, "l0-both-parities"))
    if n == 5 and m == 1 and l == 1 and max(k_e, k_o) == 2:
        exact.append(DiameterBound("exact", 5, 5, "rank5-one-pair"))
    if n == 6 and m == 1 and l == 1 and sorted((k_e, k_o)) == [1, 2]:
        upper.append(DiameterBound("upper", None, 6, "rank6-one-pair"))
    if l >= 1 and max(k_e, k_o, l) >= 2:
        upper.append(DiameterBound("upper", None, n, "pairs-with-fixed"))
    if exact:
        return exact[0]
    if upper:
        return min(upper, key=lambda b: b.hi)
    return DiameterBound("upper", None, n + 2, "general-cap")


# --- certificates ----------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Outcome of comparing a component invariant on two elements.

    ``separated`` is True only when the invariants differ, which proves the
    elements lie in different components."""

    case: Case
    separated: bool
    invariant_x: Hashable
    invariant_y: Hashable

    @property
    def verdict(self) -> str:
        return "separated" if self.separated else "inconclusive"


def _neg_points(g: GroupElement, parity: int) -> tuple[tuple[int, int], ...]:
    return tuple(
        (c.entries[0], c.label)
        for c in labelled_cycles(g)
        if len(c.entries) == 1 and c.sign < 0 and c.label % 2 == parity
    )


def component_invariant(spec: ClassSpec, x: GroupElement) -> Hashable:
    """A value constant on each connected component of the commuting graph
    of a disconnected class."""
    case = disconnection_case(spec.type, spec.n)
    if case is None:
        raise ConnectedClassError(f"{spec} is connected")
    if labelled_cycle_type(x) != spec.type:
        raise ValueError(f"{x} is not in the class {spec}")
    if case == "i":
        # no two distinct elements commute
        return x
    if case == "ii":
        out = []
        if spec.type.k_o == 1:
            out.append(("odd",) + _neg_points(x, 1))
        if spec.type.k_e == 1:
            out.append(("even",) + _neg_points(x, 0))
        return tuple(out)
    if case == "iii":
        return frozenset(c.entries[0] for c in labelled_cycles(x) if len(c.entries) == 1)
    if case == "iv":
        return _weyl_components(spec)[project_to_weyl(x).sigma]
    # case v
    parts = [frozenset(c.entries) for c in labelled_cycles(x) if len(c.entries) == 2]
    parts.append(frozenset(p for p, _ in _neg_points(x, 0)))
    parts.append(frozenset(p for p, _ in _neg_points(x, 1)))
    return frozenset(parts)


@lru_cache(maxsize=None)
def _weyl_components(spec: ClassSpec) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Component label (least member) of each element in the commuting graph
    of the finite Weyl group class of the projected representative."""
    n = spec.n
    base = project_to_weyl(canonical_rep(spec))
    zero = (0,) * n
    group = [
        tuple(p * s for p, s in zip(perm, signs))
        for perm in itertools.permutations(range(1, n + 1))
        for signs in itertools.product((1, -1), repeat=n)
    ]
    cls = sorted({conjugate(base, GroupElement(g, zero)).sigma for g in group})
    members = [GroupElement(s, zero) for s in cls]
    label: dict[tuple[int, ...], tuple[int, ...]] = {}
    for start in members:
        if start.sigma in label:
            continue
        comp = [start]
        label[start.sigma] = start.sigma
        k = 0
        while k < len(comp):
            x = comp[k]
            for y in members:
                if y.sigma not in label and multiply(x, y) == multiply(y, x):
                    label[y.sigma] = start.sigma
                    comp.append(y)
            k += 1
    return label


def disconnection_certificate(spec: ClassSpec, x: GroupElement, y: GroupElement) -> Certificate:
    case = disconnection_case(spec.type, spec.n)
    if case is None:
        raise ConnectedClassError(f"{spec} is connected; no certificate exists")
    ix = component_invariant(spec, x)
    iy = component_invariant(spec, y)
    return Certificate(case, ix != iy, ix, iy)
