"""Parametric element families for the discs of small classes, and a matcher
that decides membership up to the full centralizer of the representative.

A family is written in the labelled cycle notation with symbolic labels::

    -0(1) -[L'](2) -M(3)

Tokens are ``L`` (even), ``M`` (odd) and ``S`` (any integer).  Brackets add a
restriction: ``[L]`` and ``[S]`` are nonzero, ``[M]`` is an odd number other
than 1.  Primes make distinct names, and a name used twice means equal
values.  Integer literals are allowed.  Points not mentioned are positive
fixed points.  The special family ``REST`` stands for every class element
that is neither the representative nor in an earlier disc's families.

The full centralizer ``C(a)`` of the canonical representative is the group of
``(h, w)`` with ``h`` in the label-preserving centralizer, extended by sign
changes on odd points, and ``w`` a compensating translation plus any
translation from the kernel (equal on both points of a pair, free on the
positive fixed points, zero elsewhere).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from cix.algebra import (
    ClassSpec,
    GroupElement,
    LabelledCycleType,
    act,
    canonical_rep,
    conjugate,
    from_cycles,
)
from cix.classgraph import centralizer as cz
from cix.errors import ElementParseError

REST = "REST"

_CYCLE = re.compile(r"([+-])(\[?[LMS]'*\]?|-?\d+)\((\d+(?: \d+)*)\)")


@dataclass(frozen=True)
class Token:
    kind: str  # "L", "M", "S" or "lit"
    name: str
    restricted: bool = False
    value: int = 0

    def admits(self, x: int) -> bool:
        if self.kind == "lit":
            return x == self.value
        if self.kind == "L":
            return x % 2 == 0 and (not self.restricted or x != 0)
        if self.kind == "M":
            return x % 2 == 1 and (not self.restricted or x != 1)
        return not self.restricted or x != 0


@dataclass(frozen=True)
class Pattern:
    n: int
    cycles: tuple[tuple[tuple[int, ...], int, Token], ...]
    text: str

    @property
    def sigma(self) -> tuple[int, ...]:
        return from_cycles(self.n, [(e, s, 0) for e, s, _ in self.cycles]).sigma

    def admits(self, g: GroupElement) -> bool:
        """Exact membership of ``g`` (no centralizer action)."""
        if g.sigma != self.sigma:
            return False
        return self._labels_ok(g.v)

    def _labels_ok(self, v: Sequence[int]) -> bool:
        bound: dict[str, int] = {}
        for entries, _, tok in self.cycles:
            x = v[entries[0] - 1]
            if not tok.admits(x):
                return False
            if tok.kind != "lit":
                if bound.setdefault(tok.name, x) != x:
                    return False
        # unmentioned points are positive fixed points labelled 0
        mentioned = {p for e, _, _ in self.cycles for p in e}
        return all(v[p - 1] == 0 for p in range(1, self.n + 1) if p not in mentioned)

    def __str__(self) -> str:
        return self.text


def _token(text: str) -> Token:
    if text[0] in "-0123456789":
        return Token("lit", text, value=int(text))
    restricted = text.startswith("[")
    name = text.strip("[]")
    return Token(name[0], name, restricted)


def parse_pattern(text: str, n: int) -> Pattern:
    cycles = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mo = _CYCLE.match(text, pos)
        if mo is None:
            raise ElementParseError(f"expected a cycle at offset {pos} in {text!r}")
        entries = tuple(sorted(int(e) for e in mo.group(3).split()))
        if len(entries) > 2 or any(not 1 <= e <= n for e in entries):
            raise ElementParseError(f"bad cycle {mo.group(0)!r} for rank {n}")
        sign = 1 if mo.group(1) == "+" else -1
        cycles.append((entries, sign, _token(mo.group(2))))
        pos = mo.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return Pattern(n, tuple(cycles), text)


# --- the full centralizer --------------------------------------------------


@lru_cache(maxsize=None)
def _centralizer_perms(spec: ClassSpec) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Each signed permutation part of ``C(a)`` with its compensating
    translation."""
    lay = cz.layout(spec)
    a = canonical_rep(spec)
    out = []
    for h in cz.iter_group(lay, odd_signs=True):
        diff = [x - y for x, y in zip(a.v, act(a.v, h))]
        # a negates every point where diff is nonzero, so w_q = diff_q / 2
        out.append((h, tuple(d // 2 for d in diff)))
    return tuple(out)


def _kernel_basis(spec: ClassSpec) -> list[tuple[int, ...]]:
    lay = cz.layout(spec)
    n = spec.n
    basis = []
    for i in range(spec.type.m):
        w = [0] * n
        w[2 * i] = w[2 * i + 1] = 1
        basis.append(tuple(w))
    for p in lay.blocks[cz.F]:
        w = [0] * n
        w[p - 1] = 1
        basis.append(tuple(w))
    return basis


def matches(spec: ClassSpec, x: GroupElement, pattern: Pattern) -> bool:
    """True if some conjugate of ``x`` by ``C(a)`` lies in ``pattern``."""
    target = pattern.sigma
    basis = _kernel_basis(spec)
    # how each kernel direction shifts labels once the permutation is target
    shifts = []
    for b in basis:
        d = tuple(p - q for p, q in zip(b, act(b, target)))
        if any(d):
            shifts.append(d)
    for h, w0 in _centralizer_perms(spec):
        z = conjugate(x, GroupElement(h, w0))
        if z.sigma != target:
            continue
        reach = max(abs(t) for t in z.v) + 2
        for coeffs in itertools.product(range(-reach, reach + 1), repeat=len(shifts)):
            v = list(z.v)
            for c, d in zip(coeffs, shifts):
                if c:
                    for j, dj in enumerate(d):
                        v[j] += c * dj
            if pattern._labels_ok(v):
                return True
    return False


# --- known disc families ---------------------------------------------------


@dataclass(frozen=True)
class DiscFamilies:
    spec: ClassSpec
    columns: tuple[tuple[str, ...], ...]

    @property
    def diameter(self) -> int:
        return len(self.columns)

    def patterns(self, i: int) -> list[Pattern]:
        return [parse_pattern(t, self.spec.n) for t in self.columns[i - 1] if t != REST]


def _fam(n: int, t: tuple[int, int, int, int], *cols: Iterable[str]) -> DiscFamilies:
    return DiscFamilies(ClassSpec(n, LabelledCycleType(*t)), tuple(tuple(c) for c in cols))


KNOWN: dict[ClassSpec, DiscFamilies] = {
    f.spec: f
    for f in [
        _fam(2, (0, 1, 0, 1), ["-L(2)"], [REST]),
        _fam(2, (1, 0, 0, 0), ["-S(1 2)"], [REST]),
        _fam(3, (0, 1, 0, 2), ["-L(2)"], ["-[L](1)"]),
        _fam(
            3, (0, 2, 0, 1),
            ["-0(1) -L(3)"],
            ["-L'(2) -L(3)", "-0(1) -[L'](2)"],
            ["-[L](1) -[L'](2)"],
        ),
        _fam(
            3, (0, 1, 1, 1),
            ["-0(1) -M(3)", "-1(2) -L(3)"],
            ["-0(1) -M(2)", "-L(2) -M(3)", "-L(1) -1(2)", "-M(1) -L(3)"],
            ["-M(1) -L(2)", "-[L](1) -M(3)", "-[M](2) -L(3)"],
            ["-[L](1) -[M](2)"],
        ),
        _fam(4, (0, 1, 0, 3), ["-L(2)"], ["-[L](1)"]),
        _fam(4, (0, 2, 0, 2), ["-0(1) -L(3)", "-L(3) -L'(4)"], [REST]),
        _fam(
            4, (0, 3, 0, 1),
            ["-0(1) -0(2) -L(4)"],
            ["-0(1) -L(3) -L'(4)", "-0(1) -0(2) -[L](3)"],
            ["-L(2) -L'(3) -L''(4)", "-0(1) -[L](2) -[L'](3)"],
            ["-[L](1) -[L'](2) -[L''](3)"],
        ),
        _fam(4, (0, 1, 1, 2), ["-0(1) -M(3)", "-1(2) -L(3)", "-L(3) -M(4)"], [REST]),
        _fam(
            4, (0, 2, 1, 1),
            ["-0(1) -0(2) -M(4)", "-0(1) -1(3) -L(4)"],
            [
                "-0(1) -L(3) -M(4)", "-0(1) -0(2) -[M](3)", "-0(1) -M(2) -L(4)",
                "-[L](1) -1(3) -L'(4)", "-[L](1) -0(2) -1(3)",
            ],
            [
                "-0(1) -M(2) -L(3)", "-[L](1) -[L'](2) -1(3)", "-[L](1) -M(2) -L'(4)",
                "-[L](1) -0(2) -M(4)", "-0(1) -[M](3) -L(4)", "-M(1) -L(3) -L'(4)",
                "-[L](1) -L'(3) -M(4)",
            ],
            [
                "-0(1) -[L](2) -[M](3)", "-[L](1) -M(2) -L'(3)",
                "-[L](1) -[L'](2) -M(4)", "-[L](1) -[M](3) -L'(4)",
            ],
            ["-[L](1) -[L'](2) -[M](3)"],
        ),
        _fam(
            4, (2, 0, 0, 0),
            ["-S(1 2) +0(3 4)", "-S(1 2) -S'(3 4)", "+S(1 3) +S(2 4)", "-S(1 3) -S(2 4)"],
            [REST],
        ),
    ]
}


@dataclass(frozen=True)
class FamilyMismatch:
    disc: int
    element: GroupElement
    reason: str


def disc_family(spec: ClassSpec, x: GroupElement, fams: DiscFamilies) -> int | None:
    """Index of the first disc whose families contain ``x`` up to ``C(a)``;
    0 for the representative and None if nothing matches."""
    if x == canonical_rep(spec):
        return 0
    for i, col in enumerate(fams.columns, 1):
        if col == (REST,):
            return i
        if any(matches(spec, x, p) for p in fams.patterns(i)):
            return i
    return None


def check_discs(discs: Sequence[Iterable[GroupElement]], fams: DiscFamilies) -> list[FamilyMismatch]:
    """Compare computed discs with the families.  ``discs[i]`` holds elements
    (or orbit representatives) at distance ``i``.  Returns every element
    whose first matching disc differs from its computed one."""
    out = []
    for i, elems in enumerate(discs):
        for x in elems:
            got = disc_family(fams.spec, x, fams)
            if got != i:
                out.append(FamilyMismatch(i, x, f"families place it in disc {got}"))
    return out


def unwitnessed(discs: Sequence[Iterable[GroupElement]], fams: DiscFamilies) -> list[Pattern]:
    """Families with no element of their disc in them."""
    out = []
    for i in range(1, fams.diameter + 1):
        elems = list(discs[i]) if i < len(discs) else []
        for p in fams.patterns(i):
            if not any(matches(fams.spec, x, p) for x in elems):
                out.append(p)
    return out
