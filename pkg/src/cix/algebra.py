"""Elements of the affine Weyl group of type C~n as labelled signed permutations.

An element is a pair ``(sigma, v)``.  ``sigma`` is a signed permutation stored
in one-line form: ``sigma[i-1]`` is the signed image of ``i``, so a negative
entry means the point is sent to the negative of its target.  ``v`` is an
integer translation vector.  All actions are right actions, and products are
read left to right.

Involutions of the group have a compact notation, the labelled cycle form,
where each 1-cycle or transposition carries a sign and an integer label::

    +0(1 2) -0(3) -1(4) @4

The trailing ``@n`` records the rank.  A positive transposition ``+k(a b)``
means ``v_a = k`` and ``v_b = -k``; a negative one ``-k(a b)`` means
``v_a = v_b = k`` with ``a -> -b`` and ``b -> -a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from cix.errors import (
    ElementParseError,
    InconsistentSpecError,
    NotAnInvolutionError,
    RankMismatchError,
)

__all__ = [
    "GroupElement",
    "LabelledCycle",
    "LabelledCycleType",
    "ClassSpec",
    "identity",
    "act",
    "multiply",
    "inverse",
    "conjugate",
    "conjugate_via_multiply",
    "is_identity",
    "is_involution",
    "has_involution_shape",
    "labelled_cycles",
    "labelled_cycle_type",
    "canonical_rep",
    "simple_reflections",
    "coxeter_matrix",
    "project_to_weyl",
    "from_cycles",
    "parse_element",
    "render_element",
    "parse_type",
]


class GroupElement(NamedTuple):
    """A pair (signed one-line permutation, translation vector).

    Build validated instances with :meth:`of`; the bare constructor performs
    no checks so that hot loops can skip them.
    """

    sigma: tuple[int, ...]
    v: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def of(cls, sigma: Iterable[int], v: Iterable[int] | None = None) -> "GroupElement":
        sigma = tuple(int(s) for s in sigma)
        n = len(sigma)
        v = (0,) * n if v is None else tuple(int(x) for x in v)
        if n < 2:
            raise ValueError(f"rank must be at least 2, got {n}")
        if len(v) != n:
            raise RankMismatchError(f"sigma has length {n} but v has length {len(v)}")
        if sorted(abs(s) for s in sigma) != list(range(1, n + 1)):
            raise ValueError(f"{sigma} is not a signed permutation of 1..{n}")
        return cls(sigma, v)

    def __str__(self) -> str:
        try:
            return render_element(self)
        except NotAnInvolutionError:
            return f"GroupElement(sigma={self.sigma}, v={self.v})"


class LabelledCycle(NamedTuple):
    """One cycle of the labelled cycle form; ``sign`` is +1 or -1."""

    entries: tuple[int, ...]
    sign: int
    label: int


class LabelledCycleType(NamedTuple):
    m: int
    k_e: int
    k_o: int
    l: int

    @property
    def rank(self) -> int:
        return 2 * self.m + self.k_e + self.k_o + self.l


@dataclass(frozen=True)
class ClassSpec:
    """A rank together with a labelled cycle type; names one conjugacy class."""

    n: int
    type: LabelledCycleType

    def __post_init__(self) -> None:
        t = self.type
        if not isinstance(t, LabelledCycleType):
            t = LabelledCycleType(*t)
            object.__setattr__(self, "type", t)
        if self.n < 2:
            raise InconsistentSpecError(f"rank must be at least 2, got {self.n}")
        if min(t) < 0:
            raise InconsistentSpecError(f"negative count in {tuple(t)}")
        if t.rank != self.n:
            raise InconsistentSpecError(
                f"2m + k_e + k_o + l = {t.rank} does not equal n = {self.n}"
            )

    @classmethod
    def of(cls, n: int, m: int, k_e: int, k_o: int, l: int) -> "ClassSpec":
        return cls(n, LabelledCycleType(m, k_e, k_o, l))

    def __str__(self) -> str:
        return f"n={self.n} type={','.join(map(str, self.type))}"


def parse_type(text: str) -> LabelledCycleType:
    """Parse ``"m,ke,ko,l"``."""
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected four comma-separated integers, got {text!r}")
    try:
        return LabelledCycleType(*(int(p) for p in parts))
    except ValueError:
        raise ValueError(f"expected four comma-separated integers, got {text!r}") from None


# --- group law -------------------------------------------------------------


def identity(n: int) -> GroupElement:
    return GroupElement(tuple(range(1, n + 1)), (0,) * n)


def act(v: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """Right action of a signed permutation on a vector: coordinate ``i``
    moves to ``|i^tau|`` and picks up the sign of ``i^tau``."""
    out = [0] * len(v)
    for i, t in enumerate(tau):
        if t > 0:
            out[t - 1] = v[i]
        else:
            out[-t - 1] = -v[i]
    return tuple(out)


def _compose(alpha: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    # apply alpha, then tau
    return tuple(tau[a - 1] if a > 0 else -tau[-a - 1] for a in alpha)


def _invert_perm(sigma: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(sigma)
    for i, s in enumerate(sigma, 1):
        if s > 0:
            out[s - 1] = i
        else:
            out[-s - 1] = -i
    return tuple(out)


def _check_rank(g: GroupElement, h: GroupElement) -> None:
    if len(g.sigma) != len(h.sigma):
        raise RankMismatchError(f"rank {len(g.sigma)} does not match rank {len(h.sigma)}")


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    _check_rank(g, h)
    vt = act(g.v, h.sigma)
    return GroupElement(_compose(g.sigma, h.sigma), tuple(a + b for a, b in zip(vt, h.v)))


def inverse(g: GroupElement) -> GroupElement:
    si = _invert_perm(g.sigma)
    return GroupElement(si, tuple(-x for x in act(g.v, si)))


def conjugate(x: GroupElement, g: GroupElement) -> GroupElement:
    """``g^-1 x g`` via the closed form ``(h^-1 s h, v^h + w - w^(h^-1 s h))``."""
    _check_rank(x, g)
    h, w = g.sigma, g.v
    s = _compose(_compose(_invert_perm(h), x.sigma), h)
    vh = act(x.v, h)
    ws = act(w, s)
    return GroupElement(s, tuple(a + b - c for a, b, c in zip(vh, w, ws)))


def conjugate_via_multiply(x: GroupElement, g: GroupElement) -> GroupElement:
    return multiply(multiply(inverse(g), x), g)


def is_identity(g: GroupElement) -> bool:
    return all(s == i for i, s in enumerate(g.sigma, 1)) and not any(g.v)


def is_involution(g: GroupElement) -> bool:
    """Order exactly two."""
    return not is_identity(g) and is_identity(multiply(g, g))


def has_involution_shape(g: GroupElement) -> bool:
    """Structural test: only 1-cycles and transpositions, with the label rules
    ``v_b = -v_a`` (positive transposition), ``v_b = v_a`` (negative
    transposition) and ``v_a = 0`` on positive fixed points.  The identity is
    excluded."""
    sigma, v = g.sigma, g.v
    for i, s in enumerate(sigma, 1):
        j = abs(s)
        if j == i:
            if s > 0 and v[i - 1] != 0:
                return False
            continue
        back = sigma[j - 1]
        if abs(back) != i or (back > 0) != (s > 0):
            return False
        if s > 0 and v[j - 1] != -v[i - 1]:
            return False
        if s < 0 and v[j - 1] != v[i - 1]:
            return False
    return not is_identity(g)


# --- labelled cycle form ---------------------------------------------------


def _cycles_unchecked(g: GroupElement) -> Iterator[LabelledCycle]:
    sigma, v = g.sigma, g.v
    for i, s in enumerate(sigma, 1):
        j = abs(s)
        if j == i:
            yield LabelledCycle((i,), 1 if s > 0 else -1, v[i - 1])
        elif j > i:
            yield LabelledCycle((i, j), 1 if s > 0 else -1, v[i - 1])


def _expressible(g: GroupElement) -> bool:
    """Only 1-cycles and sign-consistent transpositions whose labels obey the
    transposition rule; positive 1-cycles may carry any label."""
    sigma, v = g.sigma, g.v
    for i, s in enumerate(sigma, 1):
        j = abs(s)
        if j == i:
            continue
        back = sigma[j - 1]
        if abs(back) != i or (back > 0) != (s > 0):
            return False
        if v[j - 1] != (-v[i - 1] if s > 0 else v[i - 1]):
            return False
    return True


def labelled_cycles(g: GroupElement) -> list[LabelledCycle]:
    """All cycles of ``g`` in labelled cycle form, sorted by least entry.

    Positive fixed points are included.  Raises if ``g`` has a cycle the
    notation cannot express."""
    if not _expressible(g):
        raise NotAnInvolutionError(f"{g!r} has no labelled cycle form")
    return list(_cycles_unchecked(g))


def labelled_cycle_type(g: GroupElement) -> LabelledCycleType:
    if is_identity(g):
        return LabelledCycleType(0, 0, 0, g.n)
    if not has_involution_shape(g):
        raise NotAnInvolutionError(f"{g!r} is not an involution")
    m = k_e = k_o = l = 0
    for c in _cycles_unchecked(g):
        if len(c.entries) == 2:
            m += 1
        elif c.sign > 0:
            l += 1
        elif c.label % 2 == 0:
            k_e += 1
        else:
            k_o += 1
    return LabelledCycleType(m, k_e, k_o, l)


def from_cycles(n: int, cycles: Iterable[tuple[Sequence[int], int, int]]) -> GroupElement:
    """Build an element from ``(entries, sign, label)`` triples; unspecified
    points become positive fixed points labelled 0."""
    sigma = list(range(1, n + 1))
    v = [0] * n
    seen: set[int] = set()
    for entries, sign, label in cycles:
        entries = tuple(entries)
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        for e in entries:
            if not 1 <= e <= n:
                raise ValueError(f"entry {e} out of range 1..{n}")
            if e in seen:
                raise ValueError(f"entry {e} appears twice")
            seen.add(e)
        if len(entries) == 1:
            (a,) = entries
            sigma[a - 1] = sign * a
            v[a - 1] = label
        elif len(entries) == 2:
            a, b = entries
            sigma[a - 1] = sign * b
            sigma[b - 1] = sign * a
            v[a - 1] = label
            v[b - 1] = -label if sign > 0 else label
        else:
            raise ValueError("only 1-cycles and transpositions are expressible")
    return GroupElement(tuple(sigma), tuple(v))


def canonical_rep(spec: ClassSpec) -> GroupElement:
    m, k_e, k_o, l = spec.type
    cycles: list[tuple[tuple[int, ...], int, int]] = [
        ((2 * i + 1, 2 * i + 2), 1, 0) for i in range(m)
    ]
    p = 2 * m + 1
    for label, count in ((0, k_e), (1, k_o)):
        for _ in range(count):
            cycles.append(((p,), -1, label))
            p += 1
    return from_cycles(spec.n, cycles)


def project_to_weyl(g: GroupElement) -> GroupElement:
    return GroupElement(g.sigma, (0,) * len(g.sigma))


# --- Coxeter data ----------------------------------------------------------


def simple_reflections(n: int) -> tuple[GroupElement, ...]:
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")
    rs = [from_cycles(n, [((1,), -1, 0)])]
    rs += [from_cycles(n, [((i - 1, i), 1, 0)]) for i in range(2, n + 1)]
    rs.append(from_cycles(n, [((n,), -1, 1)]))
    return tuple(rs)


def coxeter_matrix(n: int) -> list[list[int]]:
    """Coxeter exponents of the C~n diagram, indexed to match ``simple_reflections``."""
    size = n + 1
    mat = [[1 if i == j else 2 for j in range(size)] for i in range(size)]
    for i in range(size - 1):
        if i == 0 or i == size - 2:
            e = 4
        else:
            e = 3
        mat[i][i + 1] = mat[i + 1][i] = e
    return mat


# --- text form -------------------------------------------------------------

_CYCLE = re.compile(r"([+-])(-?\d+)\((\d+(?: \d+)*)\)")
_TAIL = re.compile(r" @(\d+)")


def render_element(g: GroupElement) -> str:
    if is_identity(g):
        return f"e@{g.n}"
    parts = []
    for c in labelled_cycles(g):
        if len(c.entries) == 1 and c.sign > 0 and c.label == 0:
            continue
        sign = "+" if c.sign > 0 else "-"
        parts.append(f"{sign}{c.label}({' '.join(map(str, c.entries))})")
    return " ".join(parts) + f" @{g.n}"


def parse_element(text: str) -> GroupElement:
    if text.startswith("e@"):
        digits = text[2:]
        if not digits.isdigit():
            raise ElementParseError(f"malformed identity {text!r}")
        return identity(_rank(digits, text))
    cycles = []
    pos = 0
    while True:
        mo = _CYCLE.match(text, pos)
        if mo is None:
            raise ElementParseError(f"expected a cycle at offset {pos} in {text!r}")
        sign = 1 if mo.group(1) == "+" else -1
        entries = tuple(int(e) for e in mo.group(3).split(" "))
        cycles.append((entries, sign, int(mo.group(2))))
        pos = mo.end()
        tail = _TAIL.fullmatch(text, pos)
        if tail is not None:
            n = _rank(tail.group(1), text)
            break
        if not text.startswith(" ", pos):
            raise ElementParseError(f"expected ' ' or ' @n' at offset {pos} in {text!r}")
        pos += 1
    try:
        return from_cycles(n, cycles)
    except ValueError as exc:
        raise ElementParseError(f"{exc} in {text!r}") from None


def _rank(digits: str, text: str) -> int:
    n = int(digits)
    if n < 2:
        raise ElementParseError(f"rank must be at least 2 in {text!r}")
    return n
