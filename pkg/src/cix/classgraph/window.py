"""Finite truncations of an involution class by a per-coordinate label bound."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterator

from cix.algebra import ClassSpec, GroupElement, labelled_cycle_type
from cix.errors import InfeasibleWindowError


def even_labels(bound: int) -> list[int]:
    return [x for x in range(-bound, bound + 1) if x % 2 == 0]


def odd_labels(bound: int) -> list[int]:
    return [x for x in range(-bound, bound + 1) if x % 2]


def check_feasible(spec: ClassSpec, bound: int) -> None:
    if bound < 0:
        raise InfeasibleWindowError(f"bound must be nonnegative, got {bound}")
    if spec.type.k_o > 0 and bound < 1:
        raise InfeasibleWindowError(
            f"{spec} has odd-labelled negative 1-cycles, which need bound >= 1"
        )


def is_feasible(spec: ClassSpec, bound: int) -> bool:
    return bound >= 0 and not (spec.type.k_o > 0 and bound < 1)


def class_size(spec: ClassSpec, bound: int) -> int:
    check_feasible(spec, bound)
    m, k_e, k_o, l = spec.type
    shapes = factorial(spec.n) // (
        2**m * factorial(m) * factorial(k_e) * factorial(k_o) * factorial(l)
    )
    return (
        shapes
        * (2 * (2 * bound + 1)) ** m
        * len(even_labels(bound)) ** k_e
        * len(odd_labels(bound)) ** k_o
    )


def in_window(g: GroupElement, bound: int) -> bool:
    return all(-bound <= x <= bound for x in g.v)


def _pairings(points: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    # perfect matchings of ``points``, each pair written (low, high)
    if not points:
        yield []
        return
    a = points[0]
    for j in range(1, len(points)):
        rest = points[1:j] + points[j + 1 :]
        for tail in _pairings(rest):
            yield [(a, points[j])] + tail


def iter_class(spec: ClassSpec, bound: int) -> Iterator[GroupElement]:
    """All class elements with every ``|v_i| <= bound``, without repeats."""
    check_feasible(spec, bound)
    n = spec.n
    m, k_e, k_o, _ = spec.type
    everything = tuple(range(1, n + 1))
    evens, odds = even_labels(bound), odd_labels(bound)
    trans_labels = [(s, x) for s in (1, -1) for x in range(-bound, bound + 1)]
    for pair_pts in itertools.combinations(everything, 2 * m):
        rest = tuple(p for p in everything if p not in pair_pts)
        for pairs in _pairings(pair_pts):
            for e_pts in itertools.combinations(rest, k_e):
                rest2 = tuple(p for p in rest if p not in e_pts)
                for o_pts in itertools.combinations(rest2, k_o):
                    sigma = list(everything)
                    for a, b in pairs:
                        sigma[a - 1], sigma[b - 1] = b, a
                    for p in e_pts + o_pts:
                        sigma[p - 1] = -p
                    for tl in itertools.product(trans_labels, repeat=m):
                        s = sigma[:]
                        v0 = [0] * n
                        for (a, b), (sgn, x) in zip(pairs, tl):
                            s[a - 1], s[b - 1] = sgn * b, sgn * a
                            v0[a - 1] = x
                            v0[b - 1] = -x if sgn > 0 else x
                        st = tuple(s)
                        for el in itertools.product(evens, repeat=k_e):
                            for ol in itertools.product(odds, repeat=k_o):
                                v = v0[:]
                                for p, x in zip(e_pts, el):
                                    v[p - 1] = x
                                for p, x in zip(o_pts, ol):
                                    v[p - 1] = x
                                yield GroupElement(st, tuple(v))


@dataclass(frozen=True)
class WindowedClass:
    """The elements of one class whose labels all lie in ``[-bound, bound]``.

    Membership and size are answered without materialising the elements;
    ``elements`` builds the full set on first use."""

    spec: ClassSpec
    bound: int

    def __post_init__(self) -> None:
        check_feasible(self.spec, self.bound)

    def __len__(self) -> int:
        return class_size(self.spec, self.bound)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter_class(self.spec, self.bound)

    def __contains__(self, g: object) -> bool:
        if not isinstance(g, GroupElement) or g.n != self.spec.n:
            return False
        if not in_window(g, self.bound):
            return False
        try:
            return labelled_cycle_type(g) == self.spec.type
        except ValueError:
            return False

    @property
    def elements(self) -> frozenset[GroupElement]:
        cached = self.__dict__.get("_elements")
        if cached is None:
            cached = frozenset(self)
            object.__setattr__(self, "_elements", cached)
        return cached


def enumerate_class(spec: ClassSpec, bound: int) -> WindowedClass:
    return WindowedClass(spec, bound)

