"""Breadth-first discs around the class representative inside a label window.

Two engines compute the same :class:`DiscTable`.

``"element"`` keeps a distance for every reached element.  It is simple and
serves as the reference, but its memory grows with the window.

``"orbit"`` works on orbits of the label-preserving centralizer ``H`` of the
representative.  ``H`` fixes the representative and maps the window onto
itself, so distance is constant on orbits and the neighbours of one orbit
member determine those of all members.  Only one element per orbit is kept.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal

from networkx.utils import UnionFind

from cix.algebra import ClassSpec, GroupElement, canonical_rep, render_element
from cix.classgraph import centralizer as cz
from cix.classgraph.window import class_size, check_feasible, is_feasible
from cix.commuting import neighbor_templates

Engine = Literal["auto", "element", "orbit"]

# classes up to this size use the element engine under "auto"
AUTO_ELEMENT_LIMIT = 40_000


@dataclass(frozen=True)
class OrbitSummary:
    """One centralizer orbit inside a disc.  ``rep`` is the least rendered
    string over the orbit and is computed on first access."""

    element: GroupElement
    size: int
    layout: cz.Layout = field(repr=False, compare=False)
    members: tuple[GroupElement, ...] | None = field(default=None, repr=False, compare=False)

    @cached_property
    def rep(self) -> str:
        if self.members is not None:
            return min(render_element(z) for z in self.members)
        return cz.least_render(self.layout, self.element)


@dataclass(frozen=True)
class Disc:
    i: int
    size: int
    orbits: tuple[OrbitSummary, ...]
    members: frozenset[GroupElement] | None = field(default=None, repr=False)

    def sorted_orbits(self) -> list[OrbitSummary]:
        return sorted(self.orbits, key=lambda o: o.rep)


@dataclass(frozen=True)
class DiscTable:
    spec: ClassSpec
    bound: int
    base: GroupElement
    discs: tuple[Disc, ...]
    unreached: int
    stable: bool | None = None
    # distances by orbit key, used for stability comparisons
    distances: dict = field(default_factory=dict, repr=False, compare=False)
    engine: str = "orbit"
    collapsed: bool = True

    @property
    def diameter(self) -> int | None:
        """Largest disc index, or None if some window element was not reached."""
        return len(self.discs) - 1 if self.unreached == 0 else None

    @property
    def eccentricity(self) -> int:
        return len(self.discs) - 1

    @property
    def total(self) -> int:
        return sum(d.size for d in self.discs) + self.unreached

    def disc_of(self, g: GroupElement) -> int | None:
        if self.engine == "element":
            return self.distances.get(g)
        return self.distances.get(cz.orbit_key(cz.layout(self.spec), g))


def _workers(requested: int | None) -> int:
    if requested is None:
        env = os.environ.get("CIX_THREADS")
        requested = int(env) if env else 1
    return max(1, min(requested, os.cpu_count() or 1))


# --- element engine --------------------------------------------------------


def _element_bfs(spec: ClassSpec, bound: int, max_depth: int) -> list[set[GroupElement]]:
    a = canonical_rep(spec)
    t = spec.type
    seen = {a}
    layers = [{a}]
    frontier = [a]
    for _ in range(max_depth):
        nxt: set[GroupElement] = set()
        for x in frontier:
            for y in neighbor_templates(x, bound, t):
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        if not nxt:
            break
        layers.append(nxt)
        frontier = sorted(nxt)
    return layers


# --- orbit engine ----------------------------------------------------------

_WORKER_LAYOUT: dict = {}
_FLUSH = 500_000


def _expand(args: tuple[ClassSpec, int, list[GroupElement]]) -> set:
    spec, bound, chunk = args
    lay = _WORKER_LAYOUT.get(spec)
    if lay is None:
        lay = _WORKER_LAYOUT[spec] = cz.layout(spec)
    # many frontier elements share neighbours; canonicalise each once, but
    # flush often enough that large frontiers stay in memory
    keys: set = set()
    ys: set[GroupElement] = set()
    for x in chunk:
        ys.update(neighbor_templates(x, bound, spec.type))
        if len(ys) > _FLUSH:
            keys.update(cz.orbit_key(lay, y) for y in ys)
            ys.clear()
    keys.update(cz.orbit_key(lay, y) for y in ys)
    return keys


def _orbit_bfs(
    spec: ClassSpec, bound: int, max_depth: int, workers: int
) -> list[dict[tuple, GroupElement]]:
    lay = cz.layout(spec)
    a = canonical_rep(spec)
    ka = cz.orbit_key(lay, a)
    seen = {ka}
    layers = [{ka: a}]
    frontier = [a]
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for _ in range(max_depth):
            if pool is None:
                found = _expand((spec, bound, frontier))
            else:
                size = max(1, len(frontier) // (workers * 4))
                chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
                found = set()
                for part in pool.map(_expand, [(spec, bound, c) for c in chunks]):
                    found |= part
            new = sorted(k for k in found if k not in seen)
            if not new:
                break
            seen.update(new)
            layer = {k: cz.element_from_key(lay, k) for k in new}
            layers.append(layer)
            frontier = list(layer.values())
    finally:
        if pool is not None:
            pool.shutdown()
    return layers


# --- public API ------------------------------------------------------------


def _choose_engine(spec: ClassSpec, bound: int, engine: Engine) -> str:
    if engine == "auto":
        return "element" if class_size(spec, bound) <= AUTO_ELEMENT_LIMIT else "orbit"
    if engine not in ("element", "orbit"):
        raise ValueError(f"unknown engine {engine!r}")
    return engine


def bfs_discs(
    spec: ClassSpec,
    bound: int,
    max_depth: int | None = None,
    *,
    engine: Engine = "auto",
    collapse: bool = True,
    check_stability: bool = True,
    workers: int | None = None,
) -> DiscTable:
    """Discs of the windowed commuting involution graph around the canonical
    representative.

    With ``collapse`` each disc is summarised by centralizer orbits; without
    it every element is its own summary (element engine only).  With
    ``check_stability`` the run is repeated at ``bound - 2`` and the
    ``stable`` flag records whether the inner window got the same discs."""
    check_feasible(spec, bound)
    if max_depth is None:
        max_depth = spec.n + 4
    kind = _choose_engine(spec, bound, engine)
    if not collapse:
        kind = "element"
    table = _run(spec, bound, max_depth, kind, _workers(workers), collapse)
    if check_stability:
        stable = _stable(table, max_depth, kind, _workers(workers))
        table = DiscTable(
            table.spec, table.bound, table.base, table.discs, table.unreached,
            stable, table.distances, table.engine, table.collapsed,
        )
    return table


def _run(
    spec: ClassSpec, bound: int, max_depth: int, kind: str, workers: int, collapse: bool
) -> DiscTable:
    lay = cz.layout(spec)
    a = canonical_rep(spec)
    total = class_size(spec, bound)
    discs = []
    distances: dict = {}
    if kind == "element":
        layers = _element_bfs(spec, bound, max_depth)
        for i, layer in enumerate(layers):
            for y in layer:
                distances[y] = i
            members = frozenset(layer)
            if collapse:
                orbits = _collapse_members(lay, layer)
            else:
                orbits = tuple(OrbitSummary(y, 1, lay, (y,)) for y in sorted(layer))
            discs.append(Disc(i, len(layer), orbits, members))
    else:
        layers = _orbit_bfs(spec, bound, max_depth, workers)
        for i, layer in enumerate(layers):
            orbits = []
            size = 0
            for k, y in layer.items():
                distances[k] = i
                s = lay.order // cz.canonical_form(lay, y).stabilizer
                size += s
                orbits.append(OrbitSummary(y, s, lay))
            discs.append(Disc(i, size, tuple(orbits)))
    reached = sum(d.size for d in discs)
    return DiscTable(
        spec, bound, a, tuple(discs), total - reached, None, distances, kind,
        collapse or kind == "orbit",
    )


def _collapse_members(lay: cz.Layout, layer: Iterable[GroupElement]) -> tuple[OrbitSummary, ...]:
    members = set(layer)
    uf = UnionFind(members)
    gens = cz.generators(lay)
    for y in members:
        for g in gens:
            z = cz.act_on(y, g)
            if z in members:
                uf.union(y, z)
    out = []
    for part in uf.to_sets():
        elems = tuple(sorted(part))
        out.append(OrbitSummary(elems[0], len(elems), lay, elems))
    return tuple(out)


def orbit_collapse(table: DiscTable) -> DiscTable:
    """Merge each disc's elements into orbits of the window-preserving
    centralizer of the representative, using union-find over generators.

    Needs a table that kept its members (element engine).  Disc sizes are
    unchanged."""
    lay = cz.layout(table.spec)
    discs = []
    for d in table.discs:
        if d.members is None:
            discs.append(d)
            continue
        discs.append(Disc(d.i, d.size, _collapse_members(lay, d.members), d.members))
    return DiscTable(
        table.spec, table.bound, table.base, tuple(discs), table.unreached,
        table.stable, table.distances, table.engine, True,
    )


def _inner(g: GroupElement, bound: int) -> bool:
    return all(-bound <= x <= bound for x in g.v)


def _stable(table: DiscTable, max_depth: int, kind: str, workers: int) -> bool:
    inner_bound = table.bound - 2
    if not is_feasible(table.spec, inner_bound):
        return False
    small = _run(table.spec, inner_bound, max_depth, kind, workers, collapse=False)
    lay = cz.layout(table.spec)
    outer = {}
    if kind == "element":
        for g, i in table.distances.items():
            if _inner(g, inner_bound):
                outer[g] = i
    else:
        for d in table.discs:
            for o in d.orbits:
                if _inner(o.element, inner_bound):
                    outer[cz.orbit_key(lay, o.element)] = d.i
    return outer == small.distances


def diameter_within_window(
    spec: ClassSpec, bound: int, max_depth: int | None = None, **kwargs
) -> tuple[int | None, bool]:
    """Windowed diameter (None if some window element is unreached) and the
    stability flag."""
    table = bfs_discs(spec, bound, max_depth, **kwargs)
    return table.diameter, bool(table.stable)

