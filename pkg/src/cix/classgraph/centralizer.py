"""The label-preserving part of the centralizer of a class representative.

For the canonical representative ``a`` the signed permutations ``h`` with
``a^(h, 0) = a`` form a group ``H``.  It permutes the transposition pairs of
``a`` (swapping inside a pair and negating a pair jointly), acts as signed
permutations on the even negative points and on the positive fixed points,
and as plain permutations on the odd negative points.  Conjugation by ``H``
only permutes and negates labels, so it maps every label window onto itself
and preserves distance to ``a``.

Orbits of ``H`` are identified by a canonical form.  The points are joined by
the pair edges of ``a`` and the transposition edges of an element ``y``; each
point has at most one edge of each kind, so the components are paths or
cycles.  A component is encoded by minimising over every traversal order and
every allowed sign change; the orbit key is the sorted tuple of component
codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterator, Sequence

from cix.algebra import ClassSpec, GroupElement, conjugate, render_element

P, E, O, F = 0, 1, 2, 3


@dataclass(frozen=True)
class Layout:
    """Block structure of the canonical representative of ``spec``."""

    spec: ClassSpec

    @cached_property
    def code(self) -> tuple[int, ...]:
        m, k_e, k_o, l = self.spec.type
        return (0,) + (P,) * (2 * m) + (E,) * k_e + (O,) * k_o + (F,) * l

    @cached_property
    def mate(self) -> tuple[int, ...]:
        m = self.spec.type.m
        out = [0] * (self.spec.n + 1)
        for i in range(m):
            out[2 * i + 1], out[2 * i + 2] = 2 * i + 2, 2 * i + 1
        return tuple(out)

    @cached_property
    def blocks(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {P: [], E: [], O: [], F: []}
        for p in range(1, self.spec.n + 1):
            out[self.code[p]].append(p)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def traversal_cache(self) -> dict:
        return {}

    @cached_property
    def order(self) -> int:
        m, k_e, k_o, l = self.spec.type
        return (
            factorial(m) * 4**m * factorial(k_e) * 2**k_e * factorial(k_o)
            * factorial(l) * 2**l
        )


def layout(spec: ClassSpec) -> Layout:
    return Layout(spec)


# --- the group itself ------------------------------------------------------


def iter_group(lay: Layout, odd_signs: bool = False) -> Iterator[tuple[int, ...]]:
    """Every element of ``H`` as a one-line signed permutation.

    With ``odd_signs`` the odd negative points may also change sign; these
    permutations centralize ``a`` only together with a translation."""
    n = lay.spec.n
    m = lay.spec.type.m
    pairs = [(2 * i + 1, 2 * i + 2) for i in range(m)]
    pair_choices = []
    for perm in itertools.permutations(range(m)):
        for flips in itertools.product(range(4), repeat=m):
            img = []
            for i, j in enumerate(perm):
                a, b = pairs[j]
                f = flips[i]
                if f & 1:
                    a, b = b, a
                s = -1 if f & 2 else 1
                img.append((pairs[i], (s * a, s * b)))
            pair_choices.append(img)

    def signed_block(pts: tuple[int, ...], signed: bool) -> list[list[tuple[int, int]]]:
        out = []
        for perm in itertools.permutations(pts):
            sign_sets = itertools.product((1, -1), repeat=len(pts)) if signed else [(1,) * len(pts)]
            for signs in sign_sets:
                out.append([(p, s * q) for p, q, s in zip(pts, perm, signs)])
        return out

    e_ch = signed_block(lay.blocks[E], True)
    o_ch = signed_block(lay.blocks[O], odd_signs)
    f_ch = signed_block(lay.blocks[F], True)
    for pc in pair_choices:
        for ec in e_ch:
            for oc in o_ch:
                for fc in f_ch:
                    g = [0] * n
                    for (a, b), (ia, ib) in pc:
                        g[a - 1], g[b - 1] = ia, ib
                    for p, q in itertools.chain(ec, oc, fc):
                        g[p - 1] = q
                    yield tuple(g)


def generators(lay: Layout) -> list[tuple[int, ...]]:
    """A small generating set of ``H``: adjacent swaps inside each block, a
    swap and a joint negation inside the first pair, and a negation of the
    first point of each signed block."""
    n = lay.spec.n
    m = lay.spec.type.m
    ident = list(range(1, n + 1))
    gens = []
    for i in range(m - 1):
        g = ident[:]
        a, b, c, d = 2 * i + 1, 2 * i + 2, 2 * i + 3, 2 * i + 4
        g[a - 1], g[b - 1], g[c - 1], g[d - 1] = c, d, a, b
        gens.append(tuple(g))
    if m:
        g = ident[:]
        g[0], g[1] = 2, 1
        gens.append(tuple(g))
        g = ident[:]
        g[0], g[1] = -1, -2
        gens.append(tuple(g))
    for block, signed in ((E, True), (O, False), (F, True)):
        pts = lay.blocks[block]
        for a, b in zip(pts, pts[1:]):
            g = ident[:]
            g[a - 1], g[b - 1] = b, a
            gens.append(tuple(g))
        if signed and pts:
            g = ident[:]
            g[pts[0] - 1] = -pts[0]
            gens.append(tuple(g))
    return gens


def act_on(y: GroupElement, h: Sequence[int]) -> GroupElement:
    return conjugate(y, GroupElement(tuple(h), (0,) * len(h)))


# --- canonical form --------------------------------------------------------


def _walk(start: int, first: int, mate, xp, stop_at_start: bool) -> list[int]:
    seq = [start]
    cur, kind = start, first
    while True:
        nxt = mate[cur] if kind == 0 else xp[cur]
        if not nxt or (stop_at_start and nxt == start):
            return seq
        seq.append(nxt)
        cur, kind = nxt, 1 - kind


def _traversals(lay: Layout, sigma: tuple[int, ...]) -> list[tuple[tuple, tuple[int, ...]]]:
    """Each component along one traversal: its label-free description and the
    0-based coordinates whose labels complete it.  Cached per permutation."""
    cache = lay.traversal_cache
    got = cache.get(sigma)
    if got is not None:
        return got
    n = lay.spec.n
    mate, code = lay.mate, lay.code
    xp = [0] * (n + 1)
    for p in range(1, n + 1):
        q = abs(sigma[p - 1])
        if q != p:
            xp[p] = q
    seen = [False] * (n + 1)
    out = []
    for p in range(1, n + 1):
        if seen[p]:
            continue
        # find an endpoint, or stay at p if the component is a cycle
        start, first = p, 0 if mate[p] else 1
        cur, kind = p, 1
        while True:
            nxt = mate[cur] if kind == 0 else xp[cur]
            if not nxt:
                start, first = cur, 1 - kind
                break
            if nxt == p:
                break
            cur, kind = nxt, 1 - kind
        seq = _walk(start, first, mate, xp, True)
        idx = {q: k for k, q in enumerate(seq, 1)}
        shape = []
        for q in seq:
            seen[q] = True
            t = sigma[q - 1]
            img = idx[abs(t)] if t > 0 else -idx[-t]
            shape.append((code[q], idx[mate[q]] if mate[q] else 0, img))
        out.append((tuple(shape), tuple(q - 1 for q in seq)))
    cache[sigma] = out
    return out


def _raw_components(lay: Layout, y: GroupElement) -> list[tuple]:
    u = y.v
    return [
        tuple((c, m, i, u[j]) for (c, m, i), j in zip(shape, coords))
        for shape, coords in _traversals(lay, y.sigma)
    ]


def _minimise(raw: tuple) -> tuple[tuple, int]:
    """Least encoding of a component over traversal orders and allowed sign
    changes, with the number of (order, signs) pairs attaining it."""
    size = len(raw)
    code = [0] + [r[0] for r in raw]
    mate = [0] + [r[1] for r in raw]
    img = [0] + [r[2] for r in raw]
    lab = [0] + [r[3] for r in raw]
    xp = [0] + [abs(r[2]) if abs(r[2]) != k else 0 for k, r in enumerate(raw, 1)]
    ends = [k for k in range(1, size + 1) if not mate[k] or not xp[k]]
    orders: set[tuple[int, ...]] = set()
    if ends:
        for k in ends:
            orders.add(tuple(_walk(k, 0 if mate[k] else 1, mate, xp, False)))
    else:
        for k in range(1, size + 1):
            for first in (0, 1):
                orders.add(tuple(_walk(k, first, mate, xp, True)))
    units: list[tuple[int, ...]] = []
    for k in range(1, size + 1):
        if code[k] == P:
            if mate[k] > k:
                units.append((k, mate[k]))
        elif code[k] != O:
            units.append((k,))
    sign = [1] * (size + 1)
    best = None
    count = 0
    for choice in itertools.product((1, -1), repeat=len(units)):
        for unit, sg in zip(units, choice):
            for k in unit:
                sign[k] = sg
        for seq in orders:
            pos = [0] * (size + 1)
            for j, k in enumerate(seq, 1):
                pos[k] = j
            enc = []
            for k in seq:
                t = img[k]
                q = abs(t)
                im = pos[q] * (1 if t > 0 else -1) * sign[k] * sign[q]
                enc.append((code[k], pos[mate[k]] if mate[k] else 0, im, sign[k] * lab[k]))
            enc_t = tuple(enc)
            if best is None or enc_t < best:
                best, count = enc_t, 1
            elif enc_t == best:
                count += 1
    return best, count


@lru_cache(maxsize=1 << 20)
def _minimise_labelled(shape: tuple, labels: tuple[int, ...]) -> tuple[tuple, int]:
    return _minimise(tuple((c, m, i, x) for (c, m, i), x in zip(shape, labels)))


@dataclass(frozen=True)
class Canonical:
    key: tuple
    stabilizer: int


def canonical_form(lay: Layout, y: GroupElement) -> Canonical:
    u = y.v
    encs = sorted(
        _minimise_labelled(shape, tuple([u[j] for j in coords]))
        for shape, coords in _traversals(lay, y.sigma)
    )
    stab = 1
    # identical components can also be permuted among themselves
    for _, group in itertools.groupby(encs):
        g = list(group)
        stab *= factorial(len(g)) * g[0][1] ** len(g)
    return Canonical(tuple(e for e, _ in encs), stab)


def orbit_key(lay: Layout, y: GroupElement) -> tuple:
    return canonical_form(lay, y).key


def orbit_size(lay: Layout, y: GroupElement) -> int:
    return lay.order // canonical_form(lay, y).stabilizer


def element_from_key(lay: Layout, key: tuple) -> GroupElement:
    """A fixed element of the orbit with the given key."""
    n = lay.spec.n
    free = {b: list(pts) for b, pts in lay.blocks.items()}
    for b in free:
        free[b].reverse()
    sigma = [0] * n
    u = [0] * n
    for enc in key:
        real: list[int] = [0] * (len(enc) + 1)
        for k, (c, mate_idx, _, _) in enumerate(enc, 1):
            if real[k]:
                continue
            if c == P:
                a = free[P].pop()
                b = free[P].pop()
                real[k] = a
                real[mate_idx] = b
            else:
                real[k] = free[c].pop()
        for k, (_, _, img, lab) in enumerate(enc, 1):
            p = real[k]
            sigma[p - 1] = real[img] if img > 0 else -real[-img]
            u[p - 1] = lab
    return GroupElement(tuple(sigma), tuple(u))


def orbit(lay: Layout, y: GroupElement) -> set[GroupElement]:
    return {act_on(y, h) for h in iter_group(lay)}


def least_render(lay: Layout, y: GroupElement) -> str:
    """Lexicographically least rendered string over the ``H``-orbit of ``y``."""
    return min(render_element(z) for z in orbit(lay, y))

