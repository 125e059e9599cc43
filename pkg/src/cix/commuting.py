"""Commuting tests for involutions and generation of commuting neighbours.

Two predicates are provided and are meant to be cross-checked.
``commutes_direct`` compares ``xy`` with ``yx``.  ``commutes_structural``
splits the points into orbits of the pair of underlying permutations and
applies closed-form label conditions orbit by orbit; patterns without a known
rule are sent to the product test on that orbit alone.

``neighbor_templates`` goes the other way: given ``x`` it solves the
commutation equations ``u - u^s = v - v^t`` and ``u^t = -u`` block by block
and yields every element of the class of ``x`` inside a label window that
commutes with ``x``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from cix.algebra import (
    GroupElement,
    LabelledCycleType,
    act,
    labelled_cycle_type,
    multiply,
)
from cix.errors import RankMismatchError

__all__ = ["commutes_direct", "commutes_structural", "neighbor_templates", "neighbors"]


def commutes_direct(x: GroupElement, y: GroupElement) -> bool:
    return multiply(x, y) == multiply(y, x)


# --- structural test -------------------------------------------------------


def _orbits(s: Sequence[int], t: Sequence[int]) -> list[list[int]]:
    n = len(s)
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        k = 0
        while k < len(orbit):
            p = orbit[k]
            for q in (abs(s[p - 1]), abs(t[p - 1])):
                if not seen[q]:
                    seen[q] = True
                    orbit.append(q)
            k += 1
        out.append(sorted(orbit))
    return out


def _restricted_commute(x: GroupElement, y: GroupElement, pts: list[int]) -> bool:
    # both elements preserve the orbit, so the product test splits over orbits
    for p in pts:
        i = p - 1
        a, b = x.sigma[i], y.sigma[i]
        # (xy) and (yx) on p: permutation part and translation part
        xy_s = y.sigma[a - 1] if a > 0 else -y.sigma[-a - 1]
        yx_s = x.sigma[b - 1] if b > 0 else -x.sigma[-b - 1]
        if xy_s != yx_s:
            return False
    # translation: v^t + u versus u^s + v
    for p in pts:
        if _act_at(x.v, y.sigma, p) + y.v[p - 1] != _act_at(y.v, x.sigma, p) + x.v[p - 1]:
            return False
    return True


def _act_at(v: Sequence[int], tau: Sequence[int], p: int) -> int:
    # coordinate p of v^tau
    q = tau[p - 1]
    # tau is an involution on supports, so the preimage of p is |tau(p)|
    j = abs(q)
    return v[j - 1] if tau[j - 1] > 0 else -v[j - 1]


def _two_point(x: GroupElement, y: GroupElement, a: int, b: int) -> bool | None:
    xa, ya = x.sigma[a - 1], y.sigma[a - 1]
    x_tr, y_tr = abs(xa) != a, abs(ya) != a
    if x_tr and y_tr:
        if (xa > 0) != (ya > 0):
            return True
        return x.v[a - 1] == y.v[a - 1]
    if x_tr == y_tr:
        return None
    t, f = (x, y) if x_tr else (y, x)
    sa, sb = f.sigma[a - 1] > 0, f.sigma[b - 1] > 0
    if sa and sb:
        return True
    if sa != sb:
        return False
    lam, mu, nu = t.v[a - 1], f.v[a - 1], f.v[b - 1]
    if t.sigma[a - 1] > 0:
        return mu - nu == 2 * lam
    return mu + nu == 2 * lam


def _four_point(x: GroupElement, y: GroupElement, pts: list[int]) -> bool | None:
    # need two transpositions in each, interleaved on a 4-cycle
    if any(abs(x.sigma[p - 1]) == p or abs(y.sigma[p - 1]) == p for p in pts):
        return None
    xs = lambda p: x.sigma[p - 1] > 0  # noqa: E731
    ys = lambda p: y.sigma[p - 1] > 0  # noqa: E731
    xpos = sum(xs(p) for p in pts) // 2
    ypos = sum(ys(p) for p in pts) // 2
    if xpos < ypos:
        x, y, xpos, ypos, xs, ys = y, x, ypos, xpos, ys, xs
    # now x has at least as many positive transpositions as y
    if xpos == 2 and ypos == 1:
        return False
    if xpos == 1 and ypos == 0:
        return False
    alpha = pts[0]
    if xpos == 1 and ypos == 1:
        alpha = next(p for p in pts if xs(p) and ys(p))
    beta = abs(x.sigma[alpha - 1])
    gamma = abs(y.sigma[alpha - 1])
    l1, l2 = x.v[alpha - 1], x.v[gamma - 1]
    m1, m2 = y.v[alpha - 1], y.v[beta - 1]
    if xpos == 2 and ypos == 2:
        return m1 - l1 == m2 - l2
    if xpos == 2 and ypos == 0:
        return m1 - l1 == m2 + l2
    if xpos == 1 and ypos == 1:
        return m1 - l1 == m2 - l2
    return m1 - l1 == l2 - m2


def commutes_structural(x: GroupElement, y: GroupElement) -> bool:
    if len(x.sigma) != len(y.sigma):
        raise RankMismatchError(f"rank {len(x.sigma)} does not match rank {len(y.sigma)}")
    for orbit in _orbits(x.sigma, y.sigma):
        size = len(orbit)
        verdict: bool | None = None
        if size == 1:
            p = orbit[0]
            xs, ys = x.sigma[p - 1], y.sigma[p - 1]
            if xs > 0 and ys > 0:
                verdict = True
            elif xs > 0:
                verdict = x.v[p - 1] == 0
            elif ys > 0:
                verdict = y.v[p - 1] == 0
            else:
                verdict = x.v[p - 1] == y.v[p - 1]
        elif size == 2:
            verdict = _two_point(x, y, orbit[0], orbit[1])
        elif size == 4:
            verdict = _four_point(x, y, orbit)
        if verdict is None:
            verdict = _restricted_commute(x, y, orbit)
        if not verdict:
            return False
    return True


# --- neighbour generation --------------------------------------------------


def _local_sigma(sigma: Sequence[int], pts: tuple[int, ...]) -> tuple[int, ...]:
    index = {p: k for k, p in enumerate(pts, 1)}
    return tuple(index[s] if s > 0 else -index[-s] for s in (sigma[p - 1] for p in pts))


def _compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(b[i - 1] if i > 0 else -b[-i - 1] for i in a)


@lru_cache(maxsize=None)
def _local_taus(sig: tuple[int, ...], split: int) -> tuple[tuple[int, ...], ...]:
    """Signed involutions (or the identity) on ``len(sig)`` local points that
    commute with ``sig``.  With ``split > 0`` the block is two supports
    ``[0, split)`` and ``[split, k)`` and ``tau`` must swap them; otherwise
    ``tau`` must preserve the single support."""
    k = len(sig)
    ident = tuple(range(1, k + 1))
    out = []
    for perm in itertools.permutations(range(1, k + 1)):
        if split:
            if any((perm[i] <= split) == (i < split) for i in range(k)):
                continue
        for signs in itertools.product((1, -1), repeat=k):
            tau = tuple(p * s for p, s in zip(perm, signs))
            if _compose(tau, tau) != ident:
                continue
            if _compose(sig, tau) != _compose(tau, sig):
                continue
            out.append(tau)
    return tuple(out)


class _Solver:
    """Integer solutions ``u`` of ``u^t = -u`` and ``u - u^s = r`` inside a box.

    ``u`` is parametrised through the first constraint; the second is brought
    to reduced row echelon form once per ``(s, t)``."""

    __slots__ = ("k", "coords", "E", "R", "pivots", "free", "zero_rows")

    def __init__(self, sig: tuple[int, ...], tau: tuple[int, ...]):
        k = len(sig)
        self.k = k
        # each parameter drives a list of (coordinate, sign)
        coords: list[list[tuple[int, int]]] = []
        done = [False] * k
        for i in range(k):
            if done[i]:
                continue
            t = tau[i]
            j = abs(t) - 1
            done[i] = done[j] = True
            if j == i:
                if t < 0:
                    coords.append([(i, 1)])
            else:
                # u_j from u_i: positive swap gives u_j = -u_i, negative gives u_j = u_i
                coords.append([(i, 1), (j, -1 if t > 0 else 1)])
        self.coords = coords
        p = len(coords)
        # matrix of the map t -> u - u^s
        M = [[Fraction(0)] * p for _ in range(k)]
        for c, lst in enumerate(coords):
            e = [0] * k
            for idx, sgn in lst:
                e[idx] = sgn
            es = act(e, sig)
            for r in range(k):
                M[r][c] += e[r] - es[r]
        E = [[Fraction(int(r == c)) for c in range(k)] for r in range(k)]
        R = [row[:] for row in M]
        pivots: list[int] = []
        row = 0
        for col in range(p):
            piv = next((r for r in range(row, k) if R[r][col] != 0), None)
            if piv is None:
                continue
            R[row], R[piv] = R[piv], R[row]
            E[row], E[piv] = E[piv], E[row]
            f = R[row][col]
            R[row] = [x / f for x in R[row]]
            E[row] = [x / f for x in E[row]]
            for r in range(k):
                if r != row and R[r][col] != 0:
                    g = R[r][col]
                    R[r] = [a - g * b for a, b in zip(R[r], R[row])]
                    E[r] = [a - g * b for a, b in zip(E[r], E[row])]
            pivots.append(col)
            row += 1
        self.E = E
        self.R = R
        self.pivots = pivots
        self.free = [c for c in range(p) if c not in pivots]
        self.zero_rows = list(range(row, k))

    def solve(self, r: Sequence[int], bound: int) -> list[tuple[int, ...]]:
        k = self.k
        er = [sum(self.E[i][j] * r[j] for j in range(k)) for i in range(k)]
        if any(er[i] != 0 for i in self.zero_rows):
            return []
        p = len(self.coords)
        out = []
        rng = range(-bound, bound + 1)
        for fv in itertools.product(rng, repeat=len(self.free)):
            t = [0] * p
            for c, val in zip(self.free, fv):
                t[c] = val
            ok = True
            for i, col in enumerate(self.pivots):
                val = er[i] - sum(self.R[i][c] * t[c] for c in self.free)
                if val.denominator != 1 or abs(val) > bound:
                    ok = False
                    break
                t[col] = int(val)
            if not ok:
                continue
            u = [0] * k
            for c, lst in enumerate(self.coords):
                for idx, sgn in lst:
                    u[idx] = sgn * t[c]
            out.append(tuple(u))
        return out


@lru_cache(maxsize=None)
def _solver(sig: tuple[int, ...], tau: tuple[int, ...]) -> _Solver:
    return _Solver(sig, tau)


def _delta(tau: tuple[int, ...], u: tuple[int, ...]) -> tuple[int, int, int, int]:
    m = ke = ko = l = 0
    for i, t in enumerate(tau, 1):
        if abs(t) == i:
            if t > 0:
                l += 1
            elif u[i - 1] % 2:
                ko += 1
            else:
                ke += 1
        elif abs(t) > i:
            m += 1
    return (m, ke, ko, l)


def _supports(sigma: Sequence[int]) -> list[tuple[int, ...]]:
    out = []
    for i, s in enumerate(sigma, 1):
        j = abs(s)
        if j >= i:
            out.append((i,) if j == i else (i, j))
    return out


def _block_options(
    x: GroupElement, pts: tuple[int, ...], split: int, bound: int
) -> dict[tuple[int, int, int, int], list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """Local ``(tau, u)`` choices on one block, grouped by their contribution
    to the labelled cycle type."""
    sig = _local_sigma(x.sigma, pts)
    v = tuple(x.v[p - 1] for p in pts)
    grouped: dict[tuple[int, int, int, int], list] = {}
    for tau in _local_taus(sig, split):
        vt = act(v, tau)
        r = tuple(a - b for a, b in zip(v, vt))
        for u in _solver(sig, tau).solve(r, bound):
            grouped.setdefault(_delta(tau, u), []).append((tau, u))
    return grouped


def neighbor_templates(
    x: GroupElement, bound: int, target: LabelledCycleType | None = None
) -> Iterator[GroupElement]:
    """Yield every ``y != x`` of labelled cycle type ``target`` (default: the
    type of ``x``) with all ``|u_i| <= bound`` that commutes with ``x``.

    Each element is produced exactly once."""
    if target is None:
        target = labelled_cycle_type(x)
    n = len(x.sigma)
    sups = _supports(x.sigma)
    # tau may swap two supports only if they carry isomorphic sigma-cycles on
    # signed points; transpositions of either sign qualify
    kinds = [(len(s), len(s) == 2 or x.sigma[s[0] - 1] > 0) for s in sups]
    cache: dict[tuple[tuple[int, ...], int], dict] = {}

    def options(pts: tuple[int, ...], split: int) -> dict:
        key = (pts, split)
        got = cache.get(key)
        if got is None:
            got = cache[key] = _block_options(x, pts, split, bound)
        return got

    chosen: list[tuple[tuple[int, ...], list]] = []
    used = [False] * len(sups)
    goal = tuple(target)

    def rec(idx: int, counts: tuple[int, int, int, int]) -> Iterator[GroupElement]:
        while idx < len(sups) and used[idx]:
            idx += 1
        if idx == len(sups):
            if counts == goal:
                yield from _assemble(x, n, chosen)
            return
        used[idx] = True
        blocks = [(sups[idx], 0)]
        for j in range(idx + 1, len(sups)):
            if not used[j] and kinds[j] == kinds[idx]:
                blocks.append((sups[idx] + sups[j], len(sups[idx])))
        for pts, split in blocks:
            if split:
                j = sups.index(pts[split:])
                used[j] = True
            for d, opts in options(pts, split).items():
                nc = (counts[0] + d[0], counts[1] + d[1], counts[2] + d[2], counts[3] + d[3])
                if any(a > b for a, b in zip(nc, goal)):
                    continue
                chosen.append((pts, opts))
                yield from rec(idx + 1, nc)
                chosen.pop()
            if split:
                used[j] = False
        used[idx] = False

    yield from rec(0, (0, 0, 0, 0))


def _assemble(x: GroupElement, n: int, chosen: list) -> Iterator[GroupElement]:
    blocks = [pts for pts, _ in chosen]
    for combo in itertools.product(*(opts for _, opts in chosen)):
        sigma = [0] * n
        u = [0] * n
        for pts, (tau, uloc) in zip(blocks, combo):
            for k, p in enumerate(pts):
                t = tau[k]
                sigma[p - 1] = pts[t - 1] if t > 0 else -pts[-t - 1]
                u[p - 1] = uloc[k]
        y = GroupElement(tuple(sigma), tuple(u))
        if y != x:
            yield y


def neighbors(x: GroupElement, bound: int) -> list[GroupElement]:
    return list(neighbor_templates(x, bound))
