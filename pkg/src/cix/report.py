"""Rendering of disc tables and verdicts: JSON, DOT and plain-text tables."""

from __future__ import annotations

import json
from typing import Hashable

from cix.algebra import render_element
from cix.classgraph import centralizer as cz
from cix.classgraph.bfs import DiscTable, OrbitSummary
from cix.classgraph.connectivity import ConnectivityVerdict
from cix.commuting import neighbor_templates


def table_to_dict(table: DiscTable) -> dict:
    """The table as plain data, keys in the documented order and orbits
    sorted by their representative string."""
    return {
        "n": table.spec.n,
        "type": list(table.spec.type),
        "bound": table.bound,
        "base": render_element(table.base),
        "stable": bool(table.stable),
        "discs": [
            {
                "i": d.i,
                "size": d.size,
                "orbits": [{"rep": o.rep, "size": o.size} for o in d.sorted_orbits()],
            }
            for d in table.discs
        ],
        "unreached": table.unreached,
    }


def to_json(table: DiscTable) -> str:
    return json.dumps(table_to_dict(table), indent=2)


def verdict_to_dict(verdict: ConnectivityVerdict) -> dict:
    b = verdict.bound
    return {
        "n": verdict.spec.n,
        "type": list(verdict.spec.type),
        "verdict": verdict.verdict,
        "case": verdict.case,
        "diameter": None if b is None else {"kind": b.kind, "lo": b.lo, "hi": b.hi, "key": b.key},
    }


# --- DOT -------------------------------------------------------------------


def _key_fn(table: DiscTable):
    if not table.collapsed:
        return lambda g: g
    lay = cz.layout(table.spec)
    return lambda g: cz.orbit_key(lay, g)


def orbit_edges(table: DiscTable, intra_disc: bool = False) -> set[tuple[tuple[int, int], tuple[int, int]]]:
    """Edges of the collapsed graph between orbit nodes ``(disc, index)``,
    with indices following :meth:`Disc.sorted_orbits`.

    Two orbits are joined when some members commute.  The centralizer acts
    transitively on each orbit, so it is enough to look at the neighbours of
    one member of the outer orbit."""
    key = _key_fn(table)
    node: dict[Hashable, tuple[int, int]] = {}
    ordered: list[list[OrbitSummary]] = []
    for d in table.discs:
        orbs = d.sorted_orbits()
        ordered.append(orbs)
        for j, o in enumerate(orbs):
            node[key(o.element)] = (d.i, j)
    edges = set()
    t = table.spec.type
    for i, orbs in enumerate(ordered):
        for j, o in enumerate(orbs):
            for y in neighbor_templates(o.element, table.bound, t):
                other = node.get(key(y))
                if other is None:
                    continue
                if other[0] == i - 1 or (intra_disc and other[0] == i and other != (i, j)):
                    edges.add(tuple(sorted((other, (i, j)))))
    return edges


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(table: DiscTable, intra_disc: bool = False) -> str:
    """An undirected DOT graph with one node per orbit, ranked by disc.

    Edges between orbits of the same disc are left out unless
    ``intra_disc`` is set."""
    lines = ["graph discs {", f"  label={_quote(f'{table.spec} B={table.bound}')};"]
    lines.append("  rankdir=LR;")
    lines.append("  node [shape=box];")
    for d in table.discs:
        lines.append(f"  subgraph disc{d.i} {{")
        lines.append("    rank=same;")
        for j, o in enumerate(d.sorted_orbits()):
            lines.append(f"    d{d.i}_{j} [label={_quote(f'{o.rep} x{o.size}')}];")
        lines.append("  }")
    for (i1, j1), (i2, j2) in sorted(orbit_edges(table, intra_disc)):
        lines.append(f"  d{i1}_{j1} -- d{i2}_{j2};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- text ------------------------------------------------------------------


def render_table_text(table: DiscTable) -> str:
    """One column per disc, listing orbit representatives with orbit sizes."""
    spec = table.spec
    head = (
        f"a = {render_element(table.base)}   {spec}   B={table.bound}   "
        f"stable={'yes' if table.stable else 'no'}"
    )
    cols = []
    for d in table.discs:
        cells = [f"disc {d.i}", f"size {d.size}", f"{len(d.orbits)} orbits"]
        cells += [f"{o.rep} x{o.size}" for o in d.sorted_orbits()]
        cols.append(cells)
    widths = [max(len(c) for c in col) for col in cols]
    depth = max(len(c) for c in cols)
    rows = []
    for r in range(depth):
        cells = [(col[r] if r < len(col) else "").ljust(w) for col, w in zip(cols, widths)]
        rows.append("  ".join(cells).rstrip())
        if r == 2:
            rows.append("  ".join("-" * w for w in widths))
    if table.diameter is not None:
        tail = f"diameter {table.diameter}"
    else:
        tail = f"{table.unreached} window elements unreached; diameter withheld"
    return "\n".join([head, *rows, tail]) + "\n"


def render_verdict_text(verdict: ConnectivityVerdict) -> str:
    return f"{verdict}\n"
