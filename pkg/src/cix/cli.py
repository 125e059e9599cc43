"""Command line front end: cix classify, discs, graph and verify."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Literal, Sequence, TextIO

from cix.algebra import ClassSpec, canonical_rep, parse_type
from cix.classgraph import centralizer as cz
from cix.classgraph.bfs import DiscTable, bfs_discs
from cix.classgraph.connectivity import classify_connectivity, component_invariant
from cix.classgraph.families import KNOWN, check_discs, unwitnessed
from cix.classgraph.window import check_feasible, class_size
from cix.errors import CixError, InfeasibleWindowError, WindowTooLargeError
from cix import report

Command = Literal["classify", "discs", "graph", "verify"]
Format = Literal["json", "dot", "text"]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3

# windows whose estimated orbit count exceeds this need --allow-stretch
STRETCH_ORBITS = 200_000


@dataclass(frozen=True)
class RunConfig:
    command: Command
    spec: ClassSpec
    bound: int = 4
    max_depth: int | None = None
    fmt: Format | None = None
    intra_disc_edges: bool = False
    collapse: bool = True
    allow_stretch: bool = False

    def __post_init__(self) -> None:
        if self.command != "classify":
            check_feasible(self.spec, self.bound)

    @property
    def output_format(self) -> Format:
        if self.fmt is not None:
            return self.fmt
        return "dot" if self.command == "graph" else "text"


def _guard_size(cfg: RunConfig) -> None:
    est = class_size(cfg.spec, cfg.bound) // cz.layout(cfg.spec).order
    if est > STRETCH_ORBITS and not cfg.allow_stretch:
        raise WindowTooLargeError(
            f"{cfg.spec} at B={cfg.bound} has about {est} centralizer orbits; "
            "pass --allow-stretch to run it anyway"
        )
    if not cfg.collapse and class_size(cfg.spec, cfg.bound) > 10 * STRETCH_ORBITS and not cfg.allow_stretch:
        raise WindowTooLargeError("window too large without orbit collapsing")


def _table(cfg: RunConfig) -> DiscTable:
    _guard_size(cfg)
    return bfs_discs(cfg.spec, cfg.bound, cfg.max_depth, collapse=cfg.collapse)


def _verify(cfg: RunConfig, out: TextIO) -> int:
    spec = cfg.spec
    verdict = classify_connectivity(spec)
    claims: list[tuple[str, bool, str]] = []
    table = _table(cfg)
    reps = [[o.element for o in d.orbits] for d in table.discs]
    if verdict.connected:
        bound = verdict.bound
        assert bound is not None
        d = table.diameter
        claims.append(("all window elements reached", d is not None, f"unreached {table.unreached}"))
        claims.append(("stable window", bool(table.stable), f"B={cfg.bound} vs B={cfg.bound - 2}"))
        if d is not None:
            claims.append((f"diameter {bound}", bound.admits(d), f"windowed diameter {d}"))
            claims.append(("diameter at most n+2", d <= spec.n + 2, f"windowed diameter {d}"))
        fams = KNOWN.get(spec)
        if fams is not None:
            bad = check_discs(reps, fams)
            claims.append(("disc families", not bad, f"{len(bad)} orbits misplaced"))
            missing = unwitnessed(reps, fams)
            claims.append(("every family witnessed", not missing, ", ".join(map(str, missing))))
            claims.append((
                f"{fams.diameter} discs beyond a", table.eccentricity == fams.diameter,
                f"got {table.eccentricity}",
            ))
    else:
        base = component_invariant(spec, canonical_rep(spec))
        odd = sum(component_invariant(spec, x) != base for layer in reps for x in layer)
        claims.append((
            f"disconnected (case {verdict.case}), reached part keeps the invariant",
            odd == 0, f"{odd} reached orbits differ",
        ))
    ok = all(c[1] for c in claims)
    if cfg.output_format == "json":
        json.dump(
            {
                "n": spec.n,
                "type": list(spec.type),
                "bound": cfg.bound,
                "pass": ok,
                "diameter": table.diameter,
                "claims": [{"claim": c, "pass": p, "detail": det} for c, p, det in claims],
            },
            out,
            indent=2,
        )
        out.write("\n")
    else:
        for c, p, det in claims:
            out.write(f"{'PASS' if p else 'FAIL'}  {c}  ({det})\n")
        summary = "pass" if ok else "fail"
        if verdict.connected and table.diameter is not None:
            summary += f", diameter {table.diameter}"
        out.write(summary + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def run(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    fmt = cfg.output_format
    if cfg.command == "classify":
        verdict = classify_connectivity(cfg.spec)
        if fmt == "json":
            out.write(json.dumps(report.verdict_to_dict(verdict), indent=2) + "\n")
        else:
            # dot is rejected at parse time
            out.write(report.render_verdict_text(verdict))
        return EXIT_OK
    if cfg.command == "verify":
        return _verify(cfg, out)
    table = _table(cfg)
    if fmt == "json":
        out.write(report.to_json(table) + "\n")
    elif fmt == "dot":
        out.write(report.export_dot(table, cfg.intra_disc_edges))
    else:
        out.write(report.render_table_text(table))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cix", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("classify", "connectivity verdict and expected diameter"),
        ("discs", "breadth-first discs around the class representative"),
        ("graph", "collapsed disc graph"),
        ("verify", "check the known claims for one class"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--type", required=True, metavar="m,ke,ko,l")
        p.add_argument("--bound", type=int, default=4)
        p.add_argument("--max-depth", type=int)
        p.add_argument("--format", choices=("json", "dot", "text"))
        p.add_argument("--intra-disc-edges", action="store_true")
        p.add_argument("--no-collapse", action="store_true")
        p.add_argument("--allow-stretch", action="store_true")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        spec = ClassSpec(ns.n, parse_type(ns.type))
    except ValueError as exc:
        parser.error(str(exc))
    if ns.command == "classify" and ns.format == "dot":
        parser.error("classify supports only text and json output")
    return RunConfig(
        command=ns.command,
        spec=spec,
        bound=ns.bound,
        max_depth=ns.max_depth,
        fmt=ns.format,
        intra_disc_edges=ns.intra_disc_edges,
        collapse=not ns.no_collapse,
        allow_stretch=ns.allow_stretch,
    )


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except InfeasibleWindowError as exc:
        print(f"cix: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except WindowTooLargeError as exc:
        print(f"cix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CixError as exc:
        print(f"cix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
