"""Command-line front end: ``knotwkb invariant|psi|verify``.

Exit codes: 0 success, 1 a verification check failed, 2 the input could not
be parsed or validated, 3 a numerical result missed its tolerance.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import random
import sys
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import corpus_dir
from .diagram import CrossingSite, LinkDiagram, helicity_diagram, linking_matrix, parse_diagram, writhe
from .errors import KnotError, MalformedInput
from .laurent import LaurentPoly1H, LaurentPoly2
from .moves import (
    add_eight,
    bigon_sites,
    face_pair_sites,
    kink_crossings,
    kink_sites,
    mirror,
    reidemeister,
    reverse,
    smooth_crossing,
    smoothing_site,
    switch_crossing,
    triangle_sites,
)
from .phase import PhaseParam, alpha_of, psi_diagram, psi_geometric, surgery_ratio, verify_curl_balance
from .skein import SkeinConfig, SkeinEngine, random_ordering, skein_residual, specialize_jones, specialize_trivial

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_TOLERANCE = 0, 1, 2, 3
GEOM_TOL = 1e-4


class ToleranceError(Exception):
    pass


@dataclass
class RunReport:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def check(self, name: str, passed: bool, residual: float = 0.0) -> bool:
        self.checks.append({"name": name, "passed": bool(passed), "residual": float(residual)})
        return passed

    @property
    def failed(self) -> list[dict]:
        return [c for c in self.checks if not c["passed"]]

    def to_dict(self, with_time: bool = True) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "results": self.results,
               "checks": self.checks}
        if with_time:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_json(self, with_time: bool = True) -> str:
        return json.dumps(self.to_dict(with_time), sort_keys=True, indent=2)


# -- input -----------------------------------------------------------------------


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _is_geometric(data) -> bool:
    comps = data.get("components") if isinstance(data, dict) else None
    return bool(comps) and isinstance(comps[0], dict)


def _load(path: Path, report: RunReport):
    """Parse a diagram or geometric link file; returns (kind, object)."""
    from .geometry import parse_geometric

    raw = path.read_bytes()
    report.inputs[path.name] = _digest(raw)
    try:
        data = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"{path.name}: invalid JSON: {exc}") from None
    if _is_geometric(data):
        return "geometric", parse_geometric(raw)
    return "diagram", parse_diagram(raw)


def _corpus_files(directory: Path, seed: int | None) -> list[Path]:
    files = sorted(directory.glob("*.json"))
    if not files:
        raise MalformedInput(f"no .json files in {directory}")
    if seed is not None:
        random.Random(seed).shuffle(files)
    return files


# -- invariant -------------------------------------------------------------------


def _near_int(x: float, name: str) -> int:
    n = round(x)
    if abs(x - n) > GEOM_TOL:
        raise ToleranceError(f"{name} = {x!r} is not within {GEOM_TOL:g} of an integer")
    return int(n)


def cmd_invariant(args, report: RunReport) -> str:
    from .geometry import helicity_geometric, linking_matrix_geometric, polygonal_writhe

    kind, obj = _load(Path(args.path), report)
    if args.geometric and kind != "geometric":
        raise MalformedInput("--geometric needs a geometric link file")
    if kind == "geometric" and args.segments:
        obj = obj.subdivided(args.segments)
    what = args.which
    if kind == "geometric":
        if what in ("homfly", "jones"):
            from .geometry import project_diagram
            obj = project_diagram(obj)
            kind = "diagram"
        elif what == "writhe":
            values = [polygonal_writhe(c) for c in obj.components]
            report.results["writhe"] = values
            return "\n".join(f"{v:.6f}" for v in values)
        elif what == "linking":
            m = linking_matrix_geometric(obj)
            for i in range(len(m)):
                for j in range(i + 1, len(m)):
                    _near_int(m[i, j], f"linking({i},{j})")
            report.results["linking"] = m.tolist()
            return "\n".join(" ".join(f"{v:.6f}" for v in row) for row in m)
        else:
            h = helicity_geometric(obj)
            _near_int(h, "helicity")
            report.results["helicity"] = h
            return f"{h:.6f}"
    d: LinkDiagram = obj
    if what == "homfly":
        p = SkeinEngine().homflypt(d)
        report.results["homfly"] = {"text": p.to_text(), "terms": p.to_json()}
        return p.to_text()
    if what == "jones":
        j = specialize_jones(SkeinEngine().homflypt(d))
        report.results["jones"] = {"text": j.to_text("t"), "terms_in_s": j.to_json()}
        return j.to_text("t")
    if what == "writhe":
        report.results["writhe"] = writhe(d)
        return str(writhe(d))
    if what == "linking":
        m = linking_matrix(d)
        report.results["linking"] = m
        return "\n".join(" ".join(str(v) for v in row) for row in m)
    h = helicity_diagram(d)
    report.results["helicity"] = h
    return str(h)


# -- psi -------------------------------------------------------------------------


def _fmt_complex(z: complex) -> str:
    re, im = (0.0 if abs(v) < 5e-16 else v for v in (z.real, z.imag))
    if im == 0:
        return f"{re:.12g}"
    if re == 0:
        return {1.0: "i", -1.0: "-i"}.get(im, f"{im:.12g}i")
    return f"{re:.12g}{im:+.12g}i"


def cmd_psi(args, report: RunReport) -> str:
    kind, obj = _load(Path(args.path), report)
    if args.geometric and kind != "geometric":
        raise MalformedInput("--geometric needs a geometric link file")
    if not math.isfinite(args.lam):
        raise MalformedInput("lambda must be finite")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p = PhaseParam(args.lam)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if kind == "geometric":
        if args.segments:
            obj = obj.subdivided(args.segments)
        try:
            psi = psi_geometric(obj, p, GEOM_TOL)
        except KnotError as exc:
            raise ToleranceError(str(exc)) from None
    else:
        psi = psi_diagram(obj, p)
    alpha = alpha_of(p)
    report.results.update(psi.to_dict())
    report.results["alpha"] = {"re": alpha.value.real + 0.0, "im": alpha.value.imag + 0.0}
    return (f"psi = {_fmt_complex(psi.value)}\n"
            f"exponent = {psi.power} * lambda\n"
            f"alpha = {_fmt_complex(alpha.value)}")


# -- verify ----------------------------------------------------------------------


def _poly_residual(p: LaurentPoly2 | LaurentPoly1H) -> float:
    return float(sum(abs(c) for c in p.terms.values()))


def _suite_skein(name, d, report, rng, engine):
    for x in d.crossings:
        r = skein_residual(d, x.id, engine)
        report.check(f"{name}: skein at crossing {x.id}", r.is_zero(), _poly_residual(r))
    base = engine.homflypt(d)
    for trial in range(10):
        for memo in (True, False):
            e = SkeinEngine(SkeinConfig(memo_enabled=memo))
            p = e.homflypt(d, random_ordering(d, rng))
            report.check(f"{name}: ordering {trial} memo={memo}", p == base, _poly_residual(p - base))
    m = engine.homflypt(mirror(d))
    report.check(f"{name}: mirror", m == base.mirror(), _poly_residual(m - base.mirror()))
    r = engine.homflypt(reverse(d))
    report.check(f"{name}: reverse", r == base, _poly_residual(r - base))


def _suite_trivialize(name, d, report, rng, engine):
    t = specialize_trivial(engine.homflypt(d))
    one = LaurentPoly1H.mono(1, 0)
    report.check(f"{name}: trivial specialization", t == one, _poly_residual(t - one))


def _suite_maslov(name, d, report, rng, engine):
    p = PhaseParam(rng.choice([Fraction(1, 4), Fraction(1, 3), Fraction(2, 7)]), warn=False)
    w = writhe(d)
    for x in d.crossings:
        ratio = surgery_ratio(d, x.id, 0, p)
        sw = switch_crossing(d, x.id)
        report.check(f"{name}: switch {x.id} writhe", writhe(sw) - w == -2 * x.sign,
                     abs(writhe(sw) - w + 2 * x.sign))
        report.check(f"{name}: switch {x.id} phase", ratio.power == -2 * x.sign,
                     abs(ratio.power + 2 * x.sign))
        sm = smooth_crossing(d, x.id)
        dn = abs(sm.n_components - d.n_components)
        report.check(f"{name}: smooth {x.id} components", dn == 1, abs(dn - 1))
        site = smoothing_site(d, x.id)
        report.check(f"{name}: curl balance at smoothing of {x.id}", verify_curl_balance(sm, site, p),
                     abs((psi_diagram(add_eight(sm, site, 1), p) / alpha_of(p)).power
                         - (psi_diagram(add_eight(sm, site, -1), p) * alpha_of(p)).power))
    for site in kink_sites(d)[:2]:
        ok = verify_curl_balance(d, site, p)
        report.check(f"{name}: curl balance kink on arc {site.arcs[0]} {site.side}", ok, 0.0 if ok else 1.0)


def _suite_reidemeister(name, d, report, rng, engine):
    p = PhaseParam(Fraction(1, 5), warn=False)
    base = engine.homflypt(d)
    psi0 = psi_diagram(d, p)

    def compare(label, e, expected_power):
        q = engine.homflypt(e)
        report.check(f"{name}: {label} homfly", q == base, _poly_residual(q - base))
        dp = (psi_diagram(e, p) / psi0).power
        report.check(f"{name}: {label} psi", dp == expected_power, abs(dp - expected_power))

    for site in kink_sites(d):
        for sign in (1, -1):
            e = reidemeister(d, "R1", site, sign=sign)
            compare(f"R1+ {sign:+d} arc {site.arcs[0]} {site.side}", e, sign)
            for c in kink_crossings(e):
                compare(f"R1- crossing {c} after kink on {site.arcs[0]}",
                        reidemeister(e, "R1", CrossingSite.at(c), "remove"), sign - e.crossing(c).sign)
    for site in face_pair_sites(d):
        for over_first in (True, False):
            e = reidemeister(d, "R2", site, over_first=over_first)
            compare(f"R2+ arcs {site.arcs} {site.side} over={over_first}", e, 0)
            for b in bigon_sites(e):
                compare(f"R2- {b.crossings} after R2+ {site.arcs}", reidemeister(e, "R2", b, "remove"), 0)
            for t in triangle_sites(e):
                compare(f"R3 {t.crossings} after R2+ {site.arcs}", reidemeister(e, "R3", t), 0)
    for t in triangle_sites(d):
        compare(f"R3 {t.crossings}", reidemeister(d, "R3", t), 0)


def _suite_geom(name, link, report, rng, engine):
    from .geometry import (
        FramedGeometricLink,
        circulation,
        helicity_geometric,
        linking_matrix_geometric,
        project_diagram,
    )

    m = linking_matrix_geometric(link)
    n = len(link.components)
    d = project_diagram(link)
    lk = linking_matrix(d)
    for i in range(n):
        for j in range(i + 1, n):
            res = abs(m[i, j] - lk[i][j])
            report.check(f"{name}: linking({i},{j}) vs projection", res <= 1e-6, res)
    h = helicity_geometric(link)
    expected = sum(m[i, j] for i in range(n) for j in range(n) if i != j) + sum(link.framings)
    report.check(f"{name}: helicity decomposition", abs(h - expected) <= GEOM_TOL, abs(h - expected))
    for i in range(n):
        others = FramedGeometricLink(tuple(c for j, c in enumerate(link.components) if j != i))
        if not others.components:
            continue
        total = sum(lk[i][j] for j in range(n) if j != i)
        c = circulation(others, link.components[i])
        report.check(f"{name}: circulation along component {i}", abs(c - total) <= GEOM_TOL, abs(c - total))


SUITES = {
    "skein": _suite_skein,
    "reidemeister": _suite_reidemeister,
    "maslov": _suite_maslov,
    "trivialize": _suite_trivialize,
    "geom-consistency": _suite_geom,
}


def cmd_verify(args, report: RunReport) -> str:
    directory = Path(args.dir) if args.dir else Path(str(corpus_dir()))
    if not directory.is_dir():
        raise MalformedInput(f"{directory} is not a directory")
    rng = random.Random(args.seed if args.seed is not None else 0)
    engine = SkeinEngine()
    suite = SUITES[args.suite]
    want = "geometric" if args.suite == "geom-consistency" else "diagram"
    lines = []
    visited = []
    for path in _corpus_files(directory, args.seed):
        kind, obj = _load(path, report)
        if kind != want:
            continue
        visited.append(path.name)
        before = len(report.checks)
        suite(path.stem, obj, report, rng, engine)
        mine = report.checks[before:]
        bad = [c for c in mine if not c["passed"]]
        worst = max((c["residual"] for c in mine), default=0.0)
        lines.append(f"{'FAIL' if bad else 'ok  '} {path.name}: {len(mine)} checks, max residual {worst:g}")
    report.results = {"suite": args.suite, "files": visited,
                      "passed": len(report.checks) - len(report.failed), "failed": len(report.failed)}
    lines.append(f"{args.suite}: {report.results['passed']} passed, {report.results['failed']} failed")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotwkb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariant", help="compute an invariant of one link")
    inv.add_argument("which", choices=["homfly", "jones", "writhe", "linking", "helicity"])
    inv.add_argument("path")
    inv.add_argument("--geometric", action="store_true", help="input is a geometric link")
    inv.add_argument("--segments", type=int, default=0, help="subdivide each segment n times")
    inv.add_argument("--json", action="store_true", help="print the JSON report")

    psi = sub.add_parser("psi", help="helicity phase exp(2 pi i lambda H)")
    psi.add_argument("path")
    psi.add_argument("--lambda", dest="lam", type=float, required=True)
    psi.add_argument("--geometric", action="store_true")
    psi.add_argument("--segments", type=int, default=0)
    psi.add_argument("--json", action="store_true")

    ver = sub.add_parser("verify", help="run a property suite over a corpus directory")
    ver.add_argument("suite", choices=sorted(SUITES))
    ver.add_argument("dir", nargs="?", default=None, help="corpus directory (default: shipped corpus)")
    ver.add_argument("--seed", type=int, default=None, help="shuffle files and orderings")
    ver.add_argument("--json", action="store_true")
    return parser


COMMANDS = {"invariant": cmd_invariant, "psi": cmd_psi, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if getattr(args, "segments", 0) < 0:
        print("error: --segments must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    report = RunReport(command=["knotwkb", *argv])
    start = time.perf_counter()
    code = EXIT_OK
    text = ""
    try:
        text = COMMANDS[args.command](args, report)
        if report.failed:
            code = EXIT_CHECK
    except ToleranceError as exc:
        report.check("tolerance", False, 1.0)
        text, code = f"error: {exc}", EXIT_TOLERANCE
    except (KnotError, ValueError, IndexError, OSError) as exc:
        text, code = f"error: {type(exc).__name__}: {exc}", EXIT_INPUT
    report.wall_time = time.perf_counter() - start
    if args.json:
        print(report.to_json())
    stream = sys.stderr if code in (EXIT_INPUT, EXIT_TOLERANCE) or args.json else sys.stdout
    if text and not (args.json and code == EXIT_OK):
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
