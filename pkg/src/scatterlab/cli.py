"""Command-line interface: ``scatterlab <command> ...``.

Exit codes: 0 success, 1 failed verification, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from .cones import RationalCone
from .csd import (
    ScatteringDiagram,
    admissible_region_check,
    build_csd,
    check_consistency,
    g_cones,
)
from .dilogprod import DilogFactor, make_product, order
from .lattice import MTilde, Seed
from .presets import PRESETS, preset

FORMAT = 1


class UsageError(Exception):
    pass


def env_seed() -> int:
    try:
        return int(os.environ.get("SCATTERLAB_SEED", "0"))
    except ValueError:
        raise UsageError("SCATTERLAB_SEED must be an integer") from None


# -- JSON helpers -----------------------------------------------------------------


def rat_json(x) -> object:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else [x.numerator, x.denominator]


def parse_rat(x) -> Fraction:
    if isinstance(x, (list, tuple)):
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc})") from None


def emit(obj, out=None) -> None:
    text = json.dumps(obj, separators=(",", ":"))
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def product_json(C: Sequence[DilogFactor]) -> list:
    return [[*f.n, rat_json(f.c)] for f in C]


def read_diagram(path: str | None) -> ScatteringDiagram:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    obj = parse_json_arg(text, "diagram")
    try:
        return ScatteringDiagram.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed diagram: {exc}") from None


def seed_from_args(args) -> Seed:
    if getattr(args, "B", None) is not None:
        if args.delta is None:
            raise UsageError("--B requires --delta")
        B = parse_json_arg(args.B, "--B")
        delta = parse_json_arg(args.delta, "--delta")
        try:
            return Seed.from_exchange_matrix(B, delta)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    name = getattr(args, "type", None)
    if name is None:
        raise UsageError("give --type or --B/--delta")
    try:
        return preset(name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def add_seed_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", choices=sorted(PRESETS), help="bundled seed preset")
    p.add_argument("--B", help="custom exchange matrix as JSON")
    p.add_argument("--delta", help="custom skew-symmetrizer as JSON")


# -- commands -----------------------------------------------------------------------


def cmd_order(args) -> int:
    rows = parse_json_arg(args.product, "--product")
    try:
        C = make_product([[*r[:-1], parse_rat(r[-1])] for r in rows])
        rng = random.Random(env_seed()) if args.random_pairs else None
        out = order(args.degree, C, rng=rng)
    except (ValueError, TypeError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    emit(product_json(out), args.output)
    return 0


def cmd_build(args) -> int:
    s = seed_from_args(args)
    if args.degree < 1:
        raise UsageError("--degree must be positive")
    D = build_csd(s, args.degree, seed=env_seed())
    emit(D.sorted().to_json(), args.output)
    return 0


def _verify_diagram(D: ScatteringDiagram, jobs: int) -> dict:
    rep = check_consistency(D, seed=env_seed(), jobs=jobs)
    adm = admissible_region_check(D, seed=env_seed())
    return {
        "format": FORMAT,
        "consistent": rep.ok,
        "joints": rep.checked,
        "failures": rep.to_json()["failures"],
        "admissible": adm.ok,
        "admissible_violations": [
            {"wall": i, "b": [rat_json(x) for x in b]} for i, b in adm.violations
        ],
    }


def cmd_verify(args) -> int:
    what = args.what
    if what in ("diagram", "consistency"):
        D = read_diagram(args.diagram)
        res = _verify_diagram(D, args.jobs)
        emit(res)
        return 0 if res["consistent"] and res["admissible"] else 1
    from . import suites

    res = suites.run(what, args.count, args.degree, env_seed())
    emit(res)
    return 0 if res["ok"] else 1


def cmd_mutate(args) -> int:
    from .mutation import csd_equivalent, mutate_csd

    D = read_diagram(args.diagram)
    if not 1 <= args.direction <= D.rank:
        raise UsageError(f"direction must be in 1..{D.rank}")
    M = mutate_csd(D, args.direction)
    obj = M.truncated(M.cutoff).sorted().to_json()
    code = 0
    if args.verify:
        R = build_csd(M.data, M.cutoff, seed=env_seed())
        ok = csd_equivalent(M, R, M.cutoff, seed=env_seed())
        obj["verified"] = ok
        code = 0 if ok else 1
    emit(obj, args.output)
    return code


def cmd_theta(args) -> int:
    from .theta import theta

    if args.diagram:
        D = read_diagram(args.diagram)
    else:
        D = build_csd(seed_from_args(args), args.degree, seed=env_seed())
    r = D.rank
    m0 = [parse_rat(x) for x in parse_json_arg(args.m0, "--m0")]
    n0 = [int(x) for x in parse_json_arg(args.n0, "--n0")] if args.n0 else [0] * r
    Q = [parse_rat(x) for x in parse_json_arg(args.Q, "--Q")]
    if len(m0) != r or len(n0) != r or len(Q) != r:
        raise UsageError(f"--m0, --n0 and --Q need {r} entries")
    cutoff = min(args.degree, D.cutoff) if args.diagram else args.degree
    f = theta(D, MTilde(tuple(m0), tuple(n0)), tuple(Q), cutoff)
    obj = f.to_json()
    obj["format"] = FORMAT
    emit(obj, args.output)
    return 0


def cmd_gfan(args) -> int:
    s = seed_from_args(args)
    cones = g_cones(s, args.depth)
    emit(
        {
            "format": FORMAT,
            "cones": [{"word": list(w), "cone": c.to_json()} for w, c in cones],
        },
        args.output,
    )
    return 0


def badlands_report(d1: int, d2: int, degree: int) -> dict:
    """Normals inside the quadratic-irrational cone and whether each appears."""
    if d1 * d2 <= 4:
        raise UsageError("the Badlands cone exists only for d1 * d2 > 4")
    C = order(degree, make_product([[0, 1, d2], [1, 0, d1]]))
    present = {f.n for f in C}

    def inside(n):
        a, b = n
        return d1 * b * b - d1 * d2 * a * b + d2 * a * a < 0

    expected = [
        (a, deg - a) for deg in range(1, degree + 1) for a in range(deg + 1) if inside((a, deg - a))
    ]
    missing = [n for n in expected if n not in present]
    extra = sorted(n for n in present if inside(n) and n not in expected)
    return {
        "format": FORMAT,
        "delta": [d1, d2],
        "degree": degree,
        "inside": [list(n) for n in expected],
        "missing": [list(n) for n in missing],
        "extra": [list(n) for n in extra],
        "ok": not missing,
    }


def cmd_badlands(args) -> int:
    rep = badlands_report(args.d1, args.d2, args.degree)
    emit(rep, args.output)
    return 0 if rep["ok"] else 1


# -- rendering ----------------------------------------------------------------------


def _unit(v) -> tuple[float, float, float]:
    x = [float(a) for a in v]
    n = math.sqrt(sum(a * a for a in x))
    return tuple(a / n for a in x)


_C = _unit((1, 1, 1))
_U = _unit((1, -1, 0))
_V = _unit((1, 1, -2))


def stereo(v) -> tuple[float, float] | None:
    """Stereographic image of the radial projection of v, centred at (1,1,1)/sqrt(3)."""
    x = _unit(v)
    d = sum(a * b for a, b in zip(x, _C))
    if 1 + d < 0.04:
        return None
    return (
        sum(a * b for a, b in zip(x, _U)) / (1 + d),
        sum(a * b for a, b in zip(x, _V)) / (1 + d),
    )


def _arc_points(cone: RationalCone, steps: int = 96) -> list[list[tuple]]:
    lin = [tuple(int(x) for x in l) for l in cone.lineality]
    rays = [tuple(int(x) for x in r) for r in cone.rays]
    if len(lin) == 2:
        a, b = (_unit(l) for l in lin)
        pts = [
            tuple(math.cos(2 * math.pi * i / steps) * p + math.sin(2 * math.pi * i / steps) * q for p, q in zip(a, b))
            for i in range(steps + 1)
        ]
        chain = [pts]
    elif len(lin) == 1:
        l = _unit(lin[0])
        v = _unit(rays[0])
        segs = [(l, v), (v, tuple(-x for x in l))]
        chain = [[_lerp(p, q, i / (steps // 2)) for p, q in segs for i in range(steps // 2 + 1)]]
    else:
        if len(rays) != 2:
            return []
        p, q = (_unit(r) for r in rays)
        chain = [[_lerp(p, q, i / steps) for i in range(steps + 1)]]
    out = []
    for pts in chain:
        cur: list = []
        for x in pts:
            y = stereo(x)
            if y is None:
                if len(cur) > 1:
                    out.append(cur)
                cur = []
            else:
                cur.append(y)
        if len(cur) > 1:
            out.append(cur)
    return out


def _lerp(p, q, t):
    return tuple((1 - t) * a + t * b for a, b in zip(p, q))


def render_svg(D: ScatteringDiagram, unreachable: set[int] | None = None, size: int = 640) -> str:
    if D.rank != 3:
        raise UsageError("render supports rank 3 diagrams only")
    unreachable = unreachable or set()
    scale = size / 6.0
    half = size / 2

    def xy(p):
        return f"{half + scale * p[0]:.3f},{half - scale * p[1]:.3f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    labelled: set = set()
    walls = sorted(enumerate(D.walls), key=lambda iw: iw[1].sort_key())
    for i, w in walls:
        incoming = w.is_incoming(D.data)
        width = 3.0 if i in unreachable else 1.0
        cls = "incoming" if incoming else ("unreachable" if i in unreachable else "outgoing")
        for chain in _arc_points(w.support):
            pts = " ".join(xy(p) for p in chain)
            lines.append(
                f'<polyline class="{cls}" points="{pts}" fill="none" stroke="black" '
                f'stroke-width="{width}"/>'
            )
        if w.normal not in labelled:
            labelled.add(w.normal)
            chains = _arc_points(w.support)
            if chains:
                mid = chains[0][len(chains[0]) // 2]
                text = "(" + ",".join(map(str, w.normal)) + ")"
                lines.append(
                    f'<text class="normal" x="{half + scale * mid[0]:.3f}" y="{half - scale * mid[1]:.3f}" '
                    f'font-size="11" font-family="monospace">{text}</text>'
                )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def unreachable_walls(D: ScatteringDiagram, depth: int) -> set[int]:
    """Walls whose general point lies in no G-cone reached by words of length <= depth."""
    cones = [c for _, c in g_cones(D.data, depth)]
    funcs = [w.functional(D.data) for w in D.walls]
    out = set()
    for i, w in enumerate(D.walls):
        z = w.support.general_point(funcs, seed=env_seed(), strict=False)
        if not any(c.contains(z) for c in cones):
            out.add(i)
    return out


def cmd_render(args) -> int:
    if args.diagram:
        D = read_diagram(args.diagram)
    else:
        D = build_csd(seed_from_args(args), args.degree, seed=env_seed())
    bad = unreachable_walls(D, args.gfan_depth) if args.gfan_depth else set()
    svg = render_svg(D, bad)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


# -- entry point ------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scatterlab", description="Exact cluster scattering diagrams.")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for joint checks")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("order", help="order a dilogarithm product")
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--product", required=True, help="JSON list [[n1, n2, c], ...]")
    q.add_argument("--random-pairs", action="store_true", help="random admissible-pair selection")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_order)

    q = sub.add_parser("build", help="build a CSD up to a degree")
    add_seed_args(q)
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_build)

    q = sub.add_parser("verify", help="verify a diagram or run a property suite")
    q.add_argument("what", nargs="?", default="diagram", choices=["diagram", "consistency", "pentagon", "bracket", "oracle"])
    q.add_argument("--diagram", help="diagram JSON file ('-' or omitted: stdin)")
    q.add_argument("--count", type=int, default=50)
    q.add_argument("--degree", type=int, default=5)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("mutate", help="mutate a diagram")
    q.add_argument("--diagram")
    q.add_argument("--direction", type=int, required=True)
    q.add_argument("--verify", action="store_true")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_mutate)

    q = sub.add_parser("theta", help="theta function by broken lines")
    q.add_argument("--diagram")
    add_seed_args(q)
    q.add_argument("--m0", required=True)
    q.add_argument("--n0")
    q.add_argument("--Q", required=True)
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_theta)

    q = sub.add_parser("gfan", help="enumerate G-cones")
    add_seed_args(q)
    q.add_argument("--depth", type=int, default=4)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_gfan)

    q = sub.add_parser("render", help="SVG picture of a rank-3 diagram")
    q.add_argument("--diagram")
    add_seed_args(q)
    q.add_argument("--degree", type=int, default=3)
    q.add_argument("--gfan-depth", type=int, default=0, help="mark walls outside the G-cones found")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_render)

    q = sub.add_parser("badlands", help="rank-2 normals inside the Badlands cone")
    q.add_argument("d1", type=int)
    q.add_argument("d2", type=int)
    q.add_argument("--degree", type=int, default=7)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_badlands)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"scatterlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
