"""Command line front end.

Every command prints JSON with --format json and a short human summary
otherwise.  Files (DOT, SVG, reports) go to --out, which defaults to the
TWOFILL_OUT environment variable or the current directory.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import carrying, flatdyn, raycalc, verify
from .numerics import DomainError, Q, fmt
from .rectcomplex import (alphaEntries, boundaryPaths, buildComplex, redConnections,
                          saddleConnectionCensus, traceLeaf, unzip, unzipIsomorphic)
from .traintrack import (buildT, buildT1, buildTStar, checkSwitchConditions, cyclicCover,
                         enumeratePathsThroughPiece, piece_U, piece_V)

TRACKS = ["T", "T*", "T1", "T2", "T3"]


def _build(name: str, depth: int):
    if name == "T":
        return buildT(depth)
    if name == "T*":
        return buildTStar(depth)
    t1 = buildT1(depth)
    return t1 if name == "T1" else cyclicCover(t1, int(name[1]))


def _emit(ctx, data, text=None):
    if ctx.obj["format"] == "json" or text is None:
        click.echo(json.dumps(data, indent=2, sort_keys=True, default=str))
    else:
        click.echo(text)


def _outdir(ctx) -> Path:
    p = Path(ctx.obj["out"])
    p.mkdir(parents=True, exist_ok=True)
    return p


track_opt = click.option("--track", "track_name", type=click.Choice(TRACKS), default="T", show_default=True)


@click.group()
@click.option("--format", "fmt_", type=click.Choice(["json", "text"]), default="text", show_default=True)
@click.option("--out", type=click.Path(file_okay=False), envvar="TWOFILL_OUT", default=".",
              help="Directory for DOT, SVG and report files.")
@click.option("--depth", type=int, default=None, help="Global depth; subcommand options override it.")
@click.pass_context
def main(ctx, fmt_, out, depth):
    """Exact train tracks, flat-surface dynamics and ray words."""
    ctx.ensure_object(dict)
    ctx.obj.update(format=fmt_, out=out, depth=depth)


def _depth(ctx, value, default):
    if value is not None:
        return value
    return ctx.obj["depth"] if ctx.obj["depth"] is not None else default


# ---------------------------------------------------------------- track


@main.group()
def track():
    """Build and inspect weighted train tracks."""


@track.command("build")
@track_opt
@click.option("--depth", type=int)
@click.pass_context
def track_build(ctx, track_name, depth):
    t, w = _build(track_name, _depth(ctx, depth, 8))
    _emit(ctx, t.to_json(w), f"{track_name}: {len(t.switches)} switches, {len(t.branches)} branches")


@track.command("check")
@track_opt
@click.option("--depth", type=int)
@click.pass_context
def track_check(ctx, track_name, depth):
    t, w = _build(track_name, _depth(ctx, depth, 32))
    bad = checkSwitchConditions(t, w)
    _emit(ctx, {"track": track_name, "violations": bad}, "ok" if not bad else f"{len(bad)} violations")
    if bad:
        sys.exit(1)


@track.command("paths")
@click.option("--piece", type=click.Choice(["V", "U"]), required=True)
@click.pass_context
def track_paths(ctx, piece):
    t, _ = buildTStar(16)
    paths = enumeratePathsThroughPiece(t, piece_V() if piece == "V" else piece_U())
    data = {"piece": piece, "count": len(paths),
            "paths": [{"entry": p.entry, "exit": p.exit, "branches": [b for b, _ in p.branches]} for p in paths]}
    _emit(ctx, data, str(len(paths)))


@track.command("render")
@track_opt
@click.option("--depth", type=int)
@click.pass_context
def track_render(ctx, track_name, depth):
    t, w = _build(track_name, _depth(ctx, depth, 6))
    f = _outdir(ctx) / f"{track_name.replace('*', 'star')}.dot"
    f.write_text(t.to_dot(w))
    _emit(ctx, {"file": str(f)}, str(f))


# -------------------------------------------------------------- complex


@main.group()
def complex():
    """Foliated rectangle complexes: leaves, boundary paths, saddles, unzipping."""


@complex.command("trace")
@track_opt
@click.option("--branch", required=True)
@click.option("--height", required=True, help="Exact rational, e.g. 1/7.")
@click.option("--steps", type=int, default=200, show_default=True)
@click.option("--backward", is_flag=True)
@click.option("--depth", type=int)
@click.pass_context
def complex_trace(ctx, track_name, branch, height, steps, backward, depth):
    G = buildComplex(*_build(track_name, _depth(ctx, depth, 16)))
    r = traceLeaf(G, (branch, Q(height)), steps, direction=-1 if backward else 1)
    data = {"terminal": r.terminal, "singular": r.singular, "steps": r.to_json()}
    _emit(ctx, data, f"{r.terminal} after {len(r.steps)} rectangles: " + " ".join(b for b, _ in r.path[:40]))


@complex.command("boundary")
@track_opt
@click.option("--depth", type=int)
@click.option("--window", type=int, default=32, show_default=True, help="Branches traced per half leaf.")
@click.pass_context
def complex_boundary(ctx, track_name, depth, window):
    G = buildComplex(*_build(track_name, _depth(ctx, depth, 16)))
    bs = boundaryPaths(G, depth=window)
    data = {"count": len(bs), "leaves": [{"anchor": b.anchor, "singular": b.singular, "ends": list(b.ends)}
                                         for b in bs]}
    _emit(ctx, data, str(len(bs)))


@complex.command("saddles")
@track_opt
@click.option("--max-level", type=int, default=6, show_default=True)
@click.option("--depth", type=int)
@click.pass_context
def complex_saddles(ctx, track_name, max_level, depth):
    G = buildComplex(*_build(track_name, _depth(ctx, depth, max_level + 6)))
    sc = saddleConnectionCensus(G, maxLevel=max_level, maxSteps=1 << 14)
    data = [{"source": s.source, "target": s.target, "prong": s.prong, "length": len(s.path)} for s in sc]
    _emit(ctx, data, "\n".join(f"{s.source} -> {s.target}" for s in sc))


@complex.command("unzip")
@click.option("--degree", type=int, default=2, show_default=True)
@click.option("--depth", type=int)
@click.pass_context
def complex_unzip(ctx, degree, depth):
    G = buildComplex(*cyclicCover(buildT1(_depth(ctx, depth, 10)), degree))
    red = redConnections(G)
    H = unzip(G, red)
    iso = unzipIsomorphic(G, H, Fraction(1, 4))
    ent = alphaEntries(G, H)
    data = {"red": [list(c) for c in red], "isomorphic_at_quarter": iso,
            "alpha_entries": {str(k): v for k, v in sorted(ent.items())},
            "track": H.track.to_json(H.w)}
    text = f"isomorphic at 1/4: {iso}\n" + "\n".join(f"alpha_{k}: {v}" for k, v in sorted(ent.items()))
    _emit(ctx, data, text)


# ----------------------------------------------------------------- flat


@main.group()
def flat():
    """The square foliation, the map phi and its interval exchange."""


@flat.command("orbit")
@click.argument("point")
@click.option("--steps", type=int, default=6, show_default=True)
@click.option("-N", "N", type=int, default=32, show_default=True)
@click.pass_context
def flat_orbit(ctx, point, steps, N):
    names, note = flatdyn.singularOrbit(flatdyn.buildSigma(N), point, steps)
    _emit(ctx, {"start": point, "orbit": names, "report": note}, " -> ".join([point] + names))


@flat.command("leaf")
@click.option("-i", "index", type=int, required=True)
@click.option("-N", "N", type=int, default=32, show_default=True)
@click.pass_context
def flat_leaf(ctx, index, N):
    tr = flatdyn.traceSeparatrix(flatdyn.buildF(N), index)
    data = {"terminal": tr.terminal, "detail": tr.detail, "heights": [fmt(h) for h in tr.heights]}
    _emit(ctx, data, f"{tr.terminal} {tr.detail}: " + " ".join(fmt(h) for h in tr.heights[:32]))


@flat.command("iet")
@click.option("-x", "x", default=None, help="Apply the exchange to this height.")
@click.option("-N", "N", type=int, default=48, show_default=True)
@click.pass_context
def flat_iet(ctx, x, N):
    iet = flatdyn.buildIET(N)
    if x is None:
        _emit(ctx, iet.orientation_table(),
              "\n".join(f"{r['m']}: {r['source']} -> {r['image']}" for r in iet.orientation_table()))
        return
    y = iet.apply(Q(x))
    _emit(ctx, {"x": x, "image": fmt(y)}, fmt(y))


@flat.command("histogram")
@click.option("-x", "x", default=None, help="Starting height (default: drawn from --seed).")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--returns", type=int, default=100000, show_default=True)
@click.option("--bins", type=int, default=8, show_default=True)
@click.option("-N", "N", type=int, default=64, show_default=True)
@click.pass_context
def flat_histogram(ctx, x, seed, returns, bins, N):
    start = Q(x) if x is not None else flatdyn.seeded_height(seed)
    h = flatdyn.hittingHistogram(start, returns, bins, N)
    data = {"start": fmt(start), "counts": h.counts, "visits": h.visits, "complete": h.complete, "detail": h.detail}
    _emit(ctx, data, " ".join(map(str, h.counts)))


@flat.command("render")
@click.option("--sigma", is_flag=True, help="Draw Sigma instead of F.")
@click.option("-N", "N", type=int, default=12, show_default=True)
@click.pass_context
def flat_render(ctx, sigma, N):
    S = flatdyn.buildSigma(N) if sigma else flatdyn.buildF(N)
    f = _outdir(ctx) / ("sigma.svg" if sigma else "F.svg")
    f.write_text(flatdyn.render_svg(S))
    _emit(ctx, {"file": str(f)}, str(f))


# ---------------------------------------------------------------- carry


@main.group()
def carry():
    """The carrying map from T to T* and the weights it induces."""


def _opath(p):
    return " ".join(b + ("" if d > 0 else "^-1") for b, d in p)


@carry.command("zeta")
@click.argument("branch")
@click.pass_context
def carry_zeta(ctx, branch):
    img = carrying.zeta(branch)
    _emit(ctx, {"branch": branch, "image": [[b, d] for b, d in img]}, _opath(img))


@carry.command("weights")
@click.option("--branch", default=None, help="A single T* branch (the trailing * may be omitted).")
@click.pass_context
def carry_weights(ctx, branch):
    if branch is not None:
        v = fmt(carrying.inducedWeight(branch))
        _emit(ctx, {"branch": branch if branch.endswith("*") else branch + "*", "weight": v}, v)
        return
    ws = carrying.format_weights(carrying.inducedWeights())
    _emit(ctx, ws, "\n".join(f"{k} {v}" for k, v in ws.items()))


@carry.command("translate")
@click.argument("path", nargs=-1, required=True)
@click.pass_context
def carry_translate(ctx, path):
    """Translate a path of T; prefix a branch with - to traverse it backwards."""
    items = [(p[1:], -1) if p.startswith("-") else (p, 1) for p in path]
    img = carrying.xiTranslate(items)
    _emit(ctx, [[b, d] for b, d in img], _opath(img))


@carry.command("missing")
@click.option("--depth", type=int, default=8, show_default=True)
@click.pass_context
def carry_missing(ctx, depth):
    w = carrying.missingPathWindow(depth)
    _emit(ctx, [[b, d] for b, d in w], _opath(w))


# ------------------------------------------------------------------ ray


@main.group()
def ray():
    """Loop words, the alpha and gamma families, order and crossings."""


def _word(ctx, w: bytes, rl: bool):
    s = raycalc.show_rl(w) if rl else raycalc.show(w)
    _emit(ctx, {"length": len(w), "word": s}, s)


rl_opt = click.option("--rl", is_flag=True, help="Print in the r/l display alphabet.")


@ray.command("alpha")
@click.option("-k", "k", type=int, required=True)
@rl_opt
@click.pass_context
def ray_alpha(ctx, k, rl):
    _word(ctx, raycalc.alphaSeq(k), rl)


@ray.command("gamma")
@click.option("-n", "n", type=int, required=True)
@click.option("-j", "j", type=int, required=True)
@rl_opt
@click.pass_context
def ray_gamma(ctx, n, j, rl):
    ws = raycalc.gammaFamily(n, j=j)
    show = raycalc.show_rl if rl else raycalc.show
    _emit(ctx, [{"i": i + 1, "length": len(w), "word": show(w)} for i, w in enumerate(ws)],
          "\n".join(f"gamma^({i + 1})_{j}: {show(w)}" for i, w in enumerate(ws)))


@ray.command("order")
@click.argument("a")
@click.argument("b")
@click.pass_context
def ray_order(ctx, a, b):
    o = raycalc.orderCompare(raycalc.parse(a), raycalc.parse(b), _depth(ctx, None, 1024))
    _emit(ctx, {"a": a, "b": b, "order": o.name}, o.name)


@ray.command("subst")
@click.option("--iter", "iters", type=int, default=2, show_default=True)
@click.option("--word", default="r1")
@rl_opt
@click.pass_context
def ray_subst(ctx, iters, word, rl):
    w = raycalc.parse(word)
    for _ in range(iters):
        w = raycalc.substitutionF(w)
    _word(ctx, w, rl)


@ray.command("crosses")
@click.argument("loop")
@click.option("--search-depth", type=int, default=64, show_default=True)
@click.option("--prefix", type=int, default=1 << 12, show_default=True)
@click.pass_context
def ray_crosses(ctx, loop, search_depth, prefix):
    g = raycalc.RayLimit.from_word(raycalc.fixed_word_prefix(prefix), name="gamma")
    st, wit = raycalc.crossesLoop(g, raycalc.parse(loop), search_depth)
    _emit(ctx, {"loop": loop, "status": st, "witness": None if wit is None else raycalc.show(wit)},
          st if wit is None else f"{st} at {raycalc.show(wit) or '(root)'}")


def _report(ctx, rep: verify.VerificationReport, name: str):
    data = rep.to_json()
    f = _outdir(ctx) / f"{name}.json"
    f.write_text(json.dumps(rep.to_json(timings=False), indent=2, sort_keys=True) + "\n")
    text = "\n".join(f"{c.status:15} {c.checkId:18} {c.timing:7.2f}s  {c.anchor}" for c in rep.checks)
    _emit(ctx, data, text)
    sys.exit(1 if rep.refuted else 0)


@ray.command("verify")
@click.pass_context
def ray_verify(ctx):
    depths = {"order": ctx.obj["depth"]} if ctx.obj["depth"] else {}
    _report(ctx, verify.runSuite(["substitution", "order-lemmas", "filling"], depths, "ray"), "ray-report")


# --------------------------------------------------------------- verify


@main.group("verify")
def verify_group():
    """Run verification suites."""


@verify_group.command("all")
@click.option("--depth", type=int, default=None, help="Track truncation depth (default 32).")
@click.option("--only", multiple=True, type=click.Choice(list(verify.CHECKS)))
@click.pass_context
def verify_all(ctx, depth, only):
    d = _depth(ctx, depth, None)
    _report(ctx, verify.runSuite(list(only) or None, {"track": d} if d else {}), "report")


def _late_option(key):
    def cb(ctx, param, value):
        if value is not None:
            ctx.find_root().obj[key] = value
    return cb


# --format and --out are also accepted after the subcommand
for _grp in (track, complex, flat, carry, ray, verify_group):
    for _cmd in _grp.commands.values():
        _cmd.params.append(click.Option(["--format"], type=click.Choice(["json", "text"]), default=None,
                                        expose_value=False, callback=_late_option("format"), is_eager=True))
        _cmd.params.append(click.Option(["--out"], type=click.Path(file_okay=False), default=None,
                                        expose_value=False, callback=_late_option("out")))


def run():
    try:
        main(standalone_mode=True)
    except DomainError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()
