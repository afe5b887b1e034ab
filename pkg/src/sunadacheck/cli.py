"""Command-line interface.

Exit codes: 0 when the requested check passes, 1 when it fails, 2 on usage
errors (bad flags, malformed words, unreadable files).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import mpmath

from .config import ConfigError, PipelineConfig, default_config, load_config, load_metric
from .covers import (LiftLabels, evaluate, lift_orbit_partition, preimage_components,
                     verify_involution_compat)
from .exact_linalg import METRIC_PRESETS, NotHyperbolicError, hyperbolic_length, trace_invariant, word_matrix
from .group_core import is_almost_conjugate, is_conjugate_subgroup, subgroup_generated
from .words import SUBSURFACE, SURFACE, WordSyntaxError, cyclic_reduce, format_word, free_reduce, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _config(args) -> PipelineConfig:
    return load_config(args.config) if args.config else default_config()


def _word(text: str):
    w = parse_word(text)
    if not len(w):
        raise UsageError("empty word")
    return w


def _homomorphism_for(cfg: PipelineConfig, w):
    used = w.generators()
    if used <= set(SURFACE.names):
        return cfg.rho()
    if used <= set(SUBSURFACE.names):
        return cfg.rho_sub()
    raise UsageError(f"word mixes generators {sorted(used)}; use a, b, c, d or a, b, x")


def _gamma_table(cfg):
    return [(g.unit, g.translation) for g in map(cfg.element, cfg.gamma_table)]


# -- subcommands ---------------------------------------------------------------------

def cmd_verify_gassmann(args) -> int:
    cfg = _config(args)
    H, K = cfg.subgroup(args.h), cfg.subgroup(args.k)
    cert = is_almost_conjugate(H, K)
    print(f"{'class rep':>10} {'size':>5} {'|H∩C|':>6} {'|K∩C|':>6}")
    for rep, size, h, k in cert.table:
        print(f"{str(rep):>10} {size:>5} {h:>6} {k:>6}")
    conj, g = is_conjugate_subgroup(H, K)
    print(f"almost conjugate: {cert.almost_conjugate}")
    print(f"conjugate: {conj}" + (f" (g = {g})" if conj else ""))
    return EXIT_OK if cert.almost_conjugate and not conj else EXIT_FAIL


def cmd_components(args) -> int:
    cfg = _config(args)
    S = cfg.subgroup(args.subgroup)
    w = _word(args.curve)
    rho = _homomorphism_for(cfg, w)
    comps = preimage_components(rho, S, w)
    print(f"curve: {format_word(free_reduce(w))}   rho = {evaluate(rho, w)}")
    for k, c in enumerate(comps, 1):
        print(f"component {k}: degree {c.degree}, cosets {list(c.coset_orbit)}")
    print("degrees: " + ",".join(str(c.degree) for c in comps))
    return EXIT_OK


def cmd_orbits(args) -> int:
    cfg = _config(args)
    alpha = cfg.alpha()
    rho = cfg.rho()
    L = subgroup_generated([evaluate(rho, alpha)], rho.target)
    labels = LiftLabels(L, _gamma_table(cfg))
    print(f"L = {{{', '.join(str(g) for g in sorted(L.members))}}}")
    ok = True
    for name in args.subgroup or sorted(cfg.subgroups):
        part = lift_orbit_partition(cfg.subgroup(name), L, labels)
        orbits = "  ".join("{" + ",".join(f"g{i}" for i in o) + "}" for o in part.gamma_orbits)
        print(f"{name}: {orbits}")
        ok &= part.is_partition()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_involution(args) -> int:
    cfg = _config(args)
    subs = {n: cfg.subgroup(n) for n in sorted(cfg.subgroups)}
    rep = verify_involution_compat(cfg.rho(), cfg.tau(), subs, args.length, args.random, seed=args.seed)
    print(rep.message)
    print(f"(j,k) -> (j,-k) intertwines: {rep.psi_matches}; preserves {rep.psi_preserves}")
    print(f"membership equivalence on {rep.membership_checked} words: {rep.membership_ok}")
    return EXIT_OK if rep.compatible else EXIT_FAIL


def cmd_trace(args) -> int:
    w = _word(args.word)
    if args.metric in METRIC_PRESETS:
        m = METRIC_PRESETS[args.metric]()
    else:
        m = load_metric(args.metric)
    M = word_matrix(m, w)
    print(f"tr = {M.trace}")
    print(f"det = {M.det}")
    print(f"tr^2/det = {trace_invariant(m, w)}")
    try:
        print(f"length = {mpmath.nstr(hyperbolic_length(m, w, args.precision), 30)}")
    except NotHyperbolicError as exc:
        print(f"length: undefined ({exc})")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .enumeration import emit_candidates, find_trace_matches, generate_candidates
    cfg = _config(args)
    cands = generate_candidates(cfg.constraints(), workers=args.workers)
    for k, v in cands.counts().items():
        print(f"{k}: {v}")
    alpha = cyclic_reduce(cfg.alpha_sub(), SUBSURFACE)
    rep = find_trace_matches(cands, cfg.metric(), alpha)
    print(f"target tr^2/det = {rep.target_value}")
    for key in rep.class_keys():
        print(f"match: {key}")
    if args.emit:
        n = emit_candidates(cands, args.emit)
        print(f"wrote {n} words to {args.emit}")
    t_alpha = cyclic_reduce(cfg.tau_sub()(cfg.alpha_sub()), SUBSURFACE)
    want = {alpha.unoriented_key(), t_alpha.unoriented_key()}
    return EXIT_OK if {c[0].unoriented_key() for c in rep.classes} == want else EXIT_FAIL


def cmd_simplicity(args) -> int:
    from .pipeline import run_reproduce_paper
    rep = run_reproduce_paper(_config(args))
    names = ("ribbon_calibration", "crossing_facts", "oracle_agreement", "simplicity", "count_to_four")
    ok = True
    for n in names:
        try:
            c = rep.check(n)
        except KeyError:
            print(f"{n}: not reached")
            ok = False
            continue
        print(f"{n}: {c.status}: {c.summary}")
        ok &= c.status != "fail"
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reproduce(args) -> int:
    from .pipeline import run_reproduce_paper
    rep = run_reproduce_paper(_config(args))
    text = rep.to_json() if args.format == "json" else rep.to_markdown()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{rep.verdict['statement']}\nreport written to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sunadacheck", description="Verify the genus-2 Sunada example.")
    p.add_argument("--config", help="TOML configuration (default: the built-in example)")
    sub = p.add_subparsers(dest="command", required=True)

    group = sub.add_parser("group", help="finite group checks").add_subparsers(dest="action", required=True)
    g = group.add_parser("verify-gassmann", help="almost conjugacy and non-conjugacy of two subgroups")
    g.add_argument("--h", default="H")
    g.add_argument("--k", default="K")
    g.set_defaults(func=cmd_verify_gassmann)

    cover = sub.add_parser("cover", help="curve preimages in covers").add_subparsers(dest="action", required=True)
    c = cover.add_parser("components", help="components and degrees of a curve's preimage")
    c.add_argument("--subgroup", required=True)
    c.add_argument("--curve", required=True, help='word such as "a b d [d,c^-1] d^-1"')
    c.set_defaults(func=cmd_components)
    o = cover.add_parser("orbits", help="subgroup orbits on the lifts of the curve")
    o.add_argument("--subgroup", action="append")
    o.set_defaults(func=cmd_orbits)

    inv = sub.add_parser("involution", help="involution lifting").add_subparsers(dest="action", required=True)
    i = inv.add_parser("check")
    i.add_argument("--length", type=int, default=4, help="exhaustive word length")
    i.add_argument("--random", type=int, default=10_000, help="number of random words")
    i.add_argument("--seed", type=int, default=0)
    i.set_defaults(func=cmd_involution)

    t = sub.add_parser("trace", help="exact trace of a word under a metric")
    t.add_argument("--word", required=True)
    t.add_argument("--metric", default="calibrated", help=f"preset ({', '.join(METRIC_PRESETS)}) or metric file")
    t.add_argument("--precision", type=int, default=128, help="bits for the length")
    t.set_defaults(func=cmd_trace)

    e = sub.add_parser("enumerate", help="candidate words and trace matches")
    e.add_argument("--emit", help="write candidates, one word per line")
    e.add_argument("--workers", type=int, help="process count (default: SUNADACHECK_WORKERS or 1)")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("simplicity", help="crossing analysis and simplicity verdicts")
    s.set_defaults(func=cmd_simplicity)

    r = sub.add_parser("reproduce-paper", help="run every check and write the report")
    r.add_argument("--out")
    r.add_argument("--format", choices=("json", "markdown"), default="json")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WordSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
