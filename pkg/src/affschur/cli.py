"""Command-line front end.

Global options pick the configuration (a config file, flags, or both; flags
win).  Every subcommand prints one JSON document (or an indented text
rendering of the same data) on stdout.  Exit codes: 0 success, 2 a
verification check failed, 1 usage, configuration or length-bound errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .cache import CacheError, KLCache
from .config import ConfigError, SessionConfig, load_config
from .laurent import LaurentPoly
from .session import Session
from .weyl import BoundError

__all__ = ["main", "build_parser"]

log = logging.getLogger("affschur")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2, which we reserve
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="affschur", description="Hecke and affine q-Schur algebra computations.")
    p.add_argument("--config", help="INI file with [datum], [orbits] and [session] sections")
    p.add_argument("--family")
    p.add_argument("--rank", type=int)
    p.add_argument("--mode", choices=["finite", "affine"])
    p.add_argument("--level", type=int)
    p.add_argument("--bound", type=int, dest="length_bound", help="length bound L")
    p.add_argument("--xf", help='"full" or coweights like "1,0; 1,1"')
    p.add_argument("--cache", dest="cache_path", help="KL cache file")
    p.add_argument("--format", choices=["json", "text"])
    p.add_argument("-v", "--verbose", action="store_true", help="diagnostics on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("orbits", help="orbit table")
    s = sub.add_parser("kl", help="KL element C_w in the standard basis")
    s.add_argument("word")
    s = sub.add_parser("canon", help="canonical element {C} in the standard basis")
    s.add_argument("xi")
    s = sub.add_parser("mul", help="product of two canonical elements")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--path", choices=["module", "hecke", "both"], default="module")
    s = sub.add_parser("afn", help="a-value data of an index or a group element")
    s.add_argument("target")
    s = sub.add_parser("cells", help="left, right or two-sided cells")
    s.add_argument("--kind", choices=["L", "R", "LR"], default="LR")
    s.add_argument("--carrier", choices=["schur", "hecke"], default="schur")
    s = sub.add_parser("inner", help="inner product of two canonical elements")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--form", choices=["schur", "williamson", "both"], default="schur")
    s = sub.add_parser("phi", help="image of {C} in the asymptotic ring")
    s.add_argument("xi")
    s = sub.add_parser("verify", help="run a suite of checks")
    s.add_argument("--suite", default="all")
    s = sub.add_parser("cache", help="inspect or clear the KL cache")
    s.add_argument("action", choices=["stats", "clear"])
    return p


# encoding
def poly_json(p) -> dict:
    if isinstance(p, tuple):
        p = LaurentPoly._raw(p)
    return {"poly": p.to_pairs()}


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"poly"}:
            return pad + str(LaurentPoly.from_pairs(obj["poly"]))
        if set(obj) == {"word", "omega"}:
            return pad + _word_text(obj)
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if _inline(v):
                lines.append(f"{pad}{k}: {render_text(v).strip()}")
            else:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
        return "\n".join(lines) if lines else pad + "{}"
    if isinstance(obj, list):
        if not obj:
            return pad + "[]"
        if all(_scalar(v) for v in obj):
            return pad + ", ".join(render_text(v).strip() for v in obj)
        out = []
        for v in obj:
            if _inline(v):
                out.append(f"{pad}- {render_text(v).strip()}")
            else:
                out.append(f"{pad}-\n{render_text(v, indent + 1)}")
        return "\n".join(out)
    if obj is None:
        return pad + "-"
    if isinstance(obj, bool):
        return pad + ("yes" if obj else "no")
    return pad + str(obj)


def _scalar(v) -> bool:
    if isinstance(v, dict):
        return set(v) in ({"poly"}, {"word", "omega"})
    return not isinstance(v, list)


def _inline(v) -> bool:
    return _scalar(v) or (isinstance(v, list) and all(_scalar(x) for x in v))


def _word_text(d: dict) -> str:
    if d["omega"] == 0:
        return d["word"]
    return f"w{d['omega']}" if d["word"] == "e" else f"w{d['omega']}*{d['word']}"


def emit(obj, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(obj) + "\n")


# commands
def cmd_orbits(s: Session, args) -> tuple[dict, int]:
    return {"config": s.cfg.describe(), "orbits": s.table.to_json()}, 0


def cmd_kl(s: Session, args):
    U, H = s.U, s.H
    w = U.parse(args.word)
    terms = H.kl_terms(w)
    rows = [
        {"y": U.as_json(y), "p": poly_json(terms[y])}
        for y in sorted(terms, key=lambda y: (U.length[y], U.word_str(y)))
    ]
    return {"element": U.as_json(w), "length": U.length[w], "terms": rows}, 0


def _coord_rows(S, coords: dict) -> list[dict]:
    return [{"xi": S.xi_str(k), "coeff": poly_json(coords[k])} for k in sorted(coords)]


def cmd_canon(s: Session, args):
    S = s.S
    C = S.parse_xi(args.xi)
    a = S.canon_std(C)
    return {
        "xi": S.xi_json(C),
        "standard": _coord_rows(S, dict(a.terms)),
        "bar_invariant": S.is_bar_invariant(a),
    }, 0


def cmd_mul(s: Session, args):
    S = s.S
    A, B = S.parse_xi(args.a), S.parse_xi(args.b)
    out = {"a": S.xi_str(A), "b": S.xi_str(B), "composable": S.xi[A].nu == S.xi[B].gamma}
    paths = ["module", "hecke"] if args.path == "both" else [args.path]
    results = {}
    for path in paths:
        r = S.gstruct(A, B) if path == "module" else S.gstruct_hecke(A, B)
        results[path] = r
        out[path] = _coord_rows(S, r)
    if args.path == "both":
        out["agree"] = results["module"] == results["hecke"]
        return out, 0 if out["agree"] else 2
    return out, 0


def cmd_afn(s: Session, args):
    if ":" in args.target:
        S, sd = s.S, s.schur_data
        C = S.parse_xi(args.target)
        d = sd.delta.get(C)
        return {
            "xi": S.xi_json(C),
            "a": sd.a[C],
            "a_scan": sd.scan[C],
            "a_via_hecke": sd.via_hecke[C],
            "certified": sd.cert[C],
            "diagonal": S.xi[C].diagonal,
            "delta": None if d is None else {"delta": d[0], "n": d[1]},
            "distinguished": C in sd.distinguished,
        }, 0
    U, hd = s.U, s.hecke_data
    z = U.parse(args.target)
    d = hd.delta[z]
    return {
        "element": U.as_json(z),
        "a": hd.a[z],
        "certified": hd.a_cert[z],
        "delta": None if d is None else {"delta": d[0], "n": d[1]},
        "distinguished": hd.is_distinguished(z),
    }, 0


def cmd_cells(s: Session, args):
    part = s.cells(args.carrier, args.kind)
    name = s.S.xi_str if args.carrier == "schur" else s.U.word_str
    return part.to_json(name), 0


def cmd_inner(s: Session, args):
    from .forms import inner_canon_direct, inner_williamson

    S, U, H = s.S, s.U, s.H
    A, B = S.parse_xi(args.a), S.parse_xi(args.b)
    a, b = S.xi[A], S.xi[B]
    out = {"a": S.xi_str(A), "b": S.xi_str(B)}
    vals = {}
    if args.form in ("schur", "both"):
        vals["schur"] = inner_canon_direct(S, A, B)
    if args.form in ("williamson", "both"):
        if (a.gamma, a.nu) != (b.gamma, b.nu):
            val = LaurentPoly.zero()
        else:
            val = inner_williamson(S, H.kl(U.inverse[a.plus]), H.kl(U.inverse[b.plus]), S.J[a.nu], S.J[a.gamma])
        vals["williamson"] = val
    for k, v in vals.items():
        out[k] = poly_json(v)
    if args.form == "both":
        out["agree"] = vals["schur"] == vals["williamson"]
        return out, 0 if out["agree"] else 2
    return out, 0


def cmd_phi(s: Session, args):
    from .asymptotic import Phi, Uncertified, schur_jring

    S, sd = s.S, s.schur_data
    C = S.parse_xi(args.xi)
    try:
        J = schur_jring(S, sd, s.cells("schur", "LR"))
    except Uncertified as e:
        raise BoundError(str(e)) from None
    phi = Phi(S, sd, J)
    img = phi.canon(C)
    return {
        "xi": S.xi_str(C),
        "image": _coord_rows(S, img),
        "complete": not phi.boundary_hits,
        "ring_dimension": J.dim,
    }, 0


def cmd_verify(s: Session, args):
    from .verify import Verifier

    try:
        results = Verifier(s).run_suite(args.suite)
    except ValueError as e:
        raise UsageError(str(e)) from None
    summary = {"pass": 0, "fail": 0, "not attempted": 0}
    for r in results.values():
        summary[r["status"]] += 1
    report = {"config": s.cfg.describe(), "suite": args.suite, "results": results, "summary": summary}
    return report, 2 if summary["fail"] else 0


def cmd_cache(s: Session, args):
    path = s.cfg.cache_path
    if not path:
        raise UsageError("no cache configured; pass --cache or set cache_path")
    if args.action == "clear":
        existed = os.path.exists(path)
        if existed:
            os.remove(path)
        return {"path": path, "removed": existed}, 0
    if not os.path.exists(path):
        return {"path": path, "exists": False}, 0
    c = KLCache.read(path)
    return {
        "path": path,
        "exists": True,
        "header": c.header,
        "matches_session": c.header == s.cache_header,
        "kl_elements": len(c.entries),
        "kl_polynomials": c.polynomial_count(),
        "hecke_products": len(c.products),
        "schur_products": len(c.schur),
    }, 0


COMMANDS = {
    "orbits": cmd_orbits,
    "kl": cmd_kl,
    "canon": cmd_canon,
    "mul": cmd_mul,
    "afn": cmd_afn,
    "cells": cmd_cells,
    "inner": cmd_inner,
    "phi": cmd_phi,
    "verify": cmd_verify,
    "cache": cmd_cache,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        cfg: SessionConfig = load_config(
            args.config,
            family=args.family,
            rank=args.rank,
            mode=args.mode,
            level=args.level,
            length_bound=args.length_bound,
            xf=args.xf,
            cache_path=args.cache_path,
            format=args.format,
        )
        session = Session(cfg)
        out, code = COMMANDS[args.command](session, args)
        if args.command != "cache":
            session.save_cache()
        if session.cache_loaded:
            log.info("cache: loaded %d records, spot-checked %d", session.cache_loaded, session.spot_checked)
    except BoundError as e:
        extra = f" (needs length {e.length})" if e.length is not None else ""
        print(f"bound error: {e}{extra}", file=sys.stderr)
        return 1
    except (ConfigError, CacheError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    emit(out, cfg.format)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
