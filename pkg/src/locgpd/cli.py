"""Command-line driver.  Exit codes: 0 answer or pass, 1 property failure, 2 usage error."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from pathlib import Path
from typing import Any, Callable

from . import __version__
from . import assoc, complexes, core, flows, geometry, homotopy, lace, nerve, words

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> core.FiniteLocalGroupoid:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    try:
        return core.load(p)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read groupoid table {path}: {exc}") from exc


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=json.dumps) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


# subcommand handlers return (report, ok)


def cmd_validate(a) -> tuple[dict, bool]:
    rep = core.validate(_load(a.file))
    return rep.as_dict(), rep.ok


def cmd_restrict(a):
    g = _load(a.file)
    out, removed = assoc.restrict_to_n_associative(g, a.n)
    if a.output:
        core.dump(out, a.output)
    return {"removed_pairs": [list(p) for p in removed], "table": core.to_json(out), "n": a.n}, True


def cmd_ac(a):
    g = _load(a.file)
    try:
        res = words.ac_build(g, coset_limit=a.coset_limit, len_limit=a.len_limit)
    except words.NotInversional as exc:
        return {"error": "not_inversional", "detail": str(exc)}, False
    return res.as_dict(), True


def cmd_assoc_set(a):
    g = _load(a.file)
    if a.at not in g.objects:
        raise UsageError(f"unknown object {a.at!r}")
    return words.associators(g, a.at, max_len=a.max_len, max_steps=a.max_steps).as_dict(), True


def cmd_assoc_order(a):
    g = _load(a.file)
    try:
        rep = assoc.assoc_order(g, a.n, limit=a.limit)
    except assoc.SearchSpaceTooLarge as exc:
        return {"verdict": "too_large", "m": exc.m, "count": exc.count}, False
    return rep.as_dict(), rep.ok


def cmd_nerve(a):
    g = _load(a.file)
    n = nerve.build_nerve(g, a.max_dim)
    ids = nerve.check_simplicial_identities(n)
    out: dict = {"sizes": n.sizes(), "identities_ok": ids.ok, "identity_witnesses": [list(map(str, w)) for w in ids.witnesses]}
    ok = ids.ok
    if a.horns:
        reps = nerve.horn_check(n, min(a.max_dim, 3))
        out["horns"] = [r.as_dict() for r in reps]
        out["unfillable_total"] = nerve.unfillable_total(reps)
        out["kan_up_to_dim"] = out["unfillable_total"] == 0
    return out, ok


def cmd_pi1(a):
    g = _load(a.file)
    x = a.basepoint or g.objects[0]
    try:
        p = homotopy.pi1_presentation(nerve.build_nerve(g, 2), x)
    except homotopy.DisconnectedFromBasepoint as exc:
        raise UsageError(str(exc)) from exc
    return {"presentation": p.as_dict(), "h1": homotopy.h1(p).as_dict()}, True


def cmd_ac_vs_pi1(a):
    g = _load(a.file)
    rep = homotopy.ac_vs_pi1(g, coset_limit=a.coset_limit)
    return rep.as_dict(), rep.ok


def cmd_smon(a):
    g = _load(a.file)
    if a.at is not None and a.at not in g.objects:
        raise UsageError(f"unknown object {a.at!r}")
    return homotopy.simplicial_monodromy_ab(g, a.at).as_dict(), True


def cmd_certify(a):
    g = _load(a.file)
    w1, w2 = tuple(a.w1), tuple(a.w2)
    try:
        cert = complexes.certify_equivalence(w1, w2, g, a.max_len, a.max_steps)
    except complexes.CertificateObstruction as exc:
        return {"certificate": None, "obstruction": str(exc)}, False
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if cert is None:
        return {"certificate": None, "verdict": "not_within_bounds"}, False
    ok = bool(complexes.verify_certificate(cert, g))
    return {"certificate": cert.as_dict(), "verified": ok}, ok


def cmd_sphere(a):
    if a.what == "tetra":
        w = geometry.tetrahedron_witness()
        ok = abs(w.left - 2 * math.pi) < a.tol and abs(w.right + 2 * math.pi) < a.tol
        return w.as_dict(), ok
    if a.what == "quad-check":
        if a.lam is None:
            q = geometry.quad_check(a.samples, a.seed)
        else:
            q = geometry.lambda_assoc_check(a.samples, a.seed, float(geometry.parse_lambda(a.lam)))
        return q.as_dict(), q.max_mod_error < a.tol and q.max_exact_error < a.tol
    if a.what == "lattice":
        if a.lam is None:
            raise UsageError("--lambda is required")
        lam = geometry.parse_lambda(a.lam)
        return geometry.monodromy_lattice(lam, bound=a.bound).as_dict(), True
    raise UsageError(f"unknown sphere command {a.what!r}")


def cmd_cover(a):
    w = geometry.cover_witness()
    ok = w.left.p == w.right.p and abs(w.left.w - w.right.w) == 1
    return w.as_dict(), ok


def cmd_ladder(a):
    w = flows.associator_witness(a.n, step=a.step)
    ok = all(abs(p - q) < a.tol for p, q in zip(w.point, w.expected))
    return w.as_dict(), ok


def cmd_lace(a):
    seq = lace.generate_sequence(a.k)
    b = lace.verify_block_derivation(seq, a.k)
    d = lace.verify_lace_decomposition(seq, a.k)
    out = {
        "k": a.k,
        "length": len(seq),
        "block_derivation": b.ok,
        "block_removals": len(b.removals),
        "lace_decomposition": d.ok,
        "laces": [{"face": l.face.name, "end_length": len(l.end)} for l in d.laces],
    }
    if not a.verify_only:
        out["sequence"] = lace.sequence_as_json(seq)
    if a.svg:
        frames = lace.emit_svg(seq, a.k, a.svg)
        out["frames"] = len(frames)
    return out, b.ok and d.ok


def cmd_export_finite(a):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", geometry.NotClosed)
        g = geometry.export_finite(a.kind)
    rep = core.validate(g)
    if a.output:
        core.dump(g, a.output)
    out = {
        "kind": a.kind,
        "arrows": len(g.arrows),
        "pairs": len(g.mult),
        "valid": rep.ok,
        "three_associative": rep.three_associative,
        "dropped_pairs_warning": [str(w.message) for w in caught],
        "table": core.to_json(g),
    }
    return out, rep.ok


def cmd_example(a):
    params = {}
    for item in a.param or []:
        key, _, value = item.partition("=")
        params[key] = int(value) if value.lstrip("-").isdigit() else value
    try:
        g = core.make_example(a.kind, **params)
    except (core.BadParams, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    if a.output:
        core.dump(g, a.output)
    return {"kind": a.kind, "params": params, "table": core.to_json(g)}, True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="locgpd", description="Finite local groupoids and their completions.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks (LOCGPD_SEED overrides)")
    # the same flags after the subcommand, without clobbering earlier values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    s = add("validate", cmd_validate, "check the table axioms")
    s.add_argument("file")

    s = add("restrict", cmd_restrict, "greedy restriction to an n-associative table")
    s.add_argument("file")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-o", "--output")

    s = add("ac", cmd_ac, "associative completion")
    s.add_argument("file")
    s.add_argument("--coset-limit", type=int, default=10_000)
    s.add_argument("--len-limit", type=int, default=64)

    s = add("assoc-set", cmd_assoc_set, "associators at an object by bounded search")
    s.add_argument("file")
    s.add_argument("--at", required=True)
    s.add_argument("--max-len", type=int, default=6)
    s.add_argument("--max-steps", type=int, default=200_000)

    s = add("assoc-order", cmd_assoc_order, "check n-associativity")
    s.add_argument("file")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--limit", type=int, default=assoc.DEFAULT_TUPLE_LIMIT)

    s = add("nerve", cmd_nerve, "truncated nerve and horn filling")
    s.add_argument("file")
    s.add_argument("--max-dim", type=int, default=3)
    s.add_argument("--horns", action="store_true")

    s = add("pi1", cmd_pi1, "fundamental group presentation of the nerve")
    s.add_argument("file")
    s.add_argument("--basepoint")

    s = add("ac-vs-pi1", cmd_ac_vs_pi1, "compare the completion with the nerve's fundamental group")
    s.add_argument("file")
    s.add_argument("--coset-limit", type=int, default=10_000)

    s = add("smon", cmd_smon, "abelianized simplicial monodromy")
    s.add_argument("file")
    s.add_argument("--at")

    s = add("certify", cmd_certify, "good-complex certificate for word equivalence")
    s.add_argument("file")
    s.add_argument("--w1", nargs="+", required=True)
    s.add_argument("--w2", nargs="+", required=True)
    s.add_argument("--max-len", type=int, default=words.DEFAULT_MAX_LEN)
    s.add_argument("--max-steps", type=int, default=words.DEFAULT_MAX_STEPS)

    s = add("sphere", cmd_sphere, "spherical-area groupoid checks")
    s.add_argument("what", choices=("tetra", "quad-check", "lattice"))
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--bound", type=int, default=10_000)
    s.add_argument("--tol", type=float, default=1e-9)

    s = add("cover", cmd_cover, "punctured-plane cover witness")
    s.add_argument("what", choices=("witness",))

    s = add("ladder", cmd_ladder, "ladder associator witness")
    s.add_argument("what", choices=("witness",))
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--step", type=float, default=flows.DEFAULT_STEP)
    s.add_argument("--tol", type=float, default=1e-4)

    s = add("lace", cmd_lace, "lace edge sequences")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--svg")
    s.add_argument("--verify-only", action="store_true")

    s = add("export-finite", cmd_export_finite, "finite table from a continuum sample")
    s.add_argument("kind", choices=("tetrahedron", "cover", "sphere"))
    s.add_argument("-o", "--output")

    s = add("example", cmd_example, "write an example table")
    s.add_argument("kind")
    s.add_argument("--param", action="append", help="key=value, e.g. n=3 or graph=path")
    s.add_argument("-o", "--output")
    return p


def _config(args: argparse.Namespace) -> dict:
    return {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k != "func"}


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_jsonable(report), sort_keys=True, indent=2))
        return
    for key in sorted(report):
        value = report[key]
        text = json.dumps(_jsonable(value), sort_keys=True) if isinstance(value, (dict, list)) else value
        print(f"{key}: {text}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    env_seed = os.environ.get("LOCGPD_SEED")
    if env_seed is not None:
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"locgpd: LOCGPD_SEED must be an integer, got {env_seed!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        report, ok = args.func(args)
    except (UsageError, core.BadParams, lace.BadK) as exc:
        print(f"locgpd: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = dict(report)
    report["config"] = _config(args)
    report["ok"] = ok
    _emit(report, args.format)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
