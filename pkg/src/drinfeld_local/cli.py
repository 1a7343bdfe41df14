"""Command line front end.

    drinfeld-local height     --config problem.ini
    drinfeld-local volume     --config problem.ini
    drinfeld-local reduce     --config problem.ini
    drinfeld-local conductor  --config problem.ini
    drinfeld-local as-break   --config problem.ini
    drinfeld-local kummer     --config problem.ini
    drinfeld-local verify     --suite latcount --seed 7

Output is JSON.  Exit codes: 0 ok, 1 computation error, 2 parse error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import lattice as lat
from .config import ProblemConfig, parse_config
from .drinfeld import height
from .errors import DrinfeldError, ParseError
from .ramification import as_reduce, conductor, kummer_break, kummer_image_at_level
from .verify import SUITES, SuiteResult, run_suite

EXIT_OK, EXIT_COMPUTE, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


def _load(args) -> ProblemConfig:
    if not args.config:
        raise ParseError("--config is required for this command")
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read config: {exc.strerror}") from None
    cfg = parse_config(text)
    if args.cap_degree is not None:
        cfg.cap_degree = args.cap_degree
    if args.cap_ext is not None:
        cfg.cap_ext = args.cap_ext
    return cfg


def cmd_height(cfg: ProblemConfig) -> dict:
    D = cfg.module() if cfg.phi_t is not None else None
    rows = []
    for text in cfg.heights:
        x = cfg.element("height", "elements", text)
        h = D.height(x) if D is not None else height(x)
        rows.append({"element": text, "height": h})
    out = {"heights": rows, "provenance": "max(0, -valuation)"}
    if len(rows) == 1:
        out["height"] = rows[0]["height"]
    return out


def _basis_json(B: lat.OrthogonalBasis) -> list:
    out = []
    for value, coords, e in zip(B.values, B.coords, B.log_norms):
        shown = str(value) if B.lattice.mode == "drinfeld" else [str(x) for x in value]
        out.append({"vector": shown, "coords": [str(c) for c in coords], "log_norm": str(e)})
    return out


def cmd_reduce(cfg: ProblemConfig) -> dict:
    L = cfg.lattice()
    B = lat.reduce(L, cfg.cap_iterations)
    return {
        "mode": L.mode,
        "basis": _basis_json(B),
        "successive_minima_log_q": [str(e) for e in lat.successive_minima(B)],
        "iterations": str(B.iterations),
        "provenance": "reduction by aligned F_q-combinations within norm classes",
    }


def cmd_volume(cfg: ProblemConfig) -> dict:
    L = cfg.lattice()
    B = lat.reduce(L, cfg.cap_iterations)
    rep = lat.volume_orthogonal(B)
    det = lat.volume_det(B, lat.cr.identity(B.rank, L.A))
    routes = dict(rep.routes)
    routes.update(det.routes)
    if L.mode == "abstract":
        routes.update(lat.volume_frame(L).routes)
    i = max(lat.stable_index(B), 0)
    count_log = lat.count_points_log(B, 0, i)
    routes["counting"] = B.rank * i - count_log
    gb = None
    if not B.rank or B.log_norms[0] >= lat.LogNorm.from_rational(0, L.q):
        gb = lat.generator_bound(B)
    agree = all(v == rep.vol_log_q for v in routes.values())
    out = {
        "vol_log_q": str(rep.vol_log_q),
        "vol": str(rep.vol),
        "euler_characteristic": str(rep.euler_characteristic),
        "rank": str(B.rank),
        "routes": {k: str(v) for k, v in sorted(routes.items())},
        "agree": agree,
        "log_norms": [str(e) for e in B.log_norms],
    }
    if gb is not None:
        out["generator_bound_log_q"] = str(gb.bound_log_q)
        out["ball_generates"] = gb.generates
    if not agree:
        raise DrinfeldError(f"volume routes disagree: {out['routes']}")
    return out


def cmd_conductor(cfg: ProblemConfig) -> dict:
    D = cfg.module()
    gens = [cfg.element("lattice", "generators", g) for g in cfg.lattice_generators]
    rep = conductor(D, gens, cap_iterations=cfg.cap_iterations)
    return rep.to_json()


def cmd_as_break(cfg: ProblemConfig) -> dict:
    rows = []
    for text in cfg.as_break:
        cls = as_reduce(cfg.element("as_break", "w", text))
        rows.append({"w": text, "kind": cls.kind, "break": cls.break_, "reduced": str(cls.reduced)})
    out = {"classes": rows, "provenance": "wp-reduction of p-divisible polar terms"}
    if len(rows) == 1:
        out["break"] = rows[0]["break"]
        out["kind"] = rows[0]["kind"]
    return out


def cmd_kummer(cfg: ProblemConfig) -> dict:
    D = cfg.module()
    if cfg.kummer_lambda is None:
        raise ParseError("[kummer] lambda is required")
    lam = cfg.element("kummer", "lambda", cfg.kummer_lambda)
    out = {"break": kummer_break(D, lam).to_json()}
    if cfg.kummer_a is not None:
        a = cfg._parse("kummer", "a", cfg.kummer_a, cfg.ring().parse)
        out["image"] = kummer_image_at_level(D, a, lam, cfg.cap_ext).to_json()
    return out


COMMANDS = {
    "height": cmd_height,
    "volume": cmd_volume,
    "reduce": cmd_reduce,
    "conductor": cmd_conductor,
    "as-break": cmd_as_break,
    "kummer": cmd_kummer,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinfeld-local", description=__doc__.split("\n")[0])
    ap.add_argument("command", choices=sorted(COMMANDS) + ["verify"])
    ap.add_argument("--config", help="problem description (INI)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="compact single-line JSON")
    ap.add_argument("--suite", help="verification suite: " + ", ".join(sorted(SUITES)))
    ap.add_argument("--cases", type=int, help="override the suite case count")
    ap.add_argument("--cap-degree", type=int)
    ap.add_argument("--cap-ext", type=int)
    return ap


def _emit(data, compact: bool, stream=None):
    stream = stream or sys.stdout
    if compact:
        stream.write(json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        stream.write(json.dumps(data, sort_keys=True, indent=2) + "\n")


def _error(exc: Exception, code: int, compact: bool) -> int:
    _emit({"error": getattr(exc, "code", "error"), "message": str(exc)}, compact, sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("cap_degree", "cap_ext", "cases"):
        val = getattr(args, name)
        if val is not None and val < 1:
            return _error(ParseError(f"--{name.replace('_', '-')} must be positive"), EXIT_PARSE, args.json)
    if args.command == "verify":
        if args.suite not in SUITES:
            return _error(ParseError(f"unknown suite {args.suite!r}"), EXIT_PARSE, args.json)
        try:
            res: SuiteResult = run_suite(args.suite, args.seed, args.cases)
        except DrinfeldError as exc:
            return _error(exc, EXIT_COMPUTE, args.json)
        data = res.to_json()
        data["seed"] = args.seed
        _emit(data, args.json)
        return EXIT_OK if res.passed else EXIT_VERIFY
    try:
        cfg = _load(args)
        data = COMMANDS[args.command](cfg)
    except ParseError as exc:
        return _error(exc, EXIT_PARSE, args.json)
    except DrinfeldError as exc:
        return _error(exc, EXIT_COMPUTE, args.json)
    _emit(data, args.json)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
