"""Command line entry point: ``linset <command> [options]``.

Exit code 0 means every requested check passed and 1 means one failed;
an invalid configuration exits with 2. Settings are resolved with command line
flags first, then the ``--config`` JSON file, then built-in defaults; the
resolved settings are echoed into every output document.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .blocking import certify, incidence_profile, line_rank, redei_lines, verify_blocking, verify_minimal
from .field import FieldError, GF, make_field, split_prime_power
from .linear_sets import (
    LinearSetError,
    build_evaluation_set,
    build_projection_frame,
    feasible_spectra,
    field_reduction_weight,
    make_spec,
    predicted_spectrum,
    project_subgeometry,
)
from .poly import PolyError, count_reduced_closed_form, count_reduced_enumerated
from .projective import ProjectivePoint, cross_ratio, cross_ratio_orbit
from .serialize import SCHEMA, count_to_json, dumps, element_to_json, report_to_csv, report_to_json, rows_to_csv

OUTPUT_DIR_ENV = "LINSET_OUTPUT_DIR"

CHECKS = ("size", "spectrum", "projection-agreement", "weight-oracle", "spectra-solver",
          "cross-ratio", "blocking", "redei", "secants")

DEFAULTS: dict[str, Any] = {
    "p": 2, "e": 1, "h": None, "s": None, "partition": None, "seed": 0, "modulus": None,
    "format": "json", "check": [], "out": None, "points": False,
    "q": None, "k": None, "size": None, "max_weight": None, "bounds": None,
    "subfield": None, "samples": 32, "enumerate": True,
}


class ConfigError(ValueError):
    pass


# -- config resolution ----------------------------------------------------------

def _int_list(value) -> list[int] | None:
    if value is None:
        return None
    if isinstance(value, str):
        try:
            return [int(x) for x in value.replace(" ", "").split(",") if x]
        except ValueError:
            raise ConfigError(f"expected comma separated integers, got {value!r}") from None
    return [int(x) for x in value]


def _check_list(value) -> list[str]:
    if not value:
        return []
    items = value if isinstance(value, list) else [value]
    out: list[str] = []
    for item in items:
        for name in str(item).split(","):
            name = name.strip()
            if not name:
                continue
            if name not in CHECKS:
                raise ConfigError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
            if name not in out:
                out.append(name)
    return out


def resolve(args: argparse.Namespace, file_config: dict | None = None) -> dict:
    """Flags over config file over defaults."""
    cfg = dict(DEFAULTS)
    for key, value in (file_config or {}).items():
        key = key.replace("-", "_")
        if key not in DEFAULTS and key != "command":
            raise ConfigError(f"unknown config key {key!r}")
        cfg[key] = value
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None and value is not False and value != []:
            cfg[key] = value
    cfg["partition"] = _int_list(cfg["partition"])
    cfg["bounds"] = _int_list(cfg["bounds"])
    cfg["modulus"] = _int_list(cfg["modulus"])
    cfg["check"] = _check_list(cfg["check"])
    if cfg["format"] not in ("json", "csv"):
        raise ConfigError(f"format must be json or csv, not {cfg['format']!r}")
    for key in ("p", "e", "h", "s", "seed", "q", "k", "size", "max_weight", "subfield", "samples"):
        if cfg[key] is not None:
            try:
                cfg[key] = int(cfg[key])
            except (TypeError, ValueError):
                raise ConfigError(f"{key} must be an integer") from None
    return cfg


def _echo(cfg: dict, keys: tuple[str, ...]) -> dict:
    return {k: cfg[k] for k in keys if cfg.get(k) is not None}


def _field(cfg: dict) -> GF:
    if cfg["h"] is None:
        raise ConfigError("--h is required")
    try:
        return make_field(cfg["p"], cfg["e"], cfg["h"], seed=cfg["seed"], modulus=cfg["modulus"])
    except FieldError as exc:
        raise ConfigError(str(exc)) from None


def _spec(cfg: dict, F: GF):
    if cfg["s"] is None or cfg["partition"] is None:
        raise ConfigError("--s and --partition are required")
    try:
        return make_spec(F, cfg["s"], cfg["partition"])
    except (LinearSetError, FieldError) as exc:
        raise ConfigError(str(exc)) from None


# -- checks ---------------------------------------------------------------------

def _sample(points: list, n: int, seed: int) -> list:
    if len(points) <= n:
        return points
    return random.Random(seed).sample(points, n)


def _cross_ratios_in(F: GF, pts: list[ProjectivePoint], d: int) -> tuple[bool, list | None]:
    """Do all cross-ratios of 4-subsets lie in the subfield of degree d over F_q?"""
    for quad in itertools.combinations(pts, 4):
        cr = cross_ratio(F, *quad)
        if not F.in_subfield(cr, d):
            return False, [list(P.coords) for P in quad] + [cr]
    return True, None


def run_checks(cfg: dict, spec, report) -> dict:
    F, q, t = spec.field, spec.q, spec.partition
    results: dict[str, dict] = {}
    for name in cfg["check"]:
        if name == "size":
            want = count_reduced_closed_form(t, q)
            results[name] = {"pass": report.size == want, "expected": count_to_json(want),
                             "observed": count_to_json(report.size)}
        elif name == "spectrum":
            want = list(predicted_spectrum(t, q))
            results[name] = {"pass": want == list(report.spectrum) and report.identities_hold(),
                             "expected": want, "observed": list(report.spectrum)}
        elif name == "projection-agreement":
            proj = project_subgeometry(build_projection_frame(spec))
            results[name] = {"pass": proj.points == report.points}
        elif name == "weight-oracle":
            pts = _sample(list(report.points), cfg["samples"], cfg["seed"])
            bad = [P for P in pts if field_reduction_weight(F, report, P) != report.points[P]]
            results[name] = {"pass": not bad, "sampled": len(pts), "mismatches": len(bad)}
        elif name == "spectra-solver":
            if spec.l != 1:
                results[name] = {"pass": True, "skipped": "only for sets on a line"}
                continue
            sols = feasible_spectra(report.rank, report.size, q)
            results[name] = {"pass": tuple(report.spectrum) in sols,
                             "solutions": [list(x) for x in sols]}
        elif name == "cross-ratio":
            if spec.l != 1:
                results[name] = {"pass": True, "skipped": "only for sets on a line"}
                continue
            pts = list(report.points)[:40]
            ok, witness = _cross_ratios_in(F, pts, spec.s)
            results[name] = {"pass": ok, "subfield_degree": spec.s, "points_used": len(pts)}
            if witness is not None:
                results[name]["witness"] = witness
        elif name in ("blocking", "redei", "secants"):
            if spec.l != 2:
                raise ConfigError(f"check {name!r} needs a partition with three parts")
            results.update(_blocking_checks(cfg, spec, report, [name]))
    return results


def _blocking_checks(cfg: dict, spec, report, names: list[str]) -> dict:
    F = spec.field
    prof = incidence_profile(F, report)
    out: dict[str, dict] = {}
    for name in names:
        if name == "blocking":
            b = verify_blocking(F, report, prof)
            minimal = verify_minimal(F, report, prof).minimal if b.blocking else False
            claimed = spec.k == F.h + 1
            ok = (b.blocking and minimal and b.small) if claimed else True
            out[name] = {"pass": ok, "asserted": claimed, "blocking": b.blocking,
                         "minimal": minimal, "small": b.small}
        elif name == "redei":
            lines = redei_lines(F, report, prof)
            oracle = all(line_rank(F, report, L) == r for L, r in lines)
            expect_nonempty = min(spec.partition) == 1
            out[name] = {"pass": oracle and (bool(lines) == expect_nonempty),
                         "count": len(lines), "expected_nonempty": expect_nonempty}
        elif name == "secants":
            total = int(prof.counts.sum())
            out[name] = {"pass": total == report.size * (F.order + 1),
                         "incidences": total,
                         "has_q_plus_1_secant": bool((prof.counts == F.q + 1).any())}
    return out


# -- output ---------------------------------------------------------------------

def _emit(cfg: dict, text: str, default_name: str) -> None:
    target = cfg["out"]
    if target is None and os.environ.get(OUTPUT_DIR_ENV):
        target = str(Path(os.environ[OUTPUT_DIR_ENV]) / default_name)
    if target is None:
        sys.stdout.write(text)
        return
    path = Path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _stem(cfg: dict) -> str:
    part = "-".join(str(x) for x in cfg["partition"] or [])
    return f"p{cfg['p']}e{cfg['e']}h{cfg['h']}s{cfg['s']}t{part}"


def _status(checks: dict) -> int:
    return 0 if all(c["pass"] for c in checks.values()) else 1


FIELD_KEYS = ("p", "e", "h", "seed", "modulus")


def cmd_construct(cfg: dict) -> int:
    F = _field(cfg)
    spec = _spec(cfg, F)
    report = build_evaluation_set(spec)
    checks = run_checks(cfg, spec, report)
    echo = _echo(cfg, FIELD_KEYS + ("s", "partition", "check", "format"))
    ext = cfg["format"]
    if ext == "csv":
        text = report_to_csv(report)
    else:
        text = dumps(report_to_json(report, echo, include_points=cfg["points"], checks=checks))
    _emit(cfg, text, f"construct-{_stem(cfg)}.{ext}")
    return _status(checks)


def cmd_verify_blocking(cfg: dict) -> int:
    F = _field(cfg)
    if cfg["partition"] is not None and len(cfg["partition"]) != 3:
        raise ConfigError(f"verify-blocking needs a partition with three parts, got {cfg['partition']}")
    spec = _spec(cfg, F)
    report = build_evaluation_set(spec)
    cert = certify(F, report)
    names = cfg["check"] or (["blocking", "redei", "secants"])
    checks = _blocking_checks(cfg, spec, report, [n for n in names if n in ("blocking", "redei", "secants")])
    other = [n for n in names if n not in ("blocking", "redei", "secants")]
    if other:
        checks.update(run_checks(dict(cfg, check=other), spec, report))
    echo = _echo(cfg, FIELD_KEYS + ("s", "partition", "check", "format"))
    if cfg["format"] == "csv":
        rows = [(k, json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in cert.items()]
        text = rows_to_csv(["key", "value"], rows)
    else:
        doc = {"schema": SCHEMA, "config": echo, "field": F.to_json(),
               "alpha": element_to_json(F, spec.alpha), **cert, "checks": checks}
        text = dumps(doc)
    _emit(cfg, text, f"blocking-{_stem(cfg)}.{cfg['format']}")
    return _status(checks)


def _q_field(cfg: dict) -> GF:
    if cfg["q"] is None:
        raise ConfigError("--q is required")
    try:
        p, e = split_prime_power(cfg["q"])
    except FieldError as exc:
        raise ConfigError(str(exc)) from None
    return make_field(p, e, 1)


def cmd_count(cfg: dict) -> int:
    F = _q_field(cfg)
    bounds = cfg["bounds"]
    if not bounds or any(b < 1 for b in bounds):
        raise ConfigError("--bounds must be positive integers")
    closed = count_reduced_closed_form(bounds, F.q)
    doc = {"schema": SCHEMA, "config": _echo(cfg, ("q", "bounds", "enumerate")),
           "closed_form": count_to_json(closed)}
    status = 0
    if cfg["enumerate"]:
        try:
            enum = count_reduced_enumerated(bounds, F)
        except PolyError as exc:
            raise ConfigError(str(exc)) from None
        doc["enumerated"] = count_to_json(enum)
        doc["match"] = enum == closed
        status = 0 if enum == closed else 1
    if cfg["format"] == "csv":
        text = rows_to_csv(list(doc)[2:], [[doc[k] for k in list(doc)[2:]]])
    else:
        text = dumps(doc)
    _emit(cfg, text, f"count-q{F.q}-{'-'.join(map(str, bounds))}.{cfg['format']}")
    return status


def cmd_spectra(cfg: dict) -> int:
    if cfg["q"] is None or cfg["k"] is None:
        raise ConfigError("--q and --k are required")
    q, k = cfg["q"], cfg["k"]
    _q_field(cfg)
    if k < 2:
        raise ConfigError("--k must be at least 2")
    size = cfg["size"] if cfg["size"] is not None else q ** (k - 1) + 1
    sols = feasible_spectra(k, size, q, cfg["max_weight"])
    if cfg["format"] == "csv":
        text = rows_to_csv([f"x{i}" for i in range(1, k + 1)], sols)
    else:
        text = dumps({"schema": SCHEMA, "config": _echo(cfg, ("q", "k", "size", "max_weight")),
                      "size": count_to_json(size), "count": len(sols),
                      "spectra": [list(x) for x in sols]})
    _emit(cfg, text, f"spectra-q{q}-k{k}-n{size}.{cfg['format']}")
    return 0


def cmd_crossratio(cfg: dict) -> int:
    """Cross-ratios of the rank-3 set {<(a, b + c alpha)>} with alpha of degree s."""
    F = _field(cfg)
    if cfg["s"] is None:
        raise ConfigError("--s is required")
    d = cfg["subfield"] if cfg["subfield"] is not None else 2
    if F.h % d:
        raise ConfigError(f"subfield degree {d} does not divide h={F.h}")
    spec = _spec(dict(cfg, partition=[1, 2]), F)
    report = build_evaluation_set(spec)
    pts = list(report.points)
    values = {}
    for quad in itertools.combinations(pts, 4):
        x = cross_ratio(F, *quad)
        values.setdefault(x, quad)
    rows = []
    for x in sorted(values):
        orbit = cross_ratio_orbit(F, x)
        rows.append({"value": element_to_json(F, x),
                     "in_subfield": F.in_subfield(x, d),
                     "orbit_in_subfield": all(F.in_subfield(y, d) for y in orbit),
                     "orbit": [element_to_json(F, y) for y in orbit]})
    all_in = all(r["in_subfield"] for r in rows)
    verdict = f"in F_{{q^{d}}}" if all_in else f"not in F_{{q^{d}}}"
    if cfg["format"] == "csv":
        text = rows_to_csv(["value", "in_subfield", "orbit_in_subfield"],
                           [[" ".join(map(str, r["value"])), r["in_subfield"], r["orbit_in_subfield"]]
                            for r in rows])
    else:
        text = dumps({"schema": SCHEMA, "config": _echo(cfg, FIELD_KEYS + ("s", "subfield")),
                      "field": F.to_json(), "alpha": element_to_json(F, spec.alpha),
                      "points": len(pts), "quadruples": sum(1 for _ in itertools.combinations(pts, 4)),
                      "subfield_degree": d, "all_in_subfield": all_in, "verdict": verdict,
                      "values": rows})
    _emit(cfg, text, f"crossratio-p{F.p}e{F.e}h{F.h}s{spec.s}d{d}.{cfg['format']}")
    return 0


COMMANDS: dict[str, Callable[[dict], int]] = {
    "construct": cmd_construct,
    "verify-blocking": cmd_verify_blocking,
    "count": cmd_count,
    "spectra": cmd_spectra,
    "crossratio": cmd_crossratio,
}


def cmd_run(cfg: dict, file_config: dict | None) -> int:
    """Run every entry of ``runs`` in the config file; worst exit code wins."""
    runs = (file_config or {}).get("runs")
    if not isinstance(runs, list) or not runs:
        raise ConfigError("run needs a config file with a non-empty 'runs' list")
    worst = 0
    for i, entry in enumerate(runs):
        entry = dict(entry)
        command = entry.pop("command", "construct")
        if command not in COMMANDS:
            raise ConfigError(f"run {i}: unknown command {command!r}")
        ns = argparse.Namespace()
        sub = resolve(ns, entry)
        worst = max(worst, COMMANDS[command](sub))
    return worst


# -- argument parsing -----------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linset", description="Minimum-size linear sets and their blocking sets.")
    parser.add_argument("--version", action="version", version=f"linset {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default settings")
    common.add_argument("--format", choices=["json", "csv"])
    common.add_argument("--out", help="output file (default: stdout or $" + OUTPUT_DIR_ENV + ")")
    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--p", type=int, help="characteristic")
    field.add_argument("--e", type=int, help="q = p^e")
    field.add_argument("--h", type=int, help="degree of the extension F_{q^h} / F_q")
    field.add_argument("--seed", type=int, help="rotates the modulus search")
    field.add_argument("--modulus", help="explicit modulus, coefficients lowest degree first")
    build = argparse.ArgumentParser(add_help=False)
    build.add_argument("--s", type=int, help="degree of alpha over F_q")
    build.add_argument("--partition", help="t_1,...,t_{l+1}")
    build.add_argument("--check", action="append", help=f"checks to run: {', '.join(CHECKS)}")
    build.add_argument("--samples", type=int, help="points sampled by the weight oracle")

    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("construct", parents=[common, field, build], help="build the evaluation set")
    c.add_argument("--points", action="store_true", default=None, help="include the point list")
    sub.add_parser("verify-blocking", parents=[common, field, build], help="certify a planar set")
    cnt = sub.add_parser("count", parents=[common], help="count reduced polynomial tuples")
    cnt.add_argument("--q", type=int)
    cnt.add_argument("--bounds", help="t_1,...,t_{l+1}")
    cnt.add_argument("--no-enumerate", dest="enumerate", action="store_false", default=None,
                     help="closed form only")
    sp = sub.add_parser("spectra", parents=[common], help="feasible weight spectra")
    sp.add_argument("--q", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--size", type=int, help="default q^(k-1)+1")
    sp.add_argument("--max-weight", dest="max_weight", type=int)
    cr = sub.add_parser("crossratio", parents=[common, field], help="cross-ratio subfield probe")
    cr.add_argument("--s", type=int, help="degree of the element spanning the set")
    cr.add_argument("--subfield", type=int, help="degree d of the subfield F_{q^d} tested")
    sub.add_parser("run", parents=[common], help="batch over the 'runs' list of a config file")
    return parser


def _fail(code: int, kind: str, reason: str) -> int:
    sys.stderr.write(json.dumps({"schema": SCHEMA, "error": kind, "reason": reason}) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    file_config = None
    try:
        if args.config:
            try:
                file_config = json.loads(Path(args.config).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if args.command == "run":
            return cmd_run(resolve(args), file_config)
        runs_free = {k: v for k, v in (file_config or {}).items() if k != "runs"}
        cfg = resolve(args, runs_free)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        return _fail(2, "invalid-config", str(exc))
    except (LinearSetError, PolyError, FieldError) as exc:
        return _fail(1, "check-failed", str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
