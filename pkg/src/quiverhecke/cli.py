"""Command-line front end: config ingestion, suite dispatch, reports.

Commands:

* ``orbits`` — list the value orbits of the configured seeds, their
  even-subgroup splits, sizes, and value multiplicity vectors;
* ``gdim`` — graded-dimension tables of the configured cyclotomic
  quotients (big flavor, involution-fixed part, and native even flavor
  side by side when the multiplicity map is inversion-symmetric);
* ``verify <suite>`` — run one verification suite and report each check;
* ``series`` — shorthand for ``verify series``.

Configuration is a TOML document; every scalar is written as an exact
string (integers or ``a/b`` fractions) and parsed by the configured field,
so no floating point enters anywhere.  Reports are emitted as JSON with a
stable key order (byte-identical for identical configuration) or as
aligned text.  Exit codes: 0 all checks passed, 1 at least one check
failed, 2 configuration problem.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

try:  # python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - version-dependent
    import tomli as tomllib

from . import weyl
from .polrep import model_agreement_checks
from .report import CheckRecord
from .scalars import Field, Params, make_field
from .type_b import TypeBAlgebra, algebra_from_seed, relation_checks, right_span_checks
from .type_d import TypeDAlgebra, algebra_from_seed_d, fixed_point_checks
from .cyclotomic.quotient import CyclotomicQuotient
from .cyclotomic.heckemodel import (
    build_hecke_model,
    d_hecke_checks,
    hecke_relation_checks,
    q_condition_checks,
    round_trip_checks,
    series_identity_checks,
    spectral_checks,
)
from .cyclotomic import fixedpoints as fp

__all__ = ["ConfigError", "RunConfig", "SUITES", "load_config", "main", "run_command"]

SUITES = (
    "relations-v",
    "relations-w",
    "polrep",
    "basis",
    "fixed-point",
    "series",
    "q-conditions",
    "iso-b",
    "iso-d",
)


class ConfigError(Exception):
    """A problem with user-supplied configuration (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters, all scalars already in the exact field."""

    field: Field
    params: Params
    lam: tuple | None
    seeds: tuple[tuple, ...]
    m: dict
    truncation: int | None
    degree_cap: int | None
    rng_seed: int
    samples: int
    sha256: str
    labels: tuple[str, ...] = dc_field(default=())


DEFAULT_TOML = b"""
[field]
kind = "rationals"

[params]
p = "1"
q = "2"

[context]
seeds = []
"""


def _parse_scalar(F: Field, text) -> object:
    if not isinstance(text, str):
        raise ConfigError(
            f"scalars must be exact strings, got {text!r} of type {type(text).__name__}"
        )
    try:
        return F.parse(text)
    except Exception as exc:
        raise ConfigError(f"cannot parse scalar {text!r}: {exc}") from exc


def load_config(blob: bytes, overrides: dict | None = None) -> RunConfig:
    """Parse and validate a TOML configuration document."""
    overrides = dict(overrides or {})
    try:
        raw = tomllib.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"invalid config document: {exc}") from exc

    fld = raw.get("field", {})
    kind = fld.get("kind", "rationals")
    try:
        if str(kind).strip().lower() in ("q", "qq", "rationals"):
            F = make_field("Q")
        elif str(kind).strip().lower() == "prime":
            F = make_field(int(fld["modulus"]))
        else:
            F = make_field(int(kind))
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"invalid field spec {fld!r}: {exc}") from exc

    par = raw.get("params", {})
    try:
        params = Params(F, _parse_scalar(F, par.get("p", "1")), _parse_scalar(F, par.get("q", "2")))
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"invalid deformation parameters: {exc}") from exc

    ctx = raw.get("context", {})
    seeds_raw = ctx.get("seeds", [])
    if not isinstance(seeds_raw, list):
        raise ConfigError("context.seeds must be a list of residue-string lists")
    seeds = []
    for s in seeds_raw:
        if not isinstance(s, list) or not s:
            raise ConfigError(f"each seed must be a non-empty list of strings, got {s!r}")
        seeds.append(tuple(_parse_scalar(F, x) for x in s))
    if len({len(s) for s in seeds}) > 1:
        raise ConfigError("all seeds must have the same number of strands")

    lam_raw = ctx.get("lambda")
    lam = tuple(_parse_scalar(F, x) for x in lam_raw) if lam_raw else None

    m_raw = raw.get("multiplicities", {})
    m = {}
    for k, v in m_raw.items():
        if not isinstance(v, int) or v < 0:
            raise ConfigError(f"multiplicity of {k!r} must be a non-negative integer")
        if v:
            m[_parse_scalar(F, k)] = v

    run = raw.get("run", {})

    def _opt_int(key: str, lo: int) -> int | None:
        v = overrides.get(key, run.get(key))
        if v is None:
            return None
        try:
            v = int(v)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{key} must be an integer") from exc
        if v < lo:
            raise ConfigError(f"{key} must be at least {lo}")
        return v

    truncation = _opt_int("truncation", 4)
    degree_cap = _opt_int("degree_cap", 4)
    rng_seed = _opt_int("rng_seed", 0)
    samples = _opt_int("samples", 1)

    hasher = hashlib.sha256()
    hasher.update(blob)
    hasher.update(
        json.dumps(
            {k: overrides[k] for k in sorted(overrides) if overrides[k] is not None}
        ).encode("utf-8")
    )

    return RunConfig(
        field=F,
        params=params,
        lam=lam,
        seeds=tuple(seeds),
        m=m,
        truncation=truncation,
        degree_cap=degree_cap,
        rng_seed=2026 if rng_seed is None else rng_seed,
        samples=60 if samples is None else samples,
        sha256=hasher.hexdigest(),
        labels=tuple("-".join(F.fmt(x) for x in s) for s in seeds),
    )


# ---------------------------------------------------------------------------
# suite runners (each returns plain dict records for deterministic assembly)


def _fmt_tuple(F: Field, tup) -> list[str]:
    return [F.fmt(x) for x in tup]


def _algebra_b(cfg: RunConfig, idx: int) -> TypeBAlgebra:
    try:
        return algebra_from_seed(cfg.params, cfg.seeds[idx], lam=cfg.lam)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"seed {cfg.labels[idx]} is invalid: {exc}") from exc


def _algebra_d(cfg: RunConfig, idx: int) -> TypeDAlgebra:
    try:
        return algebra_from_seed_d(cfg.params, cfg.seeds[idx])
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"seed {cfg.labels[idx]} is invalid: {exc}") from exc


def _quotient(cfg: RunConfig, alg) -> CyclotomicQuotient:
    if not cfg.m:
        raise ConfigError("this suite needs a non-empty [multiplicities] table")
    kwargs = {}
    if cfg.degree_cap is not None:
        kwargs["safety_cap"] = cfg.degree_cap
    try:
        return CyclotomicQuotient(alg, dict(cfg.m), **kwargs)
    except RuntimeError as exc:
        raise ConfigError(str(exc)) from exc


def _m_symmetric(cfg: RunConfig) -> bool:
    F = cfg.field
    return all(
        cfg.m.get(v, 0) == cfg.m.get(F.inv(v), 0)
        for v in set(cfg.m) | {F.inv(v) for v in cfg.m}
    )


def _suite_relations_v(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    return relation_checks(_algebra_b(cfg, idx))


def _suite_relations_w(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    return relation_checks(_algebra_d(cfg, idx))


def _suite_polrep(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    rng = random.Random(cfg.rng_seed)
    return model_agreement_checks(_algebra_b(cfg, idx), rng, samples=cfg.samples)


def _suite_basis(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    return right_span_checks(_algebra_b(cfg, idx))


def _suite_fixed_point(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    alg = _algebra_b(cfg, idx)
    rng = random.Random(cfg.rng_seed)
    recs = fixed_point_checks(alg, rng, pairs=cfg.samples)
    if cfg.m:
        qt = _quotient(cfg, alg)
        recs += fp.involution_checks(qt, rng)
        recs += fp.eigensplit_checks(qt)
        if _m_symmetric(cfg):
            ctx = fp.descent_context(qt)
            recs += fp.fixed_dim_checks(ctx)
            recs += fp.block_dim_checks(ctx)
            recs += fp.phi_quotient_checks(ctx, rng, samples=min(cfg.samples, 30))
    return recs


def _suite_series(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    return series_identity_checks(cfg.field, cfg.truncation or 20)


def _suite_q_conditions(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    vertices = sorted(
        {x for tup in _algebra_b(cfg, idx).beta.members for x in tup},
        key=cfg.field.fmt,
    )
    return q_condition_checks(cfg.params, vertices, order=cfg.truncation or 12)


def _suite_iso_b(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    alg = _algebra_b(cfg, idx)
    qt = _quotient(cfg, alg)
    model = build_hecke_model(qt, order=cfg.truncation)
    recs = hecke_relation_checks(model)
    recs += spectral_checks(model)
    recs += round_trip_checks(model)
    recs += fp.min_symmetrization_checks(alg, dict(cfg.m))
    return recs


def _suite_iso_d(cfg: RunConfig, idx: int) -> list[CheckRecord]:
    alg = _algebra_b(cfg, idx)
    qt = _quotient(cfg, alg)
    model = build_hecke_model(qt, order=cfg.truncation)
    recs = d_hecke_checks(model)
    recs += fp.eta_intertwine_checks(model)
    if not _m_symmetric(cfg):
        recs += fp.asymmetric_reduction_checks(cfg.params, cfg.seeds[idx], dict(cfg.m))
    return recs


_DISPATCH = {
    "relations-v": _suite_relations_v,
    "relations-w": _suite_relations_w,
    "polrep": _suite_polrep,
    "basis": _suite_basis,
    "fixed-point": _suite_fixed_point,
    "series": _suite_series,
    "q-conditions": _suite_q_conditions,
    "iso-b": _suite_iso_b,
    "iso-d": _suite_iso_d,
}

# suites whose checks do not depend on a seed at all
_SEEDLESS = {"series"}


def _run_task(blob: bytes, overrides: dict, suite: str, idx: int) -> list[dict]:
    """One worker unit: rebuild the config and run a suite for one seed."""
    cfg = load_config(blob, overrides)
    label = "" if suite in _SEEDLESS else (cfg.labels[idx] if idx < len(cfg.labels) else "")
    out = []
    for rec in _DISPATCH[suite](cfg, idx):
        d = rec.as_dict()
        d["seed"] = label
        out.append(d)
    return out


def _verify_records(blob: bytes, overrides: dict, suite: str, cfg: RunConfig, workers: int) -> list[dict]:
    if suite in _SEEDLESS:
        tasks = [0]
    else:
        if not cfg.seeds:
            raise ConfigError(f"suite {suite!r} needs at least one seed in context.seeds")
        tasks = list(range(len(cfg.seeds)))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_task, blob, overrides, suite, t) for t in tasks]
            chunks = [f.result() for f in futures]  # submission order, not completion
    else:
        chunks = [_run_task(blob, overrides, suite, t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


# ---------------------------------------------------------------------------
# commands


def _cmd_orbits(cfg: RunConfig) -> tuple[dict, int]:
    F = cfg.field
    listing = []
    for s in cfg.seeds:
        beta = weyl.orbit(s, "B", F)
        plus, minus = weyl.split_even_suborbit(beta, F)
        dimvec = weyl.dimension_vector(beta, F)
        listing.append(
            {
                "seed": _fmt_tuple(F, s),
                "size": len(beta.members),
                "members": [_fmt_tuple(F, t) for t in beta.members],
                "split": {
                    "plus": {"seed": _fmt_tuple(F, plus.seed), "size": len(plus.members)},
                    "minus": None
                    if minus is None
                    else {"seed": _fmt_tuple(F, minus.seed), "size": len(minus.members)},
                },
                "dimension_vector": {F.fmt(v): c for v, c in sorted(dimvec.items(), key=lambda kv: F.fmt(kv[0]))},
            }
        )
    return {"orbits": listing}, 0


def _dims_json(dims: dict[int, int]) -> dict[str, int]:
    return {str(d): v for d, v in sorted(dims.items())}


def _cmd_gdim(cfg: RunConfig) -> tuple[dict, int]:
    if not cfg.m:
        raise ConfigError("gdim needs a non-empty [multiplicities] table")
    tables = []
    for idx in range(len(cfg.seeds)):
        alg = _algebra_b(cfg, idx)
        qt = _quotient(cfg, alg)
        entry: dict = {
            "seed": _fmt_tuple(cfg.field, cfg.seeds[idx]),
            "big": _dims_json(qt.graded_dims()),
            "total": qt.total_dim,
        }
        if _m_symmetric(cfg) and alg.n >= 2:
            plus_dims, minus_dims = fp.eigensplit_dims(qt)
            entry["fixed"] = _dims_json({d: v for d, v in plus_dims.items() if v})
            ctx = fp.descent_context(qt)
            entry["even_flavor"] = {
                ("plus" if sign == "+" else "minus"): _dims_json(q.graded_dims())
                for sign, q in sorted(ctx.native.items())
            }
        tables.append(entry)
    return {"tables": tables}, 0


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    if report.get("suite"):
        lines.append(f"suite:   {report['suite']}")
    lines.append(f"config:  sha256:{report['config_sha256']}")
    for key in ("orbits", "tables"):
        if key in report:
            lines.append(json.dumps({key: report[key]}, indent=2, sort_keys=False))
    if "checks" in report:
        width = max((len(c["id"]) for c in report["checks"]), default=0)
        for c in report["checks"]:
            status = "PASS" if c["passed"] else "FAIL"
            seed = f" [{c['seed']}]" if c.get("seed") else ""
            wit = "" if c["passed"] or not c.get("witness") else f"  <- {c['witness']}"
            lines.append(f"{status}  {c['id']:<{width}}{seed}  {c['description']}{wit}")
        lines.append(
            f"result: {report['counts']['passed']} passed, {report['counts']['failed']} failed"
        )
    return "\n".join(lines) + "\n"


def run_command(argv: list[str] | None = None) -> int:
    def add_common(p: argparse.ArgumentParser, after_command: bool) -> None:
        # the same options are accepted before and after the subcommand; the
        # post-command copies default to SUPPRESS so they only override
        defaults = {
            "--config": None,
            "--out": None,
            "--format": "text",
            "--workers": 1,
            "--truncation": None,
            "--degree-cap": None,
        }

        def dflt(flag: str) -> dict:
            return {"default": argparse.SUPPRESS if after_command else defaults[flag]}

        p.add_argument("--config", help="TOML configuration file", **dflt("--config"))
        p.add_argument("--out", help="write the report here instead of stdout", **dflt("--out"))
        p.add_argument("--format", choices=("json", "text"), **dflt("--format"))
        p.add_argument("--workers", type=int, help="parallel workers across seeds", **dflt("--workers"))
        p.add_argument("--truncation", type=int, help="series truncation order override", **dflt("--truncation"))
        p.add_argument("--degree-cap", type=int, help="quotient saturation safety cap override", **dflt("--degree-cap"))

    parser = argparse.ArgumentParser(
        prog="quiverhecke",
        description="exact verification suites for generalized quiver Hecke algebras",
    )
    add_common(parser, after_command=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("orbits", "list configured value orbits and their splits"),
        ("gdim", "graded-dimension tables of the configured quotients"),
        ("series", "shorthand for: verify series"),
    ):
        add_common(sub.add_parser(name, help=help_text), after_command=True)
    p_verify = sub.add_parser("verify", help="run one verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    add_common(p_verify, after_command=True)

    args = parser.parse_args(argv)

    if args.workers < 1:
        print("error: --workers must be at least 1", file=sys.stderr)
        return 2

    try:
        if args.config:
            try:
                with open(args.config, "rb") as fh:
                    blob = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from exc
        else:
            blob = DEFAULT_TOML
        overrides = {"truncation": args.truncation, "degree_cap": args.degree_cap}
        cfg = load_config(blob, overrides)

        report: dict = {"command": args.command, "suite": None, "config_sha256": cfg.sha256}
        code = 0
        if args.command == "orbits":
            payload, code = _cmd_orbits(cfg)
            report.update(payload)
        elif args.command == "gdim":
            payload, code = _cmd_gdim(cfg)
            report.update(payload)
        else:
            suite = "series" if args.command == "series" else args.suite
            report["command"] = "verify"
            report["suite"] = suite
            checks = _verify_records(blob, overrides, suite, cfg, args.workers)
            passed = sum(1 for c in checks if c["passed"])
            report["checks"] = checks
            report["counts"] = {"passed": passed, "failed": len(checks) - passed}
            report["passed"] = passed == len(checks)
            code = 0 if report["passed"] else 1
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = (
        json.dumps(report, indent=2, sort_keys=False) + "\n"
        if args.format == "json"
        else _render_text(report)
    )
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return code


def main() -> None:  # console-script entry point
    raise SystemExit(run_command())
