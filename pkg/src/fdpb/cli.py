"""Command-line front end.

    fdpb build     --config CFG.json [--output REP.json] [--seed N]
    fdpb verify    --input REP.json [--json] [--output REPORT.json]
    fdpb spectrum  --input REP.json [--model h|swanson:THETA|shifted:BETA]
    fdpb hermitize --input REP.json --output HERM.json

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage,
configuration or I/O error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import __version__
from .algebra import FdpbRep, buchdahl_rep, derived_ops, random_similarity, similarity_deform, validate_rep
from .chain import build_system
from .errors import FdpbError, ParameterError
from .matrix import DEFAULT_TOL, Tolerance, eig_general
from .models import n4_alpha, shifted_oscillator, swanson, swanson_spectrum_report
from .pipeline import run_pipeline
from .serialize import (
    FormatError,
    dumps,
    hermitian_system_to_json,
    read_json,
    rep_from_json,
    rep_to_json,
    write_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
GENERATORS = ("buchdahl", "similarity", "n4-alpha", "swanson", "shifted")
REQUIRED = {"n4-alpha": ("alpha",), "swanson": ("theta",), "shifted": ("beta",), "similarity": ("seed",)}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int
    generator: str
    params: dict[str, Any] = field(default_factory=dict)
    tol_abs: float = DEFAULT_TOL.abs_eps
    tol_rel: float = DEFAULT_TOL.rel_eps
    output_path: str = ""

    @classmethod
    def from_dict(cls, obj: Any) -> "RunConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        generator = obj.get("generator")
        if generator not in GENERATORS:
            raise ConfigError(f"unknown generator {generator!r}; expected one of {', '.join(GENERATORS)}")
        params = obj.get("params") or {}
        if not isinstance(params, dict):
            raise ConfigError("params must be an object")
        n = obj.get("n", 4 if generator == "n4-alpha" else None)
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise ConfigError(f"n must be an integer >= 2, got {n!r}")
        if generator == "n4-alpha" and n != 4:
            raise ConfigError("generator n4-alpha requires n = 4")
        cfg = cls(
            n=n,
            generator=generator,
            params=dict(params),
            tol_abs=float(obj.get("tol_abs", DEFAULT_TOL.abs_eps)),
            tol_rel=float(obj.get("tol_rel", DEFAULT_TOL.rel_eps)),
            output_path=str(obj.get("output_path") or ""),
        )
        return cfg

    def check_params(self) -> None:
        missing = [p for p in REQUIRED.get(self.generator, ()) if p not in self.params]
        if missing:
            raise ConfigError(f"generator {self.generator} needs params: {', '.join(missing)}")

    @property
    def tol(self) -> Tolerance:
        return Tolerance(self.tol_abs, self.tol_rel)


def make_rep(cfg: RunConfig) -> FdpbRep:
    """Representation described by ``cfg``.

    ``swanson`` and ``shifted`` write their base triple (the truncated
    oscillator) and carry the model parameter in ``meta`` for ``spectrum``.
    """
    cfg.check_params()
    p = cfg.params
    meta = {"generator": cfg.generator, "params": p, "seed": p.get("seed")}
    if cfg.generator == "n4-alpha":
        rep = n4_alpha(float(p["alpha"]))
    elif cfg.generator == "similarity":
        seed = p["seed"]
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ConfigError(f"seed must be an integer, got {seed!r}")
        cap = float(p.get("condition_cap", 100.0))
        s0, s = random_similarity(cfg.n, seed, condition_cap=cap)
        rep = similarity_deform(buchdahl_rep(cfg.n), s0, s, cfg.tol, condition_cap=max(cap, 1e6), check=False)
    else:
        rep = buchdahl_rep(cfg.n).as_fdpb()
    return FdpbRep(rep.n, rep.a, rep.b, rep.k, meta)


def _tol(args) -> Tolerance:
    return Tolerance(
        DEFAULT_TOL.abs_eps if args.tol_abs is None else args.tol_abs,
        DEFAULT_TOL.rel_eps if args.tol_rel is None else args.tol_rel,
    )


def _load_rep(path) -> FdpbRep:
    if not path:
        raise ConfigError("--input is required")
    return rep_from_json(read_json(path))


def cmd_build(args) -> int:
    if not args.config:
        raise ConfigError("--config is required")
    raw = read_json(args.config)
    if args.seed is not None and isinstance(raw, dict):
        raw.setdefault("params", {})["seed"] = args.seed
    cfg = RunConfig.from_dict(raw)
    if args.tol_abs is not None:
        cfg.tol_abs = args.tol_abs
    if args.tol_rel is not None:
        cfg.tol_rel = args.tol_rel
    out = args.output or cfg.output_path
    if not out:
        raise ConfigError("no output path: pass --output or set output_path")
    rep = make_rep(cfg)
    report = validate_rep(rep, cfg.tol)
    write_json(rep_to_json(rep, report.to_dict()), out)
    if args.json:
        sys.stdout.write(dumps(report.to_dict()))
    else:
        print("\n".join(report.lines()))
        print(f"wrote {out}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    rep = _load_rep(args.input)
    result = run_pipeline(rep, _tol(args))
    if args.output:
        write_json(result.to_dict(), args.output)
    if args.json:
        sys.stdout.write(dumps(result.to_dict()))
    else:
        print("\n".join(result.lines()))
        print("PASS" if result.passed else f"FAIL (first failure: {' / '.join(result.first_failure)})")
    return EXIT_OK if result.passed else EXIT_FAIL


_PI_RE = re.compile(r"^\s*(-?)\s*(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_number(text: str) -> float:
    """Parse ``0.26``, ``pi/12``, ``-pi/8`` or ``2*pi/9``."""
    m = _PI_RE.match(text)
    if m:
        sign, coef, den = m.groups()
        value = (float(coef) if coef else 1.0) * np.pi / (float(den) if den else 1.0)
        return -value if sign else value
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse number {text!r}") from None


def _default_model(rep: FdpbRep) -> str:
    gen = rep.meta.get("generator")
    params = rep.meta.get("params") or {}
    if gen == "swanson" and "theta" in params:
        return f"swanson:{params['theta']}"
    if gen == "shifted" and "beta" in params:
        return f"shifted:{params['beta']}"
    return "h"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.12f} {z.imag:+.3e}i"


def cmd_spectrum(args) -> int:
    rep = _load_rep(args.input)
    tol = _tol(args)
    model = args.model or _default_model(rep)
    kind, _, arg = model.partition(":")
    if kind == "h":
        return _spectrum_h(rep, tol, args.json)
    if kind == "swanson":
        report = swanson_spectrum_report(swanson(rep, parse_number(arg), tol), tol)
        if args.json:
            sys.stdout.write(dumps(report.to_dict()))
        else:
            print(f"theta = {report.theta:.12g}   omega = {report.omega:.12g}")
            for z in report.computed:
                print(f"  {_fmt_complex(z)}")
            print(f"match_scaled = {report.match_scaled}")
            print(f"match_unscaled = {report.match_unscaled}")
            print(f"max_imag = {report.max_imag:.3e}")
            print(f"intertwiner_residual = {report.intertwiner_residual:.3e}")
        return EXIT_OK
    if kind == "shifted":
        res = shifted_oscillator(rep, parse_number(arg))
        if args.json:
            out = {
                "beta": res.beta,
                "spectrum": [{"re": float(z.real), "im": float(z.imag)} for z in res.spectrum],
                "max_imag": res.max_imag,
            }
            sys.stdout.write(dumps(out))
        else:
            print(f"beta = {res.beta:.12g}")
            for z in res.spectrum:
                print(f"  {_fmt_complex(z)}")
            print(f"max_imag = {res.max_imag:.3e}")
        return EXIT_OK
    raise ConfigError(f"unknown model {model!r}; expected h, swanson:THETA or shifted:BETA")


def _spectrum_h(rep: FdpbRep, tol: Tolerance, as_json: bool) -> int:
    system = build_system(rep, tol)
    values, _ = eig_general(derived_ops(rep).h)
    labels = sorted(system.labels)
    rows = [(lab, z) for lab, z in zip(labels, values)]
    worst = max(abs(z - lab.hprime) for lab, z in rows)
    ok = worst <= tol.bound(rep.n) and all(abs(z.imag) <= tol.bound(rep.n) for _, z in rows)
    if as_json:
        sys.stdout.write(
            dumps(
                {
                    "rows": [
                        {"h2": lab.h2, "k": lab.k, "chain": lab.hprime, "eig": {"re": z.real, "im": z.imag}}
                        for lab, z in rows
                    ],
                    "max_deviation": worst,
                    "pass": ok,
                }
            )
        )
    else:
        print(f"{'(h_prime, k_prime)':<20s}{'chain':>10s}   eigensolver")
        for lab, z in rows:
            print(f"{str(lab):<20s}{str(Fraction(lab.h2, 2)):>10s}   {_fmt_complex(z)}")
        print(f"max deviation = {worst:.3e}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_hermitize(args) -> int:
    rep = _load_rep(args.input)
    if not args.output:
        raise ConfigError("--output is required")
    result = run_pipeline(rep, _tol(args))
    if result.hermitian is None:
        stage, what = result.first_failure
        print(f"hermitize aborted at stage {stage}: {what}", file=sys.stderr)
        return EXIT_FAIL
    write_json(hermitian_system_to_json(result.hermitian), args.output)
    report = result.report("hermitize")
    if args.json:
        sys.stdout.write(dumps(report.to_dict()))
    else:
        print("\n".join(report.lines()))
        print(f"wrote {args.output}")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdpb", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-abs", type=float, default=None)
    common.add_argument("--tol-rel", type=float, default=None)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--output", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="write a representation file from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="run the full audit on a representation")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", parents=[common], help="chain labels against a dense eigensolve")
    p.add_argument("--input", required=True)
    p.add_argument("--model", default=None, help="h, swanson:THETA or shifted:BETA")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("hermitize", parents=[common], help="write the hermitized system")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_hermitize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FormatError, ParameterError, OSError, json.JSONDecodeError) as exc:
        print(f"fdpb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FdpbError as exc:
        print(f"fdpb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL if args.command != "build" else EXIT_USAGE
    except (ValueError, TypeError) as exc:
        print(f"fdpb: error: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
