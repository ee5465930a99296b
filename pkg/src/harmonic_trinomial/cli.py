"""``harmtri``: count, scan, regions, roots and verify from the command line.

Exit codes: 0 ok, 1 input error, 2 a jump radius sits on the query circle,
3 oracle failure or a failed verification.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Callable, Sequence

from .config import DEFAULT_TOLERANCES, Tolerances
from .core import HarmonicTrinomial, evaluate
from .corpus import instance_from_seed
from .counting import analytic_roots, count_from_profile, count_profile, count_roots_in_disk
from .errors import FallbackDisagreement, OracleError, TrinomialError
from .oracle import SearchParams, find_all_roots, verify
from .regions import breakpoints
from .triangle import p_star

EXIT_OK, EXIT_INPUT, EXIT_BOUNDARY, EXIT_ORACLE = 0, 1, 2, 3

FORMATS = ("json", "csv", "text")


class InputError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    format: str = "json"
    closed_disk: bool = False
    tol_int: float = DEFAULT_TOLERANCES.integer_hit
    grid_density: int = SearchParams.angular_factor
    radial_nodes: int = SearchParams.radial_nodes

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise InputError(f"unknown format {self.format!r}; choose from {', '.join(FORMATS)}")
        if not self.tol_int > 0:
            raise InputError("tol_int must be positive")
        if self.grid_density < 1 or self.radial_nodes < 2:
            raise InputError("grid_density must be >= 1 and radial_nodes >= 2")

    @property
    def tolerances(self) -> Tolerances:
        return replace(DEFAULT_TOLERANCES, integer_hit=self.tol_int)

    @property
    def search(self) -> SearchParams:
        return SearchParams(angular_factor=self.grid_density, radial_nodes=self.radial_nodes)

    def dumps(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in asdict(self).items())

    @classmethod
    def loads(cls, text: str) -> "CliConfig":
        kinds = {f.name: f.type for f in fields(cls)}
        values: dict[str, Any] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = (part.strip() for part in line.partition("="))
            key = key.replace("-", "_")
            if not sep or key not in kinds:
                raise InputError(f"config line {lineno}: expected one of {sorted(kinds)} as key=value")
            values[key] = _coerce(kinds[key], value, key)
        return cls(**values)


def _coerce(kind: str, value: str, key: str) -> Any:
    try:
        if kind == "bool":
            low = value.lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(value)
            return low in ("true", "1", "yes")
        if kind == "int":
            return int(value)
        if kind == "float":
            return float(value)
    except ValueError:
        raise InputError(f"config value {key}={value!r} is not a valid {kind}") from None
    return value


# --- argument parsing --------------------------------------------------------------


def parse_coefficient(text: str) -> complex:
    """``"re,im"``, ``"mod@argdeg"`` or a plain real number."""
    s = text.strip()
    try:
        if "@" in s:
            mod, deg = s.split("@")
            return cmath.rect(float(mod), math.radians(float(deg)))
        if "," in s:
            re_, im = s.split(",")
            return complex(float(re_), float(im))
        return complex(float(s), 0.0)
    except ValueError:
        raise InputError(f"cannot read coefficient {text!r}; use 're,im' or 'mod@argdeg'") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2, our boundary code
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("instance")
    g.add_argument("--a", help="coefficient of z**n ('re,im' or 'mod@argdeg')")
    g.add_argument("--b", help="coefficient of conj(z)**m")
    g.add_argument("--c", help="constant term")
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--instance", help="JSON file or literal with keys a, b, c, n, m")
    g.add_argument("--seed", type=int, help="draw a random test-corpus instance")
    o = p.add_argument_group("options")
    o.add_argument("--format", choices=FORMATS)
    o.add_argument("--config", help="key=value file with CliConfig fields")
    o.add_argument("--closed-disk", action="store_true", default=None)
    o.add_argument("--tol-int", type=float, help="integer-hit tolerance for the pivot paths")
    o.add_argument("--grid-density", type=int, help="oracle angular nodes per n**2")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harmtri", description="Zeros of a z^n + b conj(z)^m + c.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()
    count = sub.add_parser("count", parents=[common], help="roots in the disk |z| < r")
    count.add_argument("--r", type=float, required=True)
    scan = sub.add_parser("scan", parents=[common], help="count as a function of r")
    scan.add_argument("range", nargs="*", metavar="r_min r_max steps")
    scan.add_argument("--jumps", action="store_true", help="exact step function instead of samples")
    sub.add_parser("regions", parents=[common], help="case, breakpoints and pivot")
    sub.add_parser("roots", parents=[common], help="analytic and oracle roots")
    sub.add_parser("verify", parents=[common], help="formula against oracle")
    return parser


def _read_instance(args: argparse.Namespace) -> HarmonicTrinomial:
    if args.instance is not None:
        src = args.instance
        try:
            text = src if src.lstrip().startswith("{") else Path(src).read_text()
        except OSError as exc:
            raise InputError(f"cannot read instance file: {exc}") from None
        try:
            return HarmonicTrinomial.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"--instance is neither a file nor JSON: {exc}") from None
    given = [args.a, args.b, args.c, args.n, args.m]
    if all(v is None for v in given) and args.seed is not None:
        return instance_from_seed(args.seed)
    if any(v is None for v in given):
        raise InputError("need --a, --b, --c, --n and --m (or --instance / --seed)")
    return HarmonicTrinomial(
        parse_coefficient(args.a), parse_coefficient(args.b), parse_coefficient(args.c), args.n, args.m
    )


def _read_config(args: argparse.Namespace) -> CliConfig:
    cfg = CliConfig()
    if args.config:
        try:
            cfg = CliConfig.loads(Path(args.config).read_text())
        except OSError as exc:
            raise InputError(f"cannot read config: {exc}") from None
    overrides = {
        "format": args.format,
        "closed_disk": args.closed_disk,
        "tol_int": args.tol_int,
        "grid_density": args.grid_density,
    }
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})


# --- rendering ---------------------------------------------------------------------


def _json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.append(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                out.append(f"{pad}- " + ", ".join(f"{k}={item[k]}" for k in sorted(item)))
            else:
                out.append(f"{pad}- {item}")
    else:
        out.append(f"{pad}{obj}")
    return "\n".join(out) + ("\n" if indent == 0 else "")


def _flat_csv(report: dict[str, Any]) -> str:
    rows = []
    for k in sorted(report):
        v = report[k]
        rows.append((k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v))
    return _csv(["key", "value"], rows)


def _emit(cfg: CliConfig, report: dict[str, Any], table: tuple[list[str], list[list[Any]]] | None = None) -> str:
    if cfg.format == "json":
        return _json(report)
    if cfg.format == "csv":
        return _csv(*table) if table else _flat_csv(report)
    return _text(report)


# --- commands ------------------------------------------------------------------------


def cmd_count(T: HarmonicTrinomial, cfg: CliConfig, args: argparse.Namespace) -> tuple[str, int]:
    if not args.r > 0:
        raise InputError("--r must be positive")
    res = count_roots_in_disk(T, args.r, closed=cfg.closed_disk, tol=cfg.tolerances)
    report = {"instance": T.to_dict(), **res.to_dict()}
    return _emit(cfg, report), EXIT_BOUNDARY if res.ambiguous else EXIT_OK


def cmd_scan(T: HarmonicTrinomial, cfg: CliConfig, args: argparse.Namespace) -> tuple[str, int]:
    profile = count_profile(T, cfg.tolerances)
    if args.jumps:
        rows = [[r, k] for r, k in profile]
    else:
        if len(args.range) != 3:
            raise InputError("scan needs r_min r_max steps, or --jumps")
        try:
            r_min, r_max, steps = float(args.range[0]), float(args.range[1]), int(args.range[2])
        except ValueError:
            raise InputError("scan range must be two numbers and an integer") from None
        if steps < 1 or r_min < 0 or r_max < r_min:
            raise InputError("need 0 <= r_min <= r_max and steps >= 1")
        if steps == 1:
            radii = [r_min]
        else:
            radii = [r_min + (r_max - r_min) * i / (steps - 1) for i in range(steps)]
        if cfg.closed_disk:
            rows = [[r, count_roots_in_disk(T, r, closed=True, tol=cfg.tolerances).count if r > 0 else 0] for r in radii]
        else:
            rows = [[r, count_from_profile(profile, r)] for r in radii]
    report = {"instance": T.to_dict(), "jumps": bool(args.jumps), "rows": [{"r": r, "count": k} for r, k in rows]}
    if cfg.format == "text":
        body = "".join(f"{r:.12g}\t{k}\n" for r, k in rows)
        return "r\tcount\n" + body, EXIT_OK
    return _emit(cfg, report, (["r", "count"], rows)), EXIT_OK


def _angle(x: float) -> dict[str, float]:
    return {"rad": x, "pi": x / math.pi}


def cmd_regions(T: HarmonicTrinomial, cfg: CliConfig, args: argparse.Namespace) -> tuple[str, int]:
    tol = cfg.tolerances
    prof = breakpoints(T, tol)
    piv = p_star(T, tol)
    report = {
        "instance": T.to_dict(),
        "profile": prof.to_dict(),
        "p_star": piv.p_star,
        "generic": piv.generic,
        "r1": prof.r1,
        "angles": {"alpha": _angle(T.alpha), "beta": _angle(T.beta), "gamma": _angle(T.gamma)},
        "n_beta_plus_m_alpha": _angle(T.n * T.beta + T.m * T.alpha),
    }
    return _emit(cfg, report), EXIT_OK


def _roots_report(T: HarmonicTrinomial, cfg: CliConfig) -> dict[str, Any]:
    scale = lambda z: T.scale(abs(z))  # noqa: E731
    analytic = [
        {
            "re": z.real,
            "im": z.imag,
            "modulus": abs(z),
            "residual": abs(evaluate(T, z)),
            "relative_residual": abs(evaluate(T, z)) / scale(z),
        }
        for z in analytic_roots(T, cfg.tolerances)
    ]
    rootset = find_all_roots(T, cfg.search)
    return {"instance": T.to_dict(), "analytic": analytic, "oracle": rootset.to_list()}


def cmd_roots(T: HarmonicTrinomial, cfg: CliConfig, args: argparse.Namespace) -> tuple[str, int]:
    report = _roots_report(T, cfg)
    rows = [["analytic", r["re"], r["im"], r["residual"], ""] for r in report["analytic"]]
    rows += [["oracle", r["re"], r["im"], r["residual"], r["jac_sign"]] for r in report["oracle"]]
    return _emit(cfg, report, (["source", "re", "im", "residual", "jac_sign"], rows)), EXIT_OK


def cmd_verify(T: HarmonicTrinomial, cfg: CliConfig, args: argparse.Namespace) -> tuple[str, int]:
    rep = verify(T, cfg.search)
    return _emit(cfg, rep.to_dict()), EXIT_OK if rep.passed else EXIT_ORACLE


COMMANDS: dict[str, Callable[[HarmonicTrinomial, CliConfig, argparse.Namespace], tuple[str, int]]] = {
    "count": cmd_count,
    "scan": cmd_scan,
    "regions": cmd_regions,
    "roots": cmd_roots,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _read_config(args)
        T = _read_instance(args)
        text, code = COMMANDS[args.command](T, cfg, args)
    except (InputError, ValueError) as exc:
        print(f"harmtri: error: {type(exc).__name__}: {exc}", file=err)
        parser.print_usage(err)
        return EXIT_INPUT
    except (OracleError, FallbackDisagreement) as exc:
        print(f"harmtri: oracle failure: {type(exc).__name__}: {exc}", file=err)
        return EXIT_ORACLE
    except TrinomialError as exc:
        print(f"harmtri: error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT
    out.write(text)
    return code


def main(argv: Sequence[str] | None = None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
