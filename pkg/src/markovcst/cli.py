"""Command-line front end.

    markovcst {families|verify|moments|cumulants|density|invert|markov-check} [flags]

Every command emits ``{command, params, results, max_rel_dev, passed}`` as
JSON, or the ``results`` rows as CSV.  Exit codes: 0 pass, 1 failed check,
2 domain error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, NumericalError
from .freeprob import cumulants_lambda2, invert_utilde, moments_to_free_cumulants, series_k, utilde
from .measures import ALPHA_FORMULA, GTILDE, LAMBDA_MIN, UTILDE, family, nu_density
from .moments import as_fraction, laurent_moments, moment_table
from .quadrature import DEFAULT_ORDER
from .transforms import (
    default_grid,
    family_transform,
    markov_density,
    stieltjes_invert,
    verify_markov_identity,
    verify_powered_identity,
)

COMMANDS = ("families", "verify", "moments", "cumulants", "density", "invert", "markov-check")

EXIT_PASS, EXIT_FAIL, EXIT_DOMAIN, EXIT_NUMERICAL = 0, 1, 2, 3

DEFAULT_TOL = {
    "families": 0.0,
    "verify": 1e-8,
    "moments": 1e-7,
    "cumulants": 1e-10,
    "density": 1e-6,
    "invert": 1e-12,
    "markov-check": 1e-6,
}

MOMENT_METHODS = ("hyp3f2", "rational", "series", "laurent", "quadrature")
CUMULANT_METHODS = ("series", "moments", "closed")
DENSITY_METHODS = ("closed", "stieltjes", "markov")

BETA_FORMULA = {
    1: ("lambda-1/2", "lambda-1/2"),
    2: ("lambda-3/2", "lambda-3/2"),
    3: ("lambda-3/2", "lambda-1/2"),
    4: ("lambda-1/2", "lambda-3/2"),
}
GAMMA_FORMULA = {1: "0", 2: "1/lambda", 3: "1/(2 lambda)", 4: "1/(2 lambda)"}


@dataclass
class RunConfig:
    command: str
    family: int = 2
    lam: str | None = None
    n: int | None = None
    order: int | None = None
    kind: str = "powered"
    methods: list[str] = field(default_factory=list)
    re_min: float = 2.5
    re_max: float = 8.0
    im: float = 0.0
    points: int | None = None
    tol: float | None = None
    quad_order: int = DEFAULT_ORDER
    w: str | None = None
    allow_continuation: bool = False
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.tol is None:
            self.tol = DEFAULT_TOL[self.command]
        elif not self.tol > 0:
            raise DomainError("tolerance must be positive")
        if self.points is not None and self.points < 2:
            raise DomainError("points must be at least 2")
        if self.command == "verify" and not self.re_min > 2:
            raise DomainError("verification grids need re_min > 2")
        if self.family not in LAMBDA_MIN:
            raise DomainError(f"family must be 1..4, got {self.family}")
        if self.quad_order < 1:
            raise DomainError("quadrature order must be positive")

    @property
    def lam_float(self) -> float:
        return float(as_fraction(self.lam if self.lam is not None else "2"))

    def params(self) -> dict:
        d = asdict(self)
        for key in ("command", "out", "fmt"):
            d.pop(key)
        d["format"] = self.fmt
        d["lambda"] = d.pop("lam")
        return d


# -- serialization ----------------------------------------------------------------


def fmt_complex(z: complex) -> str:
    z = complex(z)
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, (complex, np.complexfloating)):
        return fmt_complex(v)
    if isinstance(v, dict):
        return {k: jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    raise TypeError(f"cannot serialize {type(v)}")


def _csv_cells(value) -> list[str]:
    if isinstance(value, (complex, np.complexfloating)):
        return [repr(float(value.real)), repr(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        return [repr(float(value))]
    if value is None:
        return [""]
    return [str(value)]


def to_csv(rows: list[dict]) -> str:
    """One header from the first row; complex columns expand to name_re, name_im."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if not rows:
        return ""
    header = []
    for key, value in rows[0].items():
        if isinstance(value, (complex, np.complexfloating)):
            header += [f"{key}_re", f"{key}_im"]
        else:
            header.append(key)
    writer.writerow(header)
    for row in rows:
        cells = []
        for value in row.values():
            cells += _csv_cells(value)
        writer.writerow(cells)
    return buf.getvalue()


def render(cfg: RunConfig, results: list[dict], max_rel_dev, passed: bool) -> str:
    if cfg.fmt == "csv":
        return to_csv(results)
    payload = {
        "command": cfg.command,
        "params": jsonable(cfg.params()),
        "results": jsonable(results),
        "max_rel_dev": jsonable(max_rel_dev),
        "passed": bool(passed),
    }
    return json.dumps(payload, indent=2) + "\n"


def _methods(cfg: RunConfig, allowed: tuple[str, ...], default: str) -> list[str]:
    methods = cfg.methods or [default]
    for m in methods:
        if m not in allowed:
            raise DomainError(f"unknown method {m!r}; choose from {', '.join(allowed)}")
    return methods


def _rel_diff(a, b) -> float:
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(b), 1e-300) if b != 0 else abs(a - b)


def _cross_method(rows: list[dict], methods: list[str]) -> float | None:
    if len(methods) < 2:
        return None
    worst = 0.0
    for row in rows:
        base = row[methods[0]]
        diff = max(_rel_diff(row[m], base) if base != 0 else abs(complex(row[m])) for m in methods[1:])
        row["max_diff"] = float(diff)
        worst = max(worst, diff)
    return float(worst)


# -- commands --------------------------------------------------------------------


def cmd_families(cfg: RunConfig):
    rows = []
    for fid in (1, 2, 3, 4):
        a_f, b_f = BETA_FORMULA[fid]
        row = {
            "family": fid,
            "lambda_min": LAMBDA_MIN[fid],
            "beta_a": a_f,
            "beta_b": b_f,
            "alpha": "α = " + ALPHA_FORMULA[fid].replace("lambda", "λ").replace(" - ", " − "),
            "gamma": GAMMA_FORMULA[fid],
            "utilde": UTILDE[fid],
            "gtilde": GTILDE[fid],
        }
        if cfg.lam is not None:
            lam = cfg.lam_float
            try:
                spec = family(fid, lam)
                a, b = spec.beta_exponents
                row.update(lambda_value=lam, alpha_value=spec.alpha, gamma_value=spec.gamma,
                           beta_a_value=a, beta_b_value=b, admissible=True)
            except DomainError:
                row.update(lambda_value=lam, alpha_value=None, gamma_value=None,
                           beta_a_value=None, beta_b_value=None, admissible=False)
        rows.append(row)
    return rows, None, True


def cmd_verify(cfg: RunConfig):
    spec = family(cfg.family, cfg.lam_float)
    grid = default_grid(cfg.re_min, cfg.re_max, cfg.im, cfg.points or 16)
    if cfg.kind == "powered":
        rep = verify_powered_identity(spec, grid, cfg.tol, cfg.quad_order)
    elif cfg.kind == "markov":
        rep = verify_markov_identity(spec, grid, cfg.tol, cfg.quad_order)
    else:
        raise DomainError(f"unknown kind {cfg.kind!r}")
    rows = [
        {"z": z, "lhs": l, "rhs": r, "rel_dev": abs(l - rep.fitted_constant * r) / abs(rep.fitted_constant * r)}
        for z, l, r in zip(rep.grid, rep.lhs, rep.rhs)
    ]
    for row in rows:
        row["fitted_constant"] = rep.fitted_constant
    return rows, rep.max_rel_dev, rep.passed


def cmd_moments(cfg: RunConfig):
    default = "rational" if cfg.family in (1, 2) else "series"
    methods = _methods(cfg, MOMENT_METHODS, default)
    n = 4 if cfg.n is None else cfg.n
    lam = cfg.lam if cfg.lam is not None else "2"
    tables = []
    for m in methods:
        arg = as_fraction(lam) if m in ("rational", "laurent") else cfg.lam_float
        tables.append(moment_table(cfg.family, arg, n, m, cfg.quad_order))
    rows = []
    for i, entry in enumerate(tables[0].entries):
        row = {"order": entry.order}
        for m, t in zip(methods, tables):
            e = t.entries[i]
            row[m] = e.exact if e.exact is not None else e.value
        rows.append(row)
    dev = _cross_method(rows, methods)
    return rows, dev, dev is None or dev <= cfg.tol


def _cumulants_via_moments(fid: int, n: int, order: int) -> list:
    moments = laurent_moments(fid, Fraction(n), order + 2)
    return moments_to_free_cumulants(moments)


def cmd_cumulants(cfg: RunConfig):
    methods = _methods(cfg, CUMULANT_METHODS, "series")
    n = 2 if cfg.n is None else cfg.n
    order = 9 if cfg.order is None else cfg.order
    columns = {}
    for m in methods:
        if m == "series":
            columns[m] = list(series_k(cfg.family, n, order).coeffs[1:])
        elif m == "moments":
            columns[m] = _cumulants_via_moments(cfg.family, n, order)[: order + 1]
        else:
            if (cfg.family, n) != (2, 2):
                raise DomainError("the closed-form cumulants cover family 2 with n = 2 only")
            columns[m] = cumulants_lambda2(order)
    rows = [{"k": k, **{m: columns[m][k] for m in methods}} for k in range(order + 1)]
    dev = _cross_method(rows, methods)
    return rows, dev, dev is None or dev <= cfg.tol


def _interior_grid(points: int) -> np.ndarray:
    return np.linspace(-2.0, 2.0, points + 2)[1:-1]


def cmd_density(cfg: RunConfig):
    methods = _methods(cfg, DENSITY_METHODS, "closed")
    spec = family(cfg.family, cfg.lam_float)
    rows = []
    for x in _interior_grid(cfg.points or 9):
        row = {"x": float(x)}
        for m in methods:
            if m == "closed":
                row[m] = float(nu_density(spec, x))
            elif m == "stieltjes":
                row[m] = stieltjes_invert(family_transform(spec), float(x))
            else:
                row[m] = markov_density(spec, float(x))
        rows.append(row)
    dev = _cross_method(rows, methods)
    return rows, dev, dev is None or dev <= cfg.tol


def cmd_invert(cfg: RunConfig):
    n = 2 if cfg.n is None else cfg.n
    w = complex((cfg.w or "0.01").replace("i", "j"))
    z = invert_utilde(cfg.family, n, w, allow_continuation=cfg.allow_continuation)
    residual = abs(utilde(cfg.family, n, z) - w)
    rows = [{"w": w, "z": z, "residual": residual}]
    return rows, residual, residual <= cfg.tol


def cmd_markov_check(cfg: RunConfig):
    spec = family(cfg.family, cfg.lam_float)
    rep = verify_markov_identity(spec, [3, 4 + 1j, 2.6 + 0.5j], tol=1e-8, order=cfg.quad_order)
    transform = family_transform(spec)
    rows = []
    worst = 0.0
    for x in _interior_grid(cfg.points or 9):
        closed = float(nu_density(spec, x))
        inv = stieltjes_invert(transform, float(x))
        mk = markov_density(spec, float(x))
        dev = max(abs(inv - closed), abs(mk - closed)) / closed
        worst = max(worst, dev)
        rows.append({"x": float(x), "closed": closed, "stieltjes": inv, "markov": mk, "rel_dev": dev})
    return rows, max(worst, rep.max_rel_dev), rep.passed and worst <= cfg.tol


HANDLERS = {
    "families": cmd_families,
    "verify": cmd_verify,
    "moments": cmd_moments,
    "cumulants": cmd_cumulants,
    "density": cmd_density,
    "invert": cmd_invert,
    "markov-check": cmd_markov_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=int, default=2, choices=(1, 2, 3, 4))
    common.add_argument("--lambda", dest="lam", default=None, help="lambda (decimal or p/q)")
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--order", type=int, default=None)
    common.add_argument("--kind", choices=("powered", "markov"), default="powered")
    common.add_argument("--method", action="append", default=[], help="repeatable or comma-separated")
    common.add_argument("--re-min", type=float, default=2.5)
    common.add_argument("--re-max", type=float, default=8.0)
    common.add_argument("--im", type=float, default=0.0)
    common.add_argument("--points", type=int, default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--quad-order", type=int, default=DEFAULT_ORDER)
    common.add_argument("--w", default=None, help="complex w for invert, e.g. 0.01+0.02i")
    common.add_argument("--allow-continuation", action="store_true", help="invert: permit n > 4")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None)
    parser = argparse.ArgumentParser(prog="markovcst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    methods = [m.strip() for chunk in ns.method for m in chunk.split(",") if m.strip()]
    return RunConfig(
        command=ns.command, family=ns.family, lam=ns.lam, n=ns.n, order=ns.order, kind=ns.kind,
        methods=methods, re_min=ns.re_min, re_max=ns.re_max, im=ns.im, points=ns.points, tol=ns.tol,
        quad_order=ns.quad_order, w=ns.w,
        allow_continuation=ns.allow_continuation, fmt=ns.fmt, out=ns.out,
    )


def execute(ns: argparse.Namespace) -> tuple[int, str]:
    """Run a parsed invocation; returns (exit code, rendered output or error message)."""
    try:
        cfg = config_from_args(ns)
        rows, dev, passed = HANDLERS[cfg.command](cfg)
    except DomainError as exc:  # includes NotAProbabilityMeasure, UnsupportedError
        return EXIT_DOMAIN, f"domain error: {exc}\n"
    except (NumericalError, ZeroDivisionError, OverflowError) as exc:
        return EXIT_NUMERICAL, f"numerical failure: {exc}\n"
    except ValueError as exc:
        return EXIT_DOMAIN, f"domain error: {exc}\n"
    text = render(cfg, rows, dev, passed)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return (EXIT_PASS if passed else EXIT_FAIL), text


def run(argv: list[str] | None = None) -> tuple[int, str]:
    return execute(build_parser().parse_args(argv))


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    code, text = execute(ns)
    if code in (EXIT_PASS, EXIT_FAIL):
        if ns.out is None:
            sys.stdout.write(text)
    else:
        sys.stderr.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
