"""Command-line interface: compute, verify, certify, bench, expand.

Exit codes: 0 success, 1 configuration parse error, 2 domain or budget
error, 3 divergence guard, 4 verification or certification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field

import mpmath

from . import recurrence, series, wz_pair
from .errors import BudgetError, DivergenceError, DomainError, ParseError
from .genfunc import bivariate_lhs, coeff_weight, rhs_taylor
from .numerics import RealD, check_digits, format_rational, mpf_of, parse_rational, working_dps, zeta_reference
from .params import InitCond, ParamsE, ParamsXY

SCHEMA = "1"
EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_DIVERGENCE, EXIT_FAIL = range(5)
IDENTITIES = ("eq1", "eq2", "eq3", "thm1", "thm2", "zeta7", "genfunc")
PARAM_KEYS = ("x2", "y4", "e1", "e2", "A0", "B0", "C0")


@dataclass
class RunConfig:
    command: str
    series_id: str | None = None
    identity: str | None = None
    params: dict = field(default_factory=dict)
    digits: int = 30
    mode: str | None = None
    nmax: int = 15
    kmax: int = 15
    n: int = 40
    nx: int = 1
    ny: int = 1
    terms: int = 25
    fmt: str = "json"
    output: str | None = None

    def as_dict(self) -> dict:
        out = {"command": self.command, "params": {k: format_rational(v) for k, v in self.params.items()}}
        if self.command == "compute":
            out.update(series=self.series_id, digits=self.digits)
        elif self.command == "verify":
            out.update(identity=self.identity, digits=self.digits)
        elif self.command == "certify":
            out.update(mode=self.mode, nmax=self.nmax, kmax=self.kmax)
        elif self.command == "bench":
            out.update(series=self.series_id, n=self.n)
        elif self.command == "expand":
            out.update(nx=self.nx, ny=self.ny, terms=self.terms, digits=self.digits)
        return out

    @classmethod
    def from_dict(cls, data: dict, fmt: str = "json") -> "RunConfig":
        """Rebuild a configuration from the ``config`` block of a report."""
        data = dict(data)
        params = {k: parse_rational(v) for k, v in data.pop("params", {}).items()}
        command = data.pop("command")
        rename = {"series": "series_id"}
        fields = {rename.get(k, k): v for k, v in data.items()}
        return cls(command=command, params=params, fmt=fmt, **fields)

    def argv(self) -> list:
        """Arguments that reproduce this configuration."""
        args = [self.command]
        if self.command in ("compute", "bench"):
            args += ["--series", self.series_id]
        if self.command == "verify":
            args += ["--identity", self.identity]
        if self.command == "certify":
            args += ["--mode", self.mode, "--nmax", str(self.nmax), "--kmax", str(self.kmax)]
        if self.command == "bench":
            args += ["--n", str(self.n)]
        if self.command == "expand":
            args += ["--nx", str(self.nx), "--ny", str(self.ny), "--terms", str(self.terms)]
        if self.command in ("compute", "verify", "expand"):
            args += ["--digits", str(self.digits)]
        for k, v in self.params.items():
            args += [f"--{k}", format_rational(v)]
        return args


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1/16" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetawz", description="Accelerated zeta series via Markov-WZ pairs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, digits=True):
        for key in PARAM_KEYS:
            p.add_argument(f"--{key}", metavar="P/Q", help=f"exact rational {key}")
        if digits:
            p.add_argument("--digits", type=int, default=30)
        p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
        p.add_argument("--output", help="write the report here instead of stdout")

    p = sub.add_parser("compute", help="evaluate a series")
    p.add_argument("--series", dest="series_id", required=True, choices=series.SERIES_IDS)
    common(p)

    p = sub.add_parser("verify", help="compare both sides of an identity")
    p.add_argument("--identity", required=True, choices=IDENTITIES)
    common(p)

    p = sub.add_parser("certify", help="check the WZ certificate")
    p.add_argument("--mode", choices=("numeric", "symbolic", "derive"), default="symbolic")
    p.add_argument("--nmax", type=int, default=15)
    p.add_argument("--kmax", type=int, default=15)
    common(p, digits=False)

    p = sub.add_parser("bench", help="per-term convergence profile")
    p.add_argument("--series", dest="series_id", required=True, choices=series.SERIES_IDS)
    p.add_argument("--n", type=int, default=40)
    common(p, digits=False)

    p = sub.add_parser("expand", help="extract zeta values from the bivariate expansion")
    p.add_argument("--nx", type=int, default=1)
    p.add_argument("--ny", type=int, default=1)
    p.add_argument("--terms", type=int, default=25)
    common(p)
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    params = {}
    for key in PARAM_KEYS:
        raw = getattr(ns, key)
        if raw is not None:
            params[key] = parse_rational(raw)
    cfg = RunConfig(command=ns.command, params=params, fmt=ns.fmt, output=ns.output)
    for name in ("series_id", "identity", "digits", "mode", "nmax", "kmax", "n", "nx", "ny", "terms"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "digits"):
        check_digits(cfg.digits)
    return cfg


def _xy(cfg) -> ParamsXY:
    return ParamsXY(cfg.params.get("x2", 0), cfg.params.get("y4", 0))


def _e(cfg) -> ParamsE:
    return ParamsE(cfg.params.get("e1", 0), cfg.params.get("e2", 0))


def _init(cfg, default=(0, 1, 0)) -> InitCond:
    return InitCond(*(cfg.params.get(k, d) for k, d in zip(("A0", "B0", "C0"), default)))


# -- commands -----------------------------------------------------------------------

def cmd_compute(cfg: RunConfig):
    report = series.evaluate(cfg.series_id, cfg.params, cfg.digits)
    return EXIT_OK, report.as_dict()


def _verify_pair(cfg):
    d = cfg.digits
    ident = cfg.identity
    if ident == "eq1":
        x2 = _xy(cfg).x2
        return series.koecher_rhs(x2, d).value, bivariate_lhs(ParamsXY(x2, 0), d).value
    if ident == "eq2":
        y4 = _xy(cfg).y4
        return series.ag_rhs(y4, d).value, bivariate_lhs(ParamsXY(0, y4), d).value
    if ident == "eq3":
        px = _xy(cfg)
        return series.cb_rhs(px, d).value, bivariate_lhs(px, d).value
    if ident == "thm1":
        init, p = _init(cfg), _e(cfg)
        return series.thm1_rhs(init, p, d).value, wz_pair.sum_F0(init, p, d).value
    if ident == "thm2":
        px = _xy(cfg)
        return series.thm2_rhs(px, d).value, bivariate_lhs(px, d).value
    if ident == "zeta7":
        return series.zeta7_series(d).value, zeta_reference(7, d)
    if ident == "genfunc":
        px = _xy(cfg)
        return bivariate_lhs(px, d).value, _digamma_lhs(px, d)
    raise ParseError(f"unknown identity {ident!r}")


def _digamma_lhs(px: ParamsXY, digits: int) -> RealD:
    """sum_k k/(k^4 - x2 k^2 - y4) from partial fractions in k^2 and digamma values.

    With roots t1, t2 of t^2 - x2 t - y4, k/((k^2 - t1)(k^2 - t2)) splits into
    four simple fractions 1/(k - r); their sum is -sum c_r psi(1 - r).
    """
    px.require_admissible()
    with mpmath.workdps(working_dps(digits) + 10):
        x2, y4 = mpf_of(px.x2), mpf_of(px.y4)
        if x2 == 0 and y4 == 0:
            return RealD(+mpmath.zeta(3), digits)
        disc = mpmath.sqrt(mpmath.mpc(x2 * x2 + 4 * y4))
        t1, t2 = (x2 + disc) / 2, (x2 - disc) / 2
        total = mpmath.mpc(0)
        if t1 == t2:
            # k/(k^2 - t)^2 = (1/(4r)) (1/(k-r)^2 - 1/(k+r)^2) with r^2 = t
            r = mpmath.sqrt(t1)
            total = (mpmath.psi(1, 1 - r) - mpmath.psi(1, 1 + r)) / (4 * r)
        else:
            # k/((k^2-t1)(k^2-t2)) = (1/(t1-t2)) (k/(k^2-t1) - k/(k^2-t2))
            for t, sign in ((t1, 1), (t2, -1)):
                r = mpmath.sqrt(t)
                # k/(k^2-t) - 1/k = (1/2)(1/(k-r) + 1/(k+r)) - 1/k, summed via digamma
                part = -(mpmath.digamma(1 - r) + mpmath.digamma(1 + r)) / 2 - mpmath.euler
                total += sign * part
            total /= t1 - t2
        with mpmath.workdps(working_dps(digits)):
            return RealD(+mpmath.re(total), digits)


def cmd_verify(cfg: RunConfig):
    lhs, rhs = _verify_pair(cfg)
    with mpmath.workdps(working_dps(cfg.digits)):
        diff = abs(lhs.value - rhs.value)
        ok = bool(diff < mpmath.mpf(10) ** (-cfg.digits))
    result = {
        "identity": cfg.identity,
        "lhs": str(lhs),
        "rhs": str(rhs),
        "abs_diff": mpmath.nstr(diff, 5),
        "pass": ok,
    }
    return (EXIT_OK if ok else EXIT_FAIL), result


def cmd_certify(cfg: RunConfig):
    if cfg.mode == "numeric":
        init, p = _init(cfg, (1, 1, 1)), _e(cfg)
        rep = wz_pair.certify_numeric(cfg.nmax, cfg.kmax, init, p)
        result = rep.as_dict()
    elif cfg.mode == "symbolic":
        rep = wz_pair.certify_symbolic()
        result = rep.as_dict()
    else:
        rep = recurrence.derive_l_recurrence()
        result = rep.as_dict()
    return (EXIT_OK if rep.verdict else EXIT_FAIL), result


def cmd_bench(cfg: RunConfig):
    prof = series.convergence_profile(cfg.series_id, cfg.params, cfg.n)
    return EXIT_OK, prof.as_dict()


def cmd_expand(cfg: RunConfig):
    table = rhs_taylor(cfg.terms, (cfg.nx, cfg.ny))
    tol = mpmath.mpf(10) ** -20
    rows = []
    all_ok = True
    for i in range(cfg.nx + 1):
        for j in range(cfg.ny + 1):
            w = coeff_weight(i, j)
            s = 2 * i + 4 * j + 3
            extracted = table.value(i, j, cfg.digits)
            with mpmath.workdps(working_dps(cfg.digits)):
                ref = w * zeta_reference(s, cfg.digits).value
                diff = abs(extracted.value - ref)
            ok = bool(diff < tol)
            all_ok &= ok
            rows.append({
                "n": i, "m": j, "zeta": s, "weight": w,
                "extracted": str(extracted),
                "reference": str(RealD(ref, cfg.digits)),
                "abs_diff": mpmath.nstr(diff, 5),
                "pass": ok,
            })
    return (EXIT_OK if all_ok else EXIT_FAIL), {"terms": cfg.terms, "rows": rows}


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "bench": cmd_bench,
    "expand": cmd_expand,
}


# -- output ------------------------------------------------------------------------

def _csv_text(rows) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def render(cfg: RunConfig, result: dict, status: str) -> str:
    report = {"schema": SCHEMA, "command": cfg.command, "config": cfg.as_dict(), "status": status, "result": result}
    if cfg.fmt == "csv":
        rows = result.get("rows")
        if rows is None:
            rows = [{k: v for k, v in result.items() if not isinstance(v, (list, dict))}]
        text = _csv_text(rows)
        if cfg.command == "bench":
            summary = {k: v for k, v in report.items() if k != "result"}
            summary["result"] = {"series": result["series"], "slope": result["slope"]}
            text += "# " + json.dumps(summary) + "\n"
        return text
    if cfg.fmt == "text":
        lines = [f"{cfg.command}: {status}"]
        for k, v in result.items():
            if isinstance(v, list):
                lines.append(f"  {k}:")
                lines.extend(f"    {item}" for item in v)
            else:
                lines.append(f"  {k}: {v}")
        return "\n".join(lines) + "\n"
    return json.dumps(report, indent=2) + "\n"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except (ParseError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    try:
        code, result = COMMANDS[cfg.command](cfg)
    except ParseError as exc:
        code, result = EXIT_PARSE, {"error": str(exc)}
    except (DomainError, BudgetError) as exc:
        code, result = EXIT_DOMAIN, {"error": str(exc)}
    except DivergenceError as exc:
        code, result = EXIT_DIVERGENCE, {"error": str(exc)}
    status = {EXIT_OK: "pass", EXIT_FAIL: "fail"}.get(code, "error")
    _emit(render(cfg, result, status), cfg.output)
    if code not in (EXIT_OK, EXIT_FAIL):
        sys.stderr.write(f"error: {result['error']}\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
