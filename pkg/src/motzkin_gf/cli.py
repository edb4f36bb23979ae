"""Command-line front end.

    motzkin-gf secular --k 3 --route all
    motzkin-gf gf --k inf --m 0 --n 2 --L 8
    motzkin-gf marked --k 2 --m 0 --n 1 --weights t=1/2,s=2,T=1,S=1
    motzkin-gf verify --k 3 --L 8

Exit codes: 0 success, 1 usage error, 2 an identity check failed,
3 an internal exactness assertion fired.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Dict, Optional, Sequence, Union

from . import cluster, enumeration, markers, motzkin
from .errors import InternalAssertion, MotzkinError, Unreachable
from .jsonio import dumps, half, poly_to_json, series_to_json
from .motzkin import INFINITE, MeanderQuery
from .polyring import Poly
from .report import Report, series_difference

COMMANDS = ("secular", "gf", "marked", "cluster", "enumerate", "bounds", "verify")
CLI_ROUTES = ("recursive", "det", "closed", "dual", "all")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    k: Union[int, str] = 0
    m: int = 0
    n: int = 0
    L: int = 6
    A: int = 4
    route: str = "recursive"
    weights: str = "symbolic"
    laurent: bool = False
    out: Optional[str] = None

    def validate(self) -> "JobSpec":
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.route not in CLI_ROUTES:
            raise UsageError(f"unknown route {self.route!r}")
        if min(self.m, self.n, self.L, self.A) < 0:
            raise UsageError("m, n, L and A must be >= 0")
        if self.k != INFINITE:
            if self.k < 0:
                raise UsageError("k must be >= 0 or 'inf'")
            if self.m > self.k or self.n > self.k:
                raise UsageError(f"heights m={self.m}, n={self.n} exceed ceiling k={self.k}")
        return self


def parse_k(text: str) -> Union[int, str]:
    if str(text).strip().lower() in ("inf", "infinity"):
        return INFINITE
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"k must be an integer or 'inf', got {text!r}")


def parse_weights(text: str) -> markers.MarkerWeights:
    if text.strip() == "symbolic":
        return markers.MarkerWeights()
    names = {"t": "td", "s": "cd", "T": "tu", "S": "cu"}
    vals = {}
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"bad weight {item!r}; expected name=rational")
        key, val = (x.strip() for x in item.split("=", 1))
        if key not in names:
            raise UsageError(f"unknown weight {key!r}; use t, s, T, S")
        try:
            vals[names[key]] = Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"weight {key} is not a rational: {val!r}")
    return markers.MarkerWeights(**vals)


def read_config(path: str) -> Dict[str, str]:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}")
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value")
        key, val = (x.strip() for x in line.split("=", 1))
        out[key.lstrip("-")] = val
    return out


def _coerce(key: str, val) -> object:
    if key == "k":
        return parse_k(val)
    if key in ("m", "n", "L", "A"):
        try:
            return int(val)
        except ValueError:
            raise UsageError(f"{key} must be an integer, got {val!r}")
    if key == "laurent":
        if isinstance(val, bool):
            return val
        return str(val).strip().lower() in ("1", "true", "yes", "on")
    return val


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="motzkin-gf", description="Generating functions of bounded Motzkin meanders.")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("--k")
    p.add_argument("--m")
    p.add_argument("--n")
    p.add_argument("--L")
    p.add_argument("--A")
    p.add_argument("--route", choices=CLI_ROUTES)
    p.add_argument("--weights")
    p.add_argument("--laurent", action="store_true", default=None)
    p.add_argument("--out")
    p.add_argument("--config")
    return p


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_job(argv: Sequence[str]) -> JobSpec:
    parser = build_parser()
    parser.__class__ = _Parser
    args = parser.parse_args(list(argv))
    values: Dict[str, object] = {}
    if args.config:
        values.update(read_config(args.config))
    for f in fields(JobSpec):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    if not values.get("command"):
        raise UsageError("no command given")
    unknown = set(values) - {f.name for f in fields(JobSpec)}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return JobSpec(**{k: _coerce(k, v) for k, v in values.items()}).validate()


# -- commands ---------------------------------------------------------------------

def _k_fields(job: JobSpec, k_eff: int) -> dict:
    return {"k": job.k, "k_eff": k_eff}


def _rational_doc(zp: int, qp: int, num: Poly, den: Poly, series) -> dict:
    return {
        "prefactor": {"z_power": zp, "qh_power": qp, "q": half(qp)},
        "numerator": poly_to_json(num),
        "denominator": poly_to_json(den),
        "series": series_to_json(series),
    }


def cmd_secular(job: JobSpec) -> tuple:
    k = _finite_k(job)
    routes = ["recursive", "det", "closed", "dual"] if job.route == "all" else [job.route]
    polys = {r: motzkin.secular(k, r) for r in routes}
    first = polys[routes[0]]
    doc = {"command": "secular", "k": k, "route": job.route, "polynomial": poly_to_json(first)}
    code = EXIT_OK
    if len(routes) > 1:
        agree = {r: p == first for r, p in polys.items()}
        doc["routes_agree"] = agree
        if not all(agree.values()):
            code = EXIT_VERIFY
    if job.laurent:
        doc["dual"] = poly_to_json(motzkin.dual_transform(first, k))
    return doc, code


def _finite_k(job: JobSpec) -> int:
    if job.k == INFINITE:
        raise UsageError(f"'{job.command}' needs a finite k")
    return job.k


def cmd_gf(job: JobSpec) -> tuple:
    q = MeanderQuery(job.k, job.m, job.n, job.L)
    g = motzkin.gf_meander(q)
    doc = {"command": "gf", "m": job.m, "n": job.n, "L": job.L, **_k_fields(job, q.k_eff)}
    doc.update(_rational_doc(g.z_power, g.qh_power, g.numerator, g.denominator, g.series))
    if job.laurent:
        doc["dual_denominator"] = poly_to_json(motzkin.dual_transform(g.denominator, q.k_eff))
    return doc, EXIT_OK


def cmd_marked(job: JobSpec) -> tuple:
    w = parse_weights(job.weights)
    q = MeanderQuery(job.k, job.m, job.n, job.L)
    g = markers.marked_gf(q, w)
    doc = {"command": "marked", "m": job.m, "n": job.n, "L": job.L, "weights": job.weights,
           **_k_fields(job, g.k)}
    doc.update(_rational_doc(g.z_power, g.qh_power, g.numerator, g.denominator, g.series))
    if job.laurent:
        doc["dual_denominator"] = poly_to_json(
            motzkin.dual_transform(markers.swap_markers(g.denominator), g.k))
    return doc, EXIT_OK


def cmd_cluster(job: JobSpec) -> tuple:
    k = _finite_k(job)
    if job.A < 1:
        raise UsageError("A must be >= 1")
    terms = [poly_to_json(cluster.cluster_term(k, a)) for a in range(1, job.A + 1)]
    log = cluster.log_gf(k, job.m, job.n, job.A)
    doc = {"command": "cluster", "k": k, "m": job.m, "n": job.n, "A": job.A,
           "cluster_terms": terms, "log_gf": series_to_json(log)}
    return doc, EXIT_OK


def cmd_enumerate(job: JobSpec) -> tuple:
    q = MeanderQuery(job.k, job.m, job.n, job.L)
    s = enumeration.enumerate(job.k, job.m, job.n, job.L)
    doc = {"command": "enumerate", "m": job.m, "n": job.n, "L": job.L, **_k_fields(job, q.k_eff),
           "series": series_to_json(s), "counts": enumeration.path_counts(s)}
    return doc, EXIT_OK


def cmd_bounds(job: JobSpec) -> tuple:
    q = MeanderQuery(job.k, job.m, job.n, job.L)
    k = q.k_eff
    rows = []
    for l in range(job.L + 1):
        try:
            lo, hi = cluster.area_bounds(k, job.m, job.n, l)
        except Unreachable:
            continue
        dlo, dhi = cluster.q_degree_bounds(k, job.m, job.n, l - abs(job.n - job.m))
        rows.append({"l": l, "amin2": lo, "amax2": hi, "amin": half(lo), "amax": half(hi),
                     "q_degree_min": dlo, "q_degree_max": dhi})
    doc = {"command": "bounds", "m": job.m, "n": job.n, "L": job.L, **_k_fields(job, k), "bounds": rows}
    return doc, EXIT_OK


def verification_report(k: int, L: int) -> Report:
    """Every identity suite for one ceiling, plus the tri-route series agreement."""
    rep = Report(f"verify k={k} L={L}")
    rep.extend(motzkin.recursion_checks(k, L))
    for route in ("det", "closed", "dual", "exclusion", "bosonic"):
        rep.add(f"F_{k} route {route}", motzkin.secular(k, route) == motzkin.F(k))
    rep.extend(motzkin.embedding_identities(k))
    for case, sub in motzkin.SPECIAL_SUBSTITUTIONS.items():
        rep.add(f"special case {case}", motzkin.secular_special(k, case) == motzkin.F(k).subs(sub))
    for m in range(k + 1):
        for n in range(k + 1):
            q = MeanderQuery(k, m, n, L)
            a = motzkin.gf_meander(q).series
            b = motzkin.gf_series_oracle(q)
            c = enumeration.enumerate(k, m, n, L)
            rep.add(f"tri-route series ({m},{n})", a == b == c, series_difference(a, c) or "")
    A = max(1, L)
    rep.add(f"exp of cluster terms = F_{k} through {A}", cluster.cluster_exp_check(k, A))
    for m in range(k + 1):
        for n in range(m, k + 1):
            diff = series_difference(cluster.log_gf(k, m, n, A), cluster.log_gf_oracle(k, m, n, A))
            rep.add(f"log_gf ({m},{n})", diff is None, diff or "")
    if k >= 1:
        rep.extend(markers.marked_identity_suite(k, min(L, 8)))
    return rep


def cmd_verify(job: JobSpec) -> tuple:
    k = _finite_k(job)
    rep = verification_report(k, job.L)
    doc = {"command": "verify", "k": k, "L": job.L, "report": rep.to_dict()}
    return doc, EXIT_OK if rep.ok else EXIT_VERIFY


HANDLERS = {
    "secular": cmd_secular,
    "gf": cmd_gf,
    "marked": cmd_marked,
    "cluster": cmd_cluster,
    "enumerate": cmd_enumerate,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}


def run(job: JobSpec) -> tuple:
    """Execute a job; returns (exit code, JSON text)."""
    doc, code = HANDLERS[job.command](job)
    return code, dumps(doc)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        job = parse_job(argv)
        code, text = run(job)
    except UsageError as exc:
        print(f"motzkin-gf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalAssertion as exc:
        print(f"motzkin-gf: internal assertion: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (MotzkinError, ValueError) as exc:
        print(f"motzkin-gf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
