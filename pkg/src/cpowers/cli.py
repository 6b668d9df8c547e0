"""Batch front-end: one subcommand per operation family, deterministic
JSON/CSV reports, and an on-disk cache keyed by canonical parameter hashes.

Determinism contract: two runs with the same RunSpec produce byte-identical
reports regardless of thread count; the cache key covers every parameter that
can influence the bytes (including precision and output format) and excludes
those that cannot (threads, cache location).

Exit status: 0 for completed reports (uncertified results still exit 0 and say
"certified": false); 2 for usage errors; 3 when a computation ends Unresolved.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import dissociation, energy, expsum, rational
from .magnitude import LogMagnitude
from .realcore import (
    INITIAL_PRECISION,
    MAX_PRECISION,
    AlgebraicLogExponent,
    Exponent,
    RationalExponent,
    RealBall,
    UnresolvedComparison,
    fraction_ball_exponent,
    pi_fraction_exponent,
    rational_exponent,
    sqrt_ball_exponent,
)

SCHEMA_VERSION = 1

SUBCOMMANDS = (
    "energy",
    "sumset",
    "sporadic",
    "rational",
    "negative",
    "partial-sum",
    "bounds",
    "digits",
    "dissociate",
    "verify-form",
    "expsum",
    "recheck-certificate",
)


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exponent syntax
# ---------------------------------------------------------------------------

_DIGIT_PRESETS: Dict[str, object] = {
    "n+q": lambda n, q: Fraction(n) + (Fraction(q) if isinstance(q, int) else q),
    "n+log2q^2": lambda n, q: Fraction(n) + Fraction((int(q).bit_length() - 1) ** 2),
}


def _parse_decimal(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise UsageError(f"bad decimal {text!r}") from exc


def parse_exponent(text: str, precision: int = MAX_PRECISION) -> Exponent:
    """Exponent syntax: `a/q` | `sqrtN` | `pi/4` | `ball:<dec>±<rad>` |
    `alglog:<base>:<c0,c1,...>:<lo>,<hi>` | `digits:<radix>:<rule>`, plus the
    canonical descriptors the library itself emits."""
    text = text.strip()
    if text.startswith("rational:"):
        text = text[len("rational:"):]
    if text.startswith("sqrt"):
        try:
            return sqrt_ball_exponent(int(text[4:]), precision)
        except ValueError as exc:
            raise UsageError(f"bad sqrt exponent {text!r}") from exc
    if text.startswith("pi"):
        rest = text[2:]
        try:
            if rest.startswith("/"):
                num, den = 1, int(rest[1:])
            elif rest.startswith("*"):
                n_s, _, d_s = rest[1:].partition("/")
                num, den = int(n_s), int(d_s or 1)
            elif rest == "":
                num, den = 1, 1
            else:
                raise ValueError(rest)
            return pi_fraction_exponent(num, den, precision)
        except ValueError as exc:
            raise UsageError(f"bad pi exponent {text!r}") from exc
    if text.startswith("ball:"):
        body = text[len("ball:"):]
        if body.startswith("sqrt"):
            return sqrt_ball_exponent(int(body[4:]), precision)
        if body.startswith("pi"):
            return parse_exponent(body, precision)
        for sep in ("±", "+-"):
            if sep in body:
                mid_s, rad_s = body.split(sep, 1)
                mid = _parse_decimal(mid_s)
                rad = _parse_decimal(rad_s)
                ball = RealBall.from_mid_rad(mid, rad, precision)
                return fraction_ball_exponent(mid, precision) if rad == 0 else _ball_exp(ball)
        return fraction_ball_exponent(_parse_decimal(body), precision)
    if text.startswith("alglog:"):
        parts = text.split(":")
        if len(parts) != 4:
            raise UsageError("alglog syntax: alglog:<base>:<c0,c1,...>:<lo>,<hi>")
        base = int(parts[1])
        coeffs = [int(v) for v in parts[2].split(",")]
        lo_s, hi_s = parts[3].split(",")
        return AlgebraicLogExponent(base, coeffs, Fraction(lo_s), Fraction(hi_s))
    if text.startswith("digits:"):
        parts = text.split(":")
        if len(parts) < 3:
            raise UsageError("digits syntax: digits:<radix>:<rule>")
        radix = int(parts[1])
        rule = parts[2]
        if rule == "corollary":
            return dissociation.digit_positions(None, 10, 4, mode="corollary").exponent()
        if rule == "preset" and len(parts) >= 4 and parts[3] in _DIGIT_PRESETS:
            fam = _DIGIT_PRESETS[parts[3]]
            return dissociation.digit_positions(
                fam, radix, 6, mode="toy", family_description=parts[3]
            ).exponent()
        raise UsageError(f"unknown digits rule {rule!r}")
    if "/" in text:
        num, den = text.split("/", 1)
        return rational_exponent(int(num), int(den))
    try:
        return rational_exponent(int(text), 1)
    except ValueError:
        pass
    raise UsageError(f"cannot parse exponent {text!r}")


def _ball_exp(ball: RealBall) -> Exponent:
    from .realcore import NumericBallExponent

    return NumericBallExponent(ball)


# ---------------------------------------------------------------------------
# RunSpec and cache
# ---------------------------------------------------------------------------


@dataclass
class RunSpec:
    subcommand: str
    params: Dict[str, str]
    precision: int = INITIAL_PRECISION
    max_precision: int = MAX_PRECISION
    threads: int = 1
    output: str = "json"
    cache_dir: Optional[str] = None

    def canonical(self) -> str:
        payload = {
            "subcommand": self.subcommand,
            "params": {k: str(v) for k, v in sorted(self.params.items()) if v is not None},
            "precision": self.precision,
            "max_precision": self.max_precision,
            "output": self.output,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def cache_key(spec: RunSpec) -> str:
    """Stable across platforms; thread count and cache location do not affect
    results and are excluded."""
    return hashlib.sha256(spec.canonical().encode()).hexdigest()


def _dump_json(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _dump_csv(header: str, rows: List[str]) -> bytes:
    return ("\n".join([header] + rows) + "\n").encode()


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def _require(params: Dict[str, str], *names: str) -> None:
    missing = [n for n in names if params.get(n) in (None, "")]
    if missing:
        raise UsageError(f"missing required parameter(s): {', '.join(missing)}")


def _int_list(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _run_energy(spec: RunSpec) -> bytes:
    _require(spec.params, "c", "N")
    c = parse_exponent(spec.params["c"], spec.max_precision)
    sweep = spec.params.get("sweep")
    ns = _int_list(sweep) if sweep else [int(spec.params["N"])]
    reports = [
        energy.additive_energy(
            c,
            n,
            spec.max_precision,
            initial_precision=spec.precision,
            threads=spec.threads,
        )
        for n in ns
    ]
    if spec.output == "csv":
        return _dump_csv(energy.EnergyReport.CSV_HEADER, [r.to_csv_row() for r in reports])
    if sweep:
        return _dump_json({"schema_version": SCHEMA_VERSION, "sweep": [r.to_json_dict() for r in reports]})
    return _dump_json(reports[0].to_json_dict())


def _run_sumset(spec: RunSpec) -> bytes:
    _require(spec.params, "c", "N")
    c = parse_exponent(spec.params["c"], spec.max_precision)
    n = int(spec.params["N"])
    size = energy.sumset_size(c, n, spec.max_precision, initial_precision=spec.precision)
    if isinstance(size, tuple):
        body = {"schema_version": SCHEMA_VERSION, "N": n, "sumset_lower": size[0], "sumset_upper": size[1], "certified": False}
    else:
        body = {"schema_version": SCHEMA_VERSION, "N": n, "sumset": size, "certified": True}
    return _dump_json(body)


def _run_sporadic(spec: RunSpec) -> bytes:
    _require(spec.params, "n")
    n = int(spec.params["n"])
    kind = spec.params.get("kind", "sporadic")
    sol = energy.construct_sporadic(n) if kind == "sporadic" else energy.construct_three_ap(n)
    body = {
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "kind": sol.kind,
        "quadruple": list(sol.quadruple),
        "c_descriptor": sol.c.descriptor(),
        "verdict": sol.verdict.kind,
        "witness": sol.verdict.witness,
    }
    return _dump_json(body)


def _run_rational(spec: RunSpec) -> bytes:
    _require(spec.params, "a", "q")
    a, q = int(spec.params["a"]), int(spec.params["q"])
    sweep = spec.params.get("sweep")
    if sweep:
        report = rational.rational_asymptotic_report(a, q, _int_list(sweep))
        fig = spec.params.get("figure")
        if fig:
            from . import figures

            figures.render_asymptotic(report, fig)
        if spec.output == "csv":
            return _dump_csv(rational.AsymptoticReport.CSV_HEADER, report.to_csv_rows())
        return _dump_json(report.to_json_dict())
    _require(spec.params, "N")
    n = int(spec.params["N"])
    if q == 1:
        count = rational.integer_energy_nontrivial(a, n)
    else:
        count = rational.reduce_rational_count(a, q, n)
    return _dump_json({"schema_version": SCHEMA_VERSION, "a": a, "q": q, "N": n, "nontrivial": count})


def _run_negative(spec: RunSpec) -> bytes:
    _require(spec.params, "n", "N")
    cl = rational.classify_negative(
        int(spec.params["n"]), int(spec.params["N"]), strict=spec.params.get("strict") == "true"
    )
    return _dump_json(cl.to_json_dict())


def _run_partial_sum(spec: RunSpec) -> bytes:
    _require(spec.params, "alpha")
    alpha = Fraction(spec.params["alpha"])
    sweep = spec.params.get("sweep")
    ns = _int_list(sweep) if sweep else [int(spec.params.get("N") or 0)]
    if not ns or ns == [0]:
        raise UsageError("partial-sum needs --N or --sweep")
    results = [rational.partial_sum(alpha, n, spec.precision) for n in ns]
    fig = spec.params.get("figure")
    if fig:
        from . import figures

        figures.render_partial_sums(results, fig)
    if spec.output == "csv":
        header = "alpha,N,exact,prediction,difference"
        rows = [
            f"{r.alpha},{r.N},{r.exact.mid_float()!r},{r.prediction.mid_float()!r},{r.difference.mid_float()!r}"
            for r in results
        ]
        return _dump_csv(header, rows)
    if sweep:
        return _dump_json({"schema_version": SCHEMA_VERSION, "sweep": [r.to_json_dict() for r in results]})
    return _dump_json(results[0].to_json_dict())


def _mag_json(name: str, mag: LogMagnitude, extra: Optional[Dict[str, object]] = None) -> bytes:
    body: Dict[str, object] = {
        "schema_version": SCHEMA_VERSION,
        "bound": name,
        "magnitude": mag.to_json_dict(),
        "log_float": mag.log_float(),
        "representation_depth": mag.depth(),
    }
    if extra:
        body.update(extra)
    return _dump_json(body)


def _run_bounds(spec: RunSpec) -> bytes:
    _require(spec.params, "which")
    which = spec.params["which"]
    p = spec.params
    if which == "psi":
        _require(p, "A", "N", "s", "q")
        mag = dissociation.psi_log(
            int(p["A"]), int(p["N"]), int(p["s"]), int(p["q"]), c8=int(p.get("c8") or dissociation.DEFAULT_EFFECTIVE_CONSTANT)
        )
        return _mag_json("psi", mag, {"c8": int(p.get("c8") or dissociation.DEFAULT_EFFECTIVE_CONSTANT)})
    if which == "baker":
        _require(p, "m", "N")
        return _mag_json("baker-wustholz", dissociation.baker_wustholz_log(int(p["m"]), int(p["N"])))
    if which == "c0":
        _require(p, "m", "N")
        return _mag_json("c0", dissociation.c0_log(int(p["m"]), int(p["N"])))
    if which == "rational-threshold":
        _require(p, "m", "N", "a", "q")
        c = Fraction(p["c"]) if p.get("c") else None
        mag = dissociation.rational_threshold_log(int(p["m"]), int(p["N"]), int(p["a"]), int(p["q"]), c=c)
        return _mag_json("rational-threshold", mag)
    if which == "alpha-lower":
        _require(p, "m", "N", "r", "q")
        return _mag_json(
            "alpha-lower", dissociation.alpha_lower_log(int(p["m"]), int(p["N"]), Fraction(p["r"]), int(p["q"]))
        )
    if which == "prime-corollary":
        _require(p, "c", "q", "N")
        mag = dissociation.prime_corollary_log(
            Fraction(p["c"]), int(p["q"]), int(p["N"]), a=int(p["a"]) if p.get("a") else None
        )
        return _mag_json("prime-corollary", mag)
    if which == "feldman":
        _require(p, "s", "q", "A", "N", "a")
        mag = dissociation.feldman_log_bound(
            int(p["s"]), int(p["q"]), int(p["A"]), int(p["N"]), int(p["a"]),
            c3=Fraction(p.get("c3") or dissociation.DEFAULT_EFFECTIVE_CONSTANT),
        )
        return _mag_json("feldman", mag, {"c3": str(p.get("c3") or dissociation.DEFAULT_EFFECTIVE_CONSTANT)})
    raise UsageError(f"unknown bound {which!r}")


def _run_digits(spec: RunSpec) -> bytes:
    mode = spec.params.get("mode", "toy")
    radix = int(spec.params.get("radix") or (10 if mode == "corollary" else 2))
    count = int(spec.params.get("count") or 4)
    d1 = int(spec.params.get("d1") or 1)
    family = None
    desc = ""
    if mode == "toy":
        name = spec.params.get("family") or "n+log2q^2"
        if name not in _DIGIT_PRESETS:
            raise UsageError(f"unknown toy family {name!r}; presets: {sorted(_DIGIT_PRESETS)}")
        family = _DIGIT_PRESETS[name]
        desc = name
    construction = dissociation.digit_positions(family, radix, count, mode=mode, d1=d1, family_description=desc)
    body = construction.to_json_dict()
    query = spec.params.get("query")
    if query is not None:
        ans = dissociation.digit_query(construction, int(query))
        body["query"] = {"position": int(query), "digit": ans if ans is not None else "unknown"}
    return _dump_json(body)


def _run_dissociate(spec: RunSpec) -> bytes:
    _require(spec.params, "set")
    values = _int_list(spec.params["set"])
    if spec.params.get("mult-indep") == "true":
        result = dissociation.multiplicative_independence(values)
        return _dump_json(result.to_certificate().to_json_dict())
    _require(spec.params, "c")
    c = parse_exponent(spec.params["c"], spec.max_precision)
    variant = spec.params.get("variant", "full").replace("-", "_")
    cert = dissociation.check_dissociated(values, c, variant=variant, max_precision=spec.max_precision)
    return _dump_json(cert.to_json_dict())


def _run_verify_form(spec: RunSpec) -> bytes:
    _require(spec.params, "coeffs", "points", "c")
    c = parse_exponent(spec.params["c"], spec.max_precision)
    form = dissociation.LinearForm(
        tuple(_int_list(spec.params["coeffs"])), tuple(_int_list(spec.params["points"])), c
    )
    anchor = None
    if spec.params.get("anchor"):
        a_s, q_s = spec.params["anchor"].split("/")
        anchor = (int(a_s), int(q_s))
    cert = dissociation.verify_nonvanishing(form, spec.max_precision, rational_anchor=anchor)
    return _dump_json(cert.to_json_dict())


def _run_expsum(spec: RunSpec) -> bytes:
    _require(spec.params, "which", "c", "N")
    which = spec.params["which"]
    c = parse_exponent(spec.params["c"], spec.max_precision)
    n = int(spec.params["N"])
    if which == "profile":
        profile = expsum.rep_count_profile(c, n, spec.max_precision, initial_precision=spec.precision)
        return _dump_json(profile.to_json_dict())
    if which == "parseval":
        profile = expsum.rep_count_profile(c, n, spec.max_precision, initial_precision=spec.precision)
        res = expsum.parseval_check(profile, certified=spec.params.get("certified") == "true")
        return _dump_json(res.to_json_dict())
    if which == "fourth-moment":
        rep = expsum.fourth_moment_report(c, n, spec.max_precision, initial_precision=spec.precision)
        return _dump_json(rep.to_json_dict())
    if which == "large-values":
        _require(spec.params, "V")
        vs = [Fraction(v) for v in spec.params["V"].split(",")]
        results = expsum.large_values_sweep(c, n, vs, spec.max_precision, initial_precision=spec.precision)
        fig = spec.params.get("figure")
        if fig:
            from . import figures

            figures.render_large_values(results, fig)
        if spec.output == "csv":
            header = "V,count,bound,ratio"
            return _dump_csv(header, [f"{r.V!r},{r.count},{r.bound!r},{r.ratio!r}" for r in results])
        return _dump_json({"schema_version": SCHEMA_VERSION, "sweep": [r.to_json_dict() for r in results]})
    if which == "window":
        _require(spec.params, "y")
        count = expsum.window_pair_count(c, n, Fraction(spec.params["y"]), spec.max_precision)
        return _dump_json({"schema_version": SCHEMA_VERSION, "N": n, "y": spec.params["y"], "count": count})
    raise UsageError(f"unknown expsum report {which!r}")


def _run_recheck(spec: RunSpec) -> bytes:
    _require(spec.params, "file")
    payload = json.loads(Path(spec.params["file"]).read_text())
    matches, fresh = dissociation.recheck_certificate(payload)
    return _dump_json(
        {
            "schema_version": SCHEMA_VERSION,
            "matches": matches,
            "stored_verdict": payload.get("verdict"),
            "fresh": fresh.to_json_dict(),
        }
    )


_DISPATCH = {
    "energy": _run_energy,
    "sumset": _run_sumset,
    "sporadic": _run_sporadic,
    "rational": _run_rational,
    "negative": _run_negative,
    "partial-sum": _run_partial_sum,
    "bounds": _run_bounds,
    "digits": _run_digits,
    "dissociate": _run_dissociate,
    "verify-form": _run_verify_form,
    "expsum": _run_expsum,
    "recheck-certificate": _run_recheck,
}


def run(spec: RunSpec) -> Tuple[int, bytes]:
    """Dispatch a RunSpec; returns (exit status, report bytes).  Cache hits
    replay the stored bytes."""
    if spec.subcommand not in _DISPATCH:
        return 2, f"unknown subcommand {spec.subcommand!r}\n".encode()
    cache_path: Optional[Path] = None
    if spec.cache_dir:
        cache_path = Path(spec.cache_dir) / f"{cache_key(spec)}.{spec.output}"
        if cache_path.exists():
            return 0, cache_path.read_bytes()
    try:
        payload = _DISPATCH[spec.subcommand](spec)
    except UsageError as exc:
        return 2, f"usage error: {exc}\n".encode()
    except (ValueError, KeyError) as exc:
        return 2, f"invalid parameters: {exc}\n".encode()
    except UnresolvedComparison as exc:
        return 3, f"unresolved: {exc}\n".encode()
    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        tmp = cache_path.with_suffix(cache_path.suffix + ".tmp")
        tmp.write_bytes(payload)
        tmp.replace(cache_path)
    return 0, payload


# ---------------------------------------------------------------------------
# argparse front end
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpowers",
        description="Certified additive combinatorics of c-th powers.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--c", help="exponent: a/q | sqrtN | pi/4 | ball:<dec>±<rad> | alglog:... | digits:...")
    parser.add_argument("--N", help="point bound")
    parser.add_argument("--n", help="construction index / negative exponent")
    parser.add_argument("--a", help="numerator")
    parser.add_argument("--q", help="denominator")
    parser.add_argument("--m", help="set size for bound formulas")
    parser.add_argument("--s", help="form length for bound formulas")
    parser.add_argument("--A", help="coefficient bound")
    parser.add_argument("--r", help="rational exponent r = a/q for alpha-lower")
    parser.add_argument("--c8", help="effective constant for psi")
    parser.add_argument("--c3", help="effective constant for feldman")
    parser.add_argument("--alpha", help="exponent for partial sums")
    parser.add_argument("--V", help="large-values thresholds, comma separated")
    parser.add_argument("--y", help="window center")
    parser.add_argument("--set", help="comma-separated positive integers")
    parser.add_argument("--coeffs", help="comma-separated coefficients")
    parser.add_argument("--points", help="comma-separated points")
    parser.add_argument("--anchor", help="rational anchor a/q for decomposition diagnostics")
    parser.add_argument("--kind", choices=("sporadic", "three-ap"), default="sporadic")
    parser.add_argument("--which", help="bound or expsum report selector")
    parser.add_argument("--mode", choices=("toy", "tower", "corollary"), default="toy")
    parser.add_argument("--radix", help="digit radix")
    parser.add_argument("--count", help="number of digit positions")
    parser.add_argument("--d1", help="first digit position")
    parser.add_argument("--family", help="toy psi family preset")
    parser.add_argument("--query", help="digit position to query")
    parser.add_argument("--variant", choices=("full", "zero-sum"), default="full")
    parser.add_argument("--mult-indep", action="store_true", help="test multiplicative independence of --set")
    parser.add_argument("--strict", action="store_true", help="raise on classification violations")
    parser.add_argument("--certified", action="store_true", help="also run the ball-arithmetic verification")
    parser.add_argument("--sweep", help="comma-separated N values")
    parser.add_argument("--file", help="certificate file for recheck")
    parser.add_argument("--figure", help="render a figure for sweep output to this path")
    parser.add_argument("--precision", type=int, default=INITIAL_PRECISION, help="initial working precision (bits)")
    parser.add_argument("--max-precision", type=int, default=MAX_PRECISION, help="refinement ceiling (bits)")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--output", choices=("json", "csv"), default="json")
    parser.add_argument("--cache-dir", default=os.environ.get("POWERSET_CACHE_DIR"))
    return parser


_PARAM_KEYS = (
    "c", "N", "n", "a", "q", "m", "s", "A", "r", "c8", "c3", "alpha", "V", "y",
    "set", "coeffs", "points", "anchor", "kind", "which", "mode", "radix",
    "count", "d1", "family", "query", "variant", "sweep", "file", "figure",
)


def spec_from_args(argv: Optional[List[str]] = None) -> RunSpec:
    args = build_parser().parse_args(argv)
    params = {k: getattr(args, k.replace("-", "_")) for k in _PARAM_KEYS}
    params = {k: v for k, v in params.items() if v is not None}
    if args.mult_indep:
        params["mult-indep"] = "true"
    if args.strict:
        params["strict"] = "true"
    if args.certified:
        params["certified"] = "true"
    return RunSpec(
        subcommand=args.subcommand,
        params=params,
        precision=args.precision,
        max_precision=args.max_precision,
        threads=args.threads,
        output=args.output,
        cache_dir=args.cache_dir,
    )


def main(argv: Optional[List[str]] = None) -> int:
    try:
        spec = spec_from_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    status, payload = run(spec)
    out = sys.stdout.buffer if hasattr(sys.stdout, "buffer") else sys.stdout
    out.write(payload)
    out.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
