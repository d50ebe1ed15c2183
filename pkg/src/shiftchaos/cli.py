"""Command-line front end: certification suites, horseshoe exports, orbits.

Subcommands
-----------
certify    run the chaos certification suite, one JSON certificate per check
horseshoe  export level rectangles (CSV), hyperbolic and conjugacy reports
           (JSON), and an optional SVG rendering of the unit square
orbit      tabulate a symbolic or planar orbit as CSV

A top-level ``--verify FILE`` mode re-verifies any emitted certificate by
recomputing every stored distance from the stored witnesses.

Configuration is a flat ``key = value`` text file (``--config``); explicit
flags win over file values.  Identical config plus seed reproduces output
files byte for byte.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import certify as cert
from .cylinders import future_cylinder
from .horseshoe import (
    EscapeError,
    HorseshoeParams,
    PlanePoint,
    branch_of,
    conjugacy_check,
    horseshoe_map,
    level_rectangles,
    verify_hyperbolic_conditions,
)
from .metric import (
    MetricParams,
    check_diameter_condition,
    check_separation,
    distance,
    separation_holds_everywhere,
    set_distance,
)
from .sequences import (
    Alphabet,
    FiniteWord,
    PeriodicSeq,
    SplicedSeq,
    UniversalSeq,
    WindowPaddedSeq,
    periodic_point,
)

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    m: int = 2
    r: float = 0.5
    lam: object = Fraction(1, 3)
    mu: object = Fraction(3)
    k: int = 3
    n: int = 3
    horizon: int = 100
    tol: float = 1e-12
    out: Path = Path("out")
    formats: tuple[str, ...] = ("json",)
    seed: int = 0
    sets: int = 3
    targets: int = 3
    recurrence_depth: int = 10
    metric_depth: int = 12
    conjugacy_depth: int = 20
    conjugacy_samples: int = 25

    def validate(self) -> None:
        try:
            Alphabet(self.m)
            MetricParams(self.r)
            HorseshoeParams(self.lam, self.mu)
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc
        if self.tol <= 0:
            raise ConfigError("tol must be positive")
        if self.k < 0 or self.n < 1:
            raise ConfigError("need k >= 0 and n >= 1")
        if 2 ** (self.k + 1 + self.n) > 1 << 20:
            raise ConfigError("rectangle cap exceeded: k + n too deep")
        if self.horizon < 10:
            raise ConfigError("horizon must be >= 10")
        if not (0 <= self.seed < 1 << 64):
            raise ConfigError("seed must fit in 64 bits")
        if self.recurrence_depth < 1 or self.metric_depth < 1:
            raise ConfigError("depths must be >= 1")
        bad = [f for f in self.formats if f not in ("json", "csv", "svg")]
        if bad:
            raise ConfigError(f"unknown output formats: {bad}")


def _parse_number(text: str):
    """Accept ints, floats, and exact fractions like 1/3."""
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


_CONFIG_KEYS = {
    "m": int,
    "r": lambda s: float(Fraction(s)) if "/" in s else float(s),
    "lambda": _parse_number,
    "mu": _parse_number,
    "k": int,
    "n": int,
    "horizon": int,
    "tol": float,
    "out": Path,
    "formats": lambda s: tuple(f.strip() for f in s.split(",") if f.strip()),
    "seed": int,
    "sets": int,
    "targets": int,
    "recurrence_depth": int,
    "metric_depth": int,
    "conjugacy_depth": int,
    "conjugacy_samples": int,
}

_KEY_TO_FIELD = {"lambda": "lam"}


def load_config(path: Path | None, overrides: dict) -> RunConfig:
    values: dict = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[_KEY_TO_FIELD.get(key, key)] = _CONFIG_KEYS[key](val)
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    for key, val in overrides.items():
        if val is not None:
            values[key] = val
    try:
        config = RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Deterministic writers
# ---------------------------------------------------------------------------


def _write_json(path: Path, kind: str, data: dict) -> None:
    payload = {"schema": SCHEMA_VERSION, "kind": kind, "data": data}
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _float_str(v) -> str:
    return repr(float(v))


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------


def _diameter_payload(config: RunConfig) -> dict:
    report = check_diameter_condition(Alphabet(config.m), MetricParams(config.r), config.metric_depth)
    return {
        "m": config.m,
        "r": config.r,
        "max_depth": config.metric_depth,
        "rows": [
            {"k": row.k, "n": row.n, "diameter": row.diameter, "predicted": row.predicted}
            for row in report.rows
        ],
        "strictly_decreasing": report.strictly_decreasing,
        "matches_prediction": report.matches_prediction,
    }


def _separation_payload(config: RunConfig, degree: int) -> dict:
    a, p = Alphabet(config.m), MetricParams(config.r)
    result = check_separation(a, p, degree)
    exhaustive = degree <= 3 and separation_holds_everywhere(a, p, degree, result.eps0)
    return {
        "m": config.m,
        "r": config.r,
        "degree": degree,
        "eps0": result.eps0,
        "witness_words": [list(result.witness[0].fixed), list(result.witness[1].fixed)],
        "witness_distance": set_distance(result.witness[0], result.witness[1], p),
        "exhaustive_at_low_degree": exhaustive,
    }


def _verify_diameter(data: dict, failures: list[str]) -> None:
    report = check_diameter_condition(
        Alphabet(data["m"]), MetricParams(data["r"]), data["max_depth"]
    )
    for stored, row in zip(data["rows"], report.rows):
        if stored["diameter"] != row.diameter or stored["predicted"] != row.predicted:
            failures.append(f"diameter row k={row.k} does not recompute")
    if not (report.strictly_decreasing and report.matches_prediction):
        failures.append("diameter condition no longer holds")


def _verify_separation(data: dict, failures: list[str]) -> None:
    a, p = Alphabet(data["m"]), MetricParams(data["r"])
    result = check_separation(a, p, data["degree"])
    if result.eps0 != data["eps0"]:
        failures.append("eps0 does not recompute")
    d = set_distance(
        future_cylinder(tuple(data["witness_words"][0])),
        future_cylinder(tuple(data["witness_words"][1])),
        p,
    )
    if d != data["witness_distance"] or not d >= data["eps0"]:
        failures.append("witness distance does not recompute or misses eps0")
    if data["degree"] <= 3 and data["exhaustive_at_low_degree"]:
        if not separation_holds_everywhere(a, p, data["degree"], data["eps0"]):
            failures.append("exhaustive separation check fails")


def cmd_certify(config: RunConfig) -> int:
    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    a = Alphabet(config.m)
    p = MetricParams(config.r)
    rng = random.Random(config.seed)
    files: list[tuple[str, str, dict]] = []  # (filename, kind, data)

    files.append(("diameter_condition.json", "diameter_condition", _diameter_payload(config)))
    for degree in (1, 2, 3):
        files.append(
            (f"separation_n{degree}.json", "separation", _separation_payload(config, degree))
        )

    deltas = (0.1, 1e-2, 1e-3)
    epsilons = (0.25, 1e-2)
    for i in range(config.sets):
        u_set = cert.random_unstable_set(rng, a)
        member = cert.universal_member(u_set)
        for t in range(config.targets):
            target = cert.random_two_sided_target(rng, a, 2, 3)
            c = cert.transitivity_witness(u_set, target)
            files.append((f"transitivity_s{i}_t{t}.json", c.kind, c.data))
        for d_i, delta in enumerate(deltas):
            c = cert.periodic_density_witness(member, delta, p, config.tol)
            files.append((f"periodic_density_s{i}_d{d_i}.json", c.kind, c.data))
        for e_i, eps in enumerate(epsilons):
            c = cert.sensitivity_witness(member, eps, a, p, config.tol)
            files.append((f"sensitivity_s{i}_e{e_i}.json", c.kind, c.data))
        if i == 0:
            c = cert.poisson_recurrence_witness(u_set, config.recurrence_depth, p, tol=config.tol)
            files.append(("poisson_recurrence.json", c.kind, c.data))
            c = cert.li_yorke_pair(u_set, config.horizon, p, config.tol)
            files.append(("li_yorke.json", c.kind, c.data))
            shared_future = WindowPaddedSeq(FiniteWord((2, 1, 2)), 1, 1)
            s_conv = cert.member_with_future(u_set, shared_future)
            t_conv = SplicedSeq(PeriodicSeq(FiniteWord((2,)), 0), shared_future, 0)
            c = cert.stable_set_convergence(s_conv, t_conv, 20, p, config.tol)
            files.append(("stable_convergence.json", c.kind, c.data))
            u1 = cert.member_with_future(u_set, WindowPaddedSeq(FiniteWord((1, 2)), 1, 1))
            u2 = cert.member_with_future(u_set, WindowPaddedSeq(FiniteWord((2, 1)), 1, 1))
            c = cert.unstable_set_convergence(u1, u2, 20, p, config.tol)
            files.append(("unstable_convergence.json", c.kind, c.data))

    status = 0
    failed_name = None
    print(f"{'check':40s} {'status':8s}")
    for name, kind, data in files:
        _write_json(out / name, kind, data)
        result = verify_file(out / name, quiet=True)
        ok = result == 0
        print(f"{name:40s} {'ok' if ok else 'FAIL':8s}")
        if not ok and status == 0:
            status = 1
            failed_name = name
    if failed_name:
        print(f"certificate failed verification: {failed_name}", file=sys.stderr)
    return status


# ---------------------------------------------------------------------------
# horseshoe
# ---------------------------------------------------------------------------


def _word_with_dot(word, start: int) -> str:
    chars = [str(s) for s in word]
    dot_at = -start + 1  # number of symbols at positions <= 0
    return "".join(chars[:dot_at]) + "." + "".join(chars[dot_at:])


def _svg_for_rectangles(rects) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000">',
    ]
    colors = {1: "#3465a4", 2: "#cc0000"}
    for rect in rects:
        x = float(rect.x_lo) * 1000
        y = (1 - float(rect.y_hi)) * 1000  # flip to mathematical orientation
        w = (float(rect.x_hi) - float(rect.x_lo)) * 1000
        h = (float(rect.y_hi) - float(rect.y_lo)) * 1000
        color = colors[rect.word[-rect.start + 1]]
        lines.append(
            f'<rect x="{x:.6f}" y="{y:.6f}" width="{w:.6f}" height="{h:.6f}" '
            f'fill="{color}" fill-opacity="0.8"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_horseshoe(config: RunConfig) -> int:
    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    hp = HorseshoeParams(config.lam, config.mu)
    try:
        rects = level_rectangles(hp, config.k, config.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    rows = ["word,x_lo,x_hi,y_lo,y_hi"]
    for rect in rects:
        rows.append(
            ",".join(
                [
                    _word_with_dot(rect.word, rect.start),
                    _float_str(rect.x_lo),
                    _float_str(rect.x_hi),
                    _float_str(rect.y_lo),
                    _float_str(rect.y_hi),
                ]
            )
        )
    (out / "rectangles.csv").write_text("\n".join(rows) + "\n")

    depth_cap = min(config.k + config.n, 8)
    report = verify_hyperbolic_conditions(hp, max(1, depth_cap))
    _write_json(
        out / "hyperbolic_report.json",
        "hyperbolic_conditions",
        {
            "lambda": str(hp.lam),
            "mu": str(hp.mu),
            "rows": [
                {"k": r.k, "n": r.n, "diagonal": r.diameter, "predicted": r.predicted}
                for r in report.diameter.rows
            ],
            "strictly_decreasing": report.diameter.strictly_decreasing,
            "grid_exact": report.grid_exact,
            "eps0": report.eps0,
            "eps0_horizontal": report.eps0_horizontal,
            "witness_words": [list(w) for w in report.witness_words],
            "brute_min_gap": report.brute_min_gap,
            "passed": report.passed,
        },
    )

    rng = random.Random(config.seed)
    conj_rows = []
    all_passed = report.passed
    for _ in range(config.conjugacy_samples):
        length = rng.randint(1, 12)
        word = tuple(rng.randint(1, 2) for _ in range(length))
        seq = periodic_point(word)
        rep = conjugacy_check(seq, hp, config.conjugacy_depth)
        conj_rows.append(
            {"word": list(word), "defect": rep.defect, "bound": rep.bound, "passed": rep.passed}
        )
        all_passed = all_passed and rep.passed
    _write_json(
        out / "conjugacy_report.json",
        "conjugacy",
        {
            "lambda": str(hp.lam),
            "mu": str(hp.mu),
            "depth": config.conjugacy_depth,
            "seed": config.seed,
            "rows": conj_rows,
            "passed": all(row["passed"] for row in conj_rows),
        },
    )

    if "svg" in config.formats:
        (out / "horseshoe.svg").write_text(_svg_for_rectangles(rects))

    print(f"rectangles: {len(rects)}")
    print(f"hyperbolic conditions: {'ok' if report.passed else 'FAIL'}")
    print(f"conjugacy samples: {'ok' if all_passed else 'FAIL'}")
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# orbit
# ---------------------------------------------------------------------------


def parse_descriptor(text: str):
    """Parse an orbit start: a representable sequence or a plane point.

    periodic:1,2[@phase]   window:1,2,2@-1[:pad]   universal[:seed]
    point:0.25,0.5
    """
    kind, _, rest = text.partition(":")
    try:
        if kind == "periodic":
            block, _, phase = rest.partition("@")
            syms = tuple(int(s) for s in block.split(","))
            return PeriodicSeq(FiniteWord(syms), int(phase) if phase else 0)
        if kind == "window":
            body, _, pad = rest.partition(":")
            syms_text, _, start = body.partition("@")
            syms = tuple(int(s) for s in syms_text.split(",")) if syms_text else ()
            return WindowPaddedSeq(
                FiniteWord(syms), int(start) if start else 1, int(pad) if pad else 1
            )
        if kind == "universal":
            seed = int(rest) if rest else 0
            return UniversalSeq(2, seed)
        if kind == "point":
            x_text, _, y_text = rest.partition(",")
            return PlanePoint(_parse_number(x_text), _parse_number(y_text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad orbit descriptor {text!r}: {exc}") from exc
    raise ConfigError(f"bad orbit descriptor {text!r}: unknown kind {kind!r}")


def cmd_orbit(config: RunConfig, descriptor: str, steps: int) -> int:
    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    start = parse_descriptor(descriptor)
    path = out / "orbit.csv"
    if isinstance(start, PlanePoint):
        hp = HorseshoeParams(config.lam, config.mu)
        rows = ["n,x,y,symbol"]
        pt = start
        status = 0
        for n in range(steps + 1):
            try:
                symbol = branch_of(pt, hp, n)
            except EscapeError:
                rows.append(f"{n},{_float_str(pt.x)},{_float_str(pt.y)},escape")
                status = 1
                break
            rows.append(f"{n},{_float_str(pt.x)},{_float_str(pt.y)},{symbol}")
            if n < steps:
                pt = horseshoe_map(pt, hp, n)
        path.write_text("\n".join(rows) + "\n")
        print(f"wrote {path}")
        return status
    p = MetricParams(config.r)
    rows = ["n,distance"]
    for n in range(steps + 1):
        d = distance(start.shift(n), start, p, config.tol)
        rows.append(f"{n},{_float_str(d.value)}")
    path.write_text("\n".join(rows) + "\n")
    print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# verify mode
# ---------------------------------------------------------------------------

def _verify_hyperbolic(data: dict, failures: list[str]) -> None:
    hp = HorseshoeParams(_parse_number(data["lambda"]), _parse_number(data["mu"]))
    depth = max(row["k"] for row in data["rows"])
    report = verify_hyperbolic_conditions(hp, depth)
    for stored, row in zip(data["rows"], report.diameter.rows):
        if stored["diagonal"] != row.diameter or stored["predicted"] != row.predicted:
            failures.append(f"diagonal row k={row.k} does not recompute")
    if report.eps0 != data["eps0"] or report.brute_min_gap != data["brute_min_gap"]:
        failures.append("separation constants do not recompute")
    if not report.passed:
        failures.append("hyperbolic conditions no longer hold")


def _verify_conjugacy(data: dict, failures: list[str]) -> None:
    hp = HorseshoeParams(_parse_number(data["lambda"]), _parse_number(data["mu"]))
    for row in data["rows"]:
        rep = conjugacy_check(periodic_point(tuple(row["word"])), hp, data["depth"])
        if rep.defect != row["defect"] or rep.bound != row["bound"]:
            failures.append(f"conjugacy row {row['word']} does not recompute")
        if not rep.passed:
            failures.append(f"conjugacy defect for {row['word']} exceeds its bound")


_REPORT_VERIFIERS = {
    "diameter_condition": _verify_diameter,
    "separation": _verify_separation,
    "hyperbolic_conditions": _verify_hyperbolic,
    "conjugacy": _verify_conjugacy,
}


def verify_file(path: Path, quiet: bool = False) -> int:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        if not quiet:
            print(f"error: cannot load {path}: {exc}", file=sys.stderr)
        return 2
    kind = payload.get("kind")
    data = payload.get("data", {})
    if kind in _REPORT_VERIFIERS:
        failures: list[str] = []
        try:
            _REPORT_VERIFIERS[kind](data, failures)
        except (KeyError, ValueError, TypeError) as exc:
            failures.append(f"malformed report: {exc}")
        ok = not failures
    else:
        result = cert.verify_certificate(payload)
        ok, failures = result.ok, list(result.failures)
    if not quiet:
        print(f"{path}: {'ok' if ok else 'FAIL'}")
        for f in failures:
            print(f"  - {f}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", type=Path, default=None)
    sub.add_argument("--out", type=Path, default=None)
    sub.add_argument("--format", dest="formats", default=None,
                     help="comma list from json,csv,svg")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--m", type=int, default=None)
    sub.add_argument("--r", type=str, default=None)
    sub.add_argument("--lam", "--lambda", dest="lam", type=str, default=None)
    sub.add_argument("--mu", type=str, default=None)
    sub.add_argument("--k", type=int, default=None)
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--horizon", type=int, default=None)
    sub.add_argument("--tol", type=float, default=None)


def _overrides(args: argparse.Namespace) -> dict:
    out = {}
    for key in ("out", "seed", "m", "k", "n", "horizon", "tol"):
        out[key] = getattr(args, key, None)
    if getattr(args, "formats", None) is not None:
        out["formats"] = tuple(f.strip() for f in args.formats.split(",") if f.strip())
    if getattr(args, "r", None) is not None:
        out["r"] = float(Fraction(args.r)) if "/" in args.r else float(args.r)
    for key in ("lam", "mu"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = _parse_number(val)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="shiftchaos",
        description="Certify shift-space chaos and export horseshoe geometry.",
    )
    parser.add_argument("--verify", type=Path, default=None, metavar="FILE",
                        help="re-verify an emitted certificate or report file")
    subparsers = parser.add_subparsers(dest="command")
    for name in ("certify", "horseshoe"):
        _add_common(subparsers.add_parser(name))
    orbit = subparsers.add_parser("orbit")
    _add_common(orbit)
    orbit.add_argument("--start", required=True,
                       help="periodic:1,2 | window:2@0 | universal | point:0.1,0.2")
    orbit.add_argument("--steps", type=int, default=50)

    args = parser.parse_args(argv)
    if args.verify is not None:
        return verify_file(args.verify)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        config = load_config(args.config, _overrides(args))
        if args.command == "certify":
            return cmd_certify(config)
        if args.command == "horseshoe":
            return cmd_horseshoe(config)
        return cmd_orbit(config, args.start, args.steps)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
