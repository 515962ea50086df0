"""Command-line front end: ``aprimes <command> [options]``.

Every command prints its headline result on stdout. With ``--output`` the full
artifact is also written atomically in ``--format``. Errors go to stderr as
``aprimes: error[<kind>]: <message>`` with a kind-specific exit status.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import bset, density, enumeration, family, singular
from .errors import APrimesError, ConfigurationError, DomainError, PrecisionError, RangeError, RunInterrupted, UsageError

COMMANDS = ("count", "members", "abar-diff", "sseries", "sa", "li3", "table", "bset", "collisions", "hr-bound")
THREADS_ENV = "APRIMES_THREADS"
ERROR_KINDS = {
    RunInterrupted: "interrupted",
    ConfigurationError: "checkpoint",
    PrecisionError: "precision",
    RangeError: "range",
    UsageError: "usage",
    DomainError: "usage",
}


def parse_int(text) -> int:
    """Integers in plain or scientific notation ('1e10', '2.5e13'); must be exact."""
    if isinstance(text, int):
        return text
    try:
        value = Decimal(str(text).replace("_", ""))
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def parse_int_list(text) -> list[int]:
    if isinstance(text, list):
        return [parse_int(t) for t in text]
    return [parse_int(t) for t in str(text).split(",") if t.strip()]


def parse_forms(text) -> family.LinearSystem:
    """'12:5,2:1,3:1' -> forms 12n+5, 2n+1, 3n+1."""
    try:
        pairs = [tuple(int(v) for v in item.split(":")) for item in str(text).split(",")]
        return family.LinearSystem(pairs)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"forms must look like 'a:b,a:b', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aprimes", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="JSON file with option defaults (flags win)")
    parser.add_argument("--limit", type=parse_int, help="upper bound x")
    parser.add_argument("--limits", type=parse_int_list, help="comma-separated limits for 'table'")
    parser.add_argument("--counts", type=parse_int_list, help="known counts for 'table' (skips counting)")
    parser.add_argument("--threads", type=parse_int)
    parser.add_argument("--segment-size", type=parse_int)
    parser.add_argument("--prime-limit", type=parse_int)
    parser.add_argument("--family", help="exponent triple alpha,beta,gamma (default 1,1,2)")
    parser.add_argument("--forms", type=parse_forms, help="explicit forms 'a:b,a:b,...'")
    parser.add_argument("--log-reference", type=parse_int, help="freeze log x in the x/(log x)^3 column")
    parser.add_argument("--output", type=Path)
    parser.add_argument("--checkpoint", type=Path)
    parser.add_argument("--max-segments", type=parse_int, help="stop after this many new segments")
    parser.add_argument("--format", choices=("csv", "json", "text"))
    parser.add_argument("--verify", action="store_true", default=None, help="re-validate every member")
    return parser


DEFAULTS = {
    "limit": None, "limits": None, "counts": None, "threads": None,
    "segment_size": enumeration.DEFAULT_SEGMENT, "prime_limit": 10**8, "family": "1,1,2",
    "forms": None, "log_reference": None, "output": None, "checkpoint": None,
    "max_segments": None, "format": None, "verify": False,
}
_CONVERTERS = {
    "limit": parse_int, "threads": parse_int, "segment_size": parse_int, "prime_limit": parse_int,
    "log_reference": parse_int, "max_segments": parse_int, "limits": parse_int_list,
    "counts": parse_int_list, "forms": parse_forms, "output": Path, "checkpoint": Path,
}


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Merge flags over config-file values over environment over defaults."""
    cfg = {}
    if args.config is not None:
        try:
            cfg = json.loads(args.config.read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
        unknown = set(cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    merged = dict(DEFAULTS)
    if os.environ.get(THREADS_ENV):
        merged["threads"] = os.environ[THREADS_ENV]
    merged.update(cfg)
    merged.update({k: v for k, v in vars(args).items() if v is not None and k in DEFAULTS})
    for key, conv in _CONVERTERS.items():
        if merged[key] is not None and not (key == "forms" and isinstance(merged[key], family.LinearSystem)):
            try:
                merged[key] = conv(merged[key])
            except argparse.ArgumentTypeError as exc:
                raise UsageError(str(exc)) from None
    merged["threads"] = merged["threads"] or 1
    if merged["threads"] < 1:
        raise UsageError("--threads must be >= 1")
    merged["command"] = args.command
    return argparse.Namespace(**merged)


def _need_limit(cfg) -> int:
    if cfg.limit is None:
        raise UsageError(f"'{cfg.command}' needs --limit")
    return cfg.limit


def _system(cfg) -> family.LinearSystem:
    if cfg.forms is not None:
        return cfg.forms
    try:
        key = tuple(int(v) for v in str(cfg.family).split(","))
    except ValueError:
        raise UsageError(f"--family must be alpha,beta,gamma, got {cfg.family!r}") from None
    if len(key) != 3:
        raise UsageError(f"--family must be alpha,beta,gamma, got {cfg.family!r}")
    return family.forms_for_family(key)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _abar_csv(members) -> str:
    head = "p,alpha,beta,gamma,mu,nu,q,r"
    rows = [f"{m.p},{m.alpha},{m.beta},{m.gamma},{m.mu},{m.nu},{m.q},{m.r}" for m in members]
    return "\n".join([head, *rows]) + "\n"


def _count(cfg):
    x = _need_limit(cfg)
    res = enumeration.count_a_sieve(
        x, cfg.segment_size, cfg.checkpoint, threads=cfg.threads,
        max_segments=cfg.max_segments, verify=cfg.verify,
    )
    (rec,) = density.build_table([x], [res.count])
    artifacts = {
        "json": _dump({"x": x, "count_a": res.count, "ratio_log3": rec.ratio_log3,
                       "ratio_li3": rec.ratio_li3, "digest": res.digest_hex}),
        "csv": density.table_csv([rec]),
        "text": density.table_text([rec]),
    }
    return str(res.count), artifacts, "json"


def _members(cfg):
    x = _need_limit(cfg)
    res = enumeration.count_a_sieve(x, cfg.segment_size, threads=cfg.threads, members=True, verify=cfg.verify)
    body = enumeration.members_csv(res.members)
    return body.rstrip("\n"), {"csv": body, "text": body,
                               "json": _dump([m.__dict__ for m in res.members])}, "csv"


def _abar(cfg):
    count, members = enumeration.count_abar_minus_a(_need_limit(cfg))
    body = _abar_csv(members)
    return str(count), {"csv": body, "text": body,
                        "json": _dump({"count": count, "members": [m.__dict__ for m in members]})}, "csv"


def _series_artifacts(res):
    text = f"{res.value:.10g} +/- {res.tail_bound:.3g} (relative, prime_limit={res.prime_limit})"
    return text, {"json": res.to_json() + "\n", "text": text + "\n",
                  "csv": f"value,prime_limit,tail_bound\n{res.value!r},{res.prime_limit},{res.tail_bound!r}\n"}, "json"


def _sseries(cfg):
    return _series_artifacts(singular.singular_series(_system(cfg), cfg.prime_limit))


def _sa(cfg):
    return _series_artifacts(singular.s_a_constant(cfg.prime_limit))


def _li3(cfg):
    x = _need_limit(cfg)
    v = density.li3(x)
    return repr(v), {"text": f"{v!r}\n", "json": _dump({"x": x, "li3": v}), "csv": f"x,li3\n{x},{v!r}\n"}, "text"


def _table(cfg):
    if not cfg.limits:
        raise UsageError("'table' needs --limits")
    counts = cfg.counts
    if counts is None:
        counts = [enumeration.count_a_sieve(x, cfg.segment_size, threads=cfg.threads).count for x in cfg.limits]
    recs = density.build_table(cfg.limits, counts, cfg.log_reference)
    body = density.table_csv(recs)
    return body.rstrip("\n"), {"csv": body, "text": density.table_text(recs),
                               "json": _dump([json.loads(r.to_json()) for r in recs])}, "csv"


def _bset(cfg):
    x = _need_limit(cfg)
    members = enumeration.count_a_sieve(x, cfg.segment_size, threads=cfg.threads, members=True).members
    state = bset.build_b(members)
    if cfg.verify and not bset.verify_pairwise(state):
        raise AssertionError("B failed the pairwise check")
    ratio = len(state) / len(members) if members else 0.0
    summary = {"x": x, "count_a": len(members), "count_b": len(state), "ratio": ratio}
    head = f"|A|={len(members)} |B|={len(state)} ratio={ratio:.6f}"
    body = enumeration.members_csv(state.chosen)
    return head, {"csv": body, "text": body, "json": _dump({**summary, "members": [m.__dict__ for m in state.chosen]})}, "csv"


def _collisions(cfg):
    x = _need_limit(cfg)
    members = enumeration.count_a_sieve(x, cfg.segment_size, threads=cfg.threads, members=True).members
    stats = bset.collision_stats(members)
    payload = {"x": x, "cases": stats.as_dict(), "flagged": len(stats.flagged), "count_a": len(members)}
    csv_body = "case,count\n" + "".join(f"{k},{v}\n" for k, v in stats.as_dict().items())
    return json.dumps(stats.as_dict()), {"json": _dump(payload), "csv": csv_body, "text": csv_body}, "json"


def _hr(cfg):
    x = _need_limit(cfg)
    system = _system(cfg)
    v = singular.hr_upper_bound(system, x, cfg.prime_limit)
    return repr(v), {"text": f"{v!r}\n", "json": _dump({"x": x, "bound": v, "prime_limit": cfg.prime_limit}),
                     "csv": f"x,bound\n{x},{v!r}\n"}, "text"


HANDLERS = {
    "count": _count, "members": _members, "abar-diff": _abar, "sseries": _sseries, "sa": _sa,
    "li3": _li3, "table": _table, "bset": _bset, "collisions": _collisions, "hr-bound": _hr,
}


def run(cfg: argparse.Namespace) -> int:
    headline, artifacts, default_format = HANDLERS[cfg.command](cfg)
    print(headline)
    if cfg.output is not None:
        enumeration.atomic_write(cfg.output, artifacts[cfg.format or default_format])
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(resolve(args))
    except APrimesError as exc:
        kind = next((v for k, v in ERROR_KINDS.items() if isinstance(exc, k)), "error")
        print(f"aprimes: error[{kind}]: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
