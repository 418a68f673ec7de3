"""Command-line entry point: ``amendgauss <scenario> [options]``.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import fields, replace
from typing import Optional, Sequence

from .scenarios import COLUMNS, SCENARIOS, DomainError, ScenarioConfig, run_scenario

log = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


class OutputError(Exception):
    pass


# flag name -> converter; config-file keys use the same names without dashes
_OPTIONS = {
    "eta": float,
    "eta-min": float,
    "eta-max": float,
    "steps": int,
    "r": float,
    "rprime": float,
    "np": float,
    "n0": float,
    "theta-steps": int,
    "order": int,
    "tol": float,
    "probe-rprime": float,
    "correlation-sign": int,
    "out": str,
    "format": str,
}
_FIELD_NAMES = {f.name for f in fields(ScenarioConfig)}


def _dest(key: str) -> str:
    return key.replace("-", "_")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amendgauss",
        description="Gaussian-channel EB and amendability sweeps.",
    )
    sub = parser.add_subparsers(dest="scenario", required=True, metavar="scenario")
    for name in SCENARIOS:
        p = sub.add_parser(name, help=f"run the {name} scenario")
        for key, conv in _OPTIONS.items():
            kwargs = dict(type=conv, default=None, dest=_dest(key))
            if key == "format":
                kwargs["choices"] = ["csv", "json"]
            if key == "order":
                kwargs["help"] = "largest EB order n considered"
            p.add_argument(f"--{key}", **kwargs)
        p.add_argument("--config", default=None, help="flat key=value file; flags take precedence")
    return parser


def read_config_file(path: str) -> dict:
    """Parse a flat ``key=value`` file. ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OutputError(f"cannot read config {path}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in _OPTIONS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[_dest(key)] = _OPTIONS[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    if "format" in values and values["format"] not in ("csv", "json"):
        raise UsageError(f"{path}: format must be csv or json")
    return values


def parse_config(argv: Optional[Sequence[str]] = None) -> ScenarioConfig:
    """Build a validated config from argv; flags override config-file values.

    Raises ``SystemExit(2)`` on argparse usage errors, ``UsageError`` on a
    malformed config file and ``DomainError`` on out-of-range parameters.
    """
    args = build_parser().parse_args(argv)
    values = read_config_file(args.config) if args.config else {}
    for key in _OPTIONS:
        v = getattr(args, _dest(key))
        if v is not None:
            values[_dest(key)] = v
    values = {k: v for k, v in values.items() if k in _FIELD_NAMES}
    cfg = ScenarioConfig(scenario=args.scenario)
    return replace(cfg, **values).resolved()


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return float(f"{value:.12g}")
    return value


def render(rows: list[dict], config: ScenarioConfig) -> str:
    columns = COLUMNS[config.scenario]
    if config.format == "json":
        payload = [{c: _json_value(row[c]) for c in columns} for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_value(row[c]) for c in columns])
    return buf.getvalue()


def write_output(rows: list[dict], config: ScenarioConfig) -> None:
    text = render(rows, config)
    if config.out in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {config.out}: {exc}") from exc


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(format="amendgauss: %(message)s")
    try:
        config = parse_config(argv)
        rows = run_scenario(config)
        write_output(rows, config)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except DomainError as exc:
        log.error("%s", exc)
        return EXIT_DOMAIN
    except OutputError as exc:
        log.error("%s", exc)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
