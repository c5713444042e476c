#!/usr/bin/env python
# coding: utf-8

from datetime import datetime, timezone
from fractions import Fraction
import json
import os

import config

UTC = timezone.utc


# === METRICS LOGGER ===
# Usage:
#   log_metric("verify", {"EQ13": {"checks": 80, "failed": 0}})   → merges into a sub-dictionary
#   log_metric("terms_used", 42)                                   → stores single value

metrics = {}

def log_metric(key, value):

    """
    Logs a named metric or sub-metric dictionary to the global `metrics` store for tracking runtime
    stats (checks run per identity, memo hits, series terms) across a CLI or tool-server session.

    Args:
        key (str): Name of the metric (e.g., "verify", "series").
        value (float, int, or dict): Metric value or dictionary of sub-metrics to log.

    Behavior:
        - If `value` is a dictionary and the key already exists with a dict value, it merges (updates) keys.
        - Otherwise, the key is overwritten with the new value.

    Example:
        log_metric("verify", {"EQ11": {"checks": 924, "failed": 0, "elapsed_sec": 1.3}})
        log_metric("series", {"zhat_q": 14})
    """

    global metrics
    if isinstance(value, dict) and isinstance(metrics.get(key), dict):
        metrics[key].update(value)
    else:
        metrics[key] = value


# === RUN LOG ===
def log_run(command, status, **fields):
    """Append one run record to the JSONL file named by QZETA_RUN_LOG (no-op when unset)."""
    path = config.get_run_log_path()
    if not path:
        return None
    record = {
        "timestamp": datetime.now(UTC).isoformat(),
        "command": command,
        "status": status,
    }
    record.update(fields)

    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "a") as f:
        f.write(json.dumps(record, default=str) + "\n")
    return record


# === RATIONALS ===
def parse_rational(text, name="value"):
    """
    Parse an exact rational from "num/den", an integer, or a terminating decimal ("0.7", "1e-30").

    Raises ValueError for anything else; floats are never produced along the way.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"{name} must be given as text, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{name} is not an exact rational: {text!r}") from exc


def parse_rational_list(text, name="value"):
    if isinstance(text, (list, tuple)):
        return [parse_rational(item, name) for item in text]
    return [parse_rational(item, name) for item in str(text).split(",") if item.strip()]


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_decimal(value, digits):
    """
    Render an exact rational with ``digits`` digits after the point, rounding half to even.

    Rendering is display-only; no rendered string is ever parsed back into a computation.
    """
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    scaled, remainder = divmod(abs(value.numerator) * 10 ** digits, value.denominator)
    twice = 2 * remainder
    if twice > value.denominator or (twice == value.denominator and scaled % 2 == 1):
        scaled += 1
    if scaled == 0:
        sign = ""
    text = str(scaled).rjust(digits + 1, "0")
    if digits == 0:
        return f"{sign}{text}"
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def rational_json(value, digits):
    return {"exact": format_rational(value), "decimal": render_decimal(value, digits)}
