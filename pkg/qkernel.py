#!/usr/bin/env python
# coding: utf-8

"""
Exact q-combinatorial primitives evaluated at rational points 0 < q < 1.

Every value is a ``fractions.Fraction`` in canonical form; nothing in this
module rounds. Results that grids reuse heavily (q-integers, Gaussian binomial
rows, binomial weights) go through a process-wide memo table keyed by
(primitive id, integer arguments, q).
"""

import threading
from fractions import Fraction
from math import comb

import config


class InvalidParameterError(ValueError):
    """Raised when an argument falls outside an operation's domain."""


# === MEMO TABLE ===
# Usage:
#   memo_get(("q_int", 3, q))            → cached Fraction or None
#   memo_put(("q_int", 3, q), value)     → stores and returns value

_memo = {}
_memo_lock = threading.Lock()
_memo_stats = {"hits": 0, "misses": 0}
_memo_override = None


def set_memo_enabled(flag):
    """Force caching on/off for this process; ``None`` defers to QZETA_MEMO."""
    global _memo_override
    _memo_override = None if flag is None else bool(flag)


def memo_enabled():
    if _memo_override is not None:
        return _memo_override
    return config.get_memo_enabled()


def clear_memo():
    with _memo_lock:
        _memo.clear()
        _memo_stats["hits"] = 0
        _memo_stats["misses"] = 0


def memo_stats():
    with _memo_lock:
        return {**_memo_stats, "entries": len(_memo)}


def memo_get(key):
    if not memo_enabled():
        return None
    with _memo_lock:
        value = _memo.get(key)
        _memo_stats["misses" if value is None else "hits"] += 1
    return value


def memo_put(key, value):
    if memo_enabled():
        with _memo_lock:
            _memo[key] = value
    return value


# === ARGUMENT CHECKS ===
def as_q_point(value):
    """
    Convert ``value`` to an exact q with 0 < q < 1.

    Accepts Fraction, int, or strings such as "2/3" and "0.7" (parsed exactly).
    Floats are refused so that no binary rounding leaks into exact arithmetic.
    """
    if type(value) is Fraction and 0 < value < 1:
        return value
    if isinstance(value, (float, bool)):
        raise InvalidParameterError(f"q must be an exact rational, got float-like {value!r}")
    try:
        q = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidParameterError(f"q must be an exact rational, got {value!r}") from exc
    if not 0 < q < 1:
        raise InvalidParameterError(f"q must satisfy 0 < q < 1, got {q}")
    return q


def check_int(name, value, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InvalidParameterError(f"{name} must be >= {minimum}, got {value}")
    return value


# === PRIMITIVES ===
def q_int(n, q):
    """[n]_q = 1 + q + ... + q^(n-1) = (1 - q^n)/(1 - q)."""
    check_int("n", n, 0)
    q = as_q_point(q)
    key = ("q_int", n, q)
    cached = memo_get(key)
    if cached is not None:
        return cached
    return memo_put(key, (1 - q ** n) / (1 - q))


def q_pochhammer(a, n, q):
    """(a; q)_n = prod_{k=0}^{n-1} (1 - a q^k); (a; q)_0 = 1."""
    check_int("n", n, 0)
    q = as_q_point(q)
    a = Fraction(a)
    key = ("q_pochhammer", a, n, q)
    cached = memo_get(key)
    if cached is not None:
        return cached
    value = Fraction(1)
    for k in range(n):
        value *= 1 - a * q ** k
    return memo_put(key, value)


def _gauss_rows(n, q):
    # rows[i][m] = gauss_binomial(i, m), grown with the Pascal recurrence
    key = ("gauss_rows", q)
    rows = memo_get(key) or ((Fraction(1),),)
    if len(rows) > n:
        return rows
    rows = list(rows)
    for size in range(len(rows), n + 1):
        prev = rows[-1]
        row = [Fraction(1)]
        for m in range(1, size):
            row.append(prev[m - 1] + q ** m * prev[m])
        row.append(Fraction(1))
        rows.append(tuple(row))
    return memo_put(key, tuple(rows))


def gauss_binomial(n, m, q):
    """Gaussian binomial [n choose m]_q; 0 unless 0 <= m <= n."""
    check_int("n", n)
    check_int("m", m)
    q = as_q_point(q)
    if m < 0 or n < 0 or m > n:
        return Fraction(0)
    return _gauss_rows(n, q)[n][m]


def binomial_weight(n, k, q):
    """B(n, k) = [n choose k]_q / [n+k choose k]_q for 0 <= k <= n."""
    check_int("n", n, 0)
    check_int("k", k, 0)
    if k > n:
        raise InvalidParameterError(f"binomial weight needs k <= n, got n={n}, k={k}")
    q = as_q_point(q)
    key = ("binomial_weight", n, k, q)
    cached = memo_get(key)
    if cached is not None:
        return cached
    return memo_put(key, gauss_binomial(n, k, q) / gauss_binomial(n + k, k, q))


def binomial_weight_classical(n, k):
    """The q = 1 weight binom(n, k)/binom(n+k, k)."""
    check_int("n", n, 0)
    check_int("k", k, 0)
    if k > n:
        raise InvalidParameterError(f"binomial weight needs k <= n, got n={n}, k={k}")
    return Fraction(comb(n, k), comb(n + k, k))
