#!/usr/bin/env python
# coding: utf-8

"""
Infinite q-zeta star series with proven truncation bounds.

Every evaluator adds one outer term at a time and stops at the first K whose
tail bound is <= eps, returning the exact partial sum and that bound. The
bounds are derived in docs/TAIL_BOUNDS.md. Nothing here estimates a tail from
the size of the last term.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import config
from mhs import alternating_tail, h_star, script_h
from qkernel import InvalidParameterError, as_q_point, check_int, q_int
from strings import Ending, IndexString, enumerate_compositions
from utils import format_rational, log_metric, parse_rational, render_decimal


class TermCapExceededError(RuntimeError):
    """Raised when the term cap is reached before the tail bound drops below eps."""

    def __init__(self, label, cap, tail_bound=None):
        self.label = label
        self.cap = cap
        self.tail_bound = tail_bound
        detail = "" if tail_bound is None else f" (last tail bound {render_decimal(tail_bound, 6)})"
        super().__init__(f"{label}: term cap {cap} reached before the requested eps{detail}")


class UnsupportedTargetError(ValueError):
    """Raised when no classical single-zeta target is known for a string."""


# === VALUES ===
@dataclass(frozen=True)
class BoundedValue:
    partial_sum: Fraction
    tail_bound: Fraction
    terms_used: int

    def __add__(self, other):
        if not isinstance(other, BoundedValue):
            return NotImplemented
        return BoundedValue(
            self.partial_sum + other.partial_sum,
            self.tail_bound + other.tail_bound,
            max(self.terms_used, other.terms_used),
        )

    def scaled(self, factor):
        factor = Fraction(factor)
        return BoundedValue(self.partial_sum * factor, self.tail_bound * abs(factor), self.terms_used)

    def to_json(self, digits=config.DEFAULT_DIGITS):
        return {
            "exact_partial": format_rational(self.partial_sum),
            "decimal": render_decimal(self.partial_sum, digits),
            "tail_bound_decimal": render_decimal(self.tail_bound, digits),
            "terms": self.terms_used,
        }


_ONE = BoundedValue(Fraction(1), Fraction(0), 1)


@dataclass(frozen=True)
class ProbeRow:
    q: Fraction
    value: BoundedValue
    target: BoundedValue

    @property
    def distance(self):
        return abs(self.value.partial_sum - self.target.partial_sum)

    @property
    def uncertainty(self):
        return self.value.tail_bound + self.target.tail_bound

    def to_json(self, digits=config.DEFAULT_DIGITS):
        return {
            "q": format_rational(self.q),
            "value": self.value.to_json(digits),
            "target": self.target.to_json(digits),
            "distance_decimal": render_decimal(self.distance, digits),
            "uncertainty_decimal": render_decimal(self.uncertainty, digits),
        }


# === ARGUMENTS ===
def _eps(eps):
    try:
        value = parse_rational(eps, "eps")
    except ValueError as exc:
        raise InvalidParameterError(str(exc)) from exc
    if value <= 0:
        raise InvalidParameterError(f"eps must be > 0, got {value}")
    return value


def _term_cap():
    try:
        return config.get_term_cap()
    except ValueError as exc:
        raise InvalidParameterError(str(exc)) from exc


def _entries(name, values, minimum):
    values = tuple(values)
    for value in values:
        check_int(name, value, minimum)
    return values


def _paired(p, p_tilde, t_minimum):
    p = _entries("p", p, 0)
    p_tilde = _entries("p_tilde", p_tilde, t_minimum)
    if len(p) != len(p_tilde):
        raise InvalidParameterError(f"len(p) must equal len(p_tilde), got {len(p)} and {len(p_tilde)}")
    return p, p_tilde


def _rounding_unit(precision):
    check_int("precision", precision, 1)
    return Fraction(1, 10 ** precision)


# === TRUNCATION LOOP ===
def _sum_with_bound(label, outer, bound, eps, terms=None, precision=None):
    """
    Add outer(1), outer(2), ... until bound(K) (None while no proven bound
    applies) is <= eps. With ``precision`` each outer term is rounded to the
    nearest multiple of 10^-precision and K * 10^-precision / 2 joins the bound.
    """
    eps = _eps(eps)
    cap = _term_cap()
    unit = None if precision is None else _rounding_unit(precision)
    if terms is not None:
        check_int("terms", terms, 1)
        if terms > cap:
            raise TermCapExceededError(label, cap)

    partial = Fraction(0)
    tail = None
    for K in range(1, cap + 1):
        term = outer(K)
        if unit is not None:
            term = round(term / unit) * unit
        partial += term

        if terms is not None and K < terms:
            continue
        tail = bound(K)
        if tail is not None and unit is not None:
            tail += K * unit / 2
        if terms is not None:
            if tail is None:
                raise InvalidParameterError(f"{label}: no proven tail bound after {K} terms; use more terms")
            break
        if tail is not None and tail <= eps:
            break
    else:
        raise TermCapExceededError(label, cap, tail)

    log_metric("series", {label: K})
    return BoundedValue(partial, tail, K)


# === EVALUATORS ===
def zeta_star_q_direct(s, q, eps, terms=None, precision=None):
    """zeta*_q[s] as the limit of H*_K[s]; the outer term is q^K/[K]^{s_1} H*_K[s_2, ...]."""
    s = _entries("s", s, 1)
    q = as_q_point(q)
    if not s:
        _eps(eps)
        return _ONE
    first, rest = s[0], s[1:]
    inner_max = (q / (1 - q)) ** len(rest)

    def outer(K):
        return q ** K / q_int(K, q) ** first * h_star(K, rest, q)

    def bound(K):
        return inner_max * q ** (K + 1) / ((1 - q) * q_int(K + 1, q) ** first)

    return _sum_with_bound("zeta_star_q", outer, bound, eps, terms, precision)


def zhat_q(p, p_tilde, q, eps, terms=None, precision=None):
    """Sum over k of q^{k^2+(t_1-1)k}(1+q^k)/[k]^{p_1} H_{k-1}[p_2, ...; t_2, ...]."""
    p, p_tilde = _paired(p, p_tilde, 1)
    q = as_q_point(q)
    if not p:
        _eps(eps)
        return _ONE
    r = len(p)
    p1, t1 = p[0], p_tilde[0]

    def outer(K):
        head = q ** (K * K + (t1 - 1) * K) * (1 + q ** K) / q_int(K, q) ** p1
        return head * script_h(K - 1, p[1:], p_tilde[1:], q)

    def bound(K):
        if K + 1 < r:
            return None
        ratio = Fraction(K + 1, K + 2 - r) * q ** (2 * K + 2 + t1)
        if ratio >= 1:
            return None
        k = K + 1
        first = 2 ** r * math.comb(k - 1, r - 1) * q ** (k * k + (t1 - 1) * k) / q_int(k, q) ** p1
        return first / (1 - ratio)

    return _sum_with_bound("zhat_q", outer, bound, eps, terms, precision)


def zbar_q(p, p_tilde, q, eps, terms=None, precision=None):
    """Sum over k_1 > ... > k_r of (-1)^{k_r - 1} q^{k_1^2 - k_r(k_r-1)/2} prod (1+q^k)q^{(t-1)k}/[k]^p."""
    p, p_tilde = _paired(p, p_tilde, 0)
    q = as_q_point(q)
    if not p:
        _eps(eps)
        return _ONE
    r = len(p)
    p1, t1 = p[0], p_tilde[0]
    zeros = sum(1 for t in p_tilde[1:] if t == 0)

    def outer(K):
        head = q ** (K * K + (t1 - 1) * K) * (1 + q ** K) / q_int(K, q) ** p1
        if r == 1:
            return (-1) ** (K - 1) * q ** (-(K * (K - 1) // 2)) * head
        return -head * alternating_tail(K - 1, p[1:], p_tilde[1:], q)

    def exponent(k):
        return k * k - (k - r + 1) * (k - r) // 2 + (t1 - 1) * k - zeros * (k - 1)

    def bound(K):
        if K + 1 < r:
            return None
        ratio = Fraction(K + 1, K + 2 - r) * q ** (K + r + t1 - zeros)
        if ratio >= 1:
            return None
        k = K + 1
        first = 2 ** r * math.comb(k - 1, r - 1) * q ** exponent(k) / q_int(k, q) ** p1
        return first / (1 - ratio)

    return _sum_with_bound("zbar_q", outer, bound, eps, terms, precision)


def two_one_eval(s, q, eps, terms=None, precision=None):
    """
    zeta*_q of a two-one string as the sum over its composition strings of
    zhat_q (string ends with 1) or zbar_q (ends with 2), each given eps/2^(B-1).
    """
    eps = _eps(eps)
    q = as_q_point(q)
    if s is None:
        return _ONE
    if not isinstance(s, IndexString):
        raise InvalidParameterError(f"two_one_eval needs an IndexString, got {s!r}")
    compositions = enumerate_compositions(s)
    budget = eps / len(compositions)
    evaluate = zhat_q if s.ending is Ending.ONE else zbar_q

    total = None
    for comp in compositions:
        value = evaluate(comp.p, comp.p_tilde, q, budget, terms, precision)
        total = value if total is None else total + value
    return total


def zeta_star_twos(s, q, eps, terms=None, precision=None):
    """zeta*_q({2}^s) = zbar_q[2s; s]."""
    check_int("s", s, 1)
    return zbar_q((2 * s,), (s,), q, eps, terms, precision)


def zeta_star_twos_one(s, q, eps, terms=None, precision=None):
    """zeta*_q({2}^s, 1) = zhat_q[2s+1; s+1]."""
    check_int("s", s, 0)
    return zhat_q((2 * s + 1,), (s + 1,), q, eps, terms, precision)


def euler_q_analogue(q, eps, terms=None, precision=None):
    """zeta*_q[2, 1] = sum_k (1+q^k) q^{k(k+1)}/[k]^3."""
    return zhat_q((3,), (2,), q, eps, terms, precision)


# === q = 1 TARGETS ===
def _fixed_point_sum(K, w, scale):
    total = 0
    for k in range(1, K + 1):
        total += scale // k ** w
    return total


def classical_zeta(w, eps):
    """
    zeta(w) for integer w >= 2 from the first K terms in exact fixed point plus
    the integral-test enclosure of the tail, K doubled until it is tight enough.
    """
    check_int("w", w, 2)
    eps = _eps(eps)
    cap = config.CLASSICAL_TERM_CAP
    K = 16
    while True:
        lower = Fraction(1, (w - 1) * K ** (w - 1)) - Fraction(1, 2 * K ** w)
        upper = Fraction(2 ** (w - 1), (w - 1) * (2 * K + 1) ** (w - 1))
        gap = upper - lower
        if gap <= eps:
            break
        if 2 * K > cap:
            raise TermCapExceededError("classical_zeta", cap, gap / 2)
        K *= 2

    scale = math.ceil(4 * K / eps)
    # floor rounding loses at most K/scale in total
    head = Fraction(_fixed_point_sum(K, w, scale), scale)
    slack = Fraction(K, scale)
    value = head + (lower + upper + slack) / 2
    log_metric("series", {"classical_zeta": K})
    return BoundedValue(value, (gap + slack) / 2, K)


def classical_target(s, eps=None):
    """q -> 1 value of zeta*_q on s, for the strings with a known single-zeta form."""
    eps = _eps(config.CLASSICAL_TARGET_EPS if eps is None else eps)
    if not isinstance(s, IndexString):
        raise UnsupportedTargetError(f"No classical target for {s!r}")
    if s.ending is Ending.ONE and s.ones == 1 and s.exponents[0] >= 1:
        # zeta*({2}^a, 1) = 2 zeta(2a+1)
        return classical_zeta(2 * s.exponents[0] + 1, eps / 2).scaled(2)
    if s.ending is Ending.TWO and s.ones == 0:
        c = s.exponents[0]
        # zeta*({2}^c) = 2 (1 - 2^{1-2c}) zeta(2c)
        return classical_zeta(2 * c, eps / 2).scaled(2 * (1 - Fraction(1, 2 ** (2 * c - 1))))
    raise UnsupportedTargetError(
        f"No classical single-zeta target for '{s.to_text()}'; supported: {{2}}^a,1 with a >= 1 and {{2}}^c"
    )


def _precision_for(eps):
    # rounding error stays a millionth of eps for up to a million terms
    precision = 1
    while Fraction(1, 10 ** precision) > eps / 10 ** 12:
        precision += 1
    return precision


def limit_probe(s, q_list=None, eps=None, target_eps=None, precision=None):
    """Evaluate ``s`` at each q (ascending towards 1) and measure the distance to its classical value."""
    eps = _eps(config.LIMIT_EPS if eps is None else eps)
    target = classical_target(s, target_eps)
    q_list = config.LIMIT_Q_POINTS if q_list is None else q_list
    precision = _precision_for(eps) if precision is None else precision

    rows = []
    for q in q_list:
        q = as_q_point(q)
        value = two_one_eval(s, q, eps, precision=precision)
        rows.append(ProbeRow(q, value, target))
    return rows
