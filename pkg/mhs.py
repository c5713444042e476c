#!/usr/bin/env python
# coding: utf-8

"""
Finite nested sums: H*, script-H, hat-H, bar-H, their q = 1 counterparts,
and the auxiliaries A_{n,k} and V_k(2s).

Nested sums are evaluated through cumulative tables, one level per suffix of
the exponent list, grown incrementally as larger n are requested and memoized
per (family, exponents, q):

    level_i[j] = sum_{k <= j} f_i(k) * level_{i+1}[k]        (non-strict, H*)
    level_i[j] = sum_{k <= j} f_i(k) * level_{i+1}[k - 1]    (strict)

with level_m identically 1.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from qkernel import (
    InvalidParameterError,
    as_q_point,
    binomial_weight,
    binomial_weight_classical,
    check_int,
    memo_get,
    memo_put,
    q_int,
)
from strings import Ending, IndexString


class SumFamily(Enum):
    H_STAR = "HStar"
    SCRIPT_H = "ScriptH"
    HAT_H = "HatH"
    BAR_H = "BarH"
    H_STAR_CLASSICAL = "HStarClassical"
    HAT_H_CLASSICAL = "HatHClassical"
    BAR_H_CLASSICAL = "BarHClassical"


_PAIRED_FAMILIES = {SumFamily.SCRIPT_H, SumFamily.HAT_H, SumFamily.BAR_H}
_CLASSICAL_FAMILIES = {SumFamily.H_STAR_CLASSICAL, SumFamily.HAT_H_CLASSICAL, SumFamily.BAR_H_CLASSICAL}


@dataclass(frozen=True)
class SumSpec:
    family: SumFamily
    n: int
    s: tuple = ()
    t: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "t", tuple(self.t))
        check_int("n", self.n, 0)
        if self.family in _PAIRED_FAMILIES:
            if len(self.s) != len(self.t):
                raise InvalidParameterError(
                    f"{self.family.value} needs len(s) == len(t), got {len(self.s)} and {len(self.t)}"
                )
        elif self.t:
            raise InvalidParameterError(f"{self.family.value} takes no t exponents")


@dataclass(frozen=True)
class AuxContext:
    """A_{n,k} together with V_{k-1}(2s), the pair each term of the EQ22 sums needs."""

    A: Fraction
    V: Fraction


def _exponents(name, values, minimum=None):
    values = tuple(values)
    for value in values:
        check_int(name, value, minimum)
    return values


def _nested_levels(key, factors, n, strict):
    m = len(factors)
    levels = memo_get(key)
    if levels is None:
        levels = tuple((Fraction(0),) for _ in range(m)) + ((Fraction(1),),)
    size = len(levels[0])
    if size > n:
        return levels

    levels = [list(level) for level in levels]
    for j in range(size, n + 1):
        levels[m].append(Fraction(1))
        for i in range(m - 1, -1, -1):
            inner = levels[i + 1][j - 1] if strict else levels[i + 1][j]
            levels[i].append(levels[i][j - 1] + factors[i](j) * inner)
    return memo_put(key, tuple(tuple(level) for level in levels))


# === FACTORS ===
def _star_factor(exponent, q):
    return lambda k: q ** k / q_int(k, q) ** exponent


def _script_factor(s, t, q):
    return lambda k: q ** ((t - 1) * k) * (1 + q ** k) / q_int(k, q) ** s


def _alternating_factor(s, t, q):
    base = _script_factor(s, t, q)
    return lambda k: (-1) ** k * q ** (-(k * (k - 1) // 2)) * base(k)


def _classical_factor(exponent):
    return lambda k: Fraction(1, k ** exponent)


def _signed_classical_factor(exponent):
    return lambda k: Fraction((-1) ** (k - 1), k ** exponent)


# === q-FAMILIES ===
def h_star(n, s, q):
    """H*_n[s] = sum over n >= k_1 >= ... >= k_m >= 1 of prod q^{k_i}/[k_i]^{s_i}."""
    check_int("n", n, 0)
    s = _exponents("s", s, 1)
    q = as_q_point(q)
    factors = [_star_factor(e, q) for e in s]
    return _nested_levels(("h_star", s, q), factors, n, strict=False)[0][n]


def script_h(n, s, t, q):
    """Strict sum H_n[s; t]; any integer entries, 0 when n < m, 1 when m = 0."""
    check_int("n", n, 0)
    s = _exponents("s", s)
    t = _exponents("t", t)
    if len(s) != len(t):
        raise InvalidParameterError(f"script_h needs len(s) == len(t), got {len(s)} and {len(t)}")
    q = as_q_point(q)
    return _script_levels(s, t, q, n)[0][n]


def _script_levels(s, t, q, n):
    factors = [_script_factor(a, b, q) for a, b in zip(s, t)]
    return _nested_levels(("script_h", s, t, q), factors, n, strict=True)


def alternating_tail(n, s, t, q):
    """
    Strict sum of prod (1+q^{k_j}) q^{(t_j-1)k_j}/[k_j]^{s_j} with the extra
    factor (-1)^{k_m} q^{-k_m(k_m-1)/2} on the last index.
    """
    check_int("n", n, 0)
    s = _exponents("s", s)
    t = _exponents("t", t)
    if len(s) != len(t):
        raise InvalidParameterError(f"alternating_tail needs len(s) == len(t), got {len(s)} and {len(t)}")
    q = as_q_point(q)
    return _alternating_levels(s, t, q, n)[0][n]


def _alternating_levels(s, t, q, n):
    factors = [_script_factor(a, b, q) for a, b in zip(s[:-1], t[:-1])]
    if s:
        factors.append(_alternating_factor(s[-1], t[-1], q))
    return _nested_levels(("alternating_tail", s, t, q), factors, n, strict=True)


def _paired_args(s, t, q):
    s = _exponents("s", s)
    t = _exponents("t", t)
    if len(s) != len(t):
        raise InvalidParameterError(f"len(s) must equal len(t), got {len(s)} and {len(t)}")
    return s, t, as_q_point(q)


def hat_h(n, s, t, q):
    """Hat-H_n[s; t] = sum_k B(n,k) q^{k^2+(t_1-1)k}(1+q^k)/[k]^{s_1} H_{k-1}[s_2..; t_2..]."""
    check_int("n", n, 0)
    s, t, q = _paired_args(s, t, q)
    m = len(s)
    if m == 0:
        return Fraction(1)
    if n < m:
        return Fraction(0)

    head = _script_factor(s[0], t[0], q)
    tail = _script_levels(s[1:], t[1:], q, n - 1)[0]
    total = Fraction(0)
    for k in range(1, n + 1):
        if tail[k - 1]:
            total += binomial_weight(n, k, q) * q ** (k * k) * head(k) * tail[k - 1]
    return total


def bar_h(n, s, t, q):
    """Bar-H_n[s, t] with sign (-1)^{k_m} and weight B(n, k_1) q^{k_1^2 - k_m(k_m-1)/2}."""
    check_int("n", n, 0)
    s, t, q = _paired_args(s, t, q)
    m = len(s)
    if m == 0:
        return Fraction(1)
    if n < m:
        return Fraction(0)

    if m == 1:
        head = _alternating_factor(s[0], t[0], q)
        tail = (Fraction(1),) * n
    else:
        head = _script_factor(s[0], t[0], q)
        tail = _alternating_levels(s[1:], t[1:], q, n - 1)[0]
    total = Fraction(0)
    for k in range(1, n + 1):
        if tail[k - 1]:
            total += binomial_weight(n, k, q) * q ** (k * k) * head(k) * tail[k - 1]
    return total


# === TWO-ONE RECURRENCE ===
def _is_empty(exponents, ending):
    if ending is Ending.ONE:
        return not exponents
    return exponents == (0,)


def _recurrence(n, exponents, ending, q, local):
    if _is_empty(exponents, ending):
        return Fraction(1)
    if n == 0:
        return Fraction(0)

    key = ("h_star_recurrence", n, exponents, ending, q)
    if key in local:
        return local[key]
    cached = memo_get(key)
    if cached is not None:
        local[key] = cached
        return cached

    w = q ** n / q_int(n, q) ** 2
    first, rest = exponents[0], exponents[1:]
    value = Fraction(0)
    if ending is Ending.TWO and not rest:
        # final run {2}^first: j leading indices equal n
        for j in range(first + 1):
            value += w ** j * _recurrence(n - 1, (first - j,), ending, q, local)
    else:
        for l in range(first + 1):
            value += w ** (first - l) * _recurrence(n - 1, (l,) + rest, ending, q, local)
        value += w ** first * q ** n / q_int(n, q) * _recurrence(n, rest, ending, q, local)

    local[key] = value
    return memo_put(key, value)


def h_star_recurrence(n, s, q):
    """
    H*_n on a two-one string through the expansion by the leading run:

        H*_n[{2}^{s1},1,R] = sum_l (q^n/[n]^2)^{s1-l} H*_{n-1}[{2}^l,1,R]
                             + q^{(s1+1)n}/[n]^{2 s1 + 1} H*_n[R]
    """
    check_int("n", n, 0)
    if not isinstance(s, IndexString):
        raise InvalidParameterError(f"h_star_recurrence needs an IndexString, got {s!r}")
    q = as_q_point(q)
    return _recurrence(n, s.exponents, s.ending, q, {})


# === q = 1 FAMILIES ===
def classical_sums(family, n, p):
    check_int("n", n, 0)
    p = _exponents("p", p, 1)
    family = SumFamily(family)
    r = len(p)

    if family is SumFamily.H_STAR_CLASSICAL:
        factors = [_classical_factor(e) for e in p]
        return _nested_levels(("h_star_classical", p), factors, n, strict=False)[0][n]
    if family not in _CLASSICAL_FAMILIES:
        raise InvalidParameterError(f"{family.value} is not a classical family")

    if r == 0:
        return Fraction(1)
    if n < r:
        return Fraction(0)
    if family is SumFamily.HAT_H_CLASSICAL:
        head = _classical_factor(p[0])
        factors = [_classical_factor(e) for e in p[1:]]
        tail = _nested_levels(("script_h_classical", p[1:]), factors, n - 1, strict=True)[0]
    elif r == 1:
        head = _signed_classical_factor(p[0])
        tail = (Fraction(1),) * n
    else:
        head = _classical_factor(p[0])
        factors = [_classical_factor(e) for e in p[1:-1]] + [_signed_classical_factor(p[-1])]
        tail = _nested_levels(("alternating_classical", p[1:]), factors, n - 1, strict=True)[0]

    total = Fraction(0)
    for k in range(1, n + 1):
        if tail[k - 1]:
            total += binomial_weight_classical(n, k) * head(k) * tail[k - 1]
    return total


# === AUXILIARIES ===
def aux_A(n, k, q):
    """A_{n,k} = (1+q^k) B(n,k) q^{k(k-1)/2}, for 1 <= k <= n."""
    check_int("n", n, 1)
    check_int("k", k, 1)
    if k > n:
        raise InvalidParameterError(f"A_(n,k) needs k <= n, got n={n}, k={k}")
    q = as_q_point(q)
    return (1 + q ** k) * binomial_weight(n, k, q) * q ** (k * (k - 1) // 2)


def aux_V(k, s, q):
    """V_k(2s) = sum_{j=1}^k (-1)^j (1+q^j) q^{sj - j(j+1)/2} / [j]^{2s}; V_0 = 0."""
    check_int("k", k, 0)
    check_int("s", s)
    q = as_q_point(q)
    total = Fraction(0)
    for j in range(1, k + 1):
        total += (-1) ** j * (1 + q ** j) * q ** (s * j - j * (j + 1) // 2) / q_int(j, q) ** (2 * s)
    return total


def aux_context(n, k, s, q):
    return AuxContext(A=aux_A(n, k, q), V=aux_V(k - 1, s, q))


# === DISPATCH ===
def evaluate_sum(sum_spec, q=None):
    family = sum_spec.family
    if family in _CLASSICAL_FAMILIES:
        return classical_sums(family, sum_spec.n, sum_spec.s)
    if q is None:
        raise InvalidParameterError(f"{family.value} needs a q point")
    if family is SumFamily.H_STAR:
        return h_star(sum_spec.n, sum_spec.s, q)
    if family is SumFamily.SCRIPT_H:
        return script_h(sum_spec.n, sum_spec.s, sum_spec.t, q)
    if family is SumFamily.HAT_H:
        return hat_h(sum_spec.n, sum_spec.s, sum_spec.t, q)
    return bar_h(sum_spec.n, sum_spec.s, sum_spec.t, q)
