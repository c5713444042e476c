#!/usr/bin/env python
# coding: utf-8

"""
Exact verification of the finite identities over parameter grids.

Every identity id maps to one (LHS, RHS) evaluator pair. A check passes only
when both sides are the same canonical Fraction; there is no tolerance
anywhere in this module. Reports keep results in grid order (q innermost)
whether or not grid points were evaluated on a thread pool.

The normalized forms of the collapsed-ratio displays are re-derived by
``validate_reconstructions`` through brute-force code that shares nothing
with the library but ``Fraction``.
"""

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import config
from mhs import SumFamily, aux_A, aux_context, bar_h, classical_sums, h_star, h_star_recurrence, hat_h
from qkernel import as_q_point, binomial_weight, gauss_binomial, q_int, q_pochhammer
from strings import Ending, enumerate_compositions, index_string, two_one_strings
from utils import format_rational, log_metric, rational_json


class InvalidGridError(ValueError):
    """Raised when grid bounds violate an identity's constraints."""


class ReconstructionError(RuntimeError):
    """Raised when a normalized identity form fails its brute-force check."""

    def __init__(self, report):
        self.report = report
        names = ", ".join(report.failed_identities())
        super().__init__(f"Reconstruction check failed for: {names}")


class IdentityId(Enum):
    EQ11 = "EQ11"
    EQ12 = "EQ12"
    EQ13 = "EQ13"
    EQ14 = "EQ14"
    CERT15 = "CERT15"
    CERT16 = "CERT16"
    CERT17 = "CERT17"
    CERT19 = "CERT19"
    EQ20 = "EQ20"
    EQ21 = "EQ21"
    EQ22 = "EQ22"
    EQ23 = "EQ23"
    EQ26 = "EQ26"
    EQ32 = "EQ32"
    EQ33 = "EQ33"
    EQ34 = "EQ34"


CERTIFICATE_IDS = (IdentityId.CERT15, IdentityId.CERT16, IdentityId.CERT17, IdentityId.CERT19)
STRING_IDS = (IdentityId.EQ26, IdentityId.EQ32, IdentityId.EQ33, IdentityId.EQ34)


# === REPORTS ===
@dataclass
class CheckResult:
    identity: str
    params: dict
    q: Fraction | None
    lhs: Fraction
    rhs: Fraction
    passed: bool
    extra: dict = field(default_factory=dict)
    kind: str | None = None

    def to_json(self, digits=config.REPORT_DIGITS):
        payload = {
            "identity": self.identity,
            "params": self.params,
            "q": "1" if self.q is None else format_rational(self.q),
            "pass": self.passed,
            "lhs": rational_json(self.lhs, digits),
            "rhs": rational_json(self.rhs, digits),
        }
        for name, value in self.extra.items():
            payload[name] = rational_json(value, digits)
        if self.kind is not None:
            payload["kind"] = self.kind
        return payload


@dataclass
class VerificationReport:
    identity: str
    grid: list
    q_points: list
    results: list
    elapsed: float = 0.0

    @property
    def witnesses(self):
        return [result for result in self.results if not result.passed]

    @property
    def passed(self):
        return all(result.passed for result in self.results)

    def failed_identities(self):
        names = []
        for result in self.witnesses:
            if result.identity not in names:
                names.append(result.identity)
        return names

    def summary(self):
        failed = len(self.witnesses)
        return {
            "identity": self.identity,
            "checks": len(self.results),
            "passed": len(self.results) - failed,
            "failed": failed,
            "elapsed_sec": round(self.elapsed, 3),
        }


# === CERTIFICATES ===
@dataclass(frozen=True)
class CertificatePair:
    id: IdentityId
    F: Callable
    G: Callable
    relation: Callable


def _weight(n, k, q):
    # B(n, k) read as a ratio of Gaussian binomials, hence 0 for k > n
    return gauss_binomial(n, k, q) / gauss_binomial(n + k, k, q)


def _cert15_F(n, k, q):
    return (1 + q ** k) * _weight(n, k, q) * (-1) ** (k - 1) * q ** (k * (k - 1) // 2)


def _cert15_G(n, k, q):
    return (q ** (n + k) - 1) / (q ** k + 1) * _cert15_F(n, k, q)


def _cert15_relation(n, k, q):
    return (1 - q ** n) * _cert15_F(n, k, q), _cert15_G(n, k + 1, q) - _cert15_G(n, k, q)


def _cert16_F(n, k, q):
    return _weight(n, k, q) * (1 - q ** (2 * k)) * q ** (k * (k - 1))


def _cert16_G(n, k, q):
    return (1 - q ** (n + k)) / (1 - q ** (2 * k)) * _cert16_F(n, k, q)


def _cert16_relation(n, k, q):
    return _cert16_F(n, k, q), _cert16_G(n, k, q) - _cert16_G(n, k + 1, q)


def _cert17_F(m, k, q):
    return _weight(m, k, q) * (1 + q ** k) / (1 - q ** k) * q ** (k * k)


def _cert17_G(m, k, q):
    # q^{m-k+1}/(1+q^k) * (1-q^k)/(1-q^{m-k+1}) * F(m,k) with the 0/0 at k = m+1 cancelled
    if k > m + 1:
        return Fraction(0)
    return (
        q ** (m - k + 1 + k * k)
        * q_pochhammer(q, m, q) ** 2
        / (q_pochhammer(q, m - k + 1, q) * q_pochhammer(q, m + k, q))
    )


def _cert17_relation(m, k, q):
    return _cert17_F(m, k, q) - _cert17_F(m + 1, k, q), _cert17_G(m, k + 1, q) - _cert17_G(m, k, q)


def _cert19_F(l, k, q):
    return q ** (k - l) / q_int(k, q) ** 2 * _weight(k, l, q)


def _cert19_G(l, k, q):
    return (1 - q ** (k - l)) * (1 - q ** (k + l)) / q ** (k - l) * _cert19_F(l, k, q)


def _cert19_relation(l, k, q):
    return (1 - q ** l) ** 2 * _cert19_F(l, k, q), _cert19_G(l, k + 1, q) - _cert19_G(l, k, q)


_CERTIFICATES = {
    IdentityId.CERT15: CertificatePair(IdentityId.CERT15, _cert15_F, _cert15_G, _cert15_relation),
    IdentityId.CERT16: CertificatePair(IdentityId.CERT16, _cert16_F, _cert16_G, _cert16_relation),
    IdentityId.CERT17: CertificatePair(IdentityId.CERT17, _cert17_F, _cert17_G, _cert17_relation),
    IdentityId.CERT19: CertificatePair(IdentityId.CERT19, _cert19_F, _cert19_G, _cert19_relation),
}


def certificate(identity):
    identity = _identity_id(identity)
    if identity not in _CERTIFICATES:
        raise InvalidGridError(f"{identity.value} is not a certificate identity")
    return _CERTIFICATES[identity]


# === FINITE SUMS EQ11-EQ14 ===
def _eq11_lhs(p, q):
    n, l = p["n"], p["l"]
    total = Fraction(0)
    for k in range(l + 1, n + 1):
        total += (1 + q ** k) * binomial_weight(n, k, q) * (-1) ** k * q ** (k * (k - 1) // 2)
    return total


def _eq11_rhs(p, q):
    n, l = p["n"], p["l"]
    return (q_int(l, q) - q_int(n, q)) / q_int(n, q) * binomial_weight(n, l, q) * (-1) ** l * q ** (l * (l - 1) // 2)


def _eq12_lhs(p, q):
    n, l = p["n"], p["l"]
    total = Fraction(0)
    for k in range(l + 1, n + 1):
        total += (1 + q ** k) * q_int(k, q) * binomial_weight(n, k, q) * q ** (k * (k - 1))
    return total


def _eq12_rhs(p, q):
    n, l = p["n"], p["l"]
    return (q_int(n, q) - q_int(l, q)) * binomial_weight(n, l, q) * q ** (l * l)


def _eq13_lhs(p, q):
    n = p["n"]
    total = Fraction(0)
    for k in range(1, n + 1):
        total += (1 + q ** k) / q_int(k, q) * binomial_weight(n, k, q) * q ** (k * k)
    return total


def _eq13_rhs(p, q):
    total = Fraction(0)
    for m in range(1, p["n"] + 1):
        total += q ** m / q_int(m, q)
    return total


def _eq14_lhs(p, q):
    n, l = p["n"], p["l"]
    total = Fraction(0)
    for k in range(l, n + 1):
        total += q ** k / q_int(k, q) ** 2 * binomial_weight(k, l, q)
    return total


def _eq14_rhs(p, q):
    n, l = p["n"], p["l"]
    return q ** l / q_int(l, q) ** 2 * binomial_weight(n, l, q)


# === STAR SUMS EQ20-EQ23 ===
def _eq20_lhs(p, q):
    return h_star(p["n"], (2,) * p["a"], q)


def _eq20_rhs(p, q):
    n, a = p["n"], p["a"]
    total = Fraction(0)
    for k in range(1, n + 1):
        total += (
            (1 + q ** k) / q_int(k, q) ** (2 * a) * binomial_weight(n, k, q)
            * (-1) ** (k - 1) * q ** (k * (k - 1) // 2 + a * k)
        )
    return total


def _eq21_lhs(p, q):
    return h_star(p["n"], (2,) * p["a"] + (1,), q)


def _eq21_rhs(p, q):
    n, a = p["n"], p["a"]
    total = Fraction(0)
    for k in range(1, n + 1):
        total += (1 + q ** k) / q_int(k, q) ** (2 * a + 1) * binomial_weight(n, k, q) * q ** (k * k + a * k)
    return total


def _eq22_lhs(p, q):
    return h_star(p["n"], (2,) * p["a"] + (1,) + (2,) * p["b"], q)


def _eq22_rhs(p, q):
    n, a, b = p["n"], p["a"], p["b"]
    total = Fraction(0)
    for k in range(1, n + 1):
        ctx = aux_context(n, k, b, q)
        qk = q_int(k, q)
        total -= (-1) ** k * ctx.A * q ** ((a + b + 1) * k) / qk ** (2 * (a + b) + 1)
        total -= ctx.A * q ** (k * (k + 1) // 2 + a * k) * ctx.V / qk ** (2 * a + 1)
    return total


def _eq23_ratio_power(n, k, l, q):
    return q_int(n, q) ** (2 * l) / q_int(k, q) ** (2 * l) * q ** ((k - n) * l)


def _eq23_lhs(p, q):
    n, k, a = p["n"], p["k"], p["a"]
    previous = aux_A(n - 1, k, q) if k <= n - 1 else Fraction(0)
    total = Fraction(0)
    for l in range(a + 1):
        total += _eq23_ratio_power(n, k, l, q)
    return previous * total


def _eq23_rhs(p, q):
    n, k, a = p["n"], p["k"], p["a"]
    return aux_A(n, k, q) * (
        _eq23_ratio_power(n, k, a, q) - q_int(k, q) ** 2 / q_int(n, q) ** 2 * q ** (n - k)
    )


# === TWO-ONE FORMULAS EQ26, EQ32, EQ33, EQ34 ===
def _string_of(p):
    return index_string(p["exponents"], p["ending"])


def _star_lhs(p, q):
    return h_star(p["n"], _string_of(p).expanded(), q)


def _star_recurrence_lhs(p, q):
    return h_star_recurrence(p["n"], _string_of(p), q)


def _eq26_rhs(p, q):
    total = Fraction(0)
    for comp in enumerate_compositions(_string_of(p)):
        total += hat_h(p["n"], comp.p, comp.p_tilde, q)
    return total


def _eq32_rhs(p, q):
    total = Fraction(0)
    for comp in enumerate_compositions(_string_of(p)):
        total -= bar_h(p["n"], comp.p, comp.p_tilde, q)
    return total


def _classical_lhs(p, q):
    return classical_sums(SumFamily.H_STAR_CLASSICAL, p["n"], _string_of(p).expanded())


def _eq33_rhs(p, q):
    total = Fraction(0)
    for comp in enumerate_compositions(_string_of(p)):
        total += 2 ** comp.length * classical_sums(SumFamily.HAT_H_CLASSICAL, p["n"], comp.p)
    return total


def _eq34_rhs(p, q):
    total = Fraction(0)
    for comp in enumerate_compositions(_string_of(p)):
        total += 2 ** comp.length * classical_sums(SumFamily.BAR_H_CLASSICAL, p["n"], comp.p)
    return total


# === REGISTRY ===
@dataclass(frozen=True)
class _Identity:
    id: IdentityId
    lhs: Callable
    rhs: Callable
    accept: Callable = lambda point: True
    alternate: Callable | None = None
    ending: Ending | None = None

    @property
    def classical(self):
        return self.id in (IdentityId.EQ33, IdentityId.EQ34)


def _cert_side(identity, index):
    relation = _CERTIFICATES[identity].relation
    first, second = config.IDENTITY_GRIDS[identity.value]
    return lambda p, q: relation(p[first], p[second], q)[index]


_REGISTRY = {
    IdentityId.EQ11: _Identity(IdentityId.EQ11, _eq11_lhs, _eq11_rhs, lambda p: p["l"] <= p["n"]),
    IdentityId.EQ12: _Identity(IdentityId.EQ12, _eq12_lhs, _eq12_rhs, lambda p: p["l"] <= p["n"]),
    IdentityId.EQ13: _Identity(IdentityId.EQ13, _eq13_lhs, _eq13_rhs),
    IdentityId.EQ14: _Identity(IdentityId.EQ14, _eq14_lhs, _eq14_rhs, lambda p: p["l"] <= p["n"]),
    IdentityId.EQ20: _Identity(IdentityId.EQ20, _eq20_lhs, _eq20_rhs),
    IdentityId.EQ21: _Identity(IdentityId.EQ21, _eq21_lhs, _eq21_rhs),
    IdentityId.EQ22: _Identity(IdentityId.EQ22, _eq22_lhs, _eq22_rhs),
    IdentityId.EQ23: _Identity(IdentityId.EQ23, _eq23_lhs, _eq23_rhs, lambda p: p["k"] <= p["n"]),
    IdentityId.EQ26: _Identity(IdentityId.EQ26, _star_lhs, _eq26_rhs, alternate=_star_recurrence_lhs, ending=Ending.ONE),
    IdentityId.EQ32: _Identity(IdentityId.EQ32, _star_lhs, _eq32_rhs, alternate=_star_recurrence_lhs, ending=Ending.TWO),
    IdentityId.EQ33: _Identity(IdentityId.EQ33, _classical_lhs, _eq33_rhs, ending=Ending.ONE),
    IdentityId.EQ34: _Identity(IdentityId.EQ34, _classical_lhs, _eq34_rhs, ending=Ending.TWO),
}
for _cert_id in CERTIFICATE_IDS:
    _REGISTRY[_cert_id] = _Identity(_cert_id, _cert_side(_cert_id, 0), _cert_side(_cert_id, 1))


# === GRIDS ===
def _identity_id(identity):
    if isinstance(identity, IdentityId):
        return identity
    try:
        return IdentityId(str(identity).strip().upper())
    except ValueError as exc:
        raise InvalidGridError(f"Unknown identity: {identity!r}") from exc


def resolve_ranges(identity, grid=None):
    """Merge ``<param>_min`` / ``<param>_max`` overrides into the identity's default ranges."""
    identity = _identity_id(identity)
    grid = grid or {}
    ranges = {}
    for name, (minimum, default_lo, default_hi) in config.IDENTITY_GRIDS[identity.value].items():
        lo = grid.get(f"{name}_min", default_lo)
        hi = grid.get(f"{name}_max", default_hi)
        for bound in (lo, hi):
            if isinstance(bound, bool) or not isinstance(bound, int):
                raise InvalidGridError(f"{identity.value}: grid bound for '{name}' must be an integer, got {bound!r}")
        if lo < minimum:
            raise InvalidGridError(f"{identity.value}: '{name}' must be >= {minimum}, got {lo}")
        if hi < lo:
            raise InvalidGridError(f"{identity.value}: empty range for '{name}' ({lo}..{hi})")
        ranges[name] = (lo, hi)
    return ranges


def _string_params(s, n):
    return {"string": s.to_text(), "exponents": list(s.exponents), "ending": s.ending.value, "n": n}


def grid_points(identity, ranges):
    identity = _identity_id(identity)
    entry = _REGISTRY[identity]
    if identity in STRING_IDS:
        n_lo, n_hi = ranges["n"]
        strings = two_one_strings(entry.ending, ranges["m"], ranges["s"])
        return [_string_params(s, n) for s in strings for n in range(n_lo, n_hi + 1)]

    names = list(ranges)
    axes = [range(lo, hi + 1) for lo, hi in ranges.values()]
    points = []
    for values in itertools.product(*axes):
        point = dict(zip(names, values))
        if entry.accept(point):
            points.append(point)
    return points


def _q_list(q_points):
    if q_points is None:
        q_points = config.DEFAULT_Q_POINTS
    points = [as_q_point(q) for q in q_points]
    if not points:
        raise InvalidGridError("q_points must name at least one q")
    return points


# === VERIFY ===
def _check(entry, params, q):
    lhs = entry.lhs(params, q)
    rhs = entry.rhs(params, q)
    passed = lhs == rhs
    extra = {}
    if entry.alternate is not None:
        alternate = entry.alternate(params, q)
        extra["lhs_recurrence"] = alternate
        passed = passed and alternate == lhs
    return CheckResult(entry.id.value, params, q, lhs, rhs, passed, extra)


def _run_checks(entry, points, q_points, workers):
    tasks = [(point, q) for point in points for q in (q_points or [None])]
    workers = workers or config.get_workers()
    start = time.time()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda task: _check(entry, *task), tasks))
    else:
        results = [_check(entry, point, q) for point, q in tasks]
    report = VerificationReport(entry.id.value, points, list(q_points), results, time.time() - start)
    log_metric("verify", {entry.id.value: report.summary()})
    return report


def verify(identity, grid=None, q_points=None, workers=None):
    identity = _identity_id(identity)
    entry = _REGISTRY[identity]
    points = grid_points(identity, resolve_ranges(identity, grid))
    qs = [] if entry.classical else _q_list(q_points)
    return _run_checks(entry, points, qs, workers)


def verify_certificates(identity, ranges=None, q_points=None, workers=None):
    identity = _identity_id(identity)
    if identity not in CERTIFICATE_IDS:
        raise InvalidGridError(f"{identity.value} is not a certificate identity")
    return verify(identity, ranges, q_points, workers)


def _n_bounds(n_range):
    if isinstance(n_range, range):
        return n_range.start, n_range.stop - 1
    lo, hi = n_range
    return lo, hi


def verify_two_one_finite(s, n_range, q_points=None, workers=None):
    identity = IdentityId.EQ26 if s.ending is Ending.ONE else IdentityId.EQ32
    lo, hi = _n_bounds(n_range)
    if lo < 1 or hi < lo:
        raise InvalidGridError(f"{identity.value}: n range must satisfy 1 <= lo <= hi, got {lo}..{hi}")
    points = [_string_params(s, n) for n in range(lo, hi + 1)]
    return _run_checks(_REGISTRY[identity], points, _q_list(q_points), workers)


def verify_classical(identity, s, n_range, workers=None):
    identity = _identity_id(identity)
    if identity not in (IdentityId.EQ33, IdentityId.EQ34):
        raise InvalidGridError(f"{identity.value} is not a classical identity")
    entry = _REGISTRY[identity]
    if s.ending is not entry.ending:
        raise InvalidGridError(f"{identity.value} needs a string ending with {entry.ending.value}")
    lo, hi = _n_bounds(n_range)
    if lo < 1 or hi < lo:
        raise InvalidGridError(f"{identity.value}: n range must satisfy 1 <= lo <= hi, got {lo}..{hi}")
    points = [_string_params(s, n) for n in range(lo, hi + 1)]
    return _run_checks(entry, points, [], workers)


# === RECONSTRUCTION GATE ===
# Independent brute force: own q-integers, Pochhammer symbols and nested loops.

@lru_cache(maxsize=None)
def _bf_q_int(k, q):
    total = Fraction(0)
    for i in range(k):
        total += q ** i
    return total


@lru_cache(maxsize=None)
def _bf_poch(n, q):
    value = Fraction(1)
    for i in range(1, n + 1):
        value *= 1 - q ** i
    return value


def _bf_gbin(n, m, q):
    if m < 0 or m > n:
        return Fraction(0)
    return _bf_poch(n, q) / (_bf_poch(m, q) * _bf_poch(n - m, q))


def _bf_weight(n, k, q):
    return _bf_gbin(n, k, q) / _bf_gbin(n + k, k, q)


def _bf_h_star(n, s, q):
    factors = {e: [None] + [q ** k / _bf_q_int(k, q) ** e for k in range(1, n + 1)] for e in set(s)}
    total = Fraction(0)
    for ks in itertools.combinations_with_replacement(range(n, 0, -1), len(s)):
        term = Fraction(1)
        for k, e in zip(ks, s):
            term *= factors[e][k]
        total += term
    return total


def _bf_A(n, k, q):
    return (1 + q ** k) * _bf_weight(n, k, q) * q ** (k * (k - 1) // 2)


def _bf_reconstruction_checks(n_max, q):
    checks = []

    def add(label, params, lhs, rhs):
        checks.append(CheckResult(label, params, q, lhs, rhs, lhs == rhs, kind="reconstruction"))

    for n in range(1, n_max + 1):
        for l in range(n + 1):
            lhs = Fraction(0)
            for k in range(l + 1, n + 1):
                lhs += (1 + q ** k) * _bf_weight(n, k, q) * (-1) ** k * q ** (k * (k - 1) // 2)
            display = (_bf_q_int(l, q) - _bf_q_int(n, q)) / _bf_q_int(n, q) * _bf_weight(n, l, q) * (-1) ** l * q ** (l * (l - 1) // 2)
            proof = -(1 - q ** (n - l)) / (1 - q ** n) * _bf_weight(n, l, q) * (-1) ** l * q ** (l * (l + 1) // 2)
            add("EQ11", {"n": n, "l": l, "form": "display"}, lhs, display)
            add("EQ11", {"n": n, "l": l, "form": "proof"}, lhs, proof)

    for n in range(1, n_max + 1):
        for l in range(n + 1):
            lhs = Fraction(0)
            for k in range(l + 1, n + 1):
                lhs += (1 + q ** k) * _bf_q_int(k, q) * _bf_weight(n, k, q) * q ** (k * (k - 1))
            display = (_bf_q_int(n, q) - _bf_q_int(l, q)) * _bf_weight(n, l, q) * q ** (l * l)
            proof = _bf_gbin(n - 1, l, q) / _bf_gbin(n + l, l, q) * (1 - q ** n) * q ** (l * (l + 1)) / (1 - q)
            add("EQ12", {"n": n, "l": l, "form": "display"}, lhs, display)
            add("EQ12", {"n": n, "l": l, "form": "proof"}, lhs, proof)

    for n in range(1, n_max + 1):
        for l in range(1, n + 1):
            lhs = Fraction(0)
            for k in range(l, n + 1):
                lhs += q ** k / _bf_q_int(k, q) ** 2 * _bf_weight(k, l, q)
            add("EQ14", {"n": n, "l": l}, lhs, q ** l / _bf_q_int(l, q) ** 2 * _bf_weight(n, l, q))

    for a in range(config.RECONSTRUCTION_EQ20_A_MAX + 1):
        for n in range(1, n_max + 1):
            rhs = Fraction(0)
            for k in range(1, n + 1):
                rhs += (1 + q ** k) / _bf_q_int(k, q) ** (2 * a) * _bf_weight(n, k, q) * (-1) ** (k - 1) * q ** (k * (k - 1) // 2 + a * k)
            add("EQ20", {"a": a, "n": n}, _bf_h_star(n, (2,) * a, q), rhs)

    for a in range(config.RECONSTRUCTION_EQ22_A_MAX + 1):
        for b in range(1, config.RECONSTRUCTION_EQ22_B_MAX + 1):
            for n in range(1, n_max + 1):
                rhs = Fraction(0)
                for k in range(1, n + 1):
                    v = Fraction(0)
                    for j in range(1, k):
                        v += (-1) ** j * (1 + q ** j) * q ** (b * j - j * (j + 1) // 2) / _bf_q_int(j, q) ** (2 * b)
                    A = _bf_A(n, k, q)
                    rhs -= (-1) ** k * A * q ** ((a + b + 1) * k) / _bf_q_int(k, q) ** (2 * (a + b) + 1)
                    rhs -= A * q ** (k * (k + 1) // 2 + a * k) * v / _bf_q_int(k, q) ** (2 * a + 1)
                lhs = _bf_h_star(n, (2,) * a + (1,) + (2,) * b, q)
                add("EQ22", {"a": a, "b": b, "n": n}, lhs, rhs)

    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            product_form = (1 + q ** k) * _bf_poch(n, q) ** 2 / (_bf_poch(n - k, q) * _bf_poch(n + k, q)) * q ** (k * (k - 1) // 2)
            add("AUX_A", {"n": n, "k": k}, aux_A(n, k, q), product_form)

    return checks


def _reconstruction_grid(n_max):
    """The ranges the brute-force checks actually cover, recorded on the report."""
    return [
        {"identity": "EQ11", "n_max": n_max},
        {"identity": "EQ12", "n_max": n_max},
        {"identity": "EQ14", "n_max": n_max},
        {"identity": "EQ20", "a_max": config.RECONSTRUCTION_EQ20_A_MAX, "n_max": n_max},
        {
            "identity": "EQ22",
            "a_max": config.RECONSTRUCTION_EQ22_A_MAX,
            "b_max": config.RECONSTRUCTION_EQ22_B_MAX,
            "n_max": n_max,
        },
        {"identity": "AUX_A", "n_max": n_max},
    ]


def validate_reconstructions(q_points=None, n_max=None):
    """
    Check every normalized identity form by brute force before the main suite.

    Raises ReconstructionError (carrying the report) if any form fails.
    """
    n_max = config.RECONSTRUCTION_N_MAX if n_max is None else n_max
    if n_max < 1:
        raise InvalidGridError(f"n_max must be >= 1, got {n_max}")
    qs = _q_list(q_points)
    start = time.time()
    results = []
    for q in qs:
        results.extend(_bf_reconstruction_checks(n_max, q))
    grid = _reconstruction_grid(n_max)
    report = VerificationReport("RECONSTRUCTION", grid, qs, results, time.time() - start)
    log_metric("verify", {"RECONSTRUCTION": report.summary()})
    if not report.passed:
        raise ReconstructionError(report)
    return report
