from fractions import Fraction

import pytest

import identities
from identities import (
    CERTIFICATE_IDS,
    IdentityId,
    InvalidGridError,
    ReconstructionError,
    certificate,
    validate_reconstructions,
    verify,
    verify_certificates,
    verify_classical,
    verify_two_one_finite,
)
from qkernel import binomial_weight, q_int
from strings import index_string

HALF = Fraction(1, 2)
Q_POINTS = ["1/2", "2/3"]

REDUCED_GRIDS = [
    ("EQ11", {"n_max": 6, "l_max": 6}),
    ("EQ12", {"n_max": 6, "l_max": 6}),
    ("EQ13", {"n_max": 8}),
    ("EQ14", {"n_max": 6, "l_max": 6}),
    ("CERT15", {"n_max": 5, "k_max": 6}),
    ("CERT16", {"n_max": 5, "k_max": 6}),
    ("CERT17", {"m_max": 4, "k_max": 6}),
    ("CERT19", {"l_max": 4, "k_max": 6}),
    ("EQ20", {"a_max": 2, "n_max": 5}),
    ("EQ21", {"a_max": 2, "n_max": 5}),
    ("EQ22", {"a_max": 1, "b_max": 2, "n_max": 5}),
    ("EQ23", {"n_max": 5, "k_max": 5, "a_max": 2}),
    ("EQ26", {"m_max": 2, "s_max": 2, "n_max": 4}),
    ("EQ32", {"m_max": 1, "s_max": 2, "n_max": 4}),
    ("EQ33", {"m_max": 2, "s_max": 2, "n_max": 6}),
    ("EQ34", {"m_max": 1, "s_max": 3, "n_max": 6}),
]


@pytest.mark.parametrize("identity,grid", REDUCED_GRIDS)
def test_identity_holds_on_reduced_grid(identity, grid):
    report = verify(identity, grid, Q_POINTS)
    assert report.results
    assert report.passed, [w.to_json() for w in report.witnesses[:3]]


def test_eq13_first_point_values():
    report = verify("eq13", {"n_max": 1}, ["1/2"])
    (result,) = report.results
    assert result.lhs == HALF
    assert result.rhs == HALF
    assert result.passed


def test_results_are_in_grid_order_with_q_innermost():
    report = verify(IdentityId.EQ13, {"n_max": 2}, Q_POINTS)
    assert [(r.params["n"], r.q) for r in report.results] == [
        (1, HALF),
        (1, Fraction(2, 3)),
        (2, HALF),
        (2, Fraction(2, 3)),
    ]


def test_thread_pool_keeps_order():
    serial = verify("EQ22", {"a_max": 1, "b_max": 1, "n_max": 4}, Q_POINTS, workers=1)
    pooled = verify("EQ22", {"a_max": 1, "b_max": 1, "n_max": 4}, Q_POINTS, workers=3)
    assert [(r.params, r.q, r.lhs) for r in serial.results] == [(r.params, r.q, r.lhs) for r in pooled.results]


def test_eq21_with_a_zero_matches_eq13():
    eq13 = verify("EQ13", {"n_max": 6}, Q_POINTS)
    eq21 = verify("EQ21", {"a_max": 0, "n_max": 6}, Q_POINTS)
    assert [r.lhs for r in eq13.results] == [r.rhs for r in eq21.results]


def test_eq26_single_run_matches_eq21():
    for a in range(3):
        s = index_string((a,), "one")
        finite = verify_two_one_finite(s, (1, 6), Q_POINTS)
        eq21 = verify("EQ21", {"a_min": a, "a_max": a, "n_max": 6}, Q_POINTS)
        assert finite.passed
        assert [r.rhs for r in finite.results] == [r.rhs for r in eq21.results]


def test_eq32_single_run_matches_eq20():
    for a in range(1, 4):
        s = index_string((a,), "two")
        finite = verify_two_one_finite(s, range(1, 7), Q_POINTS)
        eq20 = verify("EQ20", {"a_min": a, "a_max": a, "n_max": 6}, Q_POINTS)
        assert finite.passed
        assert [r.rhs for r in finite.results] == [r.rhs for r in eq20.results]


def test_two_one_finite_records_recurrence_value():
    report = verify_two_one_finite(index_string((1, 0), "one"), (2, 3), ["1/2"])
    payload = report.results[0].to_json()
    assert payload["lhs_recurrence"] == payload["lhs"]
    assert report.results[0].params["string"] == "2,1,1"


def test_certificate_first_point():
    report = verify_certificates("CERT15", {"n_max": 1, "k_max": 1}, ["1/2"])
    assert report.passed
    assert len(report.results) == 1


def test_certificate_accessor_rejects_non_certificates():
    with pytest.raises(InvalidGridError):
        certificate("EQ13")
    with pytest.raises(InvalidGridError):
        verify_certificates("EQ13")


def test_cert19_g_vanishes_on_diagonal():
    pair = certificate(IdentityId.CERT19)
    for l in range(1, 6):
        assert pair.G(l, l, HALF) == 0


def test_cert17_g_is_finite_at_removable_point():
    pair = certificate("cert17")
    for m in range(0, 4):
        assert pair.G(m, m + 1, HALF) > 0
        assert pair.G(m, m + 2, HALF) == 0


def test_cert16_sums_to_eq12():
    pair = certificate(IdentityId.CERT16)
    for q in (HALF, Fraction(7, 10)):
        for n in range(1, 7):
            for l in range(0, n + 1):
                summed = sum((pair.F(n, k, q) for k in range(l + 1, n + 1)), Fraction(0))
                eq12_rhs = (q_int(n, q) - q_int(l, q)) * binomial_weight(n, l, q) * q ** (l * l)
                assert summed == (1 - q) * eq12_rhs


def test_classical_identities_ignore_q():
    report = verify("EQ33", {"m_max": 1, "s_max": 1, "n_max": 3}, Q_POINTS)
    assert report.q_points == []
    assert all(r.q is None for r in report.results)
    assert report.results[0].to_json()["q"] == "1"


def test_verify_classical_checks_string_ending():
    assert verify_classical("EQ34", index_string((0, 1), "two"), (1, 5)).passed
    with pytest.raises(InvalidGridError):
        verify_classical("EQ33", index_string((0, 1), "two"), (1, 5))
    with pytest.raises(InvalidGridError):
        verify_classical("EQ13", index_string((1,), "one"), (1, 5))


@pytest.mark.parametrize(
    "identity,grid",
    [
        ("EQ22", {"a_max": 2, "b_max": 0}),
        ("EQ14", {"l_min": 0}),
        ("EQ11", {"n_min": 0}),
        ("EQ13", {"n_min": 5, "n_max": 4}),
        ("EQ26", {"m_min": 0}),
        ("EQ32", {"s_min": 0}),
        ("EQ13", {"n_max": "8"}),
    ],
)
def test_invalid_grids_rejected(identity, grid):
    with pytest.raises(InvalidGridError):
        verify(identity, grid, ["1/2"])


def test_unknown_identity_and_unknown_grid_keys():
    with pytest.raises(InvalidGridError):
        verify("EQ99")
    report = verify("EQ13", {"n_max": 2, "b_max": 0, "unused": 7}, ["1/2"])
    assert report.passed


def test_check_result_json_schema():
    result = verify("EQ14", {"n_max": 2, "l_max": 2}, ["1/2"]).results[0]
    payload = result.to_json()
    assert list(payload) == ["identity", "params", "q", "pass", "lhs", "rhs"]
    assert payload["q"] == "1/2"
    assert set(payload["lhs"]) == {"exact", "decimal"}
    assert len(payload["lhs"]["decimal"].split(".")[1]) == 40


def test_report_summary_counts():
    report = verify("EQ13", {"n_max": 3}, Q_POINTS)
    summary = report.summary()
    assert summary["checks"] == 6
    assert summary["failed"] == 0
    assert summary["identity"] == "EQ13"


def test_reconstructions_pass_on_small_grid():
    report = validate_reconstructions(["1/2", "7/10"], n_max=5)
    assert report.passed
    labels = {r.identity for r in report.results}
    assert labels == {"EQ11", "EQ12", "EQ14", "EQ20", "EQ22", "AUX_A"}


def test_reconstructions_run_to_n_max_and_record_ranges():
    report = validate_reconstructions(["1/2"], n_max=9)
    assert report.passed
    assert all(r.to_json()["kind"] == "reconstruction" for r in report.results)
    for label in ("EQ11", "EQ20", "EQ22", "AUX_A"):
        assert max(r.params["n"] for r in report.results if r.identity == label) == 9
    eq22 = next(entry for entry in report.grid if entry["identity"] == "EQ22")
    assert eq22 == {"identity": "EQ22", "a_max": 2, "b_max": 2, "n_max": 9}
    assert {r.params["a"] for r in report.results if r.identity == "EQ22"} == {0, 1, 2}
    assert {r.params["b"] for r in report.results if r.identity == "EQ22"} == {1, 2}


def test_empty_q_list_rejected():
    with pytest.raises(InvalidGridError):
        verify("EQ13", {"n_max": 2}, [])
    with pytest.raises(InvalidGridError):
        validate_reconstructions([], n_max=3)
    with pytest.raises(InvalidGridError):
        verify_two_one_finite(index_string((1,), "one"), (1, 3), [])


def test_reconstruction_failure_names_identity(monkeypatch):
    monkeypatch.setattr(identities, "aux_A", lambda n, k, q: Fraction(0))
    with pytest.raises(ReconstructionError) as excinfo:
        validate_reconstructions(["1/2"], n_max=3)
    assert "AUX_A" in str(excinfo.value)
    assert excinfo.value.report.failed_identities() == ["AUX_A"]


def test_broken_rhs_produces_witness(monkeypatch):
    entry = identities._REGISTRY[IdentityId.EQ13]
    broken = identities._Identity(entry.id, entry.lhs, lambda p, q: entry.rhs(p, q) + (p["n"] == 2))
    monkeypatch.setitem(identities._REGISTRY, IdentityId.EQ13, broken)
    report = verify("EQ13", {"n_max": 3}, ["1/2"])
    assert not report.passed
    assert [w.params["n"] for w in report.witnesses] == [2]


@pytest.mark.slow
def test_reconstructions_default_grid():
    assert validate_reconstructions().passed


@pytest.mark.slow
@pytest.mark.parametrize("identity", [identity.value for identity in IdentityId])
def test_identity_holds_on_acceptance_grid(identity):
    report = verify(identity)
    assert report.passed, [w.to_json() for w in report.witnesses[:3]]


@pytest.mark.slow
@pytest.mark.parametrize("identity", CERTIFICATE_IDS)
def test_certificates_on_acceptance_grid(identity):
    assert verify_certificates(identity).passed
