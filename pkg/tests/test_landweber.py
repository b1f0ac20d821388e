"""Regular sequences, exactness reports, and spectrum certificates."""

import json
from pathlib import Path

import pytest

from formalbrauer import __version__
from formalbrauer.coefficients import QQ, Prime, TruncPolyRing, rat
from formalbrauer.errors import (
    CertificationRefused,
    RingMismatch,
    SmoothnessCheckFailed,
)
from formalbrauer.fgl import hazewinkel_log, standard_law
from formalbrauer.k3brauer import QuarticForm, named_quartic
from formalbrauer.landweber import (
    RegularityVerdict,
    RingPresentation,
    SCENARIOS,
    builtin_scenario,
    certify_k3_spectrum,
    check_regular_sequence,
    landweber_check,
    rational_certificate,
    zp_presentation,
)

GOLDEN_PATH = Path(__file__).parent / "golden" / "rational_fermat.json"


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


def test_zp_presentation_shape():
    R = zp_presentation(5)
    assert R.p == 5
    assert R.parameters == ()
    assert R.torsion_free
    assert repr(R) == "Z_(5)"
    assert R.base_ring == QQ


def test_torsion_free_detection():
    assert RingPresentation(Prime(3), (), 8, ()).torsion_free
    assert not RingPresentation(Prime(3), (), 8, (9,)).torsion_free
    assert not RingPresentation(Prime(3), (), 8, (3,)).torsion_free
    # a relation with a unit coefficient does not create p-torsion
    assert RingPresentation(Prime(3), ("t",), 8, ()).torsion_free
    R = RingPresentation(Prime(3), ("t",), 8, ())
    t = R.base_ring.var("t")
    assert RingPresentation(Prime(3), ("t",), 8, (t,)).torsion_free
    assert not RingPresentation(Prime(3), ("t",), 8, (t * 3,)).torsion_free


def test_coerce_guards_parameter_free():
    R = zp_presentation(3)
    t = TruncPolyRing(("t",), 8).var("t")
    with pytest.raises(RingMismatch):
        R.coerce(t)
    assert R.coerce(7) == rat(7)


# ---------------------------------------------------------------------------
# regular sequences
# ---------------------------------------------------------------------------


def test_regular_sequence_p_then_parameter():
    R = RingPresentation(Prime(3), ("t",), 8, ())
    t = R.base_ring.var("t")
    verdicts = check_regular_sequence(R, [3, t])
    assert [v.status for v in verdicts] == ["regular", "regular"]


def test_regular_sequence_zero_is_a_zerodivisor():
    R = zp_presentation(3)
    verdicts = check_regular_sequence(R, [3, 0])
    assert verdicts[0].status == "regular"
    assert verdicts[1].status == "zerodivisor"
    assert verdicts[1].witness == "1"


def test_regular_sequence_torsion_witness():
    R = RingPresentation(Prime(3), (), 8, (9,), name="Z/(9)")
    verdicts = check_regular_sequence(R, [3])
    assert verdicts[0].status == "zerodivisor"
    assert verdicts[0].witness == "3"       # 3 * 3 = 9 = 0, yet 3 != 0


def test_regular_sequence_unit_detection():
    R = zp_presentation(3)
    verdicts = check_regular_sequence(R, [3, 7])
    # 7 is a unit in the 3-local integers already
    assert [v.status for v in verdicts] == ["regular", "unit"]


def test_regular_sequence_multiple_of_earlier_element_is_zero():
    R = RingPresentation(Prime(3), ("t",), 8, ())
    t = R.base_ring.var("t")
    verdicts = check_regular_sequence(R, [t, t * 2])
    assert verdicts[0].status == "regular"
    # 2t is 0 in the quotient by (t); witness 1 annihilates it there
    assert verdicts[1].status == "zerodivisor"
    assert verdicts[1].witness == "1"


def test_regular_sequence_consumed_parameter_is_honest_unknown():
    R = RingPresentation(Prime(3), ("t",), 8, ())
    t = R.base_ring.var("t")
    verdicts = check_regular_sequence(R, [t, t + 3])
    assert verdicts[0].status == "regular"
    # (t, t + 3) is in fact regular, but t is consumed and the constant
    # residue 3 is outside the certified shapes: unknown, never a guess
    assert verdicts[1].status == "unknown"
    assert "certified shapes" in verdicts[1].reason


def test_regular_sequence_zero_ring_guard():
    R = RingPresentation(Prime(3), (), 8, (1,))
    verdicts = check_regular_sequence(R, [3, 5])
    assert all(v.status == "unknown" for v in verdicts)
    assert "zero ring" in verdicts[0].reason


def test_zerodivisor_verdict_requires_witness():
    with pytest.raises(ValueError):
        RegularityVerdict("zerodivisor", "x")
    with pytest.raises(ValueError):
        RegularityVerdict("bogus", "x")


# ---------------------------------------------------------------------------
# exactness reports
# ---------------------------------------------------------------------------


def test_scenario_zp_multiplicative_is_exact():
    R, law, h_max = builtin_scenario("zp-multiplicative", 3)
    report = landweber_check(R, law, h_max)
    assert report.verdict == "exact"
    assert report.stabilization == 1
    assert [v.status for v in report.verdicts] == ["regular", "unit"]
    assert report.closed_fibre_height.value == 1


def test_scenario_hazewinkel_is_exact_at_height_two():
    R, log, h_max = builtin_scenario("hazewinkel-t1", 3)
    report = landweber_check(R, log, h_max)
    assert report.verdict == "exact"
    assert report.stabilization == 2
    assert [v.status for v in report.verdicts] == ["regular", "regular", "unit"]
    assert str(report.vs[1]) == "-8*t"
    assert report.closed_fibre_height.value == 2


def test_scenario_hazewinkel_at_five():
    R, log, h_max = builtin_scenario("hazewinkel-t1", 5)
    report = landweber_check(R, log, h_max)
    assert report.verdict == "exact"
    assert report.stabilization == 2
    assert str(report.vs[1]) == "-624*t"    # (1 - 5^4) t


def test_scenario_torsion_is_not_exact():
    R, law, h_max = builtin_scenario("torsion", 3)
    report = landweber_check(R, law, h_max)
    assert report.verdict == "not_exact"
    assert report.verdicts[0].status == "zerodivisor"
    assert report.verdicts[0].witness == "3"
    assert "witness 3" in report.reason


def test_verdicts_are_monotone_under_cap_increase():
    for name in SCENARIOS:
        small = landweber_check(*_scenario_args(name, cap=None))
        large = landweber_check(*_scenario_args(name, cap=15))
        assert small.verdict == large.verdict
        assert small.stabilization == large.stabilization


def _scenario_args(name, cap):
    R, source, h_max = builtin_scenario(name, 3, cap=cap)
    return R, source, h_max, cap


def test_additive_law_is_inconclusive_candidate_supersingular():
    R = zp_presentation(3)
    report = landweber_check(R, standard_law("additive", QQ, 10), 2)
    assert report.verdict == "inconclusive"
    assert "candidate supersingular" in report.reason
    assert report.closed_fibre_height.kind == "at_least"


def test_landweber_check_ring_matching_is_strict():
    R = zp_presentation(3)
    base = TruncPolyRing(("t",), 10)
    log = hazewinkel_log([base.var("t"), base.one], Prime(3), 10)
    with pytest.raises(RingMismatch):
        landweber_check(R, log, 2)          # polynomial law, scalar ring
    Rt = RingPresentation(Prime(3), ("t",), 10, ())
    with pytest.raises(RingMismatch):
        landweber_check(Rt, standard_law("multiplicative", QQ, 10), 2)


def test_report_serialization_shape():
    R, law, h_max = builtin_scenario("zp-multiplicative", 3)
    doc = landweber_check(R, law, h_max).to_json_dict()
    assert doc["verdict"] == "exact"
    assert doc["ring"]["p"] == 3
    assert doc["vs"] == ["3", "1"]      # v_0 through the stabilization index
    assert doc["verdicts"][0]["status"] == "regular"
    assert json.dumps(doc) == json.dumps(doc)   # plain data, reproducible


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def test_certify_fermat_at_ordinary_primes():
    for p in (5, 13):
        cert = certify_k3_spectrum(zp_presentation(p), named_quartic("fermat"), 2)
        assert cert.kind == "p-local"
        assert cert.report.verdict == "exact"
        doc = cert.to_json_dict()
        assert doc["schema"] == "formalbrauer.certificate/1"
        assert doc["tool"]["version"] == __version__
        assert doc["report"]["verdict"] == "exact"
        assert "generated_at" not in doc


def test_certify_refuses_supersingular_candidate():
    with pytest.raises(CertificationRefused) as exc:
        certify_k3_spectrum(zp_presentation(3), named_quartic("fermat"), 2)
    assert exc.value.report is not None
    assert exc.value.report.verdict == "inconclusive"
    assert "candidate supersingular" in str(exc.value)


def test_certify_needs_parameter_free_presentation():
    R = RingPresentation(Prime(5), ("t",), 8, ())
    with pytest.raises(RingMismatch):
        certify_k3_spectrum(R, named_quartic("fermat"), 1)


def test_certificate_timestamp_is_caller_supplied():
    cert = certify_k3_spectrum(zp_presentation(5), named_quartic("fermat"), 2)
    doc = cert.to_json_dict(timestamp="2026-01-01T00:00:00+00:00")
    assert doc["generated_at"] == "2026-01-01T00:00:00+00:00"
    keys = list(doc)
    assert keys.index("generated_at") < keys.index("ring")


def test_rational_certificate_matches_golden_file():
    cert = rational_certificate(named_quartic("fermat"))
    doc = cert.to_json_dict()
    on_disk = json.loads(GOLDEN_PATH.read_text())
    assert doc == on_disk
    # and the acceptance module embeds the same snapshot
    from formalbrauer.acceptance import GOLDEN_RATIONAL_FERMAT
    assert doc == GOLDEN_RATIONAL_FERMAT


def test_rational_certificate_is_byte_deterministic():
    a = json.dumps(rational_certificate(named_quartic("fermat")).to_json_dict(),
                   indent=2)
    b = json.dumps(rational_certificate(named_quartic("fermat")).to_json_dict(),
                   indent=2)
    assert a == b


def test_rational_certificate_homotopy_lines():
    cert = rational_certificate(named_quartic("fermat-cross"))
    lines = cert.homotopy["lines"]
    assert [ln["n"] for ln in lines] == list(range(-3, 4))
    assert all(ln["rank"] == 1 and ln["degree"] == 2 * ln["n"] for ln in lines)
    assert cert.iso["normalization"] == "Serre duality"
    assert cert.iso["smoothness_spot_check_prime"] == 3


def test_rational_certificate_refuses_everywhere_singular():
    # T0^2 T1^2 + ... : singular along a line at every prime
    f = QuarticForm({(2, 2, 0, 0): 1, (0, 0, 2, 2): 1}, name="bad")
    with pytest.raises(SmoothnessCheckFailed):
        rational_certificate(f)


def test_builtin_scenario_unknown_name():
    with pytest.raises(ValueError, match="zp-multiplicative"):
        builtin_scenario("nope")
