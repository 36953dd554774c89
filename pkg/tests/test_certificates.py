"""Certificate battery: REF passes everything with frozen margins; designed
bad constants fail exactly the check they were designed to break."""

import json
import math

import pytest

from peakfn import Constants, WeightEngine, derive_constants, run_all
from peakfn.certificates import (check_claim1, check_claim2, check_eps_condition,
                                 check_first_shell, check_lemma)
from peakfn.enclosure import Enclosure
from peakfn.hypothesis import HypothesisConstants


REF = HypothesisConstants(alpha=0.5, s=1.0, t=0.75, A=0.5, C=2.0)


@pytest.fixture(scope="module")
def ref_run(ref_constants):
    return run_all(ref_constants, m_max=120)


def test_run_all_passes(ref_run):
    assert ref_run.passed
    assert ref_run.failing() == []
    names = [r["name"] for r in ref_run.records]
    assert names == ["first-shell", "eps-condition",
                     "radius-recursion-closed-form", "partial-sum-brackets",
                     "psi-majorant", "radius-power-bound",
                     "claim-1", "claim-2", "lemma-decay"]


def test_report_is_json_serializable(ref_run):
    text = json.dumps(ref_run.to_dict(), sort_keys=True)
    assert '"passed": true' in text


def test_first_shell_record(ref_constants):
    rec = check_first_shell(ref_constants)
    assert rec["passed"]
    assert rec["min_margin"] == pytest.approx(0.0405853312976, rel=1e-9)


def test_first_shell_fails_at_02(ref_constants):
    bad = Constants.from_dict({**ref_constants.to_dict(), "D": 0.2})
    rec = check_first_shell(bad)
    assert not rec["passed"]
    assert rec["min_margin"] == pytest.approx(-0.0328149237559, rel=1e-9)


def test_eps_condition_dual_route(ref_constants):
    rec = check_eps_condition(ref_constants, (3, 120))
    assert rec["passed"]
    assert rec["details"]["dual_route_agreement"]
    assert rec["details"]["tail_certificate"]["passed"]
    assert rec["min_rel_margin"] > 0.0
    with pytest.raises(ValueError):
        check_eps_condition(ref_constants, (2, 120))


def test_claim1_frozen_margin(engine):
    rec = check_claim1(engine, (1, 120))
    assert rec["passed"]
    # the margin shrinks monotonically toward ~0.5, so the worst index is
    # the range end, and the whole sweep keeps half a unit of clearance
    assert rec["argmin_m"] == 120
    assert rec["min_rel_margin"] == pytest.approx(0.5003867930834139,
                                                  rel=1e-6)
    assert rec["min_rel_margin"] > 0.5


def test_claim1_m1_sides(engine):
    # the m = 1 comparison pinned against the 50-digit oracle
    consts = engine.consts
    psit = Enclosure.from_libm(
        math.pow(engine.schedule.psi(1.0), consts.t), ulps=8)
    lhs = (consts.C * psit.hi - 1.0) * engine.sigma(1).hi
    rhs = 0.25 * engine.tail(1).lo
    assert lhs == pytest.approx(0.4601641151, rel=1e-9)
    assert rhs == pytest.approx(0.9847970969, rel=1e-9)


def test_claim2_frozen_margin(engine):
    rec = check_claim2(engine, (2, 120))
    assert rec["passed"]
    assert rec["argmin_m"] == 3
    assert rec["min_rel_margin"] == pytest.approx(0.9981672559914475,
                                                  rel=1e-6)
    with pytest.raises(ValueError):
        check_claim2(engine, (1, 120))


def test_lemma_battery(engine):
    rec = check_lemma(engine)
    assert rec["passed"]
    assert rec["max_relative_residual"] <= 1e-6
    assert rec["details"]["decay_bound"]["passed"]
    assert rec["details"]["divergence"]["passed"]


def test_claim1_fails_for_small_M(ref_constants):
    # M = 1.01 makes the per-term cap beat the tail: claim 1 must fail
    consts, _ = derive_constants(REF, M=1.01)
    report = run_all(consts, m_max=40)
    assert not report.passed
    assert "claim-1" in report.failing()


def test_run_all_rejects_tiny_m_max(ref_constants):
    with pytest.raises(ValueError):
        run_all(ref_constants, m_max=2)
