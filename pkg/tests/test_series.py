"""Series assembly, certified evaluation, case classification, grid
verification, and serialization round-trips."""

import json
import math

import pytest

import peakfn
from peakfn import Constants, build, load_series, make_grid, save_series, \
    synthetic_family
from peakfn.errors import BuildRefusedError, ConfigError, DomainError
from peakfn.series import SERIES_FORMAT


def test_build_shape(ref_series, ref_constants):
    ser = ref_series
    assert ser.n_terms == 100
    assert len(ser.sigma_head) == 100
    assert len(ser.log_inv_r) == 100
    assert len(ser.barriers) == 100
    assert ser.consts == ref_constants
    # normalizer consistent with prefix + tail at 4-ulp padding
    ideal = ser.sigma_prefix_head + ser.tail_after_head
    assert ideal.lo <= ser.normalizer.lo + 4 * math.ulp(ideal.lo)
    assert ser.normalizer.hi <= ideal.hi + 4 * math.ulp(ideal.hi)


def test_evaluate_at_peak(ref_series):
    res = ref_series.evaluate(0.0)
    assert res.m_of_y == 0
    assert res.F.re.contains(1.0)
    assert res.F.im.contains(0.0)
    assert res.F.re.width < 1e-3


def test_evaluate_forced_region(ref_series):
    # every barrier is exactly alpha at y >= r_1: F is alpha to within slack
    for y in (0.15, 0.5, 1.0):
        res = ref_series.evaluate(y)
        assert res.abs_F.hi < 0.5 + 1e-3
        assert res.F.re.contains(0.5) or abs(res.F.re.mid - 0.5) < 1e-3


def test_evaluate_frozen_midscale(ref_series):
    res = ref_series.evaluate(0.05)
    assert res.m_of_y == 2
    assert res.F.re.contains(0.508883)
    assert res.F.re.width <= 1e-3
    assert res.F.im.contains(0.0) and res.F.im.width < 1e-10


def test_evaluate_deep_point(ref_series):
    res = ref_series.evaluate(1e-30)
    assert res.m_of_y == 15
    assert res.abs_F.hi < 1.0
    assert res.abs_F.hi == pytest.approx(0.516, abs=5e-3)


def test_evaluate_rejects_outside(ref_series):
    with pytest.raises(DomainError):
        ref_series.evaluate(2.0)
    with pytest.raises(DomainError):
        ref_series.evaluate(0.5 + 0.5j)


def test_classify_cases(ref_series):
    assert str(ref_series.classify(0.5)) == "outside-all-W"
    assert str(ref_series.classify(0.05)) == "in-W1"
    assert str(ref_series.classify(0.0751)) == "in-W1"
    lab = ref_series.classify(0.004)
    assert lab.kind in ("in-W1", "in-Wm-not-before")
    with pytest.raises(DomainError):
        ref_series.classify(0.0)


def test_classify_monotone_membership(ref_series):
    # the W_m thresholds 1 + eps_m^s decrease in m, so if y belongs to some
    # W_m it belongs to all later ones; the label is the first
    lab = ref_series.classify(2e-4)
    if lab.kind == "in-Wm-not-before":
        m = lab.m
        eps_pow = math.exp(
            -ref_series.consts.s * ref_series.log_inv_eps[m - 1])
        vals = [abs(b.func(2e-4 + 0j)) for b in ref_series.barriers[:m]]
        assert max(vals) >= 1.0 + eps_pow
        prev_pow = math.exp(
            -ref_series.consts.s * ref_series.log_inv_eps[m - 2])
        assert max(vals[:m - 1]) < 1.0 + prev_pow


def test_verify_peak_report(ref_series):
    grid = make_grid(ref_series.family, "log", 1e-30, 1.0, 500)
    rep = ref_series.verify_peak(grid)
    assert rep["passed"]
    assert rep["points"] == 500
    assert rep["failures"] == []
    assert rep["min_margin"] > 0.0
    assert rep["max_abs_hi"] < 1.0
    assert rep["peak_enclosure"]["contains_one"]
    assert rep["w1_alpha_claim"] == "not-certified"
    assert len(rep["per_point"]) == 500
    # forced region margin is 1 - alpha up to enclosure slack
    far = [pp for pp in rep["per_point"]
           if isinstance(pp["y"], float) and pp["y"] >= 0.1]
    assert far and all(abs(pp["margin"] - 0.5) < 1e-3 for pp in far)


def test_verify_peak_grid_spec_tuple(ref_series):
    rep = ref_series.verify_peak(("log", 1e-6, 1.0, 50))
    assert rep["passed"] and rep["points"] == 50


def test_verify_peak_rejects_peak_in_grid(ref_series):
    with pytest.raises(DomainError):
        ref_series.verify_peak([0.0])
    with pytest.raises(DomainError):
        ref_series.verify_peak([])


def test_build_refuses_bad_constants(ref_constants):
    bad = Constants.from_dict({**ref_constants.to_dict(), "D": 0.2})
    fam = synthetic_family(bad)
    with pytest.raises(BuildRefusedError):
        build(fam, bad, n_terms=10, m_max=10)


def test_build_reuses_reports(ref_constants):
    from peakfn.certificates import run_all
    cert = run_all(ref_constants, m_max=10)
    fam = synthetic_family(ref_constants)
    audit = peakfn.audit_family(fam, radii=(1e-1, 1e-3), grid_size=100)
    ser = build(fam, ref_constants, n_terms=5,
                certificate_report=cert, audit_report=audit)
    assert ser.n_terms == 5


def test_round_trip_is_bit_identical(ref_series, tmp_path):
    path = tmp_path / "series.json"
    save_series(ref_series, path)
    again = load_series(path)
    assert again.consts == ref_series.consts
    assert again.n_terms == ref_series.n_terms
    assert again.sigma_head == ref_series.sigma_head
    assert again.normalizer == ref_series.normalizer
    assert again.log_inv_r == ref_series.log_inv_r
    for y in (0.0, 1e-30, 1e-12, 0.05, 0.5, 1.0):
        a = ref_series.evaluate(y)
        b = again.evaluate(y)
        assert (a.F.re, a.F.im, a.m_of_y) == (b.F.re, b.F.im, b.m_of_y)
        assert str(ref_series.classify(y) if y else "") == \
            str(again.classify(y) if y else "")


def test_save_format_stable(ref_series, tmp_path):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    save_series(ref_series, p1)
    save_series(ref_series, p2)
    assert p1.read_bytes() == p2.read_bytes()
    payload = json.loads(p1.read_text())
    assert payload["format"] == SERIES_FORMAT
    assert payload["family"] == "synthetic"


def test_load_rejects_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_series(bad)
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"format": "other/9"}))
    with pytest.raises(ConfigError):
        load_series(wrong)
    with pytest.raises(ConfigError):
        load_series(tmp_path / "missing.json")


@pytest.fixture(scope="module")
def disk_series(ref_constants):
    from peakfn.certificates import run_all
    fam = peakfn.disk_exponential_family(ref_constants.alpha, ref_constants)
    audit = peakfn.audit_family(fam, radii=(0.1, 0.05), grid_size=2000)
    cert = run_all(ref_constants, m_max=20)
    return build(fam, ref_constants, n_terms=60,
                 certificate_report=cert, audit_report=audit)


def test_disk_evaluate_peak_and_interior(disk_series):
    res = disk_series.evaluate(1.0 + 0.0j)
    assert res.F.re.contains(1.0) and res.F.im.contains(0.0)
    res = disk_series.evaluate(0.0j)
    assert res.abs_F.hi < 1.0
    res = disk_series.evaluate(-1.0 + 0.0j)
    assert res.abs_F.hi < 1.0


def test_disk_verify_small_grid(disk_series):
    rep = disk_series.verify_peak(("log", 1e-8, 2.0, 120))
    assert rep["passed"]
    assert rep["max_abs_hi"] < 1.0
    kinds = {pp["case"] for pp in rep["per_point"]}
    assert kinds <= {"outside-all-W", "in-W1", "in-Wm-not-before",
                     "head-exhausted"}


def test_disk_round_trip(disk_series, tmp_path):
    path = tmp_path / "disk.json"
    save_series(disk_series, path)
    again = load_series(path)
    for z in (0.5 + 0.5j, 1.0 + 0.0j, 0.99 + 0.0j):
        a, b = disk_series.evaluate(z), again.evaluate(z)
        assert (a.F.re, a.F.im) == (b.F.re, b.F.im)


def test_split_index_beyond_head(ref_constants):
    # a tiny head forces the split logic past the stored radii
    fam = synthetic_family(ref_constants)
    ser = build(fam, ref_constants, n_terms=4, m_max=10)
    res = ser.evaluate(1e-12)
    assert res.m_of_y > 4
    assert res.abs_F.hi < 1.0
    assert res.F.re.contains(0.5) or res.abs_F.hi < 0.7
