"""Barrier families: pointwise condition checks, audits, and grids."""

import cmath
import math

import pytest

from peakfn import audit_family, disk_exponential_family, family_by_name, \
    make_grid, synthetic_family
from peakfn.errors import FamilyAuditError, InvalidParameterError
from peakfn.families import UNIT_DISK, UNIT_INTERVAL


@pytest.fixture(scope="module")
def syn(ref_constants):
    return synthetic_family(ref_constants)


@pytest.fixture(scope="module")
def disk(ref_constants):
    return disk_exponential_family(0.5, ref_constants)


def test_family_lookup(ref_constants):
    assert family_by_name("synthetic", ref_constants).name == "synthetic"
    assert family_by_name("disk-exp", ref_constants).name == "disk-exp"
    with pytest.raises(InvalidParameterError):
        family_by_name("nope", ref_constants)


def test_synthetic_barrier_pointwise(syn):
    bar = syn.barrier(math.log(10.0))  # r = 0.1
    assert bar(0.0) == 1.0
    # off the ball: exactly alpha
    assert bar(0.2) == 0.5
    assert bar(1.0) == 0.5
    # at distance A*r the ramp has climbed to 1.5
    assert bar(0.05).real == pytest.approx(1.5, rel=1e-12)
    # tent apex near the spec's quoted working value
    apex = bar(0.075).real
    assert apex == pytest.approx(3.738451598, rel=1e-6)
    assert apex <= bar.peak_cap
    # inside but before the ramp: between 1 and 1.5
    assert 1.0 <= bar(0.01).real <= 1.5


def test_synthetic_condition4_shape(syn):
    # within A*r*eps of the peak the value stays below 1 + eps^s
    bar = syn.barrier(math.log(10.0))
    for eps in (0.01, 0.1, 0.5, 0.99):
        ball = syn.A * 0.1 * eps
        for frac in (0.1, 0.9):
            v = abs(bar(frac * ball))
            assert v < 1.0 + eps ** syn.s


def test_synthetic_family_rejects_large_radius(syn):
    with pytest.raises(FamilyAuditError):
        syn.barrier(math.log(2.0))  # r = 0.5 > 0.1 ceiling


def test_synthetic_audit_passes(syn):
    rep = audit_family(syn)
    assert rep.passed
    assert rep.failures == []
    assert rep.condition_margins["condition_2"] >= 0.0
    assert rep.condition_margins["condition_4"] > 0.0
    d = rep.to_dict()
    assert d["family"] == "synthetic" and d["passed"]


def test_disk_audit_passes(disk):
    rep = audit_family(disk)
    assert rep.passed
    assert rep.condition_margins["condition_2"] > 0.0
    # |f| <= 1 everywhere puts condition-3 margin near cap - 1
    assert rep.condition_margins["condition_3"] > 0.5


def test_disk_barrier_pointwise(disk):
    bar = disk.barrier(math.log(1.0 / 0.1))  # r = 0.1
    assert bar(1.0 + 0.0j) == 1.0
    lam = 2.0 * math.log(2.0) / 0.01
    z = 0.9 + 0.0j
    expected = cmath.exp(lam * (z - 1.0))
    assert abs(bar(z) - expected) <= 1e-12 * abs(expected) + 1e-300
    # modulus never exceeds 1 on the disk
    for phi in (0.0, 0.7, 2.1, 3.9, 5.5):
        for rad in (0.3, 0.9, 1.0):
            w = rad * cmath.exp(1j * phi)
            assert abs(bar(w)) <= 1.0 + 1e-12


def test_disk_barrier_tolerance_shell_is_safe(disk):
    # points admitted by the domain tolerance but with Re z > 1 must not
    # blow up (regression: the exponent used to overflow here)
    bar = disk.barrier(math.log(1.0 / 0.05))
    z = complex(1.0 + 1e-15, 0.0)
    assert abs(bar(z)) <= 1.0 + 1e-12
    deep = disk.barrier(150.0)  # r = e^-150, schedule scale
    assert abs(deep(z)) <= 1.0 + 1e-12


def test_domains():
    assert UNIT_INTERVAL.contains(0.5)
    assert not UNIT_INTERVAL.contains(1.5)
    assert not UNIT_INTERVAL.contains(0.5 + 0.1j)
    assert UNIT_DISK.contains(0.5 + 0.5j)
    assert not UNIT_DISK.contains(1.2)
    assert UNIT_DISK.distance_to_peak(0.0) == 1.0


def test_make_grid_interval(syn):
    pts = make_grid(syn, "log", 1e-30, 1.0, 500)
    assert len(pts) == 500
    assert all(p.imag == 0.0 and 0.0 < p.real <= 1.0 for p in pts)
    assert pts[0].real == pytest.approx(1e-30, rel=1e-9)
    lin = make_grid(syn, "linear", 0.5, 0.5, 1)
    assert lin == [0.5 + 0.0j]


def test_make_grid_disk(disk):
    pts = make_grid(disk, "log", 1e-6, 2.0, 200)
    assert len(pts) >= 25
    peak = disk.domain.peak
    for z in pts:
        assert abs(z) <= 1.0
        assert z != peak


def test_make_grid_validation(syn):
    with pytest.raises(InvalidParameterError):
        make_grid(syn, "cubic", 0.1, 1.0, 10)
    with pytest.raises(InvalidParameterError):
        make_grid(syn, "log", 1e-40, 1.0, 10)
    with pytest.raises(InvalidParameterError):
        make_grid(syn, "log", 0.1, 5.0, 10)
    with pytest.raises(InvalidParameterError):
        make_grid(syn, "log", 0.1, 1.0, 0)


def test_audit_catches_planted_violation(ref_constants):
    # a family claiming a smaller alpha than it satisfies must be caught
    fam = synthetic_family(ref_constants)
    import dataclasses
    lying = dataclasses.replace(fam, alpha=0.25)
    rep = audit_family(lying)
    assert not rep.passed
    assert any(f["condition"] == "condition_2" for f in rep.failures)
