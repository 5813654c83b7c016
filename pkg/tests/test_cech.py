"""Čech cohomology of the degree-n sheaf: dimensions, characters, stability."""

import pytest

from tcdo.cech import (
    BigradedReport,
    StabilityError,
    cech_block,
    cech_dims,
    cech_kernel,
    character_check,
    check_sl2_stability,
    euler_check,
    expected_characters,
    mu_window,
    singular_vectors_h0,
)
from tcdo.affine import restricted_verma_dim
from tcdo.modespace import vacuum
from tcdo.qseries import QSeries, count_2colored

WM = 3


@pytest.fixture(scope="module")
def reports():
    return {n: cech_dims(n, WM) for n in range(-4, 5)}


def test_reports_stable_and_consistent(reports):
    for n, rpt in reports.items():
        assert rpt.stable, n
        assert rpt.rank_nullity_consistent(), n
        for e in rpt.entries.values():
            assert e["dim_h0"] >= 0 and e["dim_h1"] >= 0


def test_characters_match_closed_form(reports):
    for n, rpt in reports.items():
        assert character_check(rpt), n
        want_h0, want_h1 = expected_characters(n, WM)
        assert rpt.h0_character == want_h0
        assert rpt.h1_character == want_h1


def test_euler_identity(reports):
    for n, rpt in reports.items():
        assert euler_check(rpt), n
        diff = rpt.h0_character - rpt.h1_character
        for j in range(WM + 1):
            assert diff.coeff(j) == (n + 1) * count_2colored(j)


def test_twist_minus_one_vanishes(reports):
    rpt = reports[-1]
    zero = QSeries((0,) * (WM + 1), WM)
    assert rpt.h0_character == zero and rpt.h1_character == zero
    assert all(e["dim_h0"] == 0 and e["dim_h1"] == 0 for e in rpt.entries.values())


def test_weight_zero_blocks():
    assert cech_block(0, 0, 0)["dim_h0"] == 1
    assert cech_block(2, 0, 2)["dim_h0"] == 1
    assert cech_block(2, 0, 4)["dim_h0"] == 0
    # global polynomial sections of degree n: one per mu in {-n..n} step 2
    total = sum(cech_block(3, 0, mu)["dim_h0"] for mu in mu_window(3, 0))
    assert total == 4


def test_h0_entries_cross_check_affine(reports):
    # H^0 of a dominant twist is the irreducible quotient; its bidegree dims
    # are bounded by the restricted Verma dims (equality at the top slice)
    rpt = reports[2]
    for (N, mu), e in rpt.entries.items():
        assert e["dim_h0"] <= restricted_verma_dim(2, N, mu)
    assert rpt.entry(0, 2)["dim_h0"] == restricted_verma_dim(2, 0, 2)


def test_kernel_vectors_are_cocycles():
    basis0, basisinf, kernel = cech_kernel(1, 1, 1)
    assert len(kernel) == cech_block(1, 1, 1)["dim_h0"]
    for vec in kernel:
        assert len(vec) == len(basis0) + len(basisinf)


def test_singular_vector_unique_at_ground(reports):
    for n in (0, 1, 3):
        sing = singular_vectors_h0(n, 2)
        assert len(sing) == 1
        N, mu, rep = sing[0]
        assert (N, mu) == (0, n)
        assert rep == vacuum(lstar=n)


def test_singular_scan_rejects_negative():
    with pytest.raises(ValueError):
        singular_vectors_h0(-2, 1)


def test_sl2_stability_of_kernel():
    for n in (-2, 0, 1):
        rep = check_sl2_stability(n, 1, modes=(-1, 0, 1))
        assert rep.passed
        assert rep.checks > 0


def test_unstable_report_refuses_aggregates():
    rpt = BigradedReport(n=0, weight_max=1, stable=False)
    rpt.h0_character = QSeries((1, 3), 1)
    rpt.h1_character = QSeries((0, 1), 1)
    with pytest.raises(StabilityError):
        euler_check(rpt)
    with pytest.raises(StabilityError):
        character_check(rpt)


def test_concurrent_scan_matches_serial():
    serial = cech_dims(1, 2)
    threaded = cech_dims(1, 2, workers=4)
    assert serial.entries == threaded.entries
    assert serial.h0_character == threaded.h0_character
    assert serial.h1_character == threaded.h1_character


def test_report_serialization_roundtrip(reports):
    d = reports[0].as_dict()
    assert d["n"] == 0 and d["stable"] is True
    assert d["h0_character"] == [1, 3, 8, 18]
    assert all("," in key for key in d["entries"])
