from fractions import Fraction

import pytest

from ahcert.errors import InconclusiveAtHorizon, InputError
from ahcert.params import make_geometric_family, sequences
from ahcert.rcbounds import (
    certify_rc_global_lower,
    certify_rc_lower,
    default_separation_rho,
    rc_upper,
    separation,
    verify_checks,
)


@pytest.fixture(scope="module")
def table():
    return sequences(make_geometric_family(6), 40)


def test_lower_certificate_deterministic_witness(table):
    cert = certify_rc_lower(table, Fraction(3, 2))
    assert cert.delta == Fraction(1, 8)
    assert cert.epsilon == Fraction(1, 21)
    assert (cert.n0, cert.n) == (1, 2)
    assert (cert.N1, cert.N2) == (334, 501)
    assert cert.endpoint_lambda1 == Fraction(39, 14)
    assert cert.endpoint_lambda0 == Fraction(459, 217)


def test_lower_certificate_invariants(table):
    cert = certify_rc_lower(table, Fraction(3, 2))
    assert cert.rho * cert.N1 == cert.N2
    assert cert.epsilon == cert.delta / (2 * cert.rho * (1 - cert.delta))
    assert 0 < cert.delta < table.omega
    rn = table.r[cert.n]
    assert 1 - table.omega + 2 * cert.rho * table.omega < Fraction(cert.N1, rn)
    assert Fraction(cert.N1, rn) < 2 * table.kappa_lb * (1 - cert.delta)
    assert cert.endpoint_lambda1 > cert.rho
    assert cert.endpoint_lambda0 > cert.rho
    assert cert.reverify()


def test_lower_certificate_self_contained(table):
    # every stored inequality re-derives from its recorded sides alone
    cert = certify_rc_lower(table, Fraction(3, 2))
    assert verify_checks(cert.checks)
    # tampering with one side must be caught
    broken = cert.checks[0].__class__(
        name=cert.checks[0].name,
        lhs=cert.checks[0].lhs + 1,
        rel=cert.checks[0].rel,
        rhs=cert.checks[0].rhs,
        holds=cert.checks[0].holds,
    )
    assert not verify_checks((broken,) + cert.checks[1:])


def test_lower_certificate_interval_is_open(table):
    with pytest.raises(InputError):
        certify_rc_lower(table, Fraction(1))
    target = (2 * table.kappa_lb - 1) / (2 * table.omega)
    with pytest.raises(InputError):
        certify_rc_lower(table, target)
    with pytest.raises(InputError):
        certify_rc_lower(table, target + 1)


def test_lower_certificate_rho_grid_monotone(table):
    # if rho certifies, every smaller admissible level certifies too
    for num, den in ((11, 10), (5, 4), (3, 2), (7, 4), (2, 1), (9, 4)):
        cert = certify_rc_lower(table, Fraction(num, den))
        assert cert.reverify()


def test_lower_certificate_intermediate_mixtures(table):
    cert = certify_rc_lower(
        table,
        Fraction(3, 2),
        intermediate_lambdas=(Fraction(1, 3), Fraction(1, 2), Fraction(9, 10)),
    )
    assert cert.reverify()
    mixture_checks = [c for c in cert.checks if c.name.startswith("mixture")]
    assert len(mixture_checks) == 6  # denominator + value per mixture


def test_lower_certificate_needs_room(table):
    short = sequences(make_geometric_family(6), 1)
    with pytest.raises(InconclusiveAtHorizon):
        certify_rc_lower(short, Fraction(3, 2))


def test_global_lower_certificate(table):
    cert = certify_rc_global_lower(table, Fraction(1, 2))
    assert (cert.n, cert.M) == (1, 11)
    assert cert.reverify()
    degenerate = certify_rc_global_lower(table, Fraction(0))
    assert (degenerate.n, degenerate.M) == (1, 8)
    assert degenerate.reverify()


def test_global_lower_certificate_rejects_large_rho(table):
    with pytest.raises(InputError):
        certify_rc_global_lower(table, 2 * table.kappa_lb - 1)
    with pytest.raises(InputError):
        certify_rc_global_lower(table, Fraction(-1, 2))


def test_rc_upper_certified_bound(table):
    result = rc_upper(table)
    assert result.certified_limit_bound == Fraction(7, 5)
    stages = dict(result.per_stage)
    assert stages[0] == Fraction(3)  # (2 s(0) + 1)/(r(0) - t(0)), no interval term
    assert stages[1] == Fraction(13, 6)
    assert result.reverify()


def test_rc_upper_bound_formula_generic():
    # tiny first-stage fraction drives the certified bound toward 1
    table = sequences(make_geometric_family(1000), 3)
    result = rc_upper(table)
    assert result.certified_limit_bound == 1 / (1 - Fraction(2, 1001))
    assert result.certified_limit_bound == Fraction(1001, 999)


def test_separation_base_six(table):
    report = separation(table, rho=Fraction(3, 2))
    assert report.separated and report.status == "separated"
    assert report.upper_bound == Fraction(7, 5)
    assert report.upper_bound < Fraction(3, 2) < report.lower_target
    assert report.certificate.reverify()


def test_separation_default_rho(table):
    report = separation(table)
    assert report.rho == Fraction(3, 2)
    assert report.separated


def test_separation_rejects_rho_outside_margin(table):
    with pytest.raises(InputError):
        separation(table, rho=Fraction(7, 5))  # not strictly above the upper bound
    with pytest.raises(InputError):
        separation(table, rho=Fraction(1, 1))


def test_default_separation_rho_midpoint():
    assert default_separation_rho(Fraction(7, 5), Fraction(2)) == Fraction(3, 2)
    assert default_separation_rho(Fraction(8, 5), Fraction(2)) == Fraction(9, 5)


def test_paper_scale_margin(table):
    # the certified lower target comfortably exceeds the ideal margin 7/4,
    # so levels up to and beyond 7/4 remain certifiable
    target = (2 * table.kappa_lb - 1) / (2 * table.omega)
    assert target > Fraction(7, 4)
    cert = certify_rc_lower(table, Fraction(7, 4))
    assert cert.reverify()
