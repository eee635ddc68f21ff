import random
from fractions import Fraction

import pytest

from ahcert.errors import InputError
from ahcert.params import (
    STATUS_FAIL,
    check_constraints,
    kappa_lower_bound,
    make_explicit_family,
    make_geometric_family,
    omega_prime_upper_bound,
    sequences,
)


def test_geometric_family_closed_form():
    fam = make_geometric_family(6)
    assert fam.d(0) == 1 and fam.k(0) == 0
    assert fam.d(1) == 6 and fam.k(1) == 1 and fam.l(1) == 7
    assert fam.d(3) == 216

    fam2 = make_geometric_family(2)
    assert [fam2.d(n) for n in range(4)] == [1, 2, 4, 8]
    assert [fam2.k(n) for n in range(4)] == [0, 1, 1, 1]


@pytest.mark.parametrize("bad", [1, 0, -3])
def test_geometric_family_rejects_small_base(bad):
    with pytest.raises(InputError):
        make_geometric_family(bad)


def test_geometric_tail_majorant_value():
    fam = make_geometric_family(6)
    assert fam.tail(3) == Fraction(1, 1080)
    assert fam.tail(0) == Fraction(1, 5)


def test_tail_majorant_dominates_partial_sums():
    # Independent check: partial sums of k(j)/l(j) never exceed the majorant.
    fam = make_geometric_family(6)
    for n in range(0, 8):
        partial = sum(
            Fraction(fam.k(j), fam.l(j)) for j in range(n + 1, n + 60)
        )
        assert partial <= fam.tail(n)
    tails = [fam.tail(n) for n in range(12)]
    assert all(b <= a for a, b in zip(tails, tails[1:]))


def test_sequences_small_horizon_exact_values():
    table = sequences(make_geometric_family(6), 2)
    assert table.r == (1, 7, 259)
    assert table.s == (1, 6, 216)
    assert table.t == (0, 1, 42)


def test_sequences_recursions_rederivable():
    table = sequences(make_geometric_family(6), 40)
    for n in range(41):
        assert table.l[n] == table.d[n] + table.k[n]
    for n in range(1, 41):
        assert table.r[n] == table.r[n - 1] * table.l[n]
        assert table.s[n] == table.s[n - 1] * table.d[n]
        assert table.t[n] == table.d[n] * table.t[n - 1] + table.k[n] * (
            table.r[n - 1] - table.t[n - 1]
        )
    assert table.t[0] == 0 and table.r[0] == 1 and table.s[0] == 1


def test_sequences_omega_is_first_stage_fraction():
    table = sequences(make_geometric_family(6), 1)
    assert table.omega == Fraction(1, 7)


def test_sequences_rejects_bad_horizon():
    with pytest.raises(InputError):
        sequences(make_geometric_family(6), 0)


def test_explicit_family_validation():
    with pytest.raises(InputError):
        make_explicit_family([2, 6], [0, 1])  # d(0) != 1
    with pytest.raises(InputError):
        make_explicit_family([1, 6], [1, 1])  # k(0) != 0
    with pytest.raises(InputError):
        make_explicit_family([1, 6], [0])  # length mismatch
    fam = make_explicit_family([1, 6, 36], [0, 1, 1])
    with pytest.raises(InputError):
        fam.d(3)  # beyond the supplied range
    with pytest.raises(InputError):
        sequences(fam, 5)


def test_kappa_lower_bound_frozen_value():
    fam = make_geometric_family(6)
    expected = Fraction(46656, 56203) * Fraction(1079, 1080)
    assert kappa_lower_bound(fam, 3) == expected
    assert expected > Fraction(3, 4)


def test_kappa_lower_bound_monotone_and_enveloped():
    fam = make_geometric_family(6)
    bounds = [kappa_lower_bound(fam, n) for n in range(1, 13)]
    assert all(b <= Fraction(6, 7) for b in bounds)
    assert all(b2 >= b1 for b1, b2 in zip(bounds, bounds[1:]))


def test_kappa_lower_bound_is_sound():
    # kappa_lb(n) must sit below every ratio s(m)/r(m), also for m > n.
    fam = make_geometric_family(6)
    table = sequences(fam, 30)
    for n in (1, 3, 7):
        lb = kappa_lower_bound(fam, n)
        for m in range(1, 31):
            assert lb <= Fraction(table.s[m], table.r[m])


def test_omega_prime_upper_bound_values():
    fam = make_geometric_family(6)
    assert omega_prime_upper_bound(fam, 2) == Fraction(1, 37) + Fraction(1, 180)
    for n in range(2, 12):
        assert omega_prime_upper_bound(fam, n) <= Fraction(1, 30)
    with pytest.raises(InputError):
        omega_prime_upper_bound(fam, 1)


def test_omega_prime_upper_bound_empty_sum():
    # All-zero k beyond stage 1 leaves only the tail term.
    fam = make_explicit_family(
        [1, 6, 36, 216], [0, 1, 0, 0], tail_majorant=lambda n: Fraction(0)
    )
    assert omega_prime_upper_bound(fam, 3) == 0


def test_ratio_monotonicity_invariants():
    table = sequences(make_geometric_family(6), 40)
    sr = [Fraction(table.s[n], table.r[n]) for n in range(1, 41)]
    assert all(b < a for a, b in zip(sr, sr[1:]))
    tr = [Fraction(table.t[n], table.r[n]) for n in range(41)]
    assert all(b > a for a, b in zip(tr, tr[1:]))
    assert all(x < Fraction(1, 2) for x in tr)


def test_ratio_invariants_random_families():
    rng = random.Random(20260811)
    for _ in range(20):
        n_stages = rng.randint(3, 8)
        d = [1]
        k = [0]
        for _ in range(n_stages):
            kn = rng.randint(1, 5)
            d.append(rng.randint(kn + 1, kn + 30))
            k.append(kn)
        fam = make_explicit_family(d, k)
        table = sequences(fam, n_stages)
        sr = [Fraction(table.s[n], table.r[n]) for n in range(1, n_stages + 1)]
        assert all(b < a for a, b in zip(sr, sr[1:]))
        tr = [Fraction(table.t[n], table.r[n]) for n in range(n_stages + 1)]
        assert all(b > a for a, b in zip(tr, tr[1:]))
        assert all(x < Fraction(1, 2) for x in tr[1:])


def test_sandwich_between_omega_and_bound():
    table = sequences(make_geometric_family(6), 40)
    upper = table.omega + table.omega_prime_ub
    assert upper < 2 * table.omega
    for n in range(1, 41):
        ratio = Fraction(table.t[n], table.r[n])
        assert table.omega <= ratio <= upper


def test_check_constraints_all_pass_for_base_six():
    report = check_constraints(make_geometric_family(6), 40)
    assert report.all_passed and not report.exactly_refuted
    assert report.reverify()
    table = report.table
    assert table.omega == Fraction(1, 7)
    assert table.omega_prime_ub <= Fraction(1, 30)
    assert table.kappa_lb > Fraction(3, 4)
    assert 2 * table.kappa_lb - 1 > Fraction(2, 7)
    assert Fraction(7, 5) < (2 * table.kappa_lb - 1) * Fraction(7, 2)


def test_check_constraints_refutes_base_two():
    report = check_constraints(make_geometric_family(2), 10)
    assert report.exactly_refuted
    entry = report.entry("kappa_gt_half")
    assert entry.status == STATUS_FAIL
    # the refuting witness is the exact envelope s(10)/r(10) <= 1/2
    table = report.table
    assert Fraction(table.s[10], table.r[10]) <= Fraction(1, 2)
    # the partial sum of evaluation fractions already exceeds omega = 1/3,
    # so the series constraint is exactly refuted as well
    entry = report.entry("omega_window")
    assert entry.status == STATUS_FAIL and entry.evidence == "exact"
    assert table.omega_prime_partial >= table.omega


def test_check_constraints_flags_k_ge_d():
    fam = make_explicit_family([1, 6, 6], [0, 1, 6])
    report = check_constraints(fam, 2)
    assert report.entry("k_lt_d").status == STATUS_FAIL
    assert report.exactly_refuted


def test_horizon_limited_family_marked():
    fam = make_explicit_family([1, 6, 36, 216], [0, 1, 1, 1])
    assert fam.horizon_limited
    report = check_constraints(fam, 3)
    assert report.table.horizon_limited
    for name in ("kappa_gt_half", "omega_window"):
        assert report.entry(name).evidence == "horizon-limited"
    with pytest.raises(InputError):
        fam.tail(1)


def test_check_constraints_horizon_one():
    report = check_constraints(make_geometric_family(6), 1)
    assert report.all_passed
    assert report.table.omega_prime_ub == Fraction(1, 30)


def test_geometric_ratio_majorant_verifies_supplied_range():
    from ahcert.params import geometric_ratio_majorant

    d = [1, 6, 36, 216]
    k = [0, 1, 1, 1]
    tail = geometric_ratio_majorant(d, k, 6)
    assert tail(2) == Fraction(1, 180)
    # k(2)/l(2) = 10/46 > 1/36 breaks the per-term bound
    with pytest.raises(InputError):
        geometric_ratio_majorant([1, 6, 36], [0, 1, 10], 6)
