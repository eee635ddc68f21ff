"""Exact certificates for the comparison-radius bounds of the two corners.

The distinguished projection q and its complement sit in corners whose
radii of comparison are controlled from opposite sides:

  * the q corner is bounded above by 1/(1 - 2 omega), via the mean
    dimension of the diagonal system (ratio of space dimension to the
    rank of the corner unit, halved in the limit);

  * the complementary corner is bounded below by any rational rho in
    (1, (2 kappa - 1)/(2 omega)) for which the rank/trace certificate
    below can be completed.

kappa is everywhere replaced by its certified lower bound, which is the
sound direction for every inequality used, so the provable lower target
is (2 kappa_lb - 1)/(2 omega): slightly below the ideal target but
fully certified.  Every certificate records each inequality with both
sides as exact rationals, so it can be re-verified independently of the
code that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InconclusiveAtHorizon, InputError
from .params import (
    ConstraintCheck,
    SequenceTable,
    check,
    compare,
)
from .rationals import as_fraction

#: Denominators tried for delta are the powers of two up to this one.
DELTA_DENOMINATOR_CAP = 2 ** 20


def verify_checks(checks: Sequence[ConstraintCheck]) -> bool:
    """Re-derive every recorded comparison from its stored sides."""
    return all(
        compare(c.lhs, c.rel, c.rhs) == c.holds and c.holds for c in checks
    )


@dataclass(frozen=True)
class RcLowerCertificate:
    """Witness that the complementary corner has comparison radius >= rho.

    The data follow the rank/trace obstruction argument: a test
    projection with component ranks (N1, N2 = rho N1) at stage n is
    pushed forward; the recorded window inequalities force its rank
    below the embedding threshold 2 s(m) at every later stage, while the
    two endpoint values of the normalized trace gap (the extreme points
    over the possible trace mixtures) stay above rho.
    """

    rho: Fraction
    alpha: int
    beta: int
    delta: Fraction
    epsilon: Fraction
    n0: int
    n: int
    N1: int
    N2: int
    endpoint_lambda1: Fraction
    endpoint_lambda0: Fraction
    kappa_lb: Fraction
    omega: Fraction
    checks: tuple

    def reverify(self) -> bool:
        return verify_checks(self.checks)


@dataclass(frozen=True)
class GlobalLowerCertificate:
    """Witness that the whole algebra has comparison radius >= rho."""

    rho: Fraction
    n: int
    M: int
    kappa_lb: Fraction
    checks: tuple

    def reverify(self) -> bool:
        return verify_checks(self.checks)


@dataclass(frozen=True)
class RcUpperResult:
    """Per-stage dimension ratios and the certified limit bound 1/(1-2 omega)."""

    per_stage: tuple  # (stage, ratio) pairs; the max stage ratio u(n)
    certified_limit_bound: Fraction
    checks: tuple

    def reverify(self) -> bool:
        return verify_checks(self.checks)


@dataclass(frozen=True)
class SeparationReport:
    upper_bound: Fraction
    lower_target: Fraction
    rho: Optional[Fraction]
    certificate: Optional[RcLowerCertificate]
    separated: bool
    status: str  # "separated" | "inconclusive"
    advice: str
    checks: tuple


def _find_delta(rho: Fraction, kappa_lb: Fraction, omega: Fraction) -> Fraction:
    """Largest dyadic delta in (0, omega) with rho < (1-delta)(2k-1)/(2w).

    Bisecting the admissible interval by denominator: at each power-of-two
    denominator we try the largest candidate below the bound, and the
    first denominator admitting one wins (ties broken toward larger
    delta by construction).
    """
    bound = min(omega, 1 - (2 * rho * omega) / (2 * kappa_lb - 1))
    denom = 2
    while denom <= DELTA_DENOMINATOR_CAP:
        # largest p/denom strictly below bound
        p = (bound.numerator * denom - 1) // bound.denominator
        if p >= 1:
            delta = Fraction(p, denom)
            if 0 < delta < omega and rho < (1 - delta) * (2 * kappa_lb - 1) / (2 * omega):
                return delta
        denom *= 2
    raise InconclusiveAtHorizon(
        f"no admissible delta with denominator <= {DELTA_DENOMINATOR_CAP}"
    )


def certify_rc_lower(
    table: SequenceTable,
    rho,
    horizon: Optional[int] = None,
    intermediate_lambdas: Sequence[Fraction] = (),
) -> RcLowerCertificate:
    """Search for and verify a lower certificate at level rho.

    Deterministic search: delta by denominator-doubling bisection,
    n0 and n by ascending scan, N1 as the least admissible multiple of
    rho's denominator.  Raises InputError if rho is outside the open
    interval (1, (2 kappa_lb - 1)/(2 omega)) and InconclusiveAtHorizon
    if no stage within the horizon completes the certificate.

    ``intermediate_lambdas`` optionally adds trace-mixture checks at
    interior points; the endpoint checks already suffice because the
    normalized gap is a fractional-linear (hence monotone) function of
    the mixture.
    """
    rho = as_fraction(rho)
    if horizon is None:
        horizon = table.horizon
    horizon = min(horizon, table.horizon)
    kappa_lb = table.kappa_lb
    omega = table.omega
    if table.kappa_lb_vacuous or kappa_lb <= Fraction(1, 2):
        raise InputError("certified kappa bound does not exceed 1/2")
    if not 0 < omega < Fraction(1, 2):
        raise InputError(f"omega = {omega} outside (0, 1/2)")
    target = (2 * kappa_lb - 1) / (2 * omega)
    if not 1 < rho < target:
        raise InputError(
            f"rho must lie strictly between 1 and {target} (certified), got {rho}"
        )

    alpha, beta = rho.numerator, rho.denominator
    delta = _find_delta(rho, kappa_lb, omega)
    epsilon = delta / (2 * rho * (1 - delta))

    checks = [
        check("0 < delta", 0, "<", delta),
        check("delta < omega", delta, "<", omega),
        check(
            "rho < (1-delta)(2 kappa_lb - 1)/(2 omega)",
            rho,
            "<",
            (1 - delta) * (2 * kappa_lb - 1) / (2 * omega),
        ),
        check("epsilon = delta/(2 rho (1-delta))", epsilon, "==",
              delta / (2 * rho * (1 - delta))),
    ]

    # Stage from which the ratio envelope is epsilon-flat: beyond n0,
    # every later ratio stays above (1 - epsilon) times the current one.
    n0 = None
    for cand in range(1, horizon + 1):
        if kappa_lb > (1 - epsilon) * Fraction(table.s[cand], table.r[cand]):
            n0 = cand
            break
    if n0 is None:
        raise InconclusiveAtHorizon(
            f"no stage <= {horizon} with kappa_lb > (1-eps) s/r; raise the horizon"
        )
    checks.append(
        check(
            f"kappa_lb > (1-eps) s({n0})/r({n0})",
            kappa_lb,
            ">",
            (1 - epsilon) * Fraction(table.s[n0], table.r[n0]),
        )
    )

    window_gap = 2 * kappa_lb * (1 - delta) - (1 - omega + 2 * rho * omega)
    checks.append(check("window is nonempty", window_gap, ">", 0))

    n = None
    for cand in range(n0, horizon + 1):
        if Fraction(beta, table.r[cand]) < window_gap:
            n = cand
            break
    if n is None:
        raise InconclusiveAtHorizon(
            f"no stage <= {horizon} makes the window wider than beta = {beta}"
        )
    rn = table.r[n]
    tn = table.t[n]
    checks.append(check(f"beta/r({n}) < window gap", Fraction(beta, rn), "<", window_gap))

    # Least multiple of beta strictly above the window's lower edge.
    lo = (1 - omega + 2 * rho * omega) * rn
    hi = 2 * kappa_lb * (1 - delta) * rn
    N1 = beta * (lo.numerator // (lo.denominator * beta) + 1)
    N2_frac = rho * N1
    if N2_frac.denominator != 1:
        raise InputError(f"rho * N1 = {N2_frac} is not integral")
    N2 = N2_frac.numerator
    checks.append(check("N1/r(n) > 1 - omega + 2 rho omega", Fraction(N1, rn), ">", lo / rn))
    checks.append(check("N1/r(n) < 2 kappa_lb (1-delta)", Fraction(N1, rn), "<", hi / rn))
    checks.append(check("rho N1 == N2", rho * N1, "==", N2))

    # Trace side: the normalized gap at the two extreme mixtures.
    tr = Fraction(tn, rn)
    checks.append(check("t(n) > 0", tn, ">", 0))
    checks.append(check("r(n) - t(n) > 0", rn - tn, ">", 0))
    endpoint1 = (Fraction(N1, rn) - (1 - tr)) / tr
    endpoint0 = (Fraction(N2, rn) - tr) / (1 - tr)
    checks.append(check("endpoint at full X mixture > rho", endpoint1, ">", rho))
    checks.append(check("endpoint at full Y mixture > rho", endpoint0, ">", rho))
    for lam in intermediate_lambdas:
        lam = as_fraction(lam)
        if not 0 <= lam <= 1:
            raise InputError(f"mixture parameter {lam} outside [0, 1]")
        denom = lam * tr + (1 - lam) * (1 - tr)
        checks.append(check(f"mixture {lam} denominator > 0", denom, ">", 0))
        value = (lam + rho * (1 - lam)) * Fraction(N1, rn) - (
            lam * (1 - tr) + (1 - lam) * tr
        )
        checks.append(check(f"mixture {lam} gap > rho", value / denom, ">", rho))

    # Rank side: pushing the test projection keeps its rank below the
    # embedding threshold at every later stage.
    growth = (2 - delta) / (2 * (1 - delta))
    checks.append(check("(2-delta)/(2(1-delta)) <= 1/(1-delta)", growth, "<=",
                        1 / (1 - delta)))
    checks.append(check("growth * N1/r(n) < 2 kappa_lb", growth * Fraction(N1, rn),
                        "<", 2 * kappa_lb))
    for m in range(n + 1, horizon + 1):
        pushed_ub = Fraction(table.r[m], rn) * growth * N1
        checks.append(
            check(f"pushed rank bound < 2 s({m})", pushed_ub, "<", 2 * table.s[m])
        )

    cert = RcLowerCertificate(
        rho=rho,
        alpha=alpha,
        beta=beta,
        delta=delta,
        epsilon=epsilon,
        n0=n0,
        n=n,
        N1=N1,
        N2=N2,
        endpoint_lambda1=endpoint1,
        endpoint_lambda0=endpoint0,
        kappa_lb=kappa_lb,
        omega=omega,
        checks=tuple(checks),
    )
    if not cert.reverify():
        failed = [c.name for c in checks if not c.holds]
        raise InconclusiveAtHorizon(f"certificate checks failed: {failed}")
    return cert


def certify_rc_global_lower(
    table: SequenceTable, rho, horizon: Optional[int] = None
) -> GlobalLowerCertificate:
    """Certificate that the full algebra has comparison radius >= rho.

    Simpler than the corner version: a trivial projection of rank M with
    rho + 1 < M/r(n) < 2 kappa_lb beats the distinguished element's
    trace by more than rho while staying under the embedding threshold
    at every later stage.
    """
    rho = as_fraction(rho)
    if rho < 0:
        raise InputError(f"rho must be >= 0, got {rho}")
    if horizon is None:
        horizon = table.horizon
    horizon = min(horizon, table.horizon)
    kappa_lb = table.kappa_lb
    if table.kappa_lb_vacuous:
        raise InputError("certified kappa bound is vacuous")
    if not rho < 2 * kappa_lb - 1:
        raise InputError(f"need rho < 2 kappa_lb - 1 = {2 * kappa_lb - 1}, got {rho}")

    gap = 2 * kappa_lb - 1 - rho
    n = None
    for cand in range(1, horizon + 1):
        if Fraction(1, table.r[cand]) < gap:
            n = cand
            break
    if n is None:
        raise InconclusiveAtHorizon(f"no stage <= {horizon} with 1/r(n) < {gap}")
    rn = table.r[n]
    lo = (rho + 1) * rn
    M = lo.numerator // lo.denominator + 1
    checks = [
        check(f"1/r({n}) < 2 kappa_lb - 1 - rho", Fraction(1, rn), "<", gap),
        check("rho + 1 < M/r(n)", rho + 1, "<", Fraction(M, rn)),
        check("M/r(n) < 2 kappa_lb", Fraction(M, rn), "<", 2 * kappa_lb),
    ]
    for m in range(n, horizon + 1):
        checks.append(
            check(
                f"pushed rank M r({m})/r({n}) < 2 s({m})",
                Fraction(M * table.r[m], rn),
                "<",
                2 * table.s[m],
            )
        )
    cert = GlobalLowerCertificate(
        rho=rho, n=n, M=M, kappa_lb=kappa_lb, checks=tuple(checks)
    )
    if not cert.reverify():
        failed = [c.name for c in checks if not c.holds]
        raise InconclusiveAtHorizon(f"certificate checks failed: {failed}")
    return cert


def rc_upper(table: SequenceTable) -> RcUpperResult:
    """Certified upper bound 1/(1 - 2 omega) for the q corner.

    Per stage, the dimension-to-rank ratios are (2 s(n) + 1)/(r(n) - t(n))
    on the product-of-spheres side and 1/t(n) on the interval side (the
    latter skipped at stage 0, where the corner unit misses the interval
    component entirely).  The certified limit uses t(n)/r(n) < 2 omega
    exactly at every stage: each sphere-side ratio is at most
    (2 + 1/r(n))/(1 - 2 omega), whose limit is 2/(1 - 2 omega); halving
    gives the bound.
    """
    omega = table.omega
    if not 0 < omega < Fraction(1, 2):
        raise InputError(f"omega = {omega} outside (0, 1/2)")
    bound = 1 / (1 - 2 * omega)
    per_stage = []
    checks = []
    # stage 0 has t(0) = 0 (the corner misses the interval component
    # entirely), so only the sphere-side ratio is listed there
    for n in range(table.horizon + 1):
        rn, sn, tn = table.r[n], table.s[n], table.t[n]
        x_ratio = Fraction(2 * sn + 1, rn - tn)
        ratios = [x_ratio]
        if tn > 0:
            ratios.append(Fraction(1, tn))
        u = max(ratios)
        per_stage.append((n, u))
        checks.append(check(f"t({n})/r({n}) < 2 omega", Fraction(tn, rn), "<", 2 * omega))
        checks.append(
            check(
                f"x-ratio({n}) <= (2 + 1/r({n}))/(1 - 2 omega)",
                x_ratio,
                "<=",
                (2 + Fraction(1, rn)) / (1 - 2 * omega),
            )
        )
    result = RcUpperResult(
        per_stage=tuple(per_stage),
        certified_limit_bound=bound,
        checks=tuple(checks),
    )
    if not result.reverify():
        raise InconclusiveAtHorizon("upper-bound stage checks failed")
    return result


def default_separation_rho(upper: Fraction, lower_target: Fraction) -> Fraction:
    """Deterministic witness level: 3/2 when admissible, else the midpoint."""
    preferred = Fraction(3, 2)
    if upper < preferred < lower_target:
        return preferred
    return (upper + lower_target) / 2


def separation(
    table: SequenceTable, rho=None, horizon: Optional[int] = None
) -> SeparationReport:
    """Verify that the two corners have different comparison radii.

    Needs the certified upper bound for the q corner to fall strictly
    below the certified lower target for the complementary corner, and a
    concrete rho strictly between them whose lower certificate
    completes.  Then

        rc(q corner) <= 1/(1 - 2 omega) < rho <= rc(complementary corner).
    """
    omega = table.omega
    kappa_lb = table.kappa_lb
    if not 0 < omega < Fraction(1, 2):
        raise InputError(f"omega = {omega} outside (0, 1/2)")
    upper = 1 / (1 - 2 * omega)
    lower_target = (2 * kappa_lb - 1) / (2 * omega)
    margin = check("upper bound < lower target", upper, "<", lower_target)
    if not margin.holds:
        return SeparationReport(
            upper_bound=upper,
            lower_target=lower_target,
            rho=None,
            certificate=None,
            separated=False,
            status="inconclusive",
            advice=(
                "certified kappa bound too loose to separate the corners; "
                "recompute it at a larger stage index"
            ),
            checks=(margin,),
        )
    rho = default_separation_rho(upper, lower_target) if rho is None else as_fraction(rho)
    checks = [
        margin,
        check("upper bound < rho", upper, "<", rho),
        check("rho < lower target", rho, "<", lower_target),
    ]
    if not all(c.holds for c in checks):
        raise InputError(
            f"rho = {rho} does not lie strictly between {upper} and {lower_target}"
        )
    certificate = certify_rc_lower(table, rho, horizon=horizon)
    return SeparationReport(
        upper_bound=upper,
        lower_target=lower_target,
        rho=rho,
        certificate=certificate,
        separated=True,
        status="separated",
        advice="",
        checks=tuple(checks),
    )
