"""Integer sequences and certified rational constants of the diagonal system.

A parameter family fixes two sequences d(n), k(n) of nonnegative integers
with d(0) = 1 and k(0) = 0.  From them we derive

    l(n) = d(n) + k(n),
    r(n) = prod_{j<=n} l(j),        (matrix size at stage n)
    s(n) = prod_{j<=n} d(j),        (pure-projection block count)
    t(0) = 0,
    t(n+1) = d(n+1) t(n) + k(n+1) (r(n) - t(n)),

and the governing constants

    kappa  = inf_n s(n)/r(n),
    omega  = k(1)/l(1),
    omega' = sum_{n>=2} k(n)/l(n).

kappa and omega' are limits, so a finite machine can only certify
one-sided bounds for them: a lower bound for kappa, an upper bound for
omega'.  Both are produced from partial data plus a *tail majorant*: an
exact rational upper bound on sum_{j>n} k(j)/l(j).  For the geometric
family (d(n) = N^n, k(n) = 1) the majorant is built in; explicit
families may supply their own, and without one every bound is marked
horizon-limited.

All arithmetic in this module is exact; there is no floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import InputError
from .rationals import as_fraction

GEOMETRIC = "geometric"
EXPLICIT = "explicit"

#: Evidence levels for constraint verdicts.
EVIDENCE_EXACT = "exact"                      # finite data decides it outright
EVIDENCE_CERTIFIED = "certified-bound"        # via a one-sided certified bound
EVIDENCE_HORIZON_LIMITED = "horizon-limited"  # only checked up to the horizon

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ParamFamily:
    """A family of sequences d, k together with an optional tail majorant.

    ``tail_majorant(n)`` must return an exact rational upper bound on
    sum_{j>n} k(j)/(d(j)+k(j)), nonincreasing in n.  ``length`` is the
    largest index for which d and k are defined (None = unbounded).
    """

    kind: str
    d_of: Callable[[int], int]
    k_of: Callable[[int], int]
    tail_majorant: Optional[Callable[[int], Fraction]] = None
    length: Optional[int] = None
    description: dict = field(default_factory=dict)

    def d(self, n: int) -> int:
        self._check_index(n)
        return self.d_of(n)

    def k(self, n: int) -> int:
        self._check_index(n)
        return self.k_of(n)

    def l(self, n: int) -> int:
        return self.d(n) + self.k(n)

    def tail(self, n: int) -> Fraction:
        if self.tail_majorant is None:
            raise InputError(
                "family has no tail majorant; bounds are horizon-limited"
            )
        return self.tail_majorant(n)

    @property
    def horizon_limited(self) -> bool:
        return self.tail_majorant is None

    def _check_index(self, n: int) -> None:
        if n < 0:
            raise InputError(f"sequence index must be >= 0, got {n}")
        if self.length is not None and n > self.length:
            raise InputError(
                f"explicit family defines stages 0..{self.length}, got {n}"
            )


def make_geometric_family(N: int) -> ParamFamily:
    """The family d(n) = N^n, k(n) = 1 for n >= 1 (d(0)=1, k(0)=0).

    Its evaluation fractions satisfy k(n)/l(n) = 1/(N^n + 1) < N^-n, so
    sum_{j>n} k(j)/l(j) <= sum_{j>n} N^-j = N^-n/(N-1), which is the
    built-in tail majorant.
    """
    if not isinstance(N, int) or N < 2:
        raise InputError(f"geometric family requires integer N >= 2, got {N!r}")

    def d_of(n: int) -> int:
        return 1 if n == 0 else N ** n

    def k_of(n: int) -> int:
        return 0 if n == 0 else 1

    def tail(n: int) -> Fraction:
        if n < 0:
            raise InputError(f"tail majorant index must be >= 0, got {n}")
        return Fraction(1, N ** n * (N - 1))

    return ParamFamily(
        kind=GEOMETRIC,
        d_of=d_of,
        k_of=k_of,
        tail_majorant=tail,
        length=None,
        description={"kind": GEOMETRIC, "N": N},
    )


def make_explicit_family(
    d: Sequence[int],
    k: Sequence[int],
    tail_majorant: Optional[Callable[[int], Fraction]] = None,
    description: Optional[dict] = None,
) -> ParamFamily:
    """Wrap explicit integer lists d, k (indexed from stage 0).

    Without a tail majorant the family still works, but every limit
    bound derived from it is horizon-limited.
    """
    d = list(d)
    k = list(k)
    if len(d) != len(k):
        raise InputError(f"d and k must have equal length, got {len(d)} and {len(k)}")
    if not d:
        raise InputError("explicit family needs at least stage 0")
    if d[0] != 1 or k[0] != 0:
        raise InputError(f"stage 0 must have d(0)=1, k(0)=0, got d={d[0]}, k={k[0]}")
    for n, (dn, kn) in enumerate(zip(d, k)):
        if not isinstance(dn, int) or not isinstance(kn, int) or dn < 0 or kn < 0:
            raise InputError(f"d({n}), k({n}) must be nonnegative integers")
    desc = dict(description or {})
    desc.setdefault("kind", EXPLICIT)
    desc.setdefault("d", list(d))
    desc.setdefault("k", list(k))
    return ParamFamily(
        kind=EXPLICIT,
        d_of=lambda n: d[n],
        k_of=lambda n: k[n],
        tail_majorant=tail_majorant,
        length=len(d) - 1,
        description=desc,
    )


def geometric_ratio_majorant(d: Sequence[int], k: Sequence[int], N: int):
    """Tail majorant asserting k(j)/l(j) <= N^-j, verified on the given range.

    The per-term bound is checked exactly for every supplied stage; the
    caller asserts it for stages beyond the list.
    """
    if N < 2:
        raise InputError(f"majorant ratio base must be >= 2, got {N}")
    for j in range(1, len(d)):
        lj = d[j] + k[j]
        if lj == 0 or Fraction(k[j], lj) > Fraction(1, N ** j):
            raise InputError(
                f"k({j})/l({j}) exceeds {N}^-{j}; geometric majorant unsound"
            )

    def tail(n: int) -> Fraction:
        return Fraction(1, N ** n * (N - 1))

    return tail


@dataclass(frozen=True)
class SequenceTable:
    """Exact values of d, k, l, r, s, t up to a horizon, plus constants.

    ``kappa_lb`` is a certified lower bound for inf_n s(n)/r(n) (valid at
    every stage, including beyond the horizon, whenever the family has a
    tail majorant).  ``kappa_ub`` = s(horizon)/r(horizon) is the exact
    upper envelope, useful for refutations.  ``omega_prime_ub`` bounds
    the full series; ``omega_prime_partial`` is the horizon partial sum
    (a lower bound for omega').
    """

    family: ParamFamily
    horizon: int
    d: tuple
    k: tuple
    l: tuple
    r: tuple
    s: tuple
    t: tuple
    omega: Fraction
    omega_prime_ub: Fraction
    omega_prime_partial: Fraction
    kappa_lb: Fraction
    kappa_ub: Fraction
    kappa_lb_vacuous: bool
    horizon_limited: bool


def sequences(family: ParamFamily, horizon: int) -> SequenceTable:
    """Tabulate all six sequences exactly and fill the certified constants."""
    if horizon < 1:
        raise InputError(f"horizon must be >= 1, got {horizon}")
    d = [family.d(n) for n in range(horizon + 1)]
    k = [family.k(n) for n in range(horizon + 1)]
    l = [dn + kn for dn, kn in zip(d, k)]
    r = list(itertools.accumulate(l, lambda acc, x: acc * x))
    s = list(itertools.accumulate(d, lambda acc, x: acc * x))
    t = [0]
    for n in range(horizon):
        t.append(d[n + 1] * t[n] + k[n + 1] * (r[n] - t[n]))

    if l[1] == 0:
        raise InputError("l(1) = 0: stage 1 has no summands")
    omega = Fraction(k[1], l[1])
    partial = sum((Fraction(k[j], l[j]) for j in range(2, horizon + 1)), Fraction(0))
    kappa_ub = Fraction(s[horizon], r[horizon])

    if family.horizon_limited:
        kappa_lb = min(Fraction(s[n], r[n]) for n in range(1, horizon + 1))
        omega_prime_ub = partial
        vacuous = False
    else:
        tail = family.tail(horizon)
        kappa_lb = kappa_ub * (1 - tail)
        omega_prime_ub = partial + tail
        vacuous = tail >= 1

    return SequenceTable(
        family=family,
        horizon=horizon,
        d=tuple(d),
        k=tuple(k),
        l=tuple(l),
        r=tuple(r),
        s=tuple(s),
        t=tuple(t),
        omega=omega,
        omega_prime_ub=omega_prime_ub,
        omega_prime_partial=partial,
        kappa_lb=kappa_lb,
        kappa_ub=kappa_ub,
        kappa_lb_vacuous=vacuous,
        horizon_limited=family.horizon_limited,
    )


def kappa_lower_bound(family: ParamFamily, n: int) -> Fraction:
    """Certified lower bound (s(n)/r(n)) * (1 - tail_majorant(n)) for kappa.

    Soundness: for m > n,
        s(m)/r(m) = (s(n)/r(n)) * prod_{j=n+1..m} (1 - k(j)/l(j))
                 >= (s(n)/r(n)) * (1 - sum_{j>n} k(j)/l(j)),
    by the Weierstrass product inequality, and s(m)/r(m) >= s(n)/r(n)
    >= the bound for m <= n since the ratio sequence is nonincreasing.
    A vacuous bound (tail >= 1) is returned as-is; callers should treat
    kappa_lb <= 0 results as inconclusive rather than failed.
    """
    if n < 1:
        raise InputError(f"kappa lower bound needs n >= 1, got {n}")
    ratio = Fraction(1)
    for j in range(1, n + 1):
        lj = family.l(j)
        if lj == 0:
            raise InputError(f"l({j}) = 0: ratio s/r undefined")
        ratio *= Fraction(family.d(j), lj)
    return ratio * (1 - family.tail(n))


def omega_prime_upper_bound(family: ParamFamily, n: int) -> Fraction:
    """sum_{j=2..n} k(j)/l(j) + tail_majorant(n), an upper bound for omega'."""
    if n < 2:
        raise InputError(f"omega' upper bound needs n >= 2, got {n}")
    partial = sum(
        (Fraction(family.k(j), family.l(j)) for j in range(2, n + 1)), Fraction(0)
    )
    return partial + family.tail(n)


@dataclass(frozen=True)
class ConstraintCheck:
    """One exact comparison, kept re-derivable from its recorded sides."""

    name: str
    lhs: Fraction
    rel: str
    rhs: Fraction
    holds: bool

    def reverify(self) -> bool:
        return compare(self.lhs, self.rel, self.rhs) == self.holds


_REL_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


def compare(lhs: Fraction, rel: str, rhs: Fraction) -> bool:
    try:
        op = _REL_OPS[rel]
    except KeyError:
        raise InputError(f"unknown relation {rel!r}") from None
    return op(as_fraction(lhs), as_fraction(rhs))


def check(name: str, lhs, rel: str, rhs) -> ConstraintCheck:
    lhs = as_fraction(lhs)
    rhs = as_fraction(rhs)
    return ConstraintCheck(name, lhs, rel, rhs, compare(lhs, rel, rhs))


@dataclass(frozen=True)
class ConstraintEntry:
    """Verdict for one named constraint.

    status is "pass" (holds, using sound one-sided bounds where a limit
    is involved), "fail" (an exact counter-witness exists in the finite
    data), or "inconclusive" (the certified bound is too loose to decide
    either way).
    """

    name: str
    status: str
    evidence: str
    checks: tuple
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == STATUS_PASS


@dataclass(frozen=True)
class ConstraintReport:
    entries: tuple
    table: SequenceTable

    @property
    def all_passed(self) -> bool:
        return all(e.status == STATUS_PASS for e in self.entries)

    @property
    def exactly_refuted(self) -> bool:
        return any(e.status == STATUS_FAIL for e in self.entries)

    def entry(self, name: str) -> ConstraintEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def reverify(self) -> bool:
        return all(c.reverify() for e in self.entries for c in e.checks)


def check_constraints(family: ParamFamily, horizon: int) -> ConstraintReport:
    """Evaluate every structural constraint of the family, exactly.

    Constraints on the limit kappa are decided three ways: they pass if
    they hold with the certified lower bound kappa_lb (the sound
    direction for every downstream use), they fail if violated even by
    the exact upper envelope s(horizon)/r(horizon) >= kappa, and are
    inconclusive otherwise.  Likewise omega' uses its upper bound to
    pass and its partial sum (a lower bound) to refute.  Failures are
    reported, never raised.
    """
    table = sequences(family, horizon)
    evidence_limit = (
        EVIDENCE_HORIZON_LIMITED if table.horizon_limited else EVIDENCE_CERTIFIED
    )
    entries = []

    # k(n) < d(n) at every tabulated stage.  Violations are exact.
    bad = [n for n in range(horizon + 1) if not table.k[n] < table.d[n]]
    witness_n = bad[0] if bad else horizon
    entries.append(
        ConstraintEntry(
            name="k_lt_d",
            status=STATUS_FAIL if bad else STATUS_PASS,
            evidence=EVIDENCE_EXACT,
            checks=(
                check(
                    f"k({witness_n}) < d({witness_n})",
                    table.k[witness_n],
                    "<",
                    table.d[witness_n],
                ),
            ),
            note="" if not bad else f"violated at stages {bad[:8]}",
        )
    )

    half = Fraction(1, 2)

    def limit_entry(name, pass_checks, fail_checks, note=""):
        """Three-way verdict from sound-bound checks vs exact refutation."""
        if all(c.holds for c in pass_checks):
            return ConstraintEntry(
                name, STATUS_PASS, evidence_limit, tuple(pass_checks), note
            )
        if not all(c.holds for c in fail_checks):
            refuting = tuple(c for c in fail_checks if not c.holds)
            return ConstraintEntry(
                name, STATUS_FAIL, EVIDENCE_EXACT, tuple(pass_checks) + refuting, note
            )
        return ConstraintEntry(
            name, STATUS_INCONCLUSIVE, evidence_limit, tuple(pass_checks), note
        )

    # kappa > 1/2, attempted with kappa_lb, refuted with the envelope.
    entries.append(
        limit_entry(
            "kappa_gt_half",
            [check("kappa_lb > 1/2", table.kappa_lb, ">", half)],
            [check("kappa_ub > 1/2", table.kappa_ub, ">", half)],
        )
    )

    # omega' < omega < 1/2.  omega is exact; omega' needs both bounds.
    omega_checks = [
        check("omega_prime_ub < omega", table.omega_prime_ub, "<", table.omega),
        check("omega < 1/2", table.omega, "<", half),
    ]
    omega_fail_checks = [
        check(
            "omega_prime_partial < omega",
            table.omega_prime_partial,
            "<",
            table.omega,
        ),
        check("omega < 1/2", table.omega, "<", half),
    ]
    entries.append(limit_entry("omega_window", omega_checks, omega_fail_checks))

    # 2*kappa - 1 > 2*omega.
    entries.append(
        limit_entry(
            "comparison_gap",
            [check("2*kappa_lb - 1 > 2*omega", 2 * table.kappa_lb - 1, ">", 2 * table.omega)],
            [check("2*kappa_ub - 1 > 2*omega", 2 * table.kappa_ub - 1, ">", 2 * table.omega)],
        )
    )

    # 1/(1 - 2*omega) < (2*kappa - 1)/(2*omega): the separation margin.
    if table.omega >= half or table.omega <= 0:
        entries.append(
            ConstraintEntry(
                name="separation_margin",
                status=STATUS_FAIL,
                evidence=EVIDENCE_EXACT,
                checks=(check("0 < omega < 1/2", table.omega, "<", half),),
                note="margin undefined unless 0 < omega < 1/2",
            )
        )
    else:
        upper = 1 / (1 - 2 * table.omega)
        entries.append(
            limit_entry(
                "separation_margin",
                [
                    check(
                        "1/(1-2*omega) < (2*kappa_lb - 1)/(2*omega)",
                        upper,
                        "<",
                        (2 * table.kappa_lb - 1) / (2 * table.omega),
                    )
                ],
                [
                    check(
                        "1/(1-2*omega) < (2*kappa_ub - 1)/(2*omega)",
                        upper,
                        "<",
                        (2 * table.kappa_ub - 1) / (2 * table.omega),
                    )
                ],
            )
        )

    return ConstraintReport(entries=tuple(entries), table=table)
