"""Closed-form P_m(3) and L_m(3), checked against simulation.

P_m(3) is built from prime-power pieces:

    2        -> 3
    2^l      -> 6                            (l >= 2)
    p        -> lcm(6, ord_p(2))              (p odd prime)
    p^l      -> p^(l-1) * lcm(6, ord_p(2))

and combined with lcm. L_m(3) is the exponent of 2 in m.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import lcm

from .coefficients import coeff_triple
from .core import BudgetExceeded, ModTuple, check_modulus, step_budget
from .ntheory import factorize, fermat_quotient_probe, mult_order_2, two_adic
from .orbit import orbit_info

log = logging.getLogger(__name__)

NOTE_WIEFERICH = "wieferich-prime-factor"
NOTE_PRODUCT_MISMATCH = "paper-product-formula-mismatch"
NOTE_CANDIDATE_HOLDS = "wieferich-candidate-period-holds"
NOTE_BUDGET = "budget-exceeded"


def prime_period(p: int) -> int:
    """P_p(3) for a prime p."""
    if p == 2:
        return 3
    return lcm(6, mult_order_2(p))


def prime_power_period(p: int, e: int) -> int:
    if p == 2:
        return 3 if e == 1 else 6
    return p ** (e - 1) * prime_period(p)


def formula_period(m: int) -> int:
    check_modulus(m)
    if m == 1:
        return 1
    return lcm(*(prime_power_period(p, e) for p, e in factorize(m)))


def product_formula_period(m: int) -> int:
    """lcm of the prime periods times prod p^(e-1).

    This alternative closed form disagrees with formula_period whenever
    8 | m, and for some other composites; it is kept only to flag them.
    """
    check_modulus(m)
    if m == 1:
        return 1
    f = factorize(m)
    out = lcm(*(prime_period(p) for p, _ in f))
    for p, e in f:
        out *= p ** (e - 1)
    return out


def formula_length(m: int) -> int:
    check_modulus(m)
    return two_adic(m)


@dataclass(frozen=True)
class CandidateCheck:
    """Does D^candidate fix (0,0,1) modulo the prime power p^e?

    candidate is p^(e-2) * P_p(3), the smaller period that the closed form
    rules out only when p is not a Wieferich prime.
    """

    p: int
    e: int
    modulus: int
    candidate: int
    returns: bool


@dataclass
class PeriodReport:
    m: int
    formula_period: int
    formula_length: int
    simulated_period: int | None = None
    simulated_length: int | None = None
    agrees: bool | None = None
    notes: list[str] = field(default_factory=list)
    candidate_checks: list[CandidateCheck] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "formula_period": self.formula_period,
            "simulated_period": self.simulated_period,
            "formula_length": self.formula_length,
            "simulated_length": self.simulated_length,
            "agrees": self.agrees,
            "notes": list(self.notes),
            "candidate_checks": [
                {
                    "p": c.p,
                    "e": c.e,
                    "modulus": c.modulus,
                    "candidate": c.candidate,
                    "returns": c.returns,
                }
                for c in self.candidate_checks
            ],
        }


def wieferich_candidate_check(p: int, e: int) -> CandidateCheck:
    q = p**e
    candidate = p ** (e - 2) * prime_period(p)
    t = coeff_triple(candidate, q)
    # (0,0,1) is on its cycle for odd moduli, so returning means
    # D^candidate(0,0,1) = (c, b, a) = (0, 0, 1).
    returns = (t.a, t.b, t.c) == (1 % q, 0, 0)
    return CandidateCheck(p, e, q, candidate, returns)


def verify(m: int, simulate: bool = True, budget: int | None = None) -> PeriodReport:
    """Closed forms for m, optionally cross-checked by simulating (0,0,1)."""
    fp = formula_period(m)
    fl = formula_length(m)
    report = PeriodReport(m, fp, fl)

    if m > 1:
        if product_formula_period(m) != fp:
            report.notes.append(NOTE_PRODUCT_MISMATCH)
        for p, e in factorize(m):
            if p == 2 or e < 2:
                continue
            if not fermat_quotient_probe(p).is_wieferich:
                continue
            if NOTE_WIEFERICH not in report.notes:
                report.notes.append(NOTE_WIEFERICH)
            check = wieferich_candidate_check(p, e)
            report.candidate_checks.append(check)
            if check.returns and NOTE_CANDIDATE_HOLDS not in report.notes:
                report.notes.append(NOTE_CANDIDATE_HOLDS)

    if simulate:
        budget = step_budget() if budget is None else budget
        cost = fp + fl
        if cost > budget:
            raise BudgetExceeded(f"simulation mod {m}", cost, budget)
        info = orbit_info(ModTuple.basic(m, 3))
        report.simulated_period = info.per
        report.simulated_length = info.len
        report.agrees = info.per == fp and info.len == fl
        if not report.agrees:
            log.info("closed form disagrees with simulation for m=%d", m)
    return report


def _verify_row(args: tuple[int, bool, int | None]) -> PeriodReport:
    m, simulate, budget = args
    try:
        return verify(m, simulate, budget)
    except BudgetExceeded:
        report = verify(m, simulate=False)
        report.notes.append(NOTE_BUDGET)
        return report


def sweep(
    m_lo: int,
    m_hi: int,
    simulate: bool = True,
    jobs: int = 1,
    budget: int | None = None,
) -> list[PeriodReport]:
    """verify() for every m in [m_lo, m_hi], in ascending m."""
    if m_lo > m_hi:
        raise ValueError(f"empty range {m_lo}..{m_hi}")
    check_modulus(m_lo)
    check_modulus(m_hi)
    if budget is None and simulate:
        budget = step_budget()
    work = [(m, simulate, budget) for m in range(m_lo, m_hi + 1)]
    if jobs <= 1 or len(work) == 1:
        return [_verify_row(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map() yields in submission order, so row order is scheduling-free.
        return list(pool.map(_verify_row, work, chunksize=16))
