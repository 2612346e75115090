"""Hecke operators, the Shimura lift, and eigenvalue diagnostics.

All sequences use the same convention as the form types: a list indexed
by n with entry 0 an unused zero, covering 1 <= n <= its own precision.
Eigenvalue extraction is exact integer arithmetic; a non-dividing ratio
is a hard not-an-eigenform verdict, never a rounding question.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .arith import (DirichletCharacter, chi_star, chi_t_N, divisors,
                    is_prime, is_squarefree, kronecker)
from .forms import HalfIntegralForm, IntegralForm


@dataclass
class LiftResult:
    """Lifted coefficient sequence A(n), 1 <= n <= prec, with source data."""

    t: int
    series: list[int]
    prec: int
    k: int
    source_level: int
    character: DirichletCharacter

    @property
    def weight(self) -> int:
        return 2 * self.k

    @property
    def level(self) -> int:
        return self.source_level // 2

    def a(self, n: int) -> int:
        return self.series[n]

    def as_integral_form(self) -> IntegralForm:
        """Repackage as a weight-2k form on level N/2 with the squared
        character (trivial on the residues coprime to the level)."""
        return IntegralForm(weight=self.weight, level=self.level,
                            character=DirichletCharacter.trivial(self.level),
                            coeffs=list(self.series), prec=self.prec)


@dataclass
class EigenReport:
    """Outcome of comparing a sequence with its image under an operator."""

    p: int | None
    lam: int | None
    is_eigen: bool
    checked_up_to: int
    first_violation: int | None = None
    satake: tuple[int, int, int] | None = None
    note: str = ""


def shimura_lift(f: HalfIntegralForm, t: int) -> LiftResult:
    """Lift at the square-free index t:

        A(n) = sum_{d | n} chi_{t,N}(d) d^(k-1) a(n^2 t / d^2),

    valid for n <= floor(sqrt(prec / t)).
    """
    if t < 1 or not is_squarefree(t):
        raise ValueError("t must be a square-free positive integer")
    if t > f.prec:
        raise ValueError("a(t) is beyond the form's precision")
    k, N = f.k, f.level
    prec_a = isqrt(f.prec // t)
    out = [0] * (prec_a + 1)
    for n in range(1, prec_a + 1):
        acc = 0
        nn_t = n * n * t
        for d in divisors(n):
            chi = chi_t_N(k, N, t, d)
            if chi:
                acc += chi * d ** (k - 1) * f.a(nn_t // (d * d))
        out[n] = acc
    return LiftResult(t=t, series=out, prec=prec_a, k=k,
                      source_level=N, character=f.character)


def t_square_half(p: int, f: HalfIntegralForm) -> list[int]:
    """Apply T(p^2) for a prime p not dividing the level:

        b(n) = a(p^2 n) + chi*(p) (n/p) p^(k-1) a(n)
             + chi(p)^2 p^(2k-1) a(n / p^2),

    with the last term zero unless p^2 | n.  Valid for n <= prec // p^2.
    """
    _require_good_prime(p, f.level)
    k = f.k
    cs = chi_star(f.character, k, p)
    c2 = f.character(p) ** 2
    pk1 = p ** (k - 1)
    p2k1 = p ** (2 * k - 1)
    psq = p * p
    prec = f.prec // psq
    out = [0] * (prec + 1)
    for n in range(1, prec + 1):
        b = f.a(psq * n) + cs * kronecker(n, p) * pk1 * f.a(n)
        if n % psq == 0:
            b += c2 * p2k1 * f.a(n // psq)
        out[n] = b
    return out


def t_integral(p: int, F: IntegralForm) -> list[int]:
    """Apply the integral-weight T(p) for a prime p not dividing the level:

        B(n) = A(p n) + chi^2(p) p^(2k-1) A(n / p),

    valid for n <= prec // p.
    """
    _require_good_prime(p, F.level)
    c2 = F.character(p) ** 2
    p2k1 = p ** (F.weight - 1)
    prec = F.prec // p
    out = [0] * (prec + 1)
    for n in range(1, prec + 1):
        b = F.a(p * n)
        if n % p == 0:
            b += c2 * p2k1 * F.a(n // p)
        out[n] = b
    return out


def extract_eigenvalue(seq_before: list[int], seq_after: list[int],
                       p: int | None = None,
                       k: int | None = None) -> EigenReport:
    """Compare two sequences on their shared index range.

    The candidate eigenvalue is read off at the first index where
    seq_before is nonzero and divides exactly; is_eigen requires
    seq_after(n) = lam * seq_before(n) at every shared index.
    """
    shared = min(len(seq_before), len(seq_after)) - 1
    if shared < 1:
        raise ValueError("sequences share no indices")
    n0 = next((n for n in range(1, shared + 1) if seq_before[n] != 0), None)
    if n0 is None:
        raise ValueError("seq_before vanishes on the shared range")
    lam, rem = divmod(seq_after[n0], seq_before[n0])
    if rem != 0:
        return EigenReport(p=p, lam=None, is_eigen=False, checked_up_to=shared,
                           first_violation=n0,
                           note="ratio %d/%d at n=%d is not an integer"
                                % (seq_after[n0], seq_before[n0], n0))
    violation = next((n for n in range(1, shared + 1)
                      if seq_after[n] != lam * seq_before[n]), None)
    sat = None
    if p is not None and k is not None:
        sat = satake(lam, p, k)
    return EigenReport(p=p, lam=lam, is_eigen=violation is None,
                       checked_up_to=shared, first_violation=violation,
                       satake=sat)


def eigen_report(f: HalfIntegralForm, p: int) -> EigenReport:
    """T(p^2) eigen check of a half-integral form, over every index the
    precision supports."""
    before = [0] + [f.a(n) for n in range(1, f.prec // (p * p) + 1)]
    return extract_eigenvalue(before, t_square_half(p, f), p=p, k=f.k)


def local_power_sequence(f: HalfIntegralForm, t: int, p: int) -> list[int]:
    """The coefficients a(t p^(2m)) for m = 0, 1, ... up to the precision
    limit t p^(2m) <= prec."""
    if t < 1 or not is_squarefree(t):
        raise ValueError("t must be a square-free positive integer")
    _require_good_prime(p, f.level)
    if t > f.prec:
        raise ValueError("a(t) is beyond the form's precision")
    out = []
    idx = t
    while idx <= f.prec:
        out.append(f.a(idx))
        idx *= p * p
    return out


def local_power_sequence_extended(f: HalfIntegralForm, t: int, p: int,
                                  M: int) -> list[int]:
    """a(t p^(2m)) for m = 0..M, reading directly within precision and
    continuing with the verified two-term Hecke recurrence beyond it."""
    direct = local_power_sequence(f, t, p)
    if len(direct) >= M + 1:
        return direct[:M + 1]
    rep = recurrence_check(f, t, p)
    if not rep.ok:
        raise ValueError("recurrence for (t=%d, p=%d) failed: %s"
                         % (t, p, rep.note))
    out = list(direct)
    k = f.k
    lam = rep.lam
    p2k1 = p ** (2 * k - 1)
    chi_p = chi_t_N(k, f.level, t, p)
    while len(out) <= M:
        if len(out) == 1:
            out.append(out[0] * (lam - chi_p * p ** (k - 1)))
        else:
            out.append(lam * out[-1] - p2k1 * out[-2])
    return out


@dataclass
class RecurrenceReport:
    """Result of checking the local Hecke recurrence along t p^(2m)."""

    ok: bool
    t: int
    p: int
    lam: int | None
    max_m: int
    violation_m: int | None = None
    note: str = ""


def recurrence_check(f: HalfIntegralForm, t: int, p: int) -> RecurrenceReport:
    """Verify, within precision, that the prime-power coefficients obey

        a(t p^2)      = a(t) (lam_p - chi_{t,N}(p) p^(k-1))
        a(t p^(2m))   = lam_p a(t p^(2m-2)) - p^(2k-1) a(t p^(2m-4)),  m >= 2,

    with lam_p extracted from T(p^2).  Requires f to be an eigenform."""
    rep = eigen_report(f, p)
    if not rep.is_eigen:
        return RecurrenceReport(ok=False, t=t, p=p, lam=rep.lam, max_m=0,
                                note="not a T(p^2) eigenform: %s"
                                     % (rep.note or
                                        "violation at n=%s" % rep.first_violation))
    lam = rep.lam
    seq = local_power_sequence(f, t, p)
    k = f.k
    p2k1 = p ** (2 * k - 1)
    chi_p = chi_t_N(k, f.level, t, p)
    for m in range(1, len(seq)):
        if m == 1:
            want = seq[0] * (lam - chi_p * p ** (k - 1))
        else:
            want = lam * seq[m - 1] - p2k1 * seq[m - 2]
        if seq[m] != want:
            return RecurrenceReport(ok=False, t=t, p=p, lam=lam,
                                    max_m=len(seq) - 1, violation_m=m,
                                    note="a(t p^(2m)) mismatch at m=%d" % m)
    return RecurrenceReport(ok=True, t=t, p=p, lam=lam, max_m=len(seq) - 1)


def satake(lam: int, p: int, k: int) -> tuple[int, int, int]:
    """Trace, norm and discriminant sign of X^2 - lam X + p^(2k-1).

    A negative sign means the roots form a complex-conjugate pair on the
    circle of radius p^(k - 1/2); no irrational arithmetic is done."""
    norm = p ** (2 * k - 1)
    disc = lam * lam - 4 * norm
    return (lam, norm, (disc > 0) - (disc < 0))


def deligne_check(lam: int, p: int, k: int) -> bool:
    """lam^2 <= 4 p^(2k-1)."""
    return lam * lam <= 4 * p ** (2 * k - 1)


def elementary_bound_check(lam: int, p: int, k: int) -> bool:
    """|lam| < p^k + p^(k-1)."""
    return abs(lam) < p ** k + p ** (k - 1)


def twisted_component(f: HalfIntegralForm, p: int, eps: int) -> HalfIntegralForm:
    """Keep the coefficients with (n/p) = eps, zero the rest; the result
    lives on level N p^2."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    _require_good_prime(p, f.level)
    coeffs = [0] * (f.prec + 1)
    for n in range(1, f.prec + 1):
        if kronecker(n, p) == eps:
            coeffs[n] = f.coeffs[n]
    return HalfIntegralForm(weight_num=f.weight_num, level=f.level * p * p,
                            character=f.character, coeffs=coeffs,
                            prec=f.prec, plus_space=f.plus_space)


def _require_good_prime(p: int, level: int):
    if not is_prime(p):
        raise ValueError("%d is not prime" % p)
    if level % p == 0:
        raise ValueError("p=%d divides the level %d" % (p, level))
