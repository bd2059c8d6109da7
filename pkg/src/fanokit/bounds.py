"""Closed-form dimension counts and degree-range thresholds.

Everything here is exact integer or ``Fraction`` arithmetic; ceilings use
``(a + b - 1) // b`` for positive ``b``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from .errors import CrossCheckError, DomainError
from .polyring import graded_dim, solve_rational

P = graded_dim


def ceil_div(a: int, b: int) -> int:
    if b <= 0:
        raise DomainError("ceil_div needs a positive divisor")
    return (a + b - 1) // b


def _check_red(r, d, e):
    if r < 1 or d < 1 or e < 1:
        raise DomainError(f"need r, d, e >= 1 (got r={r}, d={d}, e={e})")


def veronese_span_dim(r, e):
    """n_e(r) = P_r(e) - 1, the dimension of the span of a Veronese e-uple r-fold."""
    return P(r, e) - 1


def parameter_space_dim(n, r, e):
    """f_e(n, r) = (n + 1) P_r(e) - (r + 1)^2."""
    return (n + 1) * P(r, e) - (r + 1) ** 2


def expected_dim(n, r, d, e=1):
    """f_e(n, r, d) = (n + 1) P_r(e) - P_r(de) - (r + 1)^2."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    _check_red(r, d, e)
    return parameter_space_dim(n, r, e) - P(r, d * e)


def n_threshold(r, d, e=1):
    """N_e(r, d): least n >= n_e(r) with f_e(n, r, d) >= 0."""
    _check_red(r, d, e)
    pe = P(r, e)
    return max(pe - 1, -1 + ceil_div((r + 1) ** 2 + P(r, d * e), pe))


def m_threshold(r, d, e=1):
    """M_e(r, d) = max(0, ceil(((r+1)^2 + P_r(de) - P_r(e)^2) / P_r(e)))."""
    _check_red(r, d, e)
    pe = P(r, e)
    return max(0, ceil_div((r + 1) ** 2 + P(r, d * e) - pe * pe, pe))


def waldron_threshold(r, d):
    """N_1(r, d) = r + ceil(P_r(d) / (r + 1))."""
    _check_red(r, d, 1)
    return r + ceil_div(P(r, d), r + 1)


def nenashev_threshold(r, d, e):
    """Degree range for e >= 2: -1 + 2 P_r(e) + ceil(P_r(de) / P_r(e))."""
    _check_red(r, d, e)
    if e < 2:
        raise DomainError("the Veronese range is stated for e >= 2")
    pe = P(r, e)
    return -1 + 2 * pe + ceil_div(P(r, d * e), pe)


def nonempty_threshold(r, d, e=1):
    """Least n from which the smooth locus is dense, with the d = 1, 2 cases."""
    _check_red(r, d, e)
    if d == 1:
        return 1 + veronese_span_dim(r, e)
    if d == 2:
        return 1 + 2 * r if e == 1 else veronese_span_dim(r, e)
    return waldron_threshold(r, d) if e == 1 else nenashev_threshold(r, d, e)


def rho_fiber_dim(n, r, d, e=1):
    """Relative dimension P_n(d) - P_r(de) of the incidence projective bundle."""
    _check_red(r, d, e)
    if n < veronese_span_dim(r, e):
        raise DomainError(f"n={n} < n_e(r)={veronese_span_dim(r, e)}: no Veronese e-uple r-folds")
    return P(n, d) - P(r, d * e)


@dataclass(frozen=True)
class BoundsReport:
    r: int
    e: int
    d: int
    p_r_e: int
    n_e_r: int
    N_e: int
    M_e: int
    nonempty_threshold: int
    flag_threshold: int
    n: Optional[int] = None
    f_e_nr: Optional[int] = None
    f_e_nrd: Optional[int] = None
    N_tilde: Optional[int] = None
    N_1_waldron: Optional[int] = None
    N_1_prime_lower: Optional[int] = None
    N_1_prime_upper: Optional[int] = None
    rho_fiber_dim: Optional[int] = None
    flag_fiber_dim: Optional[int] = None

    def to_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}


def degree_range(r, d, e=1, n=None) -> BoundsReport:
    _check_red(r, d, e)
    pe = P(r, e)
    extra = {}
    if e == 1:
        n1 = waldron_threshold(r, d)
        extra["N_1_waldron"] = n1
        if d >= 2:
            lo, hi = n1, n1 + 1
            if d == 2:
                lo = hi = 2 * r + 2
            elif expected_dim(n1, r, d, 1) == 0:
                lo = hi
            extra["N_1_prime_lower"] = lo
            extra["N_1_prime_upper"] = hi
    else:
        extra["N_tilde"] = nenashev_threshold(r, d, e)
    if n is not None:
        if n < 0:
            raise DomainError("n must be nonnegative")
        extra["n"] = n
        extra["f_e_nr"] = parameter_space_dim(n, r, e)
        extra["f_e_nrd"] = expected_dim(n, r, d, e)
        if n >= pe - 1:
            extra["rho_fiber_dim"] = rho_fiber_dim(n, r, d, e)
        extra["flag_fiber_dim"] = n - r - P(r, d - 1)
    return BoundsReport(
        r=r,
        e=e,
        d=d,
        p_r_e=pe,
        n_e_r=pe - 1,
        N_e=n_threshold(r, d, e),
        M_e=m_threshold(r, d, e),
        nonempty_threshold=nonempty_threshold(r, d, e),
        flag_threshold=r + P(r, d - 1),
        **extra,
    )


@dataclass(frozen=True)
class FlagCoefficients:
    r: int
    b: tuple  # (b_{r,1}, ..., b_{r,r}) as Fractions

    def check(self):
        """Re-evaluate sum b_l t^l / l! against P_r(t - 1) at t = 1 .. r + 1."""
        for t in range(1, self.r + 2):
            lhs = sum(bl * Fraction(t**l, math.factorial(l)) for l, bl in enumerate(self.b, 1))
            if lhs != P(self.r, t - 1):
                return False
        return True


def flag_coeffs(r) -> FlagCoefficients:
    """Solve P_r(t - 1) = sum_{l=1..r} (b_l / l!) t^l by evaluation at t = 1..r."""
    if r < 1:
        raise DomainError("r must be positive")
    A = [[Fraction(t**l, math.factorial(l)) for l in range(1, r + 1)] for t in range(1, r + 1)]
    rhs = [P(r, t - 1) for t in range(1, r + 1)]
    fc = FlagCoefficients(r, tuple(solve_rational(A, rhs)))
    if not fc.check():
        raise CrossCheckError(f"flag coefficients for r={r} fail re-evaluation")
    return fc


def chern_pairing(n, d, l) -> Fraction:
    """<ch_l(T_X), [Lambda_l]> = ((n + 1) - d^l) / l! for a degree-d hypersurface in P^n."""
    return Fraction((n + 1) - d**l, math.factorial(l))


@dataclass(frozen=True)
class FlagFiberReport:
    n: int
    r: int
    d: int
    e_r: int
    e_r_chern: Fraction
    threshold_empty: bool
    connected: bool
    boundary: bool  # n equals the threshold exactly

    def to_dict(self):
        return {
            "n": self.n,
            "r": self.r,
            "d": self.d,
            "e_r": self.e_r,
            "threshold_empty": self.threshold_empty,
            "connected": self.connected,
            "boundary": self.boundary,
        }


def flag_fiber_report(n, r, d) -> FlagFiberReport:
    if r < 1 or d < 1 or n < 0:
        raise DomainError("need r >= 1, d >= 1, n >= 0")
    threshold = r + P(r, d - 1)
    closed = n - threshold
    b = flag_coeffs(r).b
    chern = -r - 1 + sum(bl * chern_pairing(n, d, l) for l, bl in enumerate(b, 1))
    if chern != closed:
        raise CrossCheckError(
            f"e_r mismatch at (n, r, d)=({n}, {r}, {d}): closed form {closed}, Chern character {chern}"
        )
    empty = n < threshold
    boundary = n == threshold
    # at the threshold with d > 1 the fibers split; for d = 1 the fiber is a single point
    connected = not empty and not (boundary and d > 1)
    return FlagFiberReport(n, r, d, closed, chern, empty, connected, boundary)
