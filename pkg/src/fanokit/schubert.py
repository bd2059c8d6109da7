"""Chern-root computations on the Grassmannian G(r+1, n+1).

Symmetric classes are polynomials in roots u_0..u_r.  Integration reads the
coefficient of the staircase u_0^n u_1^(n-1) ... u_r^(n-r) in
P * prod_{i<j}(u_i - u_j).  Exponents above n never reach the staircase, so
products are pruned at that cap as they are expanded.

An independent route evaluates the same integrals by torus localization:
sum over coordinate (r+1)-subsets I of P(w_I) / prod_{i in I, j not in I}(w_i - w_j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .bounds import expected_dim
from .errors import CrossCheckError, DomainError


@dataclass
class SymPoly:
    """Integer polynomial in ``nroots`` variables; exponents above ``cap`` are dropped."""

    nroots: int
    terms: dict = dc_field(default_factory=dict)
    cap: Optional[int] = None

    @classmethod
    def one(cls, nroots, cap=None):
        return cls(nroots, {(0,) * nroots: 1}, cap)

    def mul_linear(self, coeffs):
        """Multiply by sum_i coeffs[i] * u_i."""
        out = {}
        cap = self.cap
        for m, c in self.terms.items():
            for i, a in enumerate(coeffs):
                if not a:
                    continue
                if cap is not None and m[i] >= cap:
                    continue
                mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                out[mm] = out.get(mm, 0) + a * c
        return SymPoly(self.nroots, {m: c for m, c in out.items() if c}, cap)

    def __mul__(self, other):
        if isinstance(other, int):
            return SymPoly(self.nroots, {m: c * other for m, c in self.terms.items() if c * other}, self.cap)
        cap = min((c for c in (self.cap, other.cap) if c is not None), default=None)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if cap is not None and max(m) > cap:
                    continue
                out[m] = out.get(m, 0) + c1 * c2
        return SymPoly(self.nroots, {m: c for m, c in out.items() if c}, cap)

    __rmul__ = __mul__

    def shift(self, exps):
        """Multiply by the monomial u^exps."""
        out = {}
        for m, c in self.terms.items():
            mm = tuple(a + b for a, b in zip(m, exps))
            if self.cap is not None and max(mm) > self.cap:
                continue
            out[mm] = c
        return SymPoly(self.nroots, out, self.cap)

    def permute(self, perm):
        """Substitute u_i -> u_{perm[i]}."""
        out = {}
        for m, c in self.terms.items():
            mm = [0] * self.nroots
            for i, k in enumerate(m):
                mm[perm[i]] = k
            out[tuple(mm)] = c
        return SymPoly(self.nroots, out, self.cap)

    def degrees(self):
        return {sum(m) for m in self.terms}

    def __eq__(self, other):
        return isinstance(other, SymPoly) and self.nroots == other.nroots and self.terms == other.terms

    def evaluate(self, values):
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, k in zip(values, m):
                if k:
                    v *= x**k
            total += v
        return total

    def text(self):
        parts = []
        for m in sorted(self.terms, key=lambda m: tuple(-k for k in m)):
            c = self.terms[m]
            f = "*".join(f"u{i}" if k == 1 else f"u{i}^{k}" for i, k in enumerate(m) if k)
            body = (f"{abs(c)}*{f}" if abs(c) != 1 else f) if f else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append(("-" if c < 0 else "") + body if not parts else f" {sign} {body}")
        return "".join(parts) or "0"


def weight_vectors(r, d):
    """Delta_r(d) in lex order on (d_0..d_r)."""
    return sorted(v for v in itertools.product(range(d + 1), repeat=r + 1) if sum(v) == d)


def chern_top_poly(r, d, cap=None) -> SymPoly:
    """p_{r+1,d} = prod over Delta_r(d) of (d_0 u_0 + ... + d_r u_r)."""
    if r < 0 or d < 1:
        raise DomainError("need r >= 0, d >= 1")
    P = SymPoly.one(r + 1, cap)
    for v in weight_vectors(r, d):
        P = P.mul_linear(v)
    return P


def chern_cofactor_poly(r, d, cap=None) -> SymPoly:
    """q_{r+1,d}: the same product without the extreme vectors d * e_i."""
    P = SymPoly.one(r + 1, cap)
    for v in weight_vectors(r, d):
        if max(v) == d:
            continue
        P = P.mul_linear(v)
    return P


def sigma1_power(r, k, cap=None) -> SymPoly:
    P = SymPoly.one(r + 1, cap)
    for _ in range(k):
        P = P.mul_linear((1,) * (r + 1))
    return P


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def staircase_coefficient(P: SymPoly, target) -> int:
    """Coefficient of u^target in P * prod_{i<j}(u_i - u_j)."""
    k = P.nroots
    total = 0
    # prod_{i<j}(u_i - u_j) = sum_sigma sgn(sigma) prod_i u_{sigma(i)}^{k-1-i}
    for perm in itertools.permutations(range(k)):
        vexp = [0] * k
        for i, s in enumerate(perm):
            vexp[s] = k - 1 - i
        need = tuple(t - v for t, v in zip(target, vexp))
        if min(need) < 0:
            continue
        c = P.terms.get(need)
        if c:
            total += _perm_sign(perm) * c
    return total


def integrate(P: SymPoly, r, n) -> int:
    if P.nroots != r + 1:
        raise DomainError("polynomial has the wrong number of roots")
    if r < 0 or n < r:
        raise DomainError("need 0 <= r <= n")
    dim = (r + 1) * (n - r)
    degs = P.degrees()
    if degs and degs != {dim}:
        raise DomainError(f"degree {sorted(degs)} does not match dim G(r+1, n+1) = {dim}")
    if P.cap is not None and P.cap < n:
        raise DomainError(f"exponent cap {P.cap} < n={n} would drop staircase terms")
    return staircase_coefficient(P, tuple(n - i for i in range(r + 1)))


def localized_integral(values_fn, r, n, weights=None) -> Fraction:
    """Atiyah-Bott sum over torus-fixed points of G(r+1, n+1).

    ``values_fn(roots)`` evaluates the class at the fixed point whose Chern
    roots are ``roots``.
    """
    w = list(weights) if weights is not None else [Fraction(i) for i in range(n + 1)]
    total = Fraction(0)
    for I in itertools.combinations(range(n + 1), r + 1):
        rest = [j for j in range(n + 1) if j not in I]
        den = 1
        for i in I:
            for j in rest:
                den *= w[i] - w[j]
        total += Fraction(values_fn([w[i] for i in I])) / den
    return total


def top_chern_value(roots, d, extra_sigma1=0):
    val = 1
    for v in weight_vectors(len(roots) - 1, d):
        val *= sum(a * x for a, x in zip(v, roots))
    if extra_sigma1:
        val *= sum(roots) ** extra_sigma1
    return val


def localized_degree(r, n, d, sigma1=0) -> int:
    """Integral of c_top(Sym^d Q) * sigma_1^k by localization."""
    val = localized_integral(lambda roots: top_chern_value(roots, d, sigma1), r, n)
    if val.denominator != 1:
        raise CrossCheckError(f"localization gave a non-integer {val}")
    return int(val)


@dataclass(frozen=True)
class LinearSpaceCount:
    r: int
    n: int
    d: int
    f1: int
    count: int
    factorized_count: int
    d_power: int
    quotient: int

    def to_dict(self):
        return {
            "r": self.r,
            "n": self.n,
            "d": self.d,
            "f1": self.f1,
            "count": str(self.count),
            "d_power": str(self.d_power),
            "quotient": str(self.quotient),
        }


def count_linear_spaces(r, n, d) -> LinearSpaceCount:
    """Number of r-planes on a general degree-d hypersurface when f_1 = 0."""
    f1 = expected_dim(n, r, d, 1)
    if f1 != 0:
        raise DomainError(f"f_1(n, r, d) = {f1} != 0: the Fano scheme is not finite")
    count = integrate(chern_top_poly(r, d, cap=n), r, n)
    dp = d ** (r + 1)
    q = chern_cofactor_poly(r, d, cap=n - 1)
    q.cap = n
    q = q.shift((1,) * (r + 1))
    factorized = dp * integrate(q, r, n)
    if factorized != count:
        raise CrossCheckError(f"full product gives {count}, factorized path gives {factorized}")
    if count % dp:
        raise CrossCheckError(f"count {count} is not divisible by d^(r+1) = {dp}")
    return LinearSpaceCount(r, n, d, f1, count, factorized, dp, count // dp)


def fano_degree(r, n, d, cross_check=True) -> int:
    """Plucker degree of the Fano scheme: integral of c_top(Sym^d Q) sigma_1^f1."""
    f1 = expected_dim(n, r, d, 1)
    if f1 < 0:
        raise DomainError(f"f_1(n, r, d) = {f1} < 0: the class is not meaningful")
    P = chern_top_poly(r, d, cap=n) * sigma1_power(r, f1, cap=n)
    deg = integrate(P, r, n)
    if cross_check:
        other = localized_degree(r, n, d, f1)
        if other != deg:
            raise CrossCheckError(f"staircase route gives {deg}, localization gives {other}")
    return deg
