"""Homogeneous forms, graded monomial bases, and multiplication maps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from ..errors import DomainError
from .fields import QQ, PrimeField, RationalField
from .linalg import Matrix, rank

Monomial = tuple  # exponent vector; degree is sum(exponents)


def graded_dim(r: int, d: int) -> int:
    """P_r(d) = binom(d + r, r), the dimension of S_d in r + 1 variables.

    Evaluated as prod_{i=1..r} (d + i) / r!, which is the numerical polynomial
    and vanishes for -r <= d < 0.
    """
    if r < 0:
        raise DomainError(f"r must be nonnegative, got {r}")
    if d < -r:
        raise DomainError(f"P_r(d) is out of contract for d={d} < -r={-r}")
    num = 1
    for i in range(1, r + 1):
        num *= d + i
    return num // math.factorial(r)


def _compositions(nvars, degree):
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _compositions(nvars - 1, degree - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> tuple:
    """All exponent vectors of the given degree, graded-lex with t0 > t1 > ..."""
    if nvars < 1:
        raise DomainError("nvars must be positive")
    if degree < 0:
        return ()
    return tuple(_compositions(nvars, degree))


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(nvars, degree))}


def graded_lex_key(mono):
    """Sort key putting monomials in descending graded-lex order."""
    return (-sum(mono), tuple(-e for e in mono))


@dataclass(frozen=True, eq=False)
class GradedForm:
    """A homogeneous polynomial of declared degree with exact coefficients.

    ``terms`` maps exponent tuples to nonzero raw field coefficients.  The zero
    form keeps its declared degree.
    """

    nvars: int
    degree: int
    terms: Mapping = dc_field(default_factory=dict)
    field: RationalField | PrimeField = QQ

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.nvars or sum(mono) != self.degree or min(mono, default=0) < 0:
                raise DomainError(
                    f"monomial {mono} does not fit nvars={self.nvars}, degree={self.degree}"
                )
            c = self.field(c)
            if c:
                clean[mono] = self.field.add(clean.get(mono, self.field.zero), c)
                if not clean[mono]:
                    del clean[mono]
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, nvars, degree, field=QQ):
        return cls(nvars, degree, {}, field)

    @classmethod
    def monomial(cls, exponents, coeff=1, field=QQ):
        exponents = tuple(exponents)
        return cls(len(exponents), sum(exponents), {exponents: coeff}, field)

    @classmethod
    def variable(cls, i, nvars, field=QQ):
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e, 1, field)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, mono):
        return self.terms.get(tuple(mono), self.field.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: graded_lex_key(kv[0]))

    def _check(self, other):
        if not isinstance(other, GradedForm):
            raise TypeError(f"expected GradedForm, got {type(other).__name__}")
        if other.field != self.field:
            raise TypeError(f"field mismatch: {self.field} vs {other.field}")
        if other.nvars != self.nvars:
            raise DomainError("variable count mismatch")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise DomainError("cannot add forms of different degree")
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, F.zero), c)
        return GradedForm(self.nvars, self.degree, out, F)

    def __neg__(self):
        F = self.field
        return GradedForm(self.nvars, self.degree, {m: F.neg(c) for m, c in self.terms.items()}, F)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        F = self.field
        s = F(s)
        return GradedForm(self.nvars, self.degree, {m: F.mul(c, s) for m, c in self.terms.items()}, F)

    def __mul__(self, other):
        if not isinstance(other, GradedForm):
            return self.scale(other)
        self._check(other)
        F = self.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = F.add(out.get(m, F.zero), F.mul(c1, c2))
        return GradedForm(self.nvars, self.degree + other.degree, out, F)

    __rmul__ = scale

    def __pow__(self, k):
        out = GradedForm.monomial((0,) * self.nvars, 1, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedForm):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.degree == other.degree
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def partial(self, i):
        """Formal partial derivative with respect to variable ``i``."""
        F = self.field
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                mm = tuple(mm)
                out[mm] = F.add(out.get(mm, F.zero), F.mul(c, F(m[i])))
        return GradedForm(self.nvars, max(self.degree - 1, 0), out, F)

    def evaluate(self, point):
        F = self.field
        pt = [F(x) for x in point]
        total = F.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = F.mul(v, x ** e if F is QQ else pow(x, e, F.p))
            total = F.add(total, v)
        return total

    def substitute(self, images: Sequence["GradedForm"]):
        """Replace variable ``i`` by ``images[i]``; images share nvars and degree."""
        if len(images) != self.nvars:
            raise DomainError("need one image per variable")
        img_deg = images[0].degree if images else 0
        target_nvars = images[0].nvars if images else 0
        F = self.field
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        acc = {}
        for m, c in self.terms.items():
            prod = None
            for i, k in enumerate(m):
                if k:
                    prod = power(i, k) if prod is None else prod * power(i, k)
            if prod is None:
                prod = GradedForm.monomial((0,) * target_nvars, 1, F)
            for mm, cc in prod.terms.items():
                acc[mm] = F.add(acc.get(mm, F.zero), F.mul(c, cc))
        return GradedForm(target_nvars, self.degree * img_deg, acc, F)

    def embed(self, nvars, positions):
        """Rename variable ``i`` to ``positions[i]`` inside ``nvars`` variables."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * nvars
            for i, k in enumerate(m):
                e[positions[i]] += k
            out[tuple(e)] = c
        return GradedForm(nvars, self.degree, out, self.field)

    def with_field(self, field):
        """Reinterpret coefficients in another field (e.g. reduce Q -> F_p)."""
        return GradedForm(self.nvars, self.degree, dict(self.terms), field)

    def __repr__(self):
        from .text import format_form

        return f"GradedForm({format_form(self)!r}, degree={self.degree}, field={self.field!r})"


@dataclass(frozen=True)
class LinearSystem:
    """Ordered forms of common degree b in r + 1 variables (zero members allowed)."""

    nvars: int
    degree: int
    members: tuple
    field: RationalField | PrimeField = QQ

    def __post_init__(self):
        members = tuple(self.members)
        for g in members:
            if g.nvars != self.nvars or g.degree != self.degree:
                raise DomainError("members must share nvars and degree")
            if g.field != self.field:
                raise TypeError("members must share the system's field")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, members: Iterable[GradedForm]):
        members = tuple(members)
        if not members:
            raise DomainError("use LinearSystem(nvars, degree, ()) for an empty system")
        g = members[0]
        return cls(g.nvars, g.degree, members, g.field)

    @property
    def r(self):
        return self.nvars - 1

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


def multiplication_map(sys: LinearSystem, c: int) -> Matrix:
    """Matrix of W (x) S_c -> S_{b+c}; columns member-major then graded-lex."""
    if c < 0:
        raise DomainError("c must be nonnegative")
    nv, b, F = sys.nvars, sys.degree, sys.field
    row_index = monomial_index(nv, b + c)
    col_monos = monomial_basis(nv, c)
    nrows = len(row_index)
    ncols = len(sys.members) * len(col_monos)
    rows = [[F.zero] * ncols for _ in range(nrows)]
    col = 0
    for g in sys.members:
        items = list(g.terms.items())
        for u in col_monos:
            for m, coef in items:
                rows[row_index[tuple(a + b_ for a, b_ in zip(m, u))]][col] = coef
            col += 1
    return Matrix(tuple(tuple(r) for r in rows), ncols, F)


def generating_rank(sys: LinearSystem, c: int) -> int:
    return rank(multiplication_map(sys, c))


def is_c_generating(sys: LinearSystem, c: int) -> bool:
    if c < 1:
        raise DomainError("c must be at least 1")
    return generating_rank(sys, c) == graded_dim(sys.nvars - 1, sys.degree + c)
