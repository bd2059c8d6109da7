"""Seeded search for c-generating linear systems.

The existence theorems (Hochster-Laksov for c = 1, Nenashev for c = e >= 2)
say a general system of large enough dimension is c-generating.  We sample
random systems and keep the first one that passes the exact rank check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .bounds import ceil_div, nenashev_threshold, waldron_threshold
from .errors import DomainError, SearchFailure
from .polyring import (
    DEFAULT_PRIME,
    GF,
    GradedForm,
    LinearSystem,
    PrimeField,
    RationalField,
    graded_dim,
    is_c_generating,
    monomial_basis,
)

DEFAULT_FIELD = GF(DEFAULT_PRIME)
DEFAULT_BOX = 7
DEFAULT_ATTEMPTS = 32


@dataclass(frozen=True)
class GeneratorRequest:
    r: int
    b: int
    m: int
    c: int
    field: RationalField | PrimeField = dc_field(default=DEFAULT_FIELD)
    seed: int = 0
    max_attempts: int = DEFAULT_ATTEMPTS
    box: int = DEFAULT_BOX

    def __post_init__(self):
        if self.r < 1 or self.m < 1 or self.c < 1 or self.b < 1:
            raise DomainError("need r, b, m, c >= 1")
        if self.max_attempts < 1:
            raise DomainError("max_attempts must be positive")


def guaranteed_range(r, b, m, c) -> bool:
    """Whether the request lies where a general system is known to generate."""
    if c == 1:
        return b >= 2 and m >= ceil_div(graded_dim(r, b + 1), r + 1)
    if b % c:
        return False
    e, d = c, b // c + 1
    pe = graded_dim(r, e)
    return d >= 3 and m >= pe + ceil_div(graded_dim(r, d * e), pe)


def attempt_rng(seed, attempt):
    # str seeds hash through sha512: stable across runs and PYTHONHASHSEED
    return random.Random(f"{seed}:{attempt}")


def random_form(rng, nvars, degree, field, box=DEFAULT_BOX):
    if isinstance(field, PrimeField):
        draw = lambda: rng.randrange(field.p)
    else:
        draw = lambda: rng.randint(-box, box)
    return GradedForm(nvars, degree, {mono: draw() for mono in monomial_basis(nvars, degree)}, field)


def random_system(rng, r, b, m, field, box=DEFAULT_BOX):
    return LinearSystem(r + 1, b, tuple(random_form(rng, r + 1, b, field, box) for _ in range(m)), field)


def find_generating_system(req: GeneratorRequest) -> LinearSystem:
    for attempt in range(req.max_attempts):
        rng = attempt_rng(req.seed, attempt)
        sys = random_system(rng, req.r, req.b, req.m, req.field, req.box)
        if is_c_generating(sys, req.c):
            return sys
    in_range = guaranteed_range(req.r, req.b, req.m, req.c)
    why = "unlucky sampling" if in_range else "request is outside the guaranteed range"
    raise SearchFailure(
        f"no {req.c}-generating system of {req.m} forms of degree {req.b} in "
        f"{req.r + 1} variables after {req.max_attempts} attempts ({why})",
        attempts=req.max_attempts,
        in_range=in_range,
    )


def verify_hl_range(r, d, m) -> bool:
    return m >= waldron_threshold(r, d) - r


def verify_nenashev_range(r, d, e, m) -> bool:
    return m >= nenashev_threshold(r, d, e) - graded_dim(r, e) + 1
