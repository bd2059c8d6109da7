"""Finite-field ground truth: r-planes in P^n(F_q) and the planes inside a hypersurface."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import DomainError
from .polyring import GF, GradedForm, PrimeField, is_prime, rank_mod_p


def gaussian_binomial(a, b, q) -> int:
    """Number of b-dimensional subspaces of F_q^a."""
    if b < 0 or b > a:
        return 0
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class PlaneRep:
    """An r-plane in P^n(F_q) as its reduced row echelon basis."""

    q: int
    n: int
    r: int
    rows: tuple
    pivots: tuple

    @classmethod
    def from_rows(cls, rows, q):
        """Canonicalize any spanning set of r+1 independent vectors."""
        a = [[x % q for x in row] for row in rows]
        nrows, ncols = len(a), len(a[0])
        pivots = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, nrows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = pow(a[r][c], -1, q)
            a[r] = [x * inv % q for x in a[r]]
            for i in range(nrows):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [(x - f * y) % q for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        if r != nrows:
            raise DomainError("rows are linearly dependent")
        return cls(q, ncols - 1, nrows - 1, tuple(tuple(row) for row in a), tuple(pivots))

    @classmethod
    def zero_locus(cls, coords, n, q):
        """The plane cut out by vanishing of the listed coordinates."""
        free = [j for j in range(n + 1) if j not in set(coords)]
        rows = [[int(j == k) for j in range(n + 1)] for k in free]
        return cls.from_rows(rows, q)

    def intersection_dim(self, other) -> int:
        """Projective dimension of the intersection (-1 when empty)."""
        rk = rank_mod_p([list(x) for x in self.rows + other.rows], self.q)
        return (self.r + 1) + (other.r + 1) - rk - 1


def _colex_pivot_sets(n, r):
    return sorted(itertools.combinations(range(n + 1), r + 1), key=lambda s: s[::-1])


def _cell_planes(n, r, q, pivots):
    pset = set(pivots)
    free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n + 1) if j not in pset]
    for values in itertools.product(range(q), repeat=len(free)):
        rows = [[0] * (n + 1) for _ in pivots]
        for i, p in enumerate(pivots):
            rows[i][p] = 1
        for (i, j), v in zip(free, values):
            rows[i][j] = v
        yield PlaneRep(q, n, r, tuple(tuple(row) for row in rows), tuple(pivots))


def enumerate_planes(n, r, q):
    """Every r-plane of P^n(F_q) once: Schubert cells in colex order, free entries as an odometer."""
    if not is_prime(q):
        raise DomainError(f"q={q} must be prime")
    if not 0 <= r <= n:
        raise DomainError("need 0 <= r <= n")
    for pivots in _colex_pivot_sets(n, r):
        yield from _cell_planes(n, r, q, pivots)


def _field_of(G, q):
    if isinstance(G.field, PrimeField):
        if G.field.p != q:
            raise DomainError(f"form lives over F_{G.field.p}, not F_{q}")
        return G
    return G.with_field(GF(q))


def _pmul(a, b, q):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % q
    return {m: c for m, c in out.items() if c}


def _restricted_terms(G: GradedForm, plane: PlaneRep):
    q = plane.q
    k = plane.r + 1
    unit = [tuple(int(i == t) for t in range(k)) for i in range(k)]
    lin = []
    for j in range(plane.n + 1):
        lin.append({unit[i]: plane.rows[i][j] for i in range(k) if plane.rows[i][j]})
    powers = {}

    def power(j, e):
        key = (j, e)
        if key not in powers:
            powers[key] = lin[j] if e == 1 else _pmul(power(j, e - 1), lin[j], q)
        return powers[key]

    acc = {}
    for mono, c in G.terms.items():
        prod = {(0,) * k: c % q}
        for j, e in enumerate(mono):
            if e:
                if not lin[j]:
                    prod = {}
                    break
                prod = _pmul(prod, power(j, e), q)
        for m, v in prod.items():
            acc[m] = (acc.get(m, 0) + v) % q
    return {m: c for m, c in acc.items() if c}


def restrict_to_plane(G: GradedForm, plane: PlaneRep) -> GradedForm:
    """G pulled back along (s_0..s_r) -> s * matrix."""
    G = _field_of(G, plane.q)
    return GradedForm(plane.r + 1, G.degree, _restricted_terms(G, plane), G.field)


def plane_contained(G: GradedForm, plane: PlaneRep) -> bool:
    """True iff G restricted to the plane is the zero polynomial (coefficient-wise)."""
    if G.nvars != plane.n + 1:
        raise DomainError("form and plane live in different ambient spaces")
    return not _restricted_terms(_field_of(G, plane.q), plane)


def _count_cell(args):
    G, r, q, pivots = args
    n = G.nvars - 1
    return sum(1 for pl in _cell_planes(n, r, q, pivots) if not _restricted_terms(G, pl))


def count_fano_points(G: GradedForm, r, q, workers=1) -> int:
    """Number of F_q-rational r-planes contained in Zero(G)."""
    if not is_prime(q):
        raise DomainError(f"q={q} must be prime")
    G = _field_of(G, q)
    n = G.nvars - 1
    if not 0 <= r <= n:
        raise DomainError("need 0 <= r <= n")
    jobs = [(G, r, q, piv) for piv in _colex_pivot_sets(n, r)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_count_cell, jobs))
    return sum(map(_count_cell, jobs))


def split_quadric(r, q) -> GradedForm:
    """t_0 t_{r+1} + ... + t_r t_{2r+1} over F_q."""
    n = 2 * r + 1
    terms = {}
    for i in range(r + 1):
        e = [0] * (n + 1)
        e[i] = e[r + 1 + i] = 1
        terms[tuple(e)] = 1
    return GradedForm(n + 1, 2, terms, GF(q))


def reference_planes(r, q):
    """Pi = Zero(t_{r+1}..t_{2r+1}), Lambda = Zero(t_0..t_r), Gamma = Zero(t_0, t_{r+2}..t_{2r+1})."""
    n = 2 * r + 1
    return {
        "Pi": PlaneRep.zero_locus(range(r + 1, n + 1), n, q),
        "Lambda": PlaneRep.zero_locus(range(0, r + 1), n, q),
        "Gamma": PlaneRep.zero_locus([0] + list(range(r + 2, n + 1)), n, q),
    }


@dataclass
class QuadricFamilies:
    r: int
    q: int
    family_sizes: tuple
    cross_intersection_ok: bool
    parity_consistent: bool
    reference_families: dict
    checks: dict = dc_field(default_factory=dict)

    def to_dict(self):
        return {
            "r": self.r,
            "q": self.q,
            "family_sizes": list(self.family_sizes),
            "checks": dict(self.checks),
            "reference_families": dict(self.reference_families),
        }


def quadric_families(r, q) -> QuadricFamilies:
    """Split the r-planes on the smooth quadric of dimension 2r into its two families.

    A plane joins Pi's family when dim(plane meet Pi) is congruent to r mod 2.
    """
    if r < 1:
        raise DomainError("r must be positive")
    if q == 2 or not is_prime(q):
        raise DomainError("q must be an odd prime")
    n = 2 * r + 1
    G = split_quadric(r, q)
    planes = [pl for pl in enumerate_planes(n, r, q) if not _restricted_terms(G, pl)]
    refs = reference_planes(r, q)
    Pi = refs["Pi"]

    def family(pl):
        return 0 if (pl.intersection_dim(Pi) - r) % 2 == 0 else 1

    labels = [family(pl) for pl in planes]
    sizes = (labels.count(0), labels.count(1))

    parity_ok = True
    cross_ok = True
    for i, j in itertools.combinations(range(len(planes)), 2):
        dim = planes[i].intersection_dim(planes[j])
        same = labels[i] == labels[j]
        if same != ((dim - r) % 2 == 0):
            parity_ok = False
        if r == 1:
            if same and dim != -1:
                cross_ok = False
            if not same and dim != 0:
                cross_ok = False

    expected_total = 1
    for i in range(r + 1):
        expected_total *= q**i + 1
    checks = {
        "all_references_on_quadric": all(restrict_to_plane(G, p).is_zero() for p in refs.values()),
        "both_nonempty": min(sizes) > 0,
        "equal_sizes": sizes[0] == sizes[1],
        "total_matches_formula": len(planes) == expected_total,
        "parity_is_equivalence": parity_ok,
    }
    if r == 1:
        checks["same_family_disjoint_cross_family_meet_in_point"] = cross_ok
    return QuadricFamilies(
        r=r,
        q=q,
        family_sizes=sizes,
        cross_intersection_ok=cross_ok,
        parity_consistent=parity_ok,
        reference_families={k: family(p) for k, p in refs.items()},
        checks=checks,
    )
