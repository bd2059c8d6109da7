"""Explicit hypersurfaces containing a coordinate Veronese variety.

Ambient coordinates are split as ``(x_e for e in Delta_r(e)) + (y_1..y_m)``
where ``x_e`` pulls back to the monomial ``t^e`` and the y's cut out the
linear span of the Veronese.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import bounds
from .errors import DomainError, RangeError, SearchFailure
from .generators import DEFAULT_ATTEMPTS, GeneratorRequest, attempt_rng, find_generating_system
from .polyring import (
    QQ,
    GradedForm,
    LinearSystem,
    Matrix,
    PrimeField,
    format_form,
    graded_dim,
    is_c_generating,
    monomial_basis,
    monomial_index,
    parse_field,
    parse_form,
    rank,
)


@dataclass(frozen=True)
class VeroneseFrame:
    r: int
    e: int
    n: int
    y_base: int = 1  # index of the first y coordinate in printed names

    def __post_init__(self):
        if self.r < 1 or self.e < 1:
            raise DomainError("need r, e >= 1")
        if self.m < 0:
            raise RangeError(f"n={self.n} is below n_e(r)={graded_dim(self.r, self.e) - 1}")

    @property
    def x_coords(self):
        return monomial_basis(self.r + 1, self.e)

    @property
    def nx(self):
        return graded_dim(self.r, self.e)

    @property
    def m(self):
        return self.n + 1 - graded_dim(self.r, self.e)

    @property
    def nvars(self):
        return self.n + 1

    def y_index(self, j):
        """Ambient position of the j-th y coordinate, counted from 0."""
        return self.nx + j

    @cached_property
    def names(self):
        return [f"x{i}" for i in range(self.nx)] + [f"y{self.y_base + j}" for j in range(self.m)]

    def to_dict(self):
        out = {"r": self.r, "e": self.e, "n": self.n}
        if self.y_base != 1:
            out["y_base"] = self.y_base
        return out


@dataclass(frozen=True)
class AmbientForm:
    frame: VeroneseFrame
    d: int
    poly: GradedForm

    def __post_init__(self):
        if self.poly.nvars != self.frame.nvars or self.poly.degree != self.d:
            raise DomainError("polynomial does not match the frame's variables and degree")

    @property
    def field(self):
        return self.poly.field

    def text(self):
        return format_form(self.poly, self.frame.names)

    def to_dict(self):
        return {
            "frame": self.frame.to_dict(),
            "degree": self.d,
            "field": self.field.name,
            "poly": self.text(),
        }

    @classmethod
    def from_dict(cls, data, field=None):
        fr = data["frame"]
        frame = VeroneseFrame(fr["r"], fr.get("e", 1), fr["n"], fr.get("y_base", 1))
        fld = parse_field(field or data.get("field", "Q"))
        poly = parse_form(data["poly"], fld, names=frame.names, degree=data.get("degree"))
        return cls(frame, poly.degree, poly)

    @classmethod
    def from_text(cls, text, frame, field=QQ):
        poly = parse_form(text, field, names=frame.names)
        return cls(frame, poly.degree, poly)

    def in_span_ideal(self):
        """Every term carries a y-variable, i.e. the form vanishes on the span."""
        nx = self.frame.nx
        return all(any(mono[nx:]) for mono in self.poly.terms)


def check_characteristic(field, d, e, allow_small_char=False):
    p = field.characteristic
    if p and p <= d * e and not allow_small_char:
        raise DomainError(
            f"characteristic {p} <= d*e = {d * e}; pass allow_small_char=True to override"
        )


def veronese_pullback(frame: VeroneseFrame, f: GradedForm) -> GradedForm:
    """Substitute x_e -> t^e and y_j -> 0."""
    if f.nvars != frame.nvars:
        raise DomainError("form does not live in the frame's ambient variables")
    nx, xs, F = frame.nx, frame.x_coords, f.field
    out = {}
    for mono, c in f.terms.items():
        if any(mono[nx:]):
            continue
        t = [0] * (frame.r + 1)
        for k, a in enumerate(mono[:nx]):
            if a:
                for i, ei in enumerate(xs[k]):
                    t[i] += a * ei
        t = tuple(t)
        out[t] = F.add(out.get(t, F.zero), c)
    return GradedForm(frame.r + 1, f.degree * frame.e, out, F)


def lift_monomial(w, e, k):
    """Write exponent vector ``w`` (degree k*e) as k elements of Delta_r(e).

    Greedy: take the graded-lex largest element below the remainder.  Checked by
    re-summing; exhaustive search is the fallback.
    """
    w = tuple(w)
    if sum(w) != k * e or min(w) < 0:
        raise DomainError(f"{w} is not a degree-{k * e} exponent vector")
    basis = monomial_basis(len(w), e)
    rem = list(w)
    parts = []
    for _ in range(k):
        for cand in basis:
            if all(a <= b for a, b in zip(cand, rem)):
                parts.append(cand)
                rem = [b - a for a, b in zip(cand, rem)]
                break
        else:
            break
    if len(parts) == k and tuple(map(sum, zip(*parts))) == w:
        return parts
    for combo in itertools.combinations_with_replacement(basis, k):
        if tuple(map(sum, zip(*combo))) == w:
            return list(combo)
    raise DomainError(f"no decomposition of {w} into {k} parts of degree {e}")


def lift_form(frame: VeroneseFrame, g: GradedForm, k: int) -> GradedForm:
    """A form H of degree k in the x-variables with nu^* H = g (deg g = k e)."""
    idx = monomial_index(frame.r + 1, frame.e)
    F = g.field
    out = {}
    for w, c in g.terms.items():
        mono = [0] * frame.nx
        for part in lift_monomial(w, frame.e, k):
            mono[idx[part]] += 1
        mono = tuple(mono)
        out[mono] = F.add(out.get(mono, F.zero), c)
    return GradedForm(frame.nx, k, out, F)


def _y_combination(frame, coeff_forms, field, d):
    """sum_j Y_j * H_j where ``coeff_forms[j]`` is a form in the x-variables."""
    nv = frame.nvars
    xpos = list(range(frame.nx))
    total = GradedForm.zero(nv, d, field)
    for j, h in enumerate(coeff_forms):
        if h.is_zero():
            continue
        y = GradedForm.variable(frame.y_index(j), nv, field)
        total = total + y * h.embed(nv, xpos)
    return total


def _verify_certificate(G, e):
    from .smoothness import certify_smooth_point

    cert = certify_smooth_point(G, scan_span=False, allow_small_char=True)
    if not cert.e_generating:
        raise SearchFailure("constructed form fails its own certificate", attempts=1)
    return cert


def _obtain_system(system, r, b, m, c, field, seed, max_attempts):
    if system is None:
        return find_generating_system(GeneratorRequest(r, b, m, c, field, seed, max_attempts))
    system = LinearSystem.of(system) if not isinstance(system, LinearSystem) else system
    if system.nvars != r + 1 or system.degree != b or len(system) != m:
        raise DomainError(f"system must have {m} forms of degree {b} in {r + 1} variables")
    if system.field != field:
        system = LinearSystem(system.nvars, system.degree, tuple(g.with_field(field) for g in system), field)
    if not is_c_generating(system, c):
        raise DomainError(f"given system is not {c}-generating")
    return system


def waldron_form(r, d, n, seed=0, field=QQ, system=None, max_attempts=DEFAULT_ATTEMPTS,
                 allow_small_char=False) -> AmbientForm:
    """G = sum_i y_i G_i(x_0..x_r) for a 1-generating (G_i) of degree d - 1."""
    if d < 3:
        raise DomainError("waldron_form needs d >= 3 (d = 1, 2 are separate cases)")
    n1 = bounds.waldron_threshold(r, d)
    if n < n1:
        raise RangeError(f"n={n} < N_1(r, d)={n1}")
    check_characteristic(field, d, 1, allow_small_char)
    frame = VeroneseFrame(r, 1, n)
    sys = _obtain_system(system, r, d - 1, frame.m, 1, field, seed, max_attempts)
    G = AmbientForm(frame, d, _y_combination(frame, [g for g in sys], field, d))
    _verify_certificate(G, 1)
    return G


@dataclass(frozen=True)
class NenashevForm:
    form: AmbientForm
    system: LinearSystem  # the e-generating G_i in t-variables
    lifts: tuple  # H_i in x-variables, nu^* H_i = G_i


def nenashev_construction(r, e, d, n, seed=0, field=QQ, system=None,
                          max_attempts=DEFAULT_ATTEMPTS, allow_small_char=False) -> NenashevForm:
    if e < 2:
        raise DomainError("nenashev_form needs e >= 2")
    if d < 3:
        raise DomainError("nenashev_form needs d >= 3 (d = 2 is quadric_through_veronese)")
    nt = bounds.nenashev_threshold(r, d, e)
    if n < nt:
        raise RangeError(f"n={n} below the e>=2 range {nt}")
    check_characteristic(field, d, e, allow_small_char)
    frame = VeroneseFrame(r, e, n)
    sys = _obtain_system(system, r, (d - 1) * e, frame.m, e, field, seed, max_attempts)
    lifts = tuple(lift_form(frame, g, d - 1) for g in sys)
    xframe_pull = VeroneseFrame(r, e, frame.nx - 1)
    for h, g in zip(lifts, sys):
        if veronese_pullback(xframe_pull, h) != g:
            raise DomainError("monomial lift failed re-expansion")
    G = AmbientForm(frame, d, _y_combination(frame, lifts, field, d))
    _verify_certificate(G, e)
    return NenashevForm(G, sys, lifts)


def nenashev_form(r, e, d, n, seed=0, field=QQ, **kw) -> AmbientForm:
    """G = sum_i y_i H_i with H_i lifting an e-generating system of degree (d-1)e."""
    return nenashev_construction(r, e, d, n, seed, field, **kw).form


def pencil_system(r, d, n, seed=0, field=QQ, system=None, max_attempts=DEFAULT_ATTEMPTS):
    m = n - r - 1
    return _obtain_system(system, r, d - 1, m, 1, field, seed, max_attempts)


def pencil_form(r, d, n, a, b, seed=0, field=QQ, system=None, max_attempts=DEFAULT_ATTEMPTS,
                allow_small_char=False) -> AmbientForm:
    """G_{a,b} = sum_{i=1..m} (a y_{i-1} + b y_i) G_i in coordinates (x_0..x_r, y_0..y_m)."""
    a, b = field(a), field(b)
    if not a and not b:
        raise DomainError("(a, b) must not both vanish")
    if d < 2:
        raise DomainError("pencil_form needs d >= 2")
    need = 1 + bounds.waldron_threshold(r, d)
    if n < need:
        raise RangeError(f"n={n} < 1 + N_1(r, d)={need}")
    check_characteristic(field, d, 1, allow_small_char)
    sys = pencil_system(r, d, n, seed, field, system, max_attempts)
    frame = VeroneseFrame(r, 1, n, y_base=0)
    # coefficient of y_j is a*G_{j+1} + b*G_j (1-based G, out-of-range terms dropped)
    G = list(sys)
    coeffs = []
    for j in range(frame.m):
        h = GradedForm.zero(r + 1, d - 1, field)
        if j < len(G):
            h = h + G[j].scale(a)
        if j >= 1:
            h = h + G[j - 1].scale(b)
        coeffs.append(h)
    form = AmbientForm(frame, d, _y_combination(frame, coeffs, field, d))
    _verify_certificate(form, 1)
    return form


def quadric_spanning_set(frame: VeroneseFrame, field=QQ):
    """Quadrics through the Veronese: binomial relations, y_i y_j, y_i x_e."""
    nv = frame.nvars
    xs = frame.x_coords
    var = lambda i: GradedForm.variable(i, nv, field)
    groups = {}
    for i, j in itertools.combinations_with_replacement(range(frame.nx), 2):
        s = tuple(a + b for a, b in zip(xs[i], xs[j]))
        groups.setdefault(s, []).append((i, j))
    out = []
    for pairs in groups.values():
        i0, j0 = pairs[0]
        for i, j in pairs[1:]:
            out.append(var(i) * var(j) - var(i0) * var(j0))
    ys = [frame.y_index(k) for k in range(frame.m)]
    for a_, b_ in itertools.combinations_with_replacement(ys, 2):
        out.append(var(a_) * var(b_))
    for yk in ys:
        for i in range(frame.nx):
            out.append(var(yk) * var(i))
    return out


def gram_matrix(q: GradedForm) -> Matrix:
    """Symmetric matrix of second partials (the quadric's Hessian)."""
    F, nv = q.field, q.nvars
    rows = [[F.zero] * nv for _ in range(nv)]
    for mono, c in q.terms.items():
        idx = [i for i, k in enumerate(mono) for _ in range(k)]
        i, j = idx
        if i == j:
            rows[i][i] = F.add(rows[i][i], F.mul(c, F(2)))
        else:
            rows[i][j] = F.add(rows[i][j], c)
            rows[j][i] = F.add(rows[j][i], c)
    return Matrix(tuple(tuple(r) for r in rows), nv, F)


def quadric_through_veronese(r, e, n, seed=0, field=QQ, max_attempts=DEFAULT_ATTEMPTS,
                             box=7) -> AmbientForm:
    """A smooth quadric containing the Veronese, by seeded random combination."""
    if e < 2:
        raise DomainError("quadric_through_veronese needs e >= 2")
    if field.characteristic == 2:
        raise DomainError("smooth quadric test needs characteristic != 2")
    frame = VeroneseFrame(r, e, n)
    span = quadric_spanning_set(frame, field)
    for attempt in range(max_attempts):
        rng = attempt_rng(seed, attempt)
        q = GradedForm.zero(frame.nvars, 2, field)
        for s in span:
            c = rng.randrange(field.p) if isinstance(field, PrimeField) else rng.randint(-box, box)
            if c:
                q = q + s.scale(c)
        if rank(gram_matrix(q)) == frame.nvars:
            form = AmbientForm(frame, 2, q)
            if not veronese_pullback(frame, q).is_zero():
                raise DomainError("quadric does not contain the Veronese")
            return form
    raise SearchFailure(f"no smooth quadric after {max_attempts} attempts", attempts=max_attempts)


def hyperplane_form(r, e, n, field=QQ) -> AmbientForm:
    """The d = 1 case: the hyperplane y_1 = 0 contains the Veronese span."""
    frame = VeroneseFrame(r, e, n)
    if frame.m < 1:
        raise RangeError("d = 1 needs n >= 1 + n_e(r)")
    return AmbientForm(frame, 1, GradedForm.variable(frame.y_index(0), frame.nvars, field))


def symmetric_power_matrix(A, e, field=QQ):
    """Matrix S with (A t)^{f_k} = sum_l S[k][l] t^{f_l} over Delta_r(e)."""
    nv = len(A)
    lin = [GradedForm(nv, 1, {tuple(int(i == j) for i in range(nv)): A[row][j] for j in range(nv)}, field)
           for row in range(nv)]
    basis = monomial_basis(nv, e)
    out = []
    for f in basis:
        prod = GradedForm.monomial((0,) * nv, 1, field)
        for i, k in enumerate(f):
            if k:
                prod = prod * lin[i] ** k
        out.append([prod.coeff(g) for g in basis])
    return out


def change_coordinates(G: AmbientForm, A, B, C=None) -> AmbientForm:
    """Pull G back along x -> Sym^e(A) x + C y, y -> B y.

    ``A`` acts on the t-coordinates, ``B`` on the y's and ``C`` (nx by m) mixes y
    into x.  The transformation fixes the span and the Veronese, so
    ``veronese_pullback`` of the result is that of G composed with ``t -> A t``.
    """
    fr, F = G.frame, G.field
    nv = fr.nvars
    S = symmetric_power_matrix(A, fr.e, F)
    images = []
    for k in range(fr.nx):
        coeffs = {}
        for l_ in range(fr.nx):
            coeffs[l_] = S[k][l_]
        if C is not None:
            for j in range(fr.m):
                coeffs[fr.y_index(j)] = C[k][j]
        images.append(GradedForm(nv, 1, {tuple(int(i == v) for i in range(nv)): c for v, c in coeffs.items()}, F))
    for i in range(fr.m):
        coeffs = {fr.y_index(j): B[i][j] for j in range(fr.m)}
        images.append(GradedForm(nv, 1, {tuple(int(t == v) for t in range(nv)): c for v, c in coeffs.items()}, F))
    return AmbientForm(fr, G.d, G.poly.substitute(images))
