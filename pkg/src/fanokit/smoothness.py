"""Smooth-point certificates for hypersurfaces containing a Veronese span.

For G vanishing on the span, the pulled-back y-partials form a linear system
of degree (d-1)e on P^r.  The hypersurface is smooth along the Veronese iff
that system is c-generating for some c, and the Fano projection is smooth at
the point iff it is e-generating.  Scanning stops at the Macaulay bound
(r+1)(b-1)+1, beyond which a non-generating system has a genuine base point.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .bounds import expected_dim
from .construct import AmbientForm, VeroneseFrame, check_characteristic, veronese_pullback
from .errors import PreconditionError, UnsupportedError
from .polyring import LinearSystem, GradedForm, generating_rank, graded_dim, multiplication_map, rank


def macaulay_bound(nvars, b):
    return max(1, nvars * (b - 1) + 1)


def _require_span(G: AmbientForm):
    if not G.in_span_ideal():
        raise PreconditionError("G must vanish on the span: every term needs a y-variable")


def y_partials(G: AmbientForm):
    fr = G.frame
    return [G.poly.partial(fr.y_index(j)) for j in range(fr.m)]


def partials_pullback(G: AmbientForm) -> LinearSystem:
    """The system nu^*(dG/dy_i), i = 1..m, of degree (d-1)e in r+1 variables."""
    _require_span(G)
    fr = G.frame
    members = tuple(veronese_pullback(fr, p) for p in y_partials(G))
    return LinearSystem(fr.r + 1, (G.d - 1) * fr.e, members, G.field)


def span_system(G: AmbientForm) -> LinearSystem:
    """The y-partials restricted to the span, as forms of degree d-1 in the x's."""
    _require_span(G)
    fr = G.frame
    nx = fr.nx
    members = []
    for p in y_partials(G):
        terms = {m[:nx]: c for m, c in p.terms.items() if not any(m[nx:])}
        members.append(GradedForm(nx, G.d - 1, terms, G.field))
    return LinearSystem(nx, G.d - 1, tuple(members), G.field)


def coordinate_base_point(sys: LinearSystem):
    """A coordinate point where every member vanishes, or None.

    Member g is nonzero at the k-th coordinate point iff it has a t_k^b term.
    """
    b = sys.degree
    for k in range(sys.nvars):
        pure = tuple(b if i == k else 0 for i in range(sys.nvars))
        if all(g.coeff(pure) == 0 for g in sys):
            return k
    return None


def scan_generating(sys: LinearSystem, c_max: int, ranks: dict, witness_first=False):
    """Least c in 1..c_max with the system c-generating, recording ranks."""
    if not len(sys):
        return None
    if witness_first and coordinate_base_point(sys) is not None:
        return None
    for c in range(1, c_max + 1):
        rk = generating_rank(sys, c)
        ranks[c] = rk
        if rk == graded_dim(sys.nvars - 1, sys.degree + c):
            return c
    return None


@dataclass
class Certificate:
    frame: VeroneseFrame
    d: int
    partials_system: LinearSystem
    e_generating: bool
    image_smooth_c: Optional[int]
    span_smooth_c: Optional[int]
    c_max: int
    ranks: dict = dc_field(default_factory=dict)
    span_checked: bool = True
    span_base_point: Optional[int] = None

    def to_dict(self):
        out = {
            "e_generating": self.e_generating,
            "image_smooth_c": self.image_smooth_c,
            "span_smooth_c": self.span_smooth_c,
            "c_max": self.c_max,
            "ranks": {str(c): rk for c, rk in sorted(self.ranks.items())},
        }
        if not self.span_checked:
            out["span_checked"] = False
        if self.span_base_point is not None:
            out["span_base_point"] = f"x{self.span_base_point}"
        return out


def certify_smooth_point(G: AmbientForm, c_max=None, scan_span=True, allow_small_char=False) -> Certificate:
    fr = G.frame
    check_characteristic(G.field, G.d, fr.e, allow_small_char)
    sys = partials_pullback(G)
    b = sys.degree
    if c_max is None:
        c_max = macaulay_bound(fr.r + 1, b)
    c_max = max(c_max, fr.e)
    ranks = {}
    image_c = scan_generating(sys, c_max, ranks)
    if fr.e not in ranks:
        ranks[fr.e] = generating_rank(sys, fr.e) if len(sys) else 0
    e_gen = bool(len(sys)) and ranks[fr.e] == graded_dim(fr.r, b + fr.e)

    span_c, base_pt, checked = None, None, True
    if fr.e == 1:
        span_c = image_c
    elif scan_span:
        ssys = span_system(G)
        base_pt = coordinate_base_point(ssys)
        if base_pt is None:
            span_c = scan_generating(ssys, macaulay_bound(fr.nx, G.d - 1), {})
    else:
        checked = False
    return Certificate(fr, G.d, sys, e_gen, image_c, span_c, c_max, ranks, checked, base_pt)


def tangent_dim_linear(G: AmbientForm) -> int:
    """Dimension of first-order deformations of the plane {y = 0} inside Zero(G).

    m(r+1) - rank of (A_1..A_m) -> sum A_i * nu^*(dG/dy_i), A_i linear.
    """
    if G.frame.e != 1:
        raise UnsupportedError("tangent dimension is only computed for linear spaces (e = 1)")
    sys = partials_pullback(G)
    if not len(sys):
        return 0
    return len(sys) * (G.frame.r + 1) - rank(multiplication_map(sys, 1))


def expected_tangent_dim(G: AmbientForm) -> int:
    fr = G.frame
    return expected_dim(fr.n, fr.r, G.d, fr.e)
