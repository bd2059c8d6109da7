import random

import pytest

from fanokit import bounds, construct, smoothness
from fanokit.construct import AmbientForm, VeroneseFrame
from fanokit.errors import DomainError, PreconditionError, UnsupportedError
from fanokit.polyring import GF, QQ, GradedForm, graded_dim, monomial_basis, parse_form


def ambient(text, r=1, e=1, n=3, field=QQ):
    return AmbientForm.from_text(text, VeroneseFrame(r, e, n), field)


def test_partials_pullback_examples():
    sys = smoothness.partials_pullback(ambient("y1*x0^2 + y2*x1^2"))
    assert list(sys) == [parse_form("t0^2", nvars=2), parse_form("t1^2", nvars=2)]
    sys = smoothness.partials_pullback(ambient("y1*x0^2", n=3))
    assert sys[0] == parse_form("t0^2", nvars=2) and sys[1].is_zero()


def test_partials_need_span_ideal():
    with pytest.raises(PreconditionError):
        smoothness.partials_pullback(ambient("x0^3 + y1*x1^2"))


def test_certificate_squares():
    cert = smoothness.certify_smooth_point(ambient("y1*x0^2 + y2*x1^2"))
    assert cert.e_generating and cert.image_smooth_c == 1
    assert cert.to_dict() == {
        "e_generating": True,
        "image_smooth_c": 1,
        "span_smooth_c": 1,
        "c_max": 3,
        "ranks": {"1": 4},
    }


def test_certificate_common_factor():
    cert = smoothness.certify_smooth_point(ambient("y1*x0^3 + y2*x0^2*x1"))
    assert not cert.e_generating
    assert cert.image_smooth_c is None
    assert cert.c_max == 5
    # the image is t0^2 * S_(c+1): it misses t1^(3+c) and t0*t1^(2+c)
    assert cert.ranks == {c: graded_dim(1, 3 + c) - 2 for c in range(1, 6)}


def test_certificate_pencil_endpoint():
    G = construct.pencil_form(1, 3, 4, 1, 0, seed=0)
    assert smoothness.certify_smooth_point(G).e_generating


@pytest.mark.parametrize(
    "text,expected",
    [("y1*x0^2 + y2*x1^2", 0), ("y1*x0^2 + y2*x0*x1", 1)],
)
def test_tangent_dim_examples(text, expected):
    assert smoothness.tangent_dim_linear(ambient(text)) == expected


def test_tangent_dim_empty_complement():
    G = AmbientForm(VeroneseFrame(1, 1, 1), 3, GradedForm.zero(2, 3))
    assert smoothness.tangent_dim_linear(G) == 0


def test_tangent_dim_needs_lines():
    with pytest.raises(UnsupportedError):
        smoothness.tangent_dim_linear(construct.nenashev_form(1, 2, 3, 8))


def test_span_base_point_reported_for_veronese():
    G = construct.nenashev_form(1, 2, 3, 8, seed=0)
    cert = smoothness.certify_smooth_point(G)
    assert cert.e_generating
    # greedy lifts never use the middle coordinate squared, so the span has a base point
    assert cert.span_smooth_c is None and cert.to_dict()["span_base_point"] == "x1"


def test_small_char_refused():
    G = ambient("y1*x0^2 + y2*x1^2", field=GF(3))
    with pytest.raises(DomainError):
        smoothness.certify_smooth_point(G)
    assert smoothness.certify_smooth_point(G, allow_small_char=True).e_generating


def _corpus():
    """Constructed forms plus sparse random e = 1 forms over F_p, some singular."""
    F = GF(10007)
    out = []
    for r, d in [(1, 3), (1, 4), (2, 3)]:
        n = bounds.waldron_threshold(r, d)
        out.append(construct.waldron_form(r, d, n, seed=3, field=F))
    out.append(construct.pencil_form(1, 3, 4, 2, 5, seed=3, field=F))
    rng = random.Random(13)
    for _ in range(40):
        r, d = rng.choice([(1, 3), (1, 4), (2, 3)])
        n = bounds.waldron_threshold(r, d) + rng.randint(0, 1)
        fr = VeroneseFrame(r, 1, n)
        basis = monomial_basis(r + 1, d - 1)
        terms = {}
        for j in range(fr.m):
            for mono in rng.sample(basis, rng.randint(1, 2)):
                terms[mono + tuple(int(k == j) for k in range(fr.m))] = rng.randrange(1, 10007)
        out.append(AmbientForm(fr, d, GradedForm(fr.nvars, d, terms, F)))
    return out


def test_certificate_iff_expected_tangent_dimension():
    verdicts = set()
    for G in _corpus():
        cert = smoothness.certify_smooth_point(G)
        td = smoothness.tangent_dim_linear(G)
        f1 = smoothness.expected_tangent_dim(G)
        assert cert.e_generating == (td == f1)
        assert td >= f1
        verdicts.add(cert.e_generating)
    assert verdicts == {True, False}


def test_scan_is_monotone_on_corpus():
    for G in _corpus():
        cert = smoothness.certify_smooth_point(G)
        sys = cert.partials_system
        b = sys.degree
        if cert.image_smooth_c is not None:
            for c in range(cert.image_smooth_c, cert.c_max + 1):
                assert smoothness.generating_rank(sys, c) == graded_dim(sys.r, b + c)
        else:
            for c, rk in cert.ranks.items():
                assert rk < graded_dim(sys.r, b + c)


def test_constructions_always_certify():
    for G in [
        construct.waldron_form(3, 3, 8, seed=1),
        construct.nenashev_form(2, 2, 3, bounds.nenashev_threshold(2, 3, 2), seed=1),
        construct.pencil_form(2, 3, bounds.waldron_threshold(2, 3) + 1, 3, -2, seed=1),
    ]:
        assert smoothness.certify_smooth_point(G).e_generating


def test_pullback_is_linear():
    F = GF(101)
    a = construct.waldron_form(1, 3, 4, seed=1, field=F)
    b = construct.waldron_form(1, 3, 4, seed=2, field=F)
    s = AmbientForm(a.frame, 3, a.poly + b.poly)
    lhs = smoothness.partials_pullback(s)
    pa, pb = smoothness.partials_pullback(a), smoothness.partials_pullback(b)
    assert list(lhs) == [x + y for x, y in zip(pa, pb)]


def test_macaulay_bound():
    assert smoothness.macaulay_bound(2, 3) == 5
    assert smoothness.macaulay_bound(3, 1) == 1
