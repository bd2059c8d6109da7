import random

import pytest

from fanokit import bounds, construct, smoothness
from fanokit.construct import AmbientForm, VeroneseFrame
from fanokit.errors import DomainError, RangeError
from fanokit.polyring import GF, QQ, LinearSystem, parse_form, rank

SQUARES = LinearSystem.of([parse_form("t0^2", nvars=2), parse_form("t1^2", nvars=2)])


def ambient(text, r, e, n, field=QQ, y_base=1):
    return AmbientForm.from_text(text, VeroneseFrame(r, e, n, y_base), field)


def test_frame_layout():
    fr = VeroneseFrame(1, 2, 5)
    assert fr.x_coords == ((2, 0), (1, 1), (0, 2))
    assert fr.names == ["x0", "x1", "x2", "y1", "y2", "y3"]
    assert fr.m == 3
    with pytest.raises(RangeError):
        VeroneseFrame(1, 2, 1)


@pytest.mark.parametrize(
    "text,r,e,n,expected",
    [
        ("x0*x2 - x1^2", 1, 2, 5, "0"),
        ("y1", 1, 1, 3, "0"),
        ("x0 + x1", 1, 2, 2, "t0^2 + t0*t1"),
    ],
)
def test_veronese_pullback_examples(text, r, e, n, expected):
    G = ambient(text, r, e, n)
    pulled = construct.veronese_pullback(G.frame, G.poly)
    if expected == "0":
        assert pulled.is_zero()
    else:
        assert pulled == parse_form(expected, nvars=r + 1)


def test_waldron_with_squares():
    G = construct.waldron_form(1, 3, 3, system=SQUARES)
    assert G.text() == "x0^2*y1 + x1^2*y2"


def test_waldron_below_range():
    with pytest.raises(RangeError):
        construct.waldron_form(1, 3, 2)


def test_waldron_quartic_in_p7():
    G = construct.waldron_form(2, 4, 7, seed=1)
    assert G.in_span_ideal()
    assert construct.veronese_pullback(G.frame, G.poly).is_zero()
    assert smoothness.certify_smooth_point(G).e_generating


def test_waldron_rejects_low_degree():
    with pytest.raises(DomainError):
        construct.waldron_form(1, 2, 5)


def test_nenashev_cubic_in_p8():
    nf = construct.nenashev_construction(1, 2, 3, 8, seed=0)
    assert nf.form.frame.nvars == 9
    assert smoothness.certify_smooth_point(nf.form).e_generating
    with pytest.raises(RangeError):
        construct.nenashev_form(1, 2, 3, 7)


@pytest.mark.parametrize("e,r,d", [(2, 1, 3), (2, 1, 4), (2, 2, 3), (3, 1, 3)])
def test_nenashev_lifts_reexpand(e, r, d):
    n = bounds.nenashev_threshold(r, d, e)
    nf = construct.nenashev_construction(r, e, d, n, seed=4)
    xframe = VeroneseFrame(r, e, nf.form.frame.nx - 1)
    for h, g in zip(nf.lifts, nf.system):
        assert construct.veronese_pullback(xframe, h) == g
    # the y-partials pull back to the original system
    assert list(smoothness.partials_pullback(nf.form)) == list(nf.system)


def test_lift_monomial_example():
    parts = construct.lift_monomial((3, 3), 2, 3)
    assert len(parts) == 3
    assert all(sum(p) == 2 for p in parts)
    assert tuple(map(sum, zip(*parts))) == (3, 3)


def test_lift_monomial_exhaustive_grid():
    for r in (1, 2):
        for e in (2, 3):
            for k in (1, 2, 3):
                frame = VeroneseFrame(r, e, 20)
                for w in construct.monomial_basis(r + 1, k * e):
                    parts = construct.lift_monomial(w, e, k)
                    assert tuple(map(sum, zip(*parts))) == w
                    assert all(p in frame.x_coords for p in parts)


def test_pencil_endpoints():
    assert construct.pencil_form(1, 3, 4, 1, 0, system=SQUARES).text() == "x0^2*y0 + x1^2*y1"
    assert construct.pencil_form(1, 3, 4, 0, 1, system=SQUARES).text() == "x0^2*y1 + x1^2*y2"
    G = construct.pencil_form(1, 3, 4, 1, 1, system=SQUARES)
    assert G.text() == "x0^2*y0 + x0^2*y1 + x1^2*y1 + x1^2*y2"
    assert smoothness.certify_smooth_point(G).e_generating


def test_pencil_errors():
    with pytest.raises(DomainError):
        construct.pencil_form(1, 3, 4, 0, 0)
    with pytest.raises(RangeError):
        construct.pencil_form(1, 3, 3, 1, 0)


def test_pencil_is_linear():
    F = GF(101)
    rng = random.Random(5)
    for _ in range(10):
        a, b, a2, b2 = (rng.randrange(1, 101) for _ in range(4))
        if (a + a2) % 101 == 0 and (b + b2) % 101 == 0:
            continue
        g1 = construct.pencil_form(1, 3, 4, a, b, seed=9, field=F).poly
        g2 = construct.pencil_form(1, 3, 4, a2, b2, seed=9, field=F).poly
        g3 = construct.pencil_form(1, 3, 4, a + a2, b + b2, seed=9, field=F).poly
        assert g1 + g2 == g3


def test_constructions_lie_in_y_ideal():
    outputs = [
        construct.waldron_form(1, 4, 4, seed=2),
        construct.waldron_form(2, 3, 6, seed=2),
        construct.nenashev_form(1, 2, 3, 8, seed=2),
        construct.pencil_form(1, 3, 4, 2, 3, seed=2),
    ]
    for G in outputs:
        nx = G.frame.nx
        assert G.poly.terms
        for mono in G.poly.terms:
            assert any(mono[nx:])


@pytest.mark.parametrize("r,e,n", [(1, 2, 5), (1, 2, 2), (2, 2, 5), (1, 3, 4)])
def test_quadric_through_veronese(r, e, n):
    Q = construct.quadric_through_veronese(r, e, n, seed=0)
    assert construct.veronese_pullback(Q.frame, Q.poly).is_zero()
    assert rank(construct.gram_matrix(Q.poly)) == n + 1


def test_conic_quadric_is_the_relation():
    Q = construct.quadric_through_veronese(1, 2, 2)
    # only the 2x2 minor survives when the span is the whole plane
    assert Q.poly.coeff((1, 0, 1)) == -Q.poly.coeff((0, 2, 0))


def test_quadric_needs_veronese():
    with pytest.raises(DomainError):
        construct.quadric_through_veronese(1, 1, 4)


def test_quadric_refuses_char_two():
    with pytest.raises(DomainError):
        construct.quadric_through_veronese(1, 2, 5, field=GF(2))


def test_small_characteristic_guard():
    with pytest.raises(DomainError):
        construct.waldron_form(1, 3, 3, field=GF(3))
    G = construct.waldron_form(1, 3, 3, field=GF(3), allow_small_char=True, max_attempts=64)
    assert G.field.p == 3


def test_ambient_json_round_trip():
    G = construct.nenashev_form(1, 2, 3, 8, seed=1)
    assert AmbientForm.from_dict(G.to_dict()) == G
    P = construct.pencil_form(1, 3, 4, 1, 1, seed=1)
    assert P.to_dict()["frame"]["y_base"] == 0
    assert AmbientForm.from_dict(P.to_dict()) == P


def _random_invertible(rng, k, p):
    while True:
        A = [[rng.randrange(p) for _ in range(k)] for _ in range(k)]
        if rank([[GF(p).element(x) for x in row] for row in A]) == k:
            return A


def test_pgl_equivariance_of_certificates():
    p = 10007
    F = GF(p)
    rng = random.Random(77)
    bases = [
        construct.waldron_form(1, 3, 3, seed=1, field=F),
        construct.waldron_form(2, 3, 6, seed=1, field=F),
        construct.nenashev_form(1, 2, 3, 8, seed=1, field=F),
        ambient("y1*x0^3 + y2*x0^2*x1", 1, 1, 3, F),
        ambient("y1*x0^2 + y2*x0*x1", 1, 1, 3, F),
    ]
    verdicts = [smoothness.certify_smooth_point(G, scan_span=False).e_generating for G in bases]
    assert True in verdicts and False in verdicts
    for trial in range(50):
        k = trial % len(bases)
        G = bases[k]
        fr = G.frame
        A = _random_invertible(rng, fr.r + 1, p)
        B = _random_invertible(rng, fr.m, p)
        C = [[rng.randrange(p) for _ in range(fr.m)] for _ in range(fr.nx)]
        H = construct.change_coordinates(G, A, B, C)
        assert H.in_span_ideal()
        assert smoothness.certify_smooth_point(H, scan_span=False).e_generating == verdicts[k]
