"""Text grammar for forms.

    form   := term (('+'|'-') term)*
    term   := [coeff '*'] factor ('*' factor)*
    factor := var ['^' exp]
    var    := name index        name in {t, x, y, u}

Coefficients are optionally signed integers or ``a/b`` rationals; whitespace is
insignificant.  Example: ``3*t0^2*t1 - 1/2*t2^3``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import DomainError
from .fields import QQ, PrimeField
from .forms import GradedForm

_VAR_NAMES = "tuxy"
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[tuxy])(?P<idx>\d+)|(?P<op>[-+*^]))")


def _tokenize(text):
    pos = 0
    text = text.strip()
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse polynomial near {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.group("num"):
            out.append(("num", m.group("num")))
        elif m.group("var"):
            out.append(("var", (m.group("var"), int(m.group("idx")))))
        elif m.group("op"):
            out.append(("op", m.group("op")))
        # trailing whitespace yields an empty match of only spaces
    return out


def parse_terms(text):
    """Parse into a list of ``(Fraction coeff, {(name, idx): exp})`` pairs."""
    toks = _tokenize(text)
    terms = []
    i = 0
    n = len(toks)

    def expect_factor(j):
        if j >= n or toks[j][0] != "var":
            raise DomainError("expected a variable")
        var = toks[j][1]
        j += 1
        exp = 1
        if j < n and toks[j] == ("op", "^"):
            if j + 1 >= n or toks[j + 1][0] != "num" or "/" in toks[j + 1][1]:
                raise DomainError("exponent must be a nonnegative integer")
            exp = int(toks[j + 1][1])
            j += 2
        return var, exp, j

    sign = 1
    if i < n and toks[i][0] == "op" and toks[i][1] in "+-":
        sign = -1 if toks[i][1] == "-" else 1
        i += 1
    while True:
        coeff = Fraction(sign)
        powers = {}
        if i < n and toks[i][0] == "num":
            coeff *= Fraction(toks[i][1])
            i += 1
            if i < n and toks[i] == ("op", "*"):
                i += 1
                var, exp, i = expect_factor(i)
                powers[var] = powers.get(var, 0) + exp
        else:
            var, exp, i = expect_factor(i)
            powers[var] = powers.get(var, 0) + exp
        while i < n and toks[i] == ("op", "*"):
            var, exp, i = expect_factor(i + 1)
            powers[var] = powers.get(var, 0) + exp
        terms.append((coeff, powers))
        if i == n:
            break
        if toks[i][0] != "op" or toks[i][1] not in "+-":
            raise DomainError(f"unexpected token {toks[i][1]!r}")
        sign = -1 if toks[i][1] == "-" else 1
        i += 1
        if i == n:
            raise DomainError("dangling operator")
    return terms


def infer_layout(varsets):
    """Default variable placement: blocks in t, u, x, y order.

    Each non-y block covers indices 0..max; the y block starts at 1 unless y0
    appears (the pencil convention).
    """
    seen = {}
    for name, idx in varsets:
        seen.setdefault(name, set()).add(idx)
    layout = {}
    offset = 0
    for name in _VAR_NAMES:
        if name not in seen:
            continue
        start = 0 if name != "y" or 0 in seen[name] else 1
        top = max(seen[name])
        for k in range(start, top + 1):
            layout[(name, k)] = offset + k - start
        offset += top - start + 1
    return layout, offset


def parse_form(text, field=QQ, names=None, nvars=None, degree=None) -> GradedForm:
    """Parse a form.

    ``names`` is an optional explicit variable list (``["x0", "x1", "y1"]``);
    otherwise the layout is inferred.  ``nvars`` pads the variable count and
    ``degree`` is required only to type the zero form.
    """
    terms = parse_terms(text)
    if names is not None:
        layout = {}
        for k, nm in enumerate(names):
            m = re.fullmatch(r"([tuxy])(\d+)", nm)
            if not m:
                raise DomainError(f"bad variable name {nm!r}")
            layout[(m.group(1), int(m.group(2)))] = k
        count = len(names)
    else:
        layout, count = infer_layout(v for _, p in terms for v in p)
    if nvars is not None:
        if nvars < count:
            raise DomainError(f"polynomial uses {count} variables, more than nvars={nvars}")
        count = nvars
    out = {}
    degs = set()
    for coeff, powers in terms:
        e = [0] * count
        for var, k in powers.items():
            if var not in layout:
                raise DomainError(f"unknown variable {var[0]}{var[1]}")
            e[layout[var]] += k
        e = tuple(e)
        if coeff != 0:
            degs.add(sum(e))
        out[e] = out.get(e, 0) + coeff
    out = {m: c for m, c in out.items() if c != 0}
    degs = {sum(m) for m in out} or degs
    if len(degs) > 1:
        raise DomainError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
    if degs:
        deg = degs.pop()
        if degree is not None and degree != deg:
            raise DomainError(f"declared degree {degree} but polynomial has degree {deg}")
    elif degree is not None:
        deg = degree
    else:
        deg = 0
    if count == 0:
        count = nvars or 1
    return GradedForm(count, deg, out, field)


def default_names(nvars, prefix="t"):
    return [f"{prefix}{i}" for i in range(nvars)]


def format_form(f: GradedForm, names=None) -> str:
    names = names or default_names(f.nvars)
    if not f.terms:
        return "0"
    signed = isinstance(f.field, PrimeField)
    parts = []
    for mono, c in f.sorted_terms():
        if signed:
            # symmetric representative keeps small negatives readable
            c = c - f.field.p if c > f.field.p // 2 else c
        c = Fraction(c)
        neg = c < 0
        mag = -c if neg else c
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
