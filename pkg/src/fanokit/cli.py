"""Command-line entry point: ``fanokit <subcommand> ...``.

Exit status: 0 success, 1 domain/range/search errors, 2 failed internal
cross-checks (a regression against a proven statement), 64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bounds, brute, construct, generators, schubert, smoothness
from .errors import CrossCheckError, DomainError, FanoError, SearchFailure
from .polyring import format_form, parse_field, parse_form

EXIT_OK, EXIT_DOMAIN, EXIT_CROSSCHECK, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass
class RunConfig:
    command: str
    field: object
    seed: int
    fmt: str
    out: Path | None
    threads: int


def _common(p):
    p.add_argument("--field", default="Q", help="Q or a prime p")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", dest="fmt", choices=("json", "tsv"), default="json")
    p.add_argument("--out", type=Path)
    p.add_argument("--threads", type=int, default=1)


def _leaf(sub, name, **flags):
    p = sub.add_parser(name)
    _common(p)
    for flag, kw in flags.items():
        p.add_argument(f"--{flag.replace('_', '-')}", dest=flag, **kw)
    return p


INT = {"type": int}
REQ = {"type": int, "required": True}


def build_parser():
    parser = _Parser(prog="fanokit", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="command", parser_class=_Parser)
    top.required = True

    _leaf(top, "bounds", r=REQ, d=REQ, e={"type": int, "default": 1}, n=INT)

    cons = top.add_parser("construct").add_subparsers(dest="kind", parser_class=_Parser)
    cons.required = True
    _leaf(cons, "waldron", r=REQ, d=REQ, n=REQ)
    _leaf(cons, "nenashev", r=REQ, e=REQ, d=REQ, n=REQ)
    _leaf(cons, "pencil", r=REQ, d=REQ, n=REQ, a={"default": "1"}, b={"default": "0"})
    _leaf(cons, "quadric-veronese", r=REQ, e=REQ, n=REQ)

    poly_flags = dict(poly={"type": Path, "required": True}, r=INT, e={"type": int, "default": 1}, n=INT)
    _leaf(top, "certify", c_max=INT, **poly_flags)
    _leaf(top, "tangent", **poly_flags)

    sch = top.add_parser("schubert").add_subparsers(dest="kind", parser_class=_Parser)
    sch.required = True
    _leaf(sch, "count", r=REQ, n=REQ, d=REQ)
    _leaf(sch, "degree", r=REQ, n=REQ, d=REQ)
    _leaf(sch, "poly", r=REQ, d=REQ, n=INT)

    enum = top.add_parser("enumerate").add_subparsers(dest="kind", parser_class=_Parser)
    enum.required = True
    _leaf(enum, "fano", q=REQ, r=REQ, poly={"type": Path, "required": True})
    _leaf(enum, "planes", n=REQ, r=REQ, q=REQ)
    _leaf(enum, "quadric-families", r=REQ, q=REQ)

    gen = top.add_parser("generators").add_subparsers(dest="kind", parser_class=_Parser)
    gen.required = True
    _leaf(gen, "find", r=REQ, m=REQ, c={"type": int, "default": 1}, b=INT, d=INT, e=INT)
    return parser


def _load_ambient(args, field):
    text = args.poly.read_text(encoding="utf-8")
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        return construct.AmbientForm.from_dict(data, field=None if args.field == "Q" and "field" in data else field)
    if args.r is None or args.n is None:
        raise DomainError("a plain-text polynomial needs --r and --n (and --e) to fix the frame")
    frame = construct.VeroneseFrame(args.r, args.e, args.n, y_base=0 if "y0" in stripped else 1)
    return construct.AmbientForm.from_text(stripped, frame, field)


def _load_plain(path, field):
    text = path.read_text(encoding="utf-8").strip()
    if text.startswith("{"):
        data = json.loads(text)
        return construct.AmbientForm.from_dict(data, field=field).poly
    return parse_form(text, field)


def _construction_payload(G, certify=True):
    out = G.to_dict()
    if certify:
        cert = smoothness.certify_smooth_point(G, allow_small_char=True)
        if not cert.e_generating:
            raise CrossCheckError("construction failed its own certificate")
        out["certificate"] = cert.to_dict()
        if G.frame.e == 1:
            out["tangent_dim"] = smoothness.tangent_dim_linear(G)
            out["f_e_nrd"] = smoothness.expected_tangent_dim(G)
    return out


def run_command(args, cfg: RunConfig):
    cmd, kind = args.command, getattr(args, "kind", None)
    F = cfg.field
    if cmd == "bounds":
        rep = bounds.degree_range(args.r, args.d, args.e, args.n).to_dict()
        if args.n is not None:
            ff = bounds.flag_fiber_report(args.n, args.r, args.d)
            rep["flag_threshold_empty"] = ff.threshold_empty
            rep["flag_connected"] = ff.connected
            rep["flag_boundary"] = ff.boundary
        return rep
    if cmd == "construct":
        if kind == "waldron":
            G = construct.waldron_form(args.r, args.d, args.n, cfg.seed, F)
        elif kind == "nenashev":
            G = construct.nenashev_form(args.r, args.e, args.d, args.n, cfg.seed, F)
        elif kind == "pencil":
            G = construct.pencil_form(args.r, args.d, args.n, F(args.a), F(args.b), cfg.seed, F)
        else:
            G = construct.quadric_through_veronese(args.r, args.e, args.n, cfg.seed, F)
            out = G.to_dict()
            gram_rank = construct.rank(construct.gram_matrix(G.poly))
            contains = construct.veronese_pullback(G.frame, G.poly).is_zero()
            if gram_rank != G.frame.nvars or not contains:
                raise CrossCheckError("quadric failed re-verification")
            out["certificate"] = {"smooth": True, "gram_rank": gram_rank, "contains_veronese": contains}
            return out
        return _construction_payload(G)
    if cmd == "certify":
        G = _load_ambient(args, F)
        cert = smoothness.certify_smooth_point(G, c_max=args.c_max)
        return cert.to_dict()
    if cmd == "tangent":
        G = _load_ambient(args, F)
        return {
            "tangent_dim": smoothness.tangent_dim_linear(G),
            "f1": smoothness.expected_tangent_dim(G),
            "e_generating": smoothness.certify_smooth_point(G, scan_span=False).e_generating,
        }
    if cmd == "schubert":
        if kind == "count":
            return schubert.count_linear_spaces(args.r, args.n, args.d).to_dict()
        if kind == "degree":
            deg = schubert.fano_degree(args.r, args.n, args.d)
            return {"r": args.r, "n": args.n, "d": args.d,
                    "f1": bounds.expected_dim(args.n, args.r, args.d, 1), "degree": str(deg)}
        P = schubert.chern_top_poly(args.r, args.d, cap=args.n)
        return {"r": args.r, "d": args.d, "cap": args.n, "nterms": len(P.terms), "poly": P.text()}
    if cmd == "enumerate":
        if kind == "fano":
            field = parse_field(args.q)
            G = _load_plain(args.poly, field)
            return {"q": args.q, "r": args.r, "count": brute.count_fano_points(G, args.r, args.q, cfg.threads)}
        if kind == "planes":
            count = sum(1 for _ in brute.enumerate_planes(args.n, args.r, args.q))
            expected = brute.gaussian_binomial(args.n + 1, args.r + 1, args.q)
            if count != expected:
                raise CrossCheckError(f"enumerated {count} planes, Gaussian binomial is {expected}")
            return {"n": args.n, "r": args.r, "q": args.q, "count": count}
        fam = brute.quadric_families(args.r, args.q)
        if not all(fam.checks.values()):
            out = fam.to_dict()
            raise CrossCheckError(f"quadric family checks failed: {json.dumps(out['checks'])}")
        return fam.to_dict()
    if cmd == "generators":
        b = args.b
        if b is None:
            if args.d is None:
                raise DomainError("give --b, or --d (with --e for c >= 2)")
            b = (args.d - 1) * (args.e or 1)
        req = generators.GeneratorRequest(args.r, b, args.m, args.c, F, cfg.seed)
        sysm = generators.find_generating_system(req)
        return {
            "r": args.r, "b": b, "m": args.m, "c": args.c, "field": F.name, "seed": cfg.seed,
            "members": [format_form(g) for g in sysm],
        }
    raise UsageError(f"unknown command {cmd}")


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list):
        yield prefix[:-1], ",".join(str(x) for x in obj)
    else:
        yield prefix[:-1], obj


def render(payload, fmt):
    if fmt == "tsv":
        return "".join(f"{k}\t{json.dumps(v) if not isinstance(v, str) else v}\n" for k, v in _flatten(payload))
    return json.dumps(payload, indent=2) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig(args.command, parse_field(args.field), args.seed, args.fmt, args.out, args.threads)
        payload = run_command(args, cfg)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    except CrossCheckError as exc:
        print(f"cross-check failure: {exc}", file=stderr)
        return EXIT_CROSSCHECK
    except (DomainError, SearchFailure) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except FanoError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    text = render(payload, cfg.fmt)
    if cfg.out:
        cfg.out.write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
