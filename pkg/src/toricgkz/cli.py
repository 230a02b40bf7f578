"""Command-line interface: ``toricgkz {analyze,exceptional,series,stdpairs,toric} FILE``.

Matrix files are plain text: a header line ``d n`` followed by d rows of n
integers.  Parameters and exponents are comma-separated affine expressions
in the symbol ``a`` (``1+a``, ``3/2a-1``, ``-a/2``).

Exit codes: 0 success, 2 input error, 3 internal invariant breach,
4 inconclusive search under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .binomial import Configuration, initial_ideal, is_generic, is_monomial, as_monomial_ideal
from .certificate import is_cohen_macaulay_generic, rank_certificate
from .errors import InvalidConfiguration, NoEmbeddedPair, ToricGKZError
from .hypergeo import (DEFAULT_CAP, DEFAULT_RADIUS, Tri, cached_toric_ideal, canonical_series,
                       default_weight, fake_exponent_table, has_minimal_negative_support, series_str,
                       vec, verify_solution)
from .polyhedra import normalized_volume
from .ratfunc import RatFunc
from .stdpairs import (PairClass, associated_primes, check_chain_property, classify, degree,
                       embedded_primes, standard_pairs)

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_INCONCLUSIVE = 0, 2, 3, 4


class InputError(Exception):
    pass


class InvariantBreach(Exception):
    pass


# -- input ----------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixFile:
    path: str
    d: int
    n: int
    rows: tuple

    @classmethod
    def parse(cls, text: str, path: str = "<input>") -> "MatrixFile":
        lines = [(k + 1, ln) for k, ln in enumerate(text.splitlines())
                 if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise InputError(f"{path}: empty file")

        def ints(lineno, line):
            out = []
            for m in re.finditer(r"\S+", line):
                try:
                    out.append(int(m.group()))
                except ValueError:
                    raise InputError(f"{path}:{lineno}:{m.start() + 1}: not an integer: {m.group()!r}")
            return out

        lineno, header = lines[0]
        hd = ints(lineno, header)
        if len(hd) != 2 or hd[0] < 1 or hd[1] < 1:
            raise InputError(f"{path}:{lineno}:1: header must be 'd n' with positive counts")
        d, n = hd
        body = lines[1:]
        if len(body) != d:
            raise InputError(f"{path}: expected {d} matrix rows, found {len(body)}")
        rows = []
        for lineno, line in body:
            r = ints(lineno, line)
            if len(r) != n:
                raise InputError(f"{path}:{lineno}:1: expected {n} entries, found {len(r)}")
            rows.append(tuple(r))
        return cls(path, d, n, tuple(rows))

    @classmethod
    def load(cls, path: str) -> "MatrixFile":
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.parse(fh.read(), path)
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}")

    def dump(self) -> str:
        return f"{self.d} {self.n}\n" + "".join(" ".join(map(str, r)) + "\n" for r in self.rows)

    def configuration(self) -> Configuration:
        try:
            return Configuration(self.rows)
        except InvalidConfiguration as exc:
            raise InputError(f"{self.path}: {exc}")


_TERM = re.compile(r"[+-]?[^+-]+")


def parse_scalar(text: str):
    """An affine expression ``c0 + c1 a`` as a Fraction or RatFunc."""
    s = text.replace(" ", "").replace("*", "").replace("t", "a")
    if not s:
        raise InputError("empty entry")
    if not re.fullmatch(r"([+-]?[0-9/a]+)+", s) or "aa" in s:
        raise InputError(f"cannot parse {text!r}")
    c0 = c1 = Fraction(0)
    for term in _TERM.findall(s):
        try:
            if "a" in term:
                before, after = term.split("a")
                if before in ("", "+", "-"):
                    before += "1"
                coef = Fraction(before)
                if after:
                    if not after.startswith("/"):
                        raise ValueError
                    coef /= int(after[1:])
                c1 += coef
            else:
                c0 += Fraction(term)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot parse {text!r}")
    return RatFunc.affine(c0, c1) if c1 else c0


def parse_vector(text: str, length: int, what: str) -> tuple:
    parts = [p for p in text.strip().strip("()").split(",")]
    if len(parts) != length:
        raise InputError(f"{what} needs {length} entries, got {len(parts)}")
    return vec(parse_scalar(p) for p in parts)


def parse_weight(text: str | None, cfg: Configuration) -> tuple:
    if text is None:
        return default_weight(cfg)
    parts = text.split(",")
    if len(parts) != cfg.n:
        raise InputError(f"--weight needs {cfg.n} entries")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except ValueError:
        raise InputError(f"cannot parse weight {text!r}")


# -- rendering ----------------------------------------------------------------------

def jscalar(x):
    if isinstance(x, RatFunc):
        return x.to_json()
    return str(Fraction(x))


def jvec(v):
    return [jscalar(x) for x in v]


def jpair(p, m):
    return {"eta": list(p.eta), "sigma": [i + 1 for i in sorted(p.sigma)],
            "text": str(p), "class": classify(p, m).value}


def tvec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def summary(cfg: Configuration) -> dict:
    return {"d": cfg.d, "n": cfg.n, "m": cfg.m, "A": [list(r) for r in cfg.A],
            "gale": [list(r) for r in cfg.gale]}


def emit(report: dict, as_json: bool, out) -> None:
    report = {"schema": SCHEMA, **report}
    if as_json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    for key in report:
        val = report[key]
        if key == "configuration":
            continue
        if isinstance(val, list) and all(isinstance(v, (str, int)) for v in val):
            out.write(f"{key}: {tvec(val)}\n")
        elif isinstance(val, list):
            out.write(f"{key}:\n")
            for item in val:
                out.write(f"  {_text(item)}\n")
        else:
            out.write(f"{key}: {_text(val)}\n")


def _text(x) -> str:
    if isinstance(x, dict):
        if "text" in x:
            extra = {k: v for k, v in x.items() if k in ("class", "minimal", "verified", "nsupp")}
            return x["text"] + ("  " + " ".join(f"{k}={_text(v)}" for k, v in sorted(extra.items()))
                                if extra else "")
        if set(x) == {"num", "den"}:
            return str(RatFunc.from_json(x))
        return "{" + ", ".join(f"{k}: {_text(v)}" for k, v in sorted(x.items())) + "}"
    if isinstance(x, list):
        return "[" + ", ".join(_text(v) for v in x) + "]"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


# -- commands ----------------------------------------------------------------------

def cmd_toric(args, cfg) -> tuple[dict, int]:
    I = cached_toric_ideal(cfg)
    return {"command": "toric", "configuration": summary(cfg),
            "generators": I.as_strings(), "generic": is_generic(cfg, I)}, EXIT_OK


def _pairs_block(cfg, w):
    J = initial_ideal(cfg, w, cached_toric_ideal(cfg))
    block = {"weight": [str(x) for x in w], "initial_ideal": J.as_strings(),
             "initial_ideal_monomial": is_monomial(J)}
    if not block["initial_ideal_monomial"]:
        return block, None, None
    M = as_monomial_ideal(J)
    return block, M, standard_pairs(M)


def cmd_stdpairs(args, cfg) -> tuple[dict, int]:
    w = parse_weight(args.weight, cfg)
    block, M, pairs = _pairs_block(cfg, w)
    rep = {"command": "stdpairs", "configuration": summary(cfg), **block}
    warnings = []
    if pairs is None:
        warnings.append("weight is not generic: initial ideal is not monomial")
    else:
        rep["standard_pairs"] = [jpair(p, cfg.m) for p in pairs]
        rep["associated_primes"] = sorted([i + 1 for i in sorted(f)] for f in associated_primes(M, pairs))
        rep["embedded_primes"] = sorted([i + 1 for i in sorted(f)] for f in embedded_primes(M, pairs))
        rep["chain_property"] = check_chain_property(M, pairs)
        rep["degree"] = degree(M, cfg.m, pairs)
    rep["warnings"] = warnings
    return rep, EXIT_OK


def cmd_analyze(args, cfg) -> tuple[dict, int]:
    I = cached_toric_ideal(cfg)
    w = parse_weight(args.weight, cfg)
    block, M, pairs = _pairs_block(cfg, w)
    vol = normalized_volume(cfg.A)
    rep = {"command": "analyze", "configuration": summary(cfg),
           "toric_generators": I.as_strings(), **block,
           "volume": vol, "generic": is_generic(cfg, I),
           "cohen_macaulay": is_cohen_macaulay_generic(cfg)}
    warnings = []
    code = EXIT_OK
    if pairs is None:
        warnings.append("weight is not generic: degree not computed")
    else:
        deg = degree(M, cfg.m, pairs)
        rep["standard_pairs"] = [jpair(p, cfg.m) for p in pairs]
        rep["degree"] = deg
        rep["top_dimensional_count"] = sum(
            1 for p in pairs if classify(p, cfg.m) is PairClass.TOP_DIMENSIONAL)
        if deg != vol:
            raise InvariantBreach(f"volume {vol} differs from degree {deg}")
    rep["warnings"] = warnings
    return rep, code


def cmd_exceptional(args, cfg) -> tuple[dict, int]:
    rep = {"command": "exceptional", "configuration": summary(cfg), "seed": args.seed,
           "cap": args.cap, "radius": args.radius}
    try:
        cert = rank_certificate(cfg, seed=args.seed, radius=args.radius, cap=args.cap)
    except NoEmbeddedPair as exc:
        rep.update({"verdict": "no embedded pair", "detail": str(exc),
                    "volume": normalized_volume(cfg.A), "warnings": []})
        return rep, EXIT_OK
    if cert.asserted_lower_bound == cert.vol + 1 and len(cert.cokernel_witnesses) < cert.kernel_dim + 1:
        raise InvariantBreach("certificate asserts a jump without enough witnesses")
    sel, alpha = cert.selection, cert.alpha
    rep.update({
        "verdict": cert.verdict,
        "pivot": sel.pivot + 1,
        "pair": jpair(sel.pair, cfg.m),
        "permutation": [i + 1 for i in sel.permutation],
        "weight": [str(x) for x in sel.weight],
        "tau": [i + 1 for i in alpha.tau],
        "alpha": {str(i + 1): jscalar(x) for i, x in sorted(alpha.values.items())},
        "excluded_values": {"embedded_pairs": [str(x) for x in alpha.excluded_embedded],
                            "pivot_coordinate_zero": [str(x) for x in alpha.excluded_first_zero]},
        "beta_line": jvec(cert.beta),
        "beta_line_text": tvec(cert.beta),
        "beta_prime": jvec(cert.beta_prime),
        "volume": cert.vol,
        "kernel": [{"text": tvec(u.v), "v": jvec(u.v)} for u in cert.K],
        "kernel_dim": cert.kernel_dim,
        "kernel_certified": cert.kernel_certified,
        "witnesses": [{"text": tvec(u.v), "v": jvec(u.v), "minimal": u.minimal.value,
                       "nsupp": [i + 1 for i in sorted(u.nsupp)]} for u in cert.cokernel_witnesses],
        "witness_search": [{"row": e.row + 1, "status": e.status,
                            "z": list(e.z) if e.z is not None else None} for e in cert.witness_log],
        "extra_span_dim": cert.extra_span_dim,
        "series_verified": cert.series_verified,
        "image_disjoint": cert.image_disjoint,
        "asserted_lower_bound": cert.asserted_lower_bound,
        "logfree_lower_bound": cert.logfree_count,
        "headline_lower_bound": cert.headline,
        "warnings": list(cert.warnings),
    })
    code = EXIT_INCONCLUSIVE if args.strict and cert.warnings else EXIT_OK
    return rep, code


def cmd_series(args, cfg) -> tuple[dict, int]:
    if args.beta is None:
        raise InputError("series needs --beta")
    if (args.exponent is None) == (not args.all):
        raise InputError("series needs exactly one of --exponent or --all")
    beta = parse_vector(args.beta, cfg.d, "--beta")
    w = parse_weight(args.weight, cfg)
    warnings = []
    if args.all:
        if not is_monomial(initial_ideal(cfg, w, cached_toric_ideal(cfg))):
            raise InputError("--weight is not generic: initial ideal is not monomial")
        table = fake_exponent_table(cfg, beta, w, args.cap)
        exps = [u.v for u in table.exponents if u.minimal is Tri.YES]
        if any(u.minimal is Tri.INCONCLUSIVE for u in table.exponents):
            warnings.append("minimality inconclusive at cap for some exponents")
    else:
        v = parse_vector(args.exponent, cfg.n, "--exponent")
        if vec(sum(a * x for a, x in zip(row, v)) for row in cfg.A) != beta:
            raise InputError("exponent does not satisfy A v = beta")
        tri = has_minimal_negative_support(cfg, v, args.cap)
        if tri is Tri.NO:
            raise InputError("exponent does not have minimal negative support")
        if tri is Tri.INCONCLUSIVE:
            warnings.append("minimality inconclusive at cap")
        exps = [v]
    out = []
    for v in exps:
        s = canonical_series(cfg, v, args.radius)
        out.append({"text": series_str(s) if len(s.terms) <= 12 else
                    f"{series_str(_head(s, 12))} + ...",
                    "exponent": jvec(v), "terms": len(s.terms),
                    "verified": verify_solution(cfg, beta, s)})
    rep = {"command": "series", "configuration": summary(cfg), "beta": jvec(beta),
           "radius": args.radius, "series": out, "warnings": warnings}
    if not all(x["verified"] for x in out):
        raise InvariantBreach("a canonical series failed verification")
    code = EXIT_INCONCLUSIVE if args.strict and warnings else EXIT_OK
    return rep, code


def _head(s, k):
    from .hypergeo import TruncatedSeries
    return TruncatedSeries(s.base, s.terms[:k], s.truncation_radius)


COMMANDS = {"analyze": cmd_analyze, "exceptional": cmd_exceptional, "series": cmd_series,
            "stdpairs": cmd_stdpairs, "toric": cmd_toric}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toricgkz", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("matrix", help="matrix file ('d n' header, then d rows)")
        sp.add_argument("--weight", help="comma-separated rational weight vector")
        sp.add_argument("--beta", help="parameter vector, e.g. '1+a,2,a'")
        sp.add_argument("--exponent", help="exponent vector for 'series'")
        sp.add_argument("--all", action="store_true", help="all minimal-support exponents")
        sp.add_argument("--radius", type=int, default=DEFAULT_RADIUS)
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--strict", action="store_true")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timing")
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.radius < 0 or args.cap < 1:
            raise InputError("--radius must be >= 0 and --cap >= 1")
        cfg = MatrixFile.load(args.matrix).configuration()
        report, code = COMMANDS[args.command](args, cfg)
        report["echo"] = " ".join(["toricgkz"] + list(argv if argv is not None else sys.argv[1:]))
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InvariantBreach as exc:
        err.write(f"internal invariant breach: {exc}\n")
        return EXIT_INVARIANT
    except ToricGKZError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INVARIANT
    if args.timing:
        report["timing_seconds"] = f"{time.perf_counter() - start:.3f}"
    emit(report, args.json, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
