"""Command-line surface: parse field specs, elements, matrices; run checks.

Grammar (whitespace-insensitive):
  field spec   p=<prime>  or  p=<prime>;k=<deg>;mod=<poly in a>
  element      expressions in the uniformizer T over F_q with + - * / ^ ( ),
               integer coefficients (k = 1) or polynomials in a (k > 1);
               T^-2 is sugar for 1/T^2
  matrix       [entry,entry;entry,entry]  (rows by ';', entries by ',')

Any matrix or element argument may be @file, reading the same grammar from a
UTF-8 text file.  Exit codes: 0 mathematical yes/success, 1 mathematical no,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .families import (Family, RANK_P2_FAMILIES, enumerate_orders, family_matrix,
                       oracle_check_family, rank1_orders, theta_for_record)
from .fields import FieldSpec
from .matrix import Mat, SingularMatrixError
from .orders import (NotIntegralError, ddl_normalize, embedding_generators,
                     is_ddl, order_from_theta, presentation_from_matrix,
                     same_order, special_fibre, verify_twisted_equation)
from .ratfunc import RatFunc


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


# -- tokenizer --

_OPS = set("+-*/^()")


def _tokenize(src: str):
    tokens = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            start = i
            while i < n and src[i].isdigit():
                i += 1
            tokens.append(("num", int(src[start:i]), start))
            continue
        if c in ("T", "a"):
            tokens.append(("name", c, i))
            i += 1
            continue
        if c in _OPS:
            tokens.append(("op", c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _ElementParser:
    """Recursive descent over the element grammar, evaluating in K."""

    def __init__(self, src: str, spec: FieldSpec):
        self.src = src
        self.spec = spec
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val, at = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", at)

    def parse(self) -> RatFunc:
        value = self.expr()
        kind, _, at = self.peek()
        if kind != "end":
            raise ParseError("trailing input", at)
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> RatFunc:
        value = self.unary()
        while True:
            kind, val, at = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.unary()
                if val == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", at)
                    value = value / rhs
            else:
                return value

    def unary(self) -> RatFunc:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        kind, val, at = self.peek()
        if kind == "op" and val == "^":
            self.next()
            e = self.signed_int()
            if base.is_zero() and e < 0:
                raise ParseError("zero raised to a negative power", at)
            return base ** e
        return base

    def signed_int(self) -> int:
        kind, val, at = self.next()
        if kind == "op" and val == "-":
            kind, val, at = self.next()
            if kind != "num":
                raise ParseError("expected an integer exponent", at)
            return -val
        if kind != "num":
            raise ParseError("expected an integer exponent", at)
        return val

    def atom(self) -> RatFunc:
        kind, val, at = self.next()
        if kind == "num":
            return RatFunc.constant(self.spec, val)
        if kind == "name":
            if val == "T":
                return RatFunc.pi_power(self.spec, 1)
            if self.spec.k == 1:
                raise ParseError("symbol 'a' needs an extension field (k > 1)", at)
            return RatFunc.constant(self.spec, self.spec.gen)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError("expected a value", at)


def parse_element(src: str, spec: FieldSpec) -> RatFunc:
    """Parse the element grammar into a canonical RatFunc."""
    return _ElementParser(src, spec).parse()


def parse_matrix(src: str, spec: FieldSpec) -> Mat:
    """Parse [e,e;e,e] into a square matrix."""
    text = src.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("matrix must be wrapped in [ ... ]", 0)
    body = text[1:-1]
    if not body.strip():
        raise ParseError("empty matrix", 1)
    rows = body.split(";")
    parsed = []
    width = None
    for r, row_src in enumerate(rows):
        entries = row_src.split(",")
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise ParseError(f"ragged matrix: row {r + 1} has {len(entries)} "
                             f"entries, expected {width}")
        parsed_row = []
        for c, entry_src in enumerate(entries):
            try:
                parsed_row.append(parse_element(entry_src, spec))
            except ParseError as exc:
                raise ParseError(f"entry ({r + 1},{c + 1}): {exc}") from exc
        parsed.append(parsed_row)
    if len(parsed) != width:
        raise ParseError(f"matrix must be square, got {len(parsed)}x{width}")
    return Mat(parsed)


def _parse_a_poly(src: str, p: int) -> list[int]:
    """Parse a modulus polynomial in `a` over F_p into coefficient ints."""
    tokens = _tokenize(src)
    pos = 0

    def nxt():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def peek():
        return tokens[pos]

    def padd(x, y):
        out = [0] * max(len(x), len(y))
        for i, c in enumerate(x):
            out[i] += c
        for i, c in enumerate(y):
            out[i] += c
        return [c % p for c in out]

    def pneg(x):
        return [(-c) % p for c in x]

    def pmul(x, y):
        out = [0] * (len(x) + len(y) - 1 or 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                out[i + j] += xi * yj
        return [c % p for c in out]

    def atom():
        kind, val, at = nxt()
        if kind == "num":
            return [val % p]
        if kind == "name" and val == "a":
            return [0, 1]
        if kind == "op" and val == "(":
            v = expr()
            kind, val, at = nxt()
            if kind != "op" or val != ")":
                raise ParseError("expected ')'", at)
            return v
        raise ParseError("expected a modulus term", at)

    def power():
        base = atom()
        kind, val, _ = peek()
        if kind == "op" and val == "^":
            nxt()
            kind, e, at = nxt()
            if kind != "num":
                raise ParseError("expected an integer exponent", at)
            out = [1]
            for _ in range(e):
                out = pmul(out, base)
            return out
        return base

    def term():
        value = power()
        while True:
            kind, val, _ = peek()
            if kind == "op" and val == "*":
                nxt()
                value = pmul(value, power())
            else:
                return value

    def expr():
        kind, val, _ = peek()
        negate = False
        if kind == "op" and val == "-":
            nxt()
            negate = True
        value = term()
        if negate:
            value = pneg(value)
        while True:
            kind, val, _ = peek()
            if kind == "op" and val in "+-":
                nxt()
                rhs = term()
                value = padd(value, rhs if val == "+" else pneg(rhs))
            else:
                return value

    result = expr()
    kind, _, at = peek()
    if kind != "end":
        raise ParseError("trailing input in modulus", at)
    return result


def parse_field_spec(text: str) -> FieldSpec:
    """Parse "p=2" or "p=2;k=2;mod=a^2+a+1"."""
    parts = [part.strip() for part in text.strip().split(";") if part.strip()]
    fields: dict[str, str] = {}
    for part in parts:
        if "=" not in part:
            raise ParseError(f"bad field-spec fragment {part!r}")
        key, _, value = part.partition("=")
        key = key.strip()
        if key in fields:
            raise ParseError(f"duplicate field-spec key {key!r}")
        fields[key] = value.strip()
    unknown = set(fields) - {"p", "k", "mod"}
    if unknown:
        raise ParseError(f"unknown field-spec keys {sorted(unknown)}")
    if "p" not in fields:
        raise ParseError("field spec needs p=<prime>")
    try:
        p = int(fields["p"])
        k = int(fields.get("k", "1"))
    except ValueError as exc:
        raise ParseError(f"bad integer in field spec: {exc}") from exc
    modulus = None
    if "mod" in fields:
        modulus = _parse_a_poly(fields["mod"], p)
    try:
        return FieldSpec(p, k, modulus)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        try:
            v = int(text)
        except ValueError as exc:
            raise ParseError(f"bad range {text!r} (use lo..hi)") from exc
        return range(v, v + 1)
    try:
        lo_v, hi_v = int(lo), int(hi)
    except ValueError as exc:
        raise ParseError(f"bad range {text!r} (use lo..hi)") from exc
    if hi_v < lo_v:
        raise ParseError(f"empty range {text!r}")
    return range(lo_v, hi_v + 1)


def _resolve(arg: str) -> str:
    """@file indirection for matrix/element arguments."""
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise ParseError(f"cannot read {arg[1:]!r}: {exc}") from exc
    return arg


# -- commands --

def _fibre_json(A):
    return special_fibre(A).to_json()


def _cmd_check(args) -> int:
    spec = parse_field_spec(args.field)
    B = parse_matrix(_resolve(args.B), spec)
    theta = parse_matrix(_resolve(args.theta), spec)
    try:
        result = order_from_theta(B, theta)
    except NotIntegralError as exc:
        w = exc.witness
        if args.json:
            print(json.dumps({
                "field": spec.spec_text(),
                "integral": False,
                "witness": {"row": w.row, "col": w.col,
                            "valuation": w.valuation, "entry": str(w.entry)},
            }))
        else:
            print(f"not integral: {w}")
        return 1
    fibre = special_fibre(result.A)
    if args.json:
        print(json.dumps({
            "field": spec.spec_text(),
            "integral": True,
            "witness": None,
            "A": result.A.to_strings(),
            "presentation": result.presentation.to_json(),
            "embedding": result.embedding.to_json(),
            "fibre": fibre.to_json(),
        }))
    else:
        print(f"A = {result.A}")
        print("integral: yes")
        print(f"presentation: {result.presentation.text()}")
        gens = embedding_generators(result.embedding)
        pairs = "; ".join(f"{u} = {g}" for u, g in zip(result.embedding.source_gens, gens))
        print(f"embedding: {pairs}")
        print(f"fibre: ranks={list(fibre.fpower_ranks)} classification={fibre.classification}")
    return 0


def _cmd_verify(args) -> int:
    spec = parse_field_spec(args.field)
    theta = parse_matrix(_resolve(args.theta), spec)
    A = parse_matrix(_resolve(args.A), spec)
    B = parse_matrix(_resolve(args.B), spec)
    ok = verify_twisted_equation(theta, A, B)
    print(f"twisted equation holds: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def _cmd_normalize(args) -> int:
    spec = parse_field_spec(args.field)
    theta = parse_matrix(_resolve(args.theta), spec)
    ddl = ddl_normalize(theta)
    unit = theta.inv() @ ddl
    print(f"ddl = {ddl}")
    print(f"unit = {unit}")
    print(f"is_ddl: {'yes' if is_ddl(ddl) else 'no'}")
    print(f"same_order: {'yes' if unit.is_unit() else 'no'}")
    return 0


def _cmd_same_order(args) -> int:
    spec = parse_field_spec(args.field)
    theta = parse_matrix(_resolve(args.theta), spec)
    theta2 = parse_matrix(_resolve(args.theta2), spec)
    ok = same_order(theta, theta2)
    print(f"same order: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def _cmd_fibre(args) -> int:
    spec = parse_field_spec(args.field)
    A = parse_matrix(_resolve(args.A), spec)
    rep = special_fibre(A)
    abar = "[" + ";".join(",".join(str(c) for c in row) for row in rep.abar) + "]"
    print(f"abar = {abar}")
    print(f"ranks={list(rep.fpower_ranks)} etale_rank={rep.etale_rank} "
          f"classification={rep.classification}")
    return 0


def _cmd_present(args) -> int:
    spec = parse_field_spec(args.field)
    A = parse_matrix(_resolve(args.A), spec)
    print(presentation_from_matrix(A).text())
    return 0


def _family_arg(text: str) -> Family:
    try:
        fam = Family(text)
    except ValueError:
        raise ParseError(f"unknown family {text!r}; choose from "
                         f"{[f.value for f in RANK_P2_FAMILIES]}")
    return fam


def _record_lines(records, spec):
    for rec in records:
        result = order_from_theta(family_matrix(rec.family, spec, 2),
                                  theta_for_record(rec))
        fibre = special_fibre(result.A)
        yield rec, fibre


def _cmd_enumerate(args) -> int:
    spec = parse_field_spec(args.field)
    family = _family_arg(args.family)
    records = enumerate_orders(family, spec, _parse_range(args.i),
                               _parse_range(args.j), depth=args.depth)
    if args.json:
        payload = []
        for rec, fibre in _record_lines(records, spec):
            item = rec.to_json()
            item["fibre"] = fibre.to_json()
            payload.append(item)
        print(json.dumps(payload))
    else:
        for rec, fibre in _record_lines(records, spec):
            print(f"family={rec.family} p={rec.p} i={rec.i} j={rec.j} "
                  f"theta={rec.theta} monogenic={'yes' if rec.monogenic else 'no'} "
                  f"fibre={list(fibre.fpower_ranks)}:{fibre.classification}")
    return 0


def _cmd_oracle_check(args) -> int:
    spec = parse_field_spec(args.field)
    family = _family_arg(args.family)
    report = oracle_check_family(family, spec, _parse_range(args.i),
                                 _parse_range(args.j), depth=args.depth)
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        print(report.summary())
        for d in report.disagreements:
            wit = f" witness={d.witness}" if d.witness else ""
            print(f"disagreement: i={d.record.i} j={d.record.j} "
                  f"theta={d.record.theta} predicate={d.predicate_verdict} "
                  f"oracle={d.oracle_verdict}{wit}")
    return 0 if report.all_agree else 1


def _cmd_rank1(args) -> int:
    spec = parse_field_spec(args.field)
    b = parse_element(_resolve(args.b), spec)
    res = rank1_orders(b, args.i)
    print(res.description)
    print(f"order: {'yes' if res.is_order else 'no'}")
    return 0 if res.is_order else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopforders",
        description="Construct, verify, normalize, compare and enumerate "
                    "Hopf orders via the twisted matrix equation over F_q(T).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        for flag, kwargs in flags.items():
            p.add_argument(f"--{flag}", **kwargs)
        p.set_defaults(fn=fn)
        return p

    req = {"required": True}
    add("check", _cmd_check, field=req, B=req, theta=req,
        json={"action": "store_true"})
    add("verify", _cmd_verify, field=req, theta=req, A=req, B=req)
    add("normalize", _cmd_normalize, field=req, theta=req)
    p_same = sub.add_parser("same-order")
    p_same.add_argument("--field", required=True)
    p_same.add_argument("--theta", required=True)
    p_same.add_argument("--theta2", required=True)
    p_same.set_defaults(fn=_cmd_same_order)
    add("fibre", _cmd_fibre, field=req, A=req)
    add("present", _cmd_present, field=req, A=req)
    add("enumerate", _cmd_enumerate, family=req, field=req, i=req, j=req,
        depth={"type": int, "default": None}, json={"action": "store_true"})
    p_oc = sub.add_parser("oracle-check")
    p_oc.add_argument("--family", required=True)
    p_oc.add_argument("--field", required=True)
    p_oc.add_argument("--i", required=True)
    p_oc.add_argument("--j", required=True)
    p_oc.add_argument("--depth", type=int, default=None)
    p_oc.add_argument("--json", action="store_true")
    p_oc.set_defaults(fn=_cmd_oracle_check)
    add("rank1", _cmd_rank1, field=req, b=req, i={"type": int, "required": True})
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except (ParseError, SingularMatrixError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
