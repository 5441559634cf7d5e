"""Text formats: ring descriptors, polynomial/value expressions, divisor
expressions, and the TOML model-spec files used by the command-line tool.

Ring descriptors: "Z", "Q", "Z/6", "F5", and group rings "Z[2,2]" /
"Q[3]" / "F5[2]" whose bracket lists the invariant factors of A (the unit
symbols v, w, ... then name the dual generators in order).
"""

from __future__ import annotations

import re

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .curves import (
    build_additive,
    build_counterexample,
    build_multiplicative,
    build_multiplicative_universal,
    build_product_over_field,
)
from .divisors import (
    divisor_from_gen,
    divisor_sum,
    empty_divisor,
    convolution,
    point_divisor,
    subtract,
    translate_divisor,
)
from .errors import ExprError, ParseError
from .groups import FinAbGroup
from .rings import (
    GROUP_SYMBOLS,
    GroupRing,
    IntegersMod,
    Poly,
    PrimeField,
    Q,
    Z,
    invert,
)

_RING_RE = re.compile(
    r"^\s*(Z|Q|Z/(\d+)|F_?(\d+))\s*(?:\[\s*([\d\s,]+)\s*\])?\s*$"
)


def parse_ring(text):
    m = _RING_RE.match(text)
    if not m:
        raise ParseError(f"bad ring descriptor {text!r}")
    head, zmod, fp, factors = m.group(1), m.group(2), m.group(3), m.group(4)
    if zmod:
        base = IntegersMod(int(zmod))
    elif fp:
        base = PrimeField(int(fp))
    elif head == "Z":
        base = Z
    else:
        base = Q
    if factors:
        facs = tuple(int(t) for t in factors.split(","))
        return GroupRing(base, facs)
    return base


# ---------------------------------------------------------------------------
# polynomial / value expressions
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[()+\-*/^]))"
)


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad token at {text[pos:]!r}")
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", None))
    return out


class _PolyParser:
    """Recursive-descent parser producing a Poly over the ring in `var`."""

    def __init__(self, ring, text, var="x"):
        self.ring = ring
        self.var = var
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse(self):
        p = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"unexpected trailing input at {self.peek()!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.next()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.next()
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if q.degree() != 0:
                    raise ParseError("can only divide by a constant")
                p = p.map_coeffs(lambda c: c * invert(q.constant()))
        return p

    def factor(self):
        if self.peek() == ("op", "-"):
            self.next()
            return -self.factor()
        p = self.atom()
        if self.peek() == ("op", "^"):
            self.next()
            kind, val = self.next()
            if kind != "int":
                raise ParseError("exponent must be a literal integer")
            return p**val
        return p

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return Poly.const(self.ring, self.ring.from_int(val))
        if kind == "op" and val == "(":
            p = self.expr()
            if self.next() != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return p
        if kind == "name":
            if val == self.var:
                return Poly(self.ring, [self.ring.zero(), self.ring.one()])
            if isinstance(self.ring, GroupRing) and val in GROUP_SYMBOLS:
                i = GROUP_SYMBOLS.index(val)
                if i < len(self.ring.factors):
                    return Poly.const(self.ring, self.ring.generator(i))
            raise ParseError(f"unknown symbol {val!r} over {self.ring}")
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(ring, text, var="x"):
    return _PolyParser(ring, text, var).parse()


def parse_value(ring, text):
    p = parse_poly(ring, text, var="@none")  # no variable admitted
    if p.degree() > 0:
        raise ParseError("expected a constant")
    return p.constant() if p.degree() == 0 else ring.zero()


# ---------------------------------------------------------------------------
# divisor expressions
# ---------------------------------------------------------------------------


def _parse_coords(group, text):
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != len(group.factors):
        return None
    try:
        raw = [int(t) for t in parts]
    except ValueError:
        return None
    return tuple(c % f for c, f in zip(raw, group.factors))


class _DivisorParser:
    def __init__(self, e, text):
        self.e = e
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ExprError(f"{msg} (at {self.text[self.pos:]!r})")

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self):
        self.ws()
        m = re.match(r"[a-z]+", self.text[self.pos:])
        if not m:
            self.error("expected a name")
        self.pos += len(m.group(0))
        return m.group(0)

    def balanced_arg(self):
        """Text up to the matching close paren or top-level comma."""
        self.ws()
        depth = 0
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    return self.text[start : self.pos]
                depth -= 1
            elif ch == "," and depth == 0:
                return self.text[start : self.pos]
            self.pos += 1
        self.error("unbalanced parentheses")

    def parse(self):
        d = self.expr()
        self.ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return d

    def expr(self):
        d = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            q = self.term()
            try:
                d = divisor_sum(d, q) if op == "+" else subtract(d, q)
            except ExprError:
                raise
            except Exception as exc:
                raise ExprError(str(exc))
        return d

    def term(self):
        d = self.atom()
        while self.peek() == "*":
            self.pos += 1
            q = self.atom()
            try:
                d = convolution(d, q, self.e)
            except Exception as exc:
                raise ExprError(str(exc))
        return d

    def atom(self):
        if self.peek() == "(":
            self.eat("(")
            d = self.expr()
            self.eat(")")
            return d
        w = self.word()
        if w == "zero":
            return empty_divisor(self.e.curve)
        if w == "full":
            return divisor_from_gen(self.e.curve, self.e.curve.f)
        if w == "point":
            self.eat("(")
            arg_start = self.pos
            arg = self.balanced_arg()
            # character coordinates may contain top-level commas
            self.pos = arg_start
            depth = 0
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    if depth == 0:
                        break
                    depth -= 1
                self.pos += 1
            arg = self.text[arg_start : self.pos]
            self.eat(")")
            return self.point(arg)
        if w == "tr":
            self.eat("(")
            coords_text = self.balanced_arg()
            coords = _parse_coords(self.e.group.dual(), coords_text)
            if coords is None:
                self.error(f"bad character {coords_text!r}")
            self.eat(",")
            d = self.expr()
            self.eat(")")
            try:
                return translate_divisor(d, coords, self.e)
            except Exception as exc:
                raise ExprError(str(exc))
        self.error(f"unknown atom {w!r}")

    def point(self, arg):
        coords = _parse_coords(self.e.group.dual(), arg)
        try:
            if coords is not None:
                return point_divisor(self.e, self.e.c(coords))
            value = parse_value(self.e.base, arg)
            return point_divisor(self.e, value)
        except ExprError:
            raise
        except Exception as exc:
            raise ExprError(str(exc))


def parse_divisor_expr(e, text):
    return _DivisorParser(e, text).parse()


# ---------------------------------------------------------------------------
# model spec files
# ---------------------------------------------------------------------------

_TOP_KEYS = {"model", "group", "base", "phi", "f", "sigma", "iota", "options"}


def _check_keys(table, allowed, where):
    extra = set(table) - set(allowed)
    if extra:
        raise ParseError(f"unknown keys {sorted(extra)} in [{where}]")


def load_model_spec(path):
    """Parse a TOML model spec into an EFG; raises ParseError on bad input."""
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"TOML error: {exc}")
    return build_from_dict(doc)


def build_from_dict(doc):
    if not isinstance(doc, dict):
        raise ParseError("spec must be a table")
    _check_keys(doc, _TOP_KEYS, "spec")
    model = doc.get("model")
    if not isinstance(model, dict):
        raise ParseError("missing [model] table")
    _check_keys(model, {"kind", "truncation"}, "model")
    kind = model.get("kind")
    truncation = model.get("truncation", 1)
    if not isinstance(truncation, int) or truncation < 1:
        raise ParseError("truncation must be a positive integer")
    gtab = doc.get("group", {})
    _check_keys(gtab, {"factors"}, "group")
    factors = tuple(gtab.get("factors", ()))
    if not all(isinstance(f, int) and f > 1 for f in factors):
        raise ParseError("group factors must be integers > 1")
    group = FinAbGroup(factors)
    btab = doc.get("base", {})
    _check_keys(btab, {"ring"}, "base")
    base = parse_ring(btab["ring"]) if "ring" in btab else None

    def phi_map():
        ptab = doc.get("phi", {})
        out = {}
        for key, text in ptab.items():
            coords = _parse_coords(group.dual(), key)
            if coords is None:
                raise ParseError(f"bad character key {key!r}")
            out[coords] = parse_value(base, str(text))
        for a in group.dual().elements():
            if a not in out:
                raise ParseError(f"phi is missing character {a}")
        return out

    try:
        if kind == "multiplicative_universal":
            return build_multiplicative_universal(group, truncation)
        if kind == "counterexample":
            return build_counterexample(truncation)
        if base is None:
            raise ParseError(f"model kind {kind!r} needs a [base] ring")
        if kind == "multiplicative":
            return build_multiplicative(base, group, phi_map(), truncation)
        if kind == "additive":
            return build_additive(base, group, phi_map(), truncation)
        if kind == "product_over_field":
            return build_product_over_field(base, group, phi_map(), truncation)
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"cannot build model: {exc}")
    raise ParseError(f"unknown model kind {kind!r}")
