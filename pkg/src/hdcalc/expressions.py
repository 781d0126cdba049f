"""Expression language and formatters for the command line.

Grammar (EBNF):

    expr     = term  { ("+" | "-") term } ;
    term     = factor { ("*" | "/") factor } ;
    factor   = "-" factor | power ;
    power    = postfix [ "^" [ "-" ] integer ] ;
    postfix  = atom { shift } ;
    shift    = "[" [ "+" | "-" ] unit { ("+" | "-") unit } "]" ;
    unit     = "e" index ;
    atom     = integer | "h" index | "x" index | "d" index | call
             | "(" expr ")" ;
    call     = ("H" | "e") "(" integer ")" | "chi" "(" index ")"
             | "Delta" "(" index "," expr ")" ;

Precedence, tightest first: shifts, "^", unary "-", "*" and "/", binary
"+" and "-"; binary operators associate to the left.  Division is only
defined when the divisor is a pure-h expression whose numerator factors
into integer-shifted differences.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ratfield import RatFun, Poly, DomainError, eps_vec
from .rmatrix import chi as _chi, elementary_symmetric, complete_symmetric
from .diffring import RingSpec, NormalElement, multiply


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)(\d*)|([-+*/^(),\[\]]))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            tail = text[pos:].lstrip()
            if not tail:
                break
            raise SyntaxError(f"column {pos + 1}: unexpected character {tail[0]!r}")
        if m.group(1):
            out.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            out.append(("name", (m.group(2), m.group(3)), m.start(2)))
        else:
            out.append(("op", m.group(4), m.start(4)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg):
        pos = self.toks[self.i][2]
        raise SyntaxError(f"column {pos + 1}: {msg}")

    def expect_op(self, op):
        kind, val, _ = self.peek()
        if kind != "op" or val != op:
            self.fail(f"expected {op!r}")
        self.next()

    def expect_int(self):
        kind, val, _ = self.peek()
        if kind != "num":
            self.fail("expected an integer")
        self.next()
        return val

    def expect_index(self):
        v = self.expect_int()
        if v < 1:
            self.fail("index must be positive")
        return v

    # grammar

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                node = (val, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                node = (val, node, self.factor())
            else:
                return node

    def factor(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return ("neg", self.factor())
        return self.power()

    def power(self):
        node = self.postfix()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            sign = 1
            kind, val, _ = self.peek()
            if kind == "op" and val == "-":
                self.next()
                sign = -1
            node = ("^", node, sign * self.expect_int())
        return node

    def postfix(self):
        node = self.atom()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "[":
                self.next()
                node = ("shift", node, self.shift_vector())
            else:
                return node

    def shift_vector(self):
        units = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = 1 if val == "+" else -1
        while True:
            kind, val, _ = self.peek()
            if kind != "name" or val[0] != "e" or not val[1]:
                self.fail("expected a shift unit e<i>")
            self.next()
            units.append((int(val[1]), sign))
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                sign = 1 if val == "+" else -1
                self.next()
                continue
            self.expect_op("]")
            return tuple(units)

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "num":
            self.next()
            return ("num", Fraction(val))
        if kind == "op" and val == "(":
            self.next()
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "name":
            base, digits = val
            if digits:
                if base in ("h", "x", "d"):
                    self.next()
                    return (base, int(digits))
                self.fail(f"unknown generator {base + digits!r}")
            if base in ("H", "e", "chi", "Delta"):
                self.next()
                self.expect_op("(")
                if base == "Delta":
                    j = self.expect_index()
                    self.expect_op(",")
                    node = self.expr()
                    self.expect_op(")")
                    return ("Delta", j, node)
                arg = self.expect_index() if base == "chi" else self.expect_int()
                self.expect_op(")")
                return (base, arg)
            self.fail(f"unknown name {base!r}")
        self.fail("expected an expression")


def parse(text):
    p = _Parser(text)
    node = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise SyntaxError(f"column {pos + 1}: unexpected {val!r}")
    return node


def infer_n(ast):
    """Highest generator / weight index appearing in the tree."""
    tag = ast[0]
    if tag in ("h", "x", "d", "chi"):
        return ast[1]
    if tag == "num":
        return 0
    if tag in ("H", "e"):
        return 0
    if tag == "Delta":
        return max(ast[1], infer_n(ast[2]))
    if tag == "shift":
        return max(infer_n(ast[1]), max(j for j, _ in ast[2]))
    if tag == "neg":
        return infer_n(ast[1])
    if tag == "^":
        return infer_n(ast[1])
    return max(infer_n(ast[1]), infer_n(ast[2]))


def _promote(v, spec):
    if isinstance(v, RatFun):
        z = (0,) * spec.n
        return NormalElement(spec.n, {(z, z): v})
    return v


def evaluate(ast, n, spec=None):
    """Value of a parsed expression: RatFun if pure-h, else NormalElement."""
    if spec is None:
        spec = RingSpec(n)
    assert spec.n == n

    def ev(node):
        tag = node[0]
        if tag == "num":
            return RatFun.const(n, node[1])
        if tag == "h":
            return RatFun.var(n, node[1])
        if tag in ("x", "d"):
            i = node[1]
            if i > n:
                raise DomainError(f"{tag}{i} exceeds n={n}")
            a = [0] * n
            b = [0] * n
            (b if tag == "x" else a)[i - 1] = 1
            return NormalElement(n, {(tuple(a), tuple(b)): RatFun.one(n)})
        if tag == "H":
            return RatFun.from_poly(complete_symmetric(n, node[1]))
        if tag == "e":
            return RatFun.from_poly(elementary_symmetric(n, node[1]))
        if tag == "chi":
            if node[1] > n:
                raise DomainError(f"chi({node[1]}) exceeds n={n}")
            return _chi(n, node[1])
        if tag == "Delta":
            j, sub = node[1], node[2]
            if j > n:
                raise DomainError(f"Delta index {j} exceeds n={n}")
            f = ev(sub)
            if not isinstance(f, RatFun):
                raise DomainError("Delta applies to pure-h expressions")
            return f.delta(j)
        if tag == "shift":
            f = ev(node[1])
            if not isinstance(f, RatFun):
                raise DomainError("shifts apply to pure-h expressions")
            svec = [0] * n
            for j, s in node[2]:
                if j > n:
                    raise DomainError(f"shift index {j} exceeds n={n}")
                svec[j - 1] += s
            return f.shift(tuple(svec))
        if tag == "neg":
            return -ev(node[1])
        if tag == "^":
            base, k = ev(node[1]), node[2]
            if isinstance(base, RatFun):
                if k < 0:
                    return base.inverse() ** (-k)
                return base ** k
            if k < 0:
                raise DomainError("negative power of a generator expression")
            out = _promote(RatFun.one(n), spec)
            for _ in range(k):
                out = multiply(spec, out, base)
            return out
        l, r = ev(node[1]), ev(node[2])
        if tag in "+-":
            if isinstance(l, RatFun) and isinstance(r, RatFun):
                return l + r if tag == "+" else l - r
            l, r = _promote(l, spec), _promote(r, spec)
            return l + r if tag == "+" else l - r
        if tag == "*":
            if isinstance(l, RatFun) and isinstance(r, RatFun):
                return l * r
            return multiply(spec, _promote(l, spec), _promote(r, spec))
        if tag == "/":
            if not isinstance(r, RatFun):
                raise DomainError("division by a generator expression")
            inv = r.inverse()
            if isinstance(l, RatFun):
                return l * inv
            return multiply(spec, l, _promote(inv, spec))
        raise AssertionError(f"unhandled node {tag!r}")

    if max(infer_n(ast), 1) > n:
        raise DomainError(f"expression uses index {infer_n(ast)} but n={n}")
    return ev(ast)


def parse_and_eval(text, n=None, spec=None):
    ast = parse(text)
    if n is None:
        n = infer_n(ast)
        if n == 0:
            n = 1
    return evaluate(ast, n, spec), n


# ---------------------------------------------------------------------------
# printing the AST (exact round-trip)


def ast_to_text(ast):
    def wrap(node, need):
        txt, prec = go(node)
        return f"({txt})" if prec < need else txt

    def go(node):
        tag = node[0]
        if tag == "num":
            return str(node[1]), 100
        if tag in ("h", "x", "d"):
            return f"{tag}{node[1]}", 100
        if tag in ("H", "e", "chi"):
            return f"{tag}({node[1]})", 100
        if tag == "Delta":
            return f"Delta({node[1]},{ast_to_text(node[2])})", 100
        if tag == "shift":
            bits = []
            for j, s in node[2]:
                bits.append(("-" if s < 0 else ("+" if bits else "")) + f"e{j}")
            return wrap(node[1], 90) + "[" + "".join(bits) + "]", 90
        if tag == "^":
            return wrap(node[1], 90) + "^" + str(node[2]), 80
        if tag == "neg":
            return "-" + wrap(node[1], 80), 70
        l, r = node[1], node[2]
        if tag in "*/":
            return wrap(l, 60) + tag + wrap(r, 70), 60
        return wrap(l, 50) + tag + wrap(r, 60), 50

    return go(ast)[0]


# ---------------------------------------------------------------------------
# value formatting


def _frac(c):
    return str(c)


def _mono_text(e):
    bits = []
    for i, m in enumerate(e, start=1):
        if m == 1:
            bits.append(f"h{i}")
        elif m:
            bits.append(f"h{i}^{m}")
    return "*".join(bits)


def _poly_parts(p):
    """[(sign, body)] for the terms in display order."""
    out = []
    for e, c in sorted(p.terms.items(),
                       key=lambda t: (-sum(t[0]), tuple(-v for v in t[0]))):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = _mono_text(e)
        if not mono:
            body = _frac(c)
        elif c == 1:
            body = mono
        else:
            body = f"{_frac(c)}*{mono}"
        out.append((sign, body))
    return out


def format_poly(p):
    parts = _poly_parts(p)
    if not parts:
        return "0"
    first_sign, first = parts[0]
    txt = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        txt += f" {sign} {body}"
    return txt


def _factor_text(fac, m):
    i, j, a = fac
    base = f"(h{i}-h{j}{a:+d})" if a else f"(h{i}-h{j})"
    return base + (f"^{m}" if m > 1 else "")


def format_ratfun(f):
    num = format_poly(f.num)
    if not f.den:
        return num
    dens = [_factor_text(fac, m) for fac, m in sorted(f.den.items())]
    den = dens[0] if len(dens) == 1 else "(" + "*".join(dens) + ")"
    if len(f.num.terms) > 1:
        num = f"({num})"
    return f"{num}/{den}"


def _gen_text(a, b):
    bits = []
    for i in range(len(a), 0, -1):
        if a[i - 1] == 1:
            bits.append(f"d{i}")
        elif a[i - 1]:
            bits.append(f"d{i}^{a[i - 1]}")
    for i in range(len(b), 0, -1):
        if b[i - 1] == 1:
            bits.append(f"x{i}")
        elif b[i - 1]:
            bits.append(f"x{i}^{b[i - 1]}")
    return "*".join(bits)


def format_element(el):
    terms = sorted(el.terms.items(),
                   key=lambda t: (-(sum(t[0][0]) + sum(t[0][1])), t[0]))
    if not terms:
        return "0"
    parts = []
    for (a, b), f in terms:
        mono = _gen_text(a, b)
        c = f.const_value()
        if c is not None:
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if not mono:
                body = _frac(c)
            elif c == 1:
                body = mono
            else:
                body = f"{_frac(c)}*{mono}"
        else:
            sign = "+"
            if len(f.num.terms) == 1 and next(iter(f.num.terms.values())) < 0:
                sign = "-"
                f = -f
            ftxt = format_ratfun(f)
            if len(f.num.terms) > 1 and not f.den:
                ftxt = f"({ftxt})"
            body = f"{ftxt}*{mono}" if mono else ftxt
        parts.append((sign, body))
    first_sign, first = parts[0]
    txt = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        txt += f" {sign} {body}"
    return txt


# latex


def _sub(i):
    return str(i) if i < 10 else "{%d}" % i


def _latex_frac(c):
    if c.denominator == 1:
        return str(c.numerator)
    return r"\frac{%d}{%d}" % (c.numerator, c.denominator)


def _latex_mono_h(e):
    bits = []
    for i, m in enumerate(e, start=1):
        if m == 1:
            bits.append(r"\tilde h_%s" % _sub(i))
        elif m:
            bits.append(r"\tilde h_%s^%s" % (_sub(i), _sub(m)))
    return " ".join(bits)


def latex_poly(p):
    terms = sorted(p.terms.items(),
                   key=lambda t: (-sum(t[0]), tuple(-v for v in t[0])))
    if not terms:
        return "0"
    txt = ""
    for e, c in terms:
        sign = "-" if c < 0 else "+"
        mono = _latex_mono_h(e)
        body = _latex_frac(abs(c)) if not mono else \
            (mono if abs(c) == 1 else _latex_frac(abs(c)) + " " + mono)
        if not txt:
            txt = ("-" if sign == "-" else "") + body
        else:
            txt += f" {sign} {body}"
    return txt


def latex_ratfun(f):
    num = latex_poly(f.num)
    if not f.den:
        return num
    dens = []
    for (i, j, a), m in sorted(f.den.items()):
        base = r"(\tilde h_%s - \tilde h_%s %s %d)" % (_sub(i), _sub(j),
                                                       "+" if a > 0 else "-",
                                                       abs(a)) if a else \
            r"(\tilde h_%s - \tilde h_%s)" % (_sub(i), _sub(j))
        dens.append(base + (f"^{_sub(m)}" if m > 1 else ""))
    return r"\frac{%s}{%s}" % (num, " ".join(dens))


def latex_element(el):
    terms = sorted(el.terms.items(),
                   key=lambda t: (-(sum(t[0][0]) + sum(t[0][1])), t[0]))
    if not terms:
        return "0"
    txt = ""
    for (a, b), f in terms:
        bits = []
        for i in range(len(a), 0, -1):
            if a[i - 1] == 1:
                bits.append(r"\bar\partial_%s" % _sub(i))
            elif a[i - 1]:
                bits.append(r"\bar\partial_%s^%s" % (_sub(i), _sub(a[i - 1])))
        for i in range(len(b), 0, -1):
            if b[i - 1] == 1:
                bits.append(r"x^%s" % _sub(i))
            elif b[i - 1]:
                bits.append(r"(x^%s)^%s" % (_sub(i), _sub(b[i - 1])))
        mono = " ".join(bits)
        c = f.const_value()
        if c is not None:
            sign = "-" if c < 0 else "+"
            body = mono if (abs(c) == 1 and mono) else \
                (_latex_frac(abs(c)) + (" " + mono if mono else ""))
        else:
            sign = "+"
            body = r"\left(%s\right) %s" % (latex_ratfun(f), mono) if mono \
                else latex_ratfun(f)
        if not txt:
            txt = ("-" if sign == "-" else "") + body
        else:
            txt += f" {sign} {body}"
    return txt


# json


def value_to_json(v, n=None):
    if isinstance(v, NormalElement):
        return v.to_json()
    obj = v.to_json()
    obj["n"] = n if n is not None else v.n
    return obj


def value_from_json(obj):
    if "terms" in obj:
        return NormalElement.from_json(obj)
    return RatFun.from_json(int(obj["n"]), obj)


def format_value(v, mode="text"):
    if mode == "text":
        return format_ratfun(v) if isinstance(v, RatFun) else format_element(v)
    if mode == "latex":
        return latex_ratfun(v) if isinstance(v, RatFun) else latex_element(v)
    if mode == "json":
        import json
        return json.dumps(value_to_json(v), sort_keys=True)
    raise ValueError(f"unknown format {mode!r}")
