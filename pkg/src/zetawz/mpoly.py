"""Sparse multivariate polynomials and rational functions over the rationals.

A :class:`MultiPoly` stores a map from exponent vectors to nonzero
:class:`~fractions.Fraction` coefficients over a fixed, ordered alphabet.
A :class:`RatFun` is a quotient of two such polynomials.  Normalization
removes monomial content, makes the denominator monic under graded-lex
order, and cancels the denominator outright when it divides the numerator.
No multivariate GCD is attempted, so equality of rational functions is
decided by cross-multiplication.

:func:`parse` turns formula text such as ``"(4*n1-3)*L"`` into these
objects, which lets formulas be written as they read.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParseError

#: alphabet used by the certification code
CERT_ALPHABET = ("k", "n", "e1", "e2", "E", "K", "L", "L2", "L3", "P", "a2", "b2")

Scalar = Union[int, Fraction]


def _grlex(exp):
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, Scalar] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            width = len(self.vars)
            for exp, c in terms.items():
                if len(exp) != width:
                    raise ValueError("exponent vector does not match alphabet")
                if c:
                    clean[tuple(exp)] = Fraction(c)
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar, vars: Iterable[str]) -> "MultiPoly":
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): Fraction(c)} if c else {})

    @classmethod
    def var(cls, name: str, vars: Iterable[str]) -> "MultiPoly":
        vars = tuple(vars)
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return cls._raw(vars, {tuple(exp): Fraction(1)})

    @classmethod
    def _raw(cls, vars, terms):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        return obj

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError("polynomials over different alphabets")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.vars)
        return NotImplemented

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            return self * (1 / Fraction(other))
        return RatFun(self, other)

    def __rtruediv__(self, other):
        return RatFun(MultiPoly.const(other, self.vars), self)

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return other == self
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def leading(self):
        """Leading (exponent, coefficient) under graded-lex order."""
        exp = max(self.terms, key=_grlex)
        return exp, self.terms[exp]

    def degree(self, var: str) -> int:
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def uses(self, var: str) -> bool:
        i = self.vars.index(var)
        return any(e[i] for e in self.terms)

    def coeffs_in(self, var: str) -> list["MultiPoly"]:
        """Coefficients c_0..c_d with self = sum c_i var^i (c_i free of var)."""
        i = self.vars.index(var)
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            d = e[i]
            stripped = e[:i] + (0,) + e[i + 1:]
            buckets.setdefault(d, {})[stripped] = c
        deg = max(buckets, default=0)
        return [MultiPoly._raw(self.vars, buckets.get(d, {})) for d in range(deg + 1)]

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        vals = [Fraction(point[v]) if v in point else None for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    if v is None:
                        raise KeyError("evaluation point misses a variable in use")
                    t *= v ** k
            total += t
        return total

    def substitute(self, bindings: Mapping[str, object]) -> "RatFun":
        return poly_substitute(self, bindings)

    def content_monomial(self) -> tuple:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    def shift_down(self, mono: tuple) -> "MultiPoly":
        return MultiPoly._raw(
            self.vars, {tuple(a - b for a, b in zip(e, mono)): c for e, c in self.terms.items()}
        )

    def exact_div(self, d: "MultiPoly") -> "MultiPoly | None":
        """Quotient q with self == q*d, or None when d does not divide self."""
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        lexp, lc = d.leading()
        rest = [(e, c) for e, c in d.terms.items() if e != lexp]
        r = dict(self.terms)
        q: dict = {}
        while r:
            rexp = max(r, key=_grlex)
            diff = tuple(a - b for a, b in zip(rexp, lexp))
            if any(x < 0 for x in diff):
                return None
            t = r.pop(rexp) / lc
            q[diff] = t
            for e, c in rest:
                key = tuple(a + b for a, b in zip(e, diff))
                v = r.get(key, 0) - t * c
                if v:
                    r[key] = v
                else:
                    r.pop(key, None)
        return MultiPoly._raw(self.vars, q)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFun):
            if den is not None:
                raise TypeError("RatFun(RatFun, den) is not supported; divide instead")
            self.num, self.den = num.num, num.den
            return
        if den is None:
            den = MultiPoly.const(1, num.vars)
        if isinstance(den, (int, Fraction)):
            den = MultiPoly.const(den, num.vars)
        if isinstance(den, RatFun):
            # num / (a/b) = num*b / a
            num, den = num * den.den, den.num
        if isinstance(num, RatFun):
            num, den = num.num, num.den * den
        if num.vars != den.vars:
            raise ValueError("numerator and denominator over different alphabets")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    def _coerce(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, MultiPoly):
            return RatFun._raw(other, MultiPoly.const(1, other.vars))
        if isinstance(other, (int, Fraction)):
            return RatFun._raw(MultiPoly.const(other, self.vars), MultiPoly.const(1, self.vars))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFun(self.den ** (-k), self.num ** (-k))
        return RatFun(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RatFun is unhashable (equality is by cross-multiplication)")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.den.is_constant():
            raise ValueError("rational function is not a polynomial")
        return self.num / self.den.constant_value()

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(point) / d

    def substitute(self, bindings: Mapping[str, object]) -> "RatFun":
        return poly_substitute(self, bindings)

    def __repr__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def _normalize(num: MultiPoly, den: MultiPoly):
    if num.is_zero():
        return num, MultiPoly.const(1, num.vars)
    if den.is_constant():
        return num * (1 / den.constant_value()), MultiPoly.const(1, num.vars)
    common = tuple(min(a, b) for a, b in zip(num.content_monomial(), den.content_monomial()))
    if any(common):
        num, den = num.shift_down(common), den.shift_down(common)
        if den.is_constant():
            return num * (1 / den.constant_value()), MultiPoly.const(1, num.vars)
    q = num.exact_div(den)
    if q is not None:
        return q, MultiPoly.const(1, num.vars)
    _, lc = den.leading()
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return num, den


def _as_ratfun(value, vars) -> RatFun:
    if isinstance(value, RatFun):
        return value
    if isinstance(value, MultiPoly):
        return RatFun._raw(value, MultiPoly.const(1, vars))
    if isinstance(value, (int, Fraction)):
        return RatFun._raw(MultiPoly.const(value, vars), MultiPoly.const(1, vars))
    raise TypeError(f"cannot bind value of type {type(value).__name__}")


def _substitute_poly(p: MultiPoly, bindings: Mapping[str, object]) -> tuple[MultiPoly, MultiPoly]:
    """Simultaneous substitution; returns (numerator, denominator) polynomials."""
    vars = p.vars
    idx = {}
    for name in bindings:
        if name not in vars:
            raise KeyError(f"symbol {name!r} is not in the alphabet")
        idx[name] = vars.index(name)
    vals = {name: _as_ratfun(v, vars) for name, v in bindings.items()}
    bound = [(name, idx[name], vals[name]) for name in bindings]
    maxexp = {name: max((e[i] for e in p.terms), default=0) for name, i, _ in bound}
    pow_cache: dict = {}

    def power(name, which, k):
        key = (name, which, k)
        if key not in pow_cache:
            poly = vals[name].num if which == "n" else vals[name].den
            pow_cache[key] = poly ** k
        return pow_cache[key]

    one = MultiPoly.const(1, vars)
    total = MultiPoly._raw(vars, {})
    bound_idx = {i for _, i, _ in bound}
    grouped: dict = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for _, i, _ in bound)
        rest = tuple(0 if j in bound_idx else x for j, x in enumerate(e))
        grouped.setdefault(key, {})[rest] = c
    for key, rest_terms in grouped.items():
        factor = one
        for (name, _, val), k in zip(bound, key):
            if k:
                factor = factor * power(name, "n", k)
            if not val.den.is_constant() or val.den.constant_value() != 1:
                gap = maxexp[name] - k
                if gap:
                    factor = factor * power(name, "d", gap)
        total = total + MultiPoly._raw(vars, rest_terms) * factor
    den = one
    for name, _, val in bound:
        if not val.den.is_constant() or val.den.constant_value() != 1:
            den = den * power(name, "d", maxexp[name])
    return total, den


# -- public operations ----------------------------------------------------

def poly_arith(a, b, op: str) -> RatFun:
    """Exact ``a op b`` for op in {add, sub, mul, div}; result is a RatFun."""
    vars = a.vars if hasattr(a, "vars") else b.vars
    x, y = _as_ratfun(a, vars), _as_ratfun(b, vars)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def poly_substitute(p, bindings: Mapping[str, object]) -> RatFun:
    """Substitute all bindings simultaneously and normalize."""
    if isinstance(p, RatFun):
        n_num, n_den = _substitute_poly(p.num, bindings)
        d_num, d_den = _substitute_poly(p.den, bindings)
        if d_num.is_zero():
            raise ZeroDivisionError("substitution makes the denominator vanish")
        return RatFun(n_num * d_den, n_den * d_num)
    num, den = _substitute_poly(p, bindings)
    if den.is_zero():
        raise ZeroDivisionError("substitution makes a denominator vanish")
    return RatFun(num, den)


def poly_coeffs_in(p, var: str) -> list[MultiPoly]:
    if isinstance(p, RatFun):
        if not p.den.is_constant():
            raise ValueError("coefficient extraction needs a polynomial")
        p = p.as_poly()
    return p.coeffs_in(var)


def is_zero(p) -> bool:
    return p.is_zero()


def symmetrize(p: MultiPoly, pair=("a2", "b2"), into=("e1", "e2")) -> MultiPoly:
    """Rewrite a polynomial symmetric in ``pair`` through the elementary
    symmetric functions e1 = u + v and e2 = u*v.

    Raises ValueError if ``p`` is not symmetric in the pair.
    """
    vars = p.vars
    iu, iv = vars.index(pair[0]), vars.index(pair[1])
    s1 = MultiPoly.var(pair[0], vars) + MultiPoly.var(pair[1], vars)
    s2 = MultiPoly.var(pair[0], vars) * MultiPoly.var(pair[1], vars)
    e1, e2 = MultiPoly.var(into[0], vars), MultiPoly.var(into[1], vars)
    rest = p
    out = MultiPoly._raw(vars, {})
    while True:
        cands = [e for e in rest.terms if e[iu] or e[iv]]
        if not cands:
            return out + rest
        lead = max(cands, key=lambda e: (e[iu], e[iv], e))
        i, j = lead[iu], lead[iv]
        if i < j:
            raise ValueError(f"polynomial is not symmetric in {pair}")
        c = rest.terms[lead]
        mono = list(lead)
        mono[iu] = mono[iv] = 0
        m = MultiPoly._raw(vars, {tuple(mono): c})
        rest = rest - m * s1 ** (i - j) * s2 ** j
        out = out + m * e1 ** (i - j) * e2 ** j


def symmetrize_ratfun(r: RatFun, pair=("a2", "b2"), into=("e1", "e2")) -> RatFun:
    return RatFun(symmetrize(r.num, pair, into), symmetrize(r.den, pair, into))


# -- formula parsing ----------------------------------------------------------

def parse(text: str, namespace: Mapping[str, object], vars: Iterable[str] = CERT_ALPHABET):
    """Evaluate formula text into a MultiPoly or RatFun.

    ``^`` means power.  Names resolve through ``namespace`` first, then the
    alphabet.  Only + - * / and non-negative integer powers are allowed.
    """
    vars = tuple(vars)
    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MultiPoly.const(node.value, vars)
        if isinstance(node, ast.Name):
            if node.id in namespace:
                return _as_ratfun(namespace[node.id], vars)
            if node.id in vars:
                return _as_ratfun(MultiPoly.var(node.id, vars), vars)
            raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int) and exp.value >= 0):
                    raise ParseError(f"only non-negative integer powers allowed in {text!r}")
                return _as_ratfun(ev(node.left), vars) ** exp.value
            a, b = _as_ratfun(ev(node.left), vars), _as_ratfun(ev(node.right), vars)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ParseError(f"unsupported syntax in {text!r}")

    result = _as_ratfun(ev(tree), vars)
    return result.as_poly() if result.is_polynomial() else result
