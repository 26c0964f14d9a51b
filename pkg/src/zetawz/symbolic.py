"""Helpers for turning transcribed formulas into rational functions in (n, e1, e2, ...)."""

from __future__ import annotations

from typing import Mapping

from .mpoly import CERT_ALPHABET, MultiPoly, RatFun, parse, symmetrize_ratfun

V = CERT_ALPHABET


def sym(name: str) -> MultiPoly:
    return MultiPoly.var(name, V)


def base_namespace() -> dict:
    return {"n1": sym("n") + 1}


def expr(text: str, ns: Mapping[str, object]) -> RatFun:
    """Parse ``text`` and rewrite a2, b2 through e1, e2."""
    return symmetrize_ratfun(RatFun(parse(text, ns, V)))


def relation(text: str, ns: Mapping[str, object]) -> RatFun:
    """``"lhs = rhs"`` parsed as lhs - rhs."""
    lhs, sep, rhs = text.partition("=")
    if not sep:
        raise ValueError(f"relation without '=': {text!r}")
    return expr(lhs, ns) - expr(rhs, ns)


def solve_for(text: str, unknown: str, ns: Mapping[str, object]) -> RatFun:
    """Solve a relation that is linear in ``unknown`` (a namespace-only name)."""
    f0 = relation(text, {**ns, unknown: 0})
    f1 = relation(text, {**ns, unknown: 1})
    slope = f1 - f0
    if slope.is_zero():
        raise ValueError(f"relation does not involve {unknown!r}")
    return -(f0 / slope)


def shift_n(r: RatFun | MultiPoly, by: int = 1, **renames) -> RatFun:
    """Replace n by n+by and apply extra simultaneous bindings."""
    bindings = {"n": sym("n") + by}
    bindings.update(renames)
    return r.substitute(bindings)
