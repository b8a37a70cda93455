"""Symbolic differentiation driven by the registry's derivative templates."""

from __future__ import annotations

from . import nodes as nd
from .nodes import Expr, add, div, integer, mul, pow_, sub
from .registry import default_registry
from .simplify import simplify_basic

_ZERO = integer(0)
_ONE = integer(1)


def differentiate(e: Expr, v="x", registry=None) -> Expr:
    """d(e)/d(v), with constants folded by the basic simplifier."""
    registry = registry or default_registry()
    name = v.value if isinstance(v, Expr) else v
    memo = {}
    dep_memo = {}

    def depends(n):
        r = dep_memo.get(id(n))
        if r is None:
            if n.is_leaf:
                r = n.op is nd.VAR and n.value == name
            else:
                r = any(depends(c) for c in n.children)
            dep_memo[id(n)] = r
        return r

    def d(n):
        r = memo.get(id(n))
        if r is not None:
            return r
        r = _diff_node(n, name, d, depends, registry)
        memo[id(n)] = r
        return r

    return simplify_basic(d(e))


def _diff_node(n, name, d, depends, registry):
    if n.is_leaf:
        if n.op is nd.VAR and n.value == name:
            return _ONE
        return _ZERO
    if not depends(n):
        return _ZERO
    op = n.op
    if op == "+" or op == "-":
        a, b = n.children
        return nd.binop(op, d(a), d(b))
    if op == "*":
        a, b = n.children
        return add(mul(d(a), b), mul(a, d(b)))
    if op == "/":
        a, b = n.children
        return div(sub(mul(d(a), b), mul(a, d(b))), pow_(b, 2))
    if op == "^":
        a, b = n.children
        if not depends(b):
            # b constant in v: b * a^(b-1) * a'
            return mul(b, pow_(a, sub(b, 1)), d(a))
        if not depends(a):
            # a constant in v: a^b * ln(a) * b'
            return mul(pow_(a, b), nd.apply("ln", a), d(b))
        return mul(pow_(a, b),
                   add(mul(d(b), nd.apply("ln", a)), div(mul(b, d(a)), a)))
    # function application: chain rule over each argument slot
    terms = []
    for slot, child in enumerate(n.children):
        if not depends(child):
            continue
        partial = registry.partial(op, slot, n.children)
        terms.append(mul(partial, d(child)))
    return add(*terms)
