"""IEEE-double evaluation with NaN propagation on domain errors."""

from __future__ import annotations

import math

from . import nodes as nd
from .nodes import Expr
from .registry import default_registry


class UnboundVariable(Exception):
    pass


def eval_numeric(e: Expr, env, registry=None) -> float:
    """Evaluate with variables (and overridable constants) bound by ``env``.

    Domain violations (log of a negative, division by zero, overflow,
    complex escapes) yield NaN instead of raising, so callers can filter
    bad sample points.
    """
    registry = registry or default_registry()
    memo = {}

    def ev(n):
        r = memo.get(id(n))
        if r is not None:
            return r
        r = _eval_node(n, env, ev, registry)
        memo[id(n)] = r
        return r

    return ev(e)


def _eval_node(n, env, ev, registry):
    op = n.op
    if op is nd.INT or op is nd.RAT:
        return float(n.value)
    if op is nd.VAR:
        try:
            return float(env[n.value])
        except KeyError:
            raise UnboundVariable(n.value) from None
    if op is nd.CONST:
        if n.value in env:
            return float(env[n.value])
        try:
            return registry.constants[n.value]
        except KeyError:
            raise UnboundVariable(n.value) from None

    args = [ev(c) for c in n.children]
    if any(math.isnan(a) for a in args):
        return math.nan
    try:
        if op == "+":
            return args[0] + args[1]
        if op == "-":
            return args[0] - args[1]
        if op == "*":
            return args[0] * args[1]
        if op == "/":
            return args[0] / args[1]
        if op == "^":
            base, expo = args
            if base < 0 and expo != int(expo):
                return math.nan
            return math.pow(base, expo)
    except (ZeroDivisionError, OverflowError, ValueError):
        return math.nan
    kernel = registry.kernel(op)
    y = kernel(*args)
    return float(y)
