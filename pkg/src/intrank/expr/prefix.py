"""Prefix (Polish) serialization: the bracket-free interchange form.

Tokens are whitespace-separated: operators by symbol, functions by registry
name, integers as decimal literals, rationals as ``p/q`` in lowest terms.
"""

from __future__ import annotations

import re

from . import nodes as nd
from .nodes import Expr
from .registry import default_registry


class PrefixError(Exception):
    pass


class TruncatedTerm(PrefixError):
    """The token stream ended before the term was complete."""


class TrailingTokens(PrefixError):
    """A complete term was parsed but tokens remain."""


class UnknownSymbol(PrefixError):
    pass


_INT_RE = re.compile(r"-?\d+$")
_RAT_RE = re.compile(r"(-?\d+)/(\d+)$")

DEFAULT_VARIABLES = ("x",)


def to_prefix(e: Expr) -> list:
    return nd.prefix_tokens(e)


def from_prefix(tokens, registry=None, variables=DEFAULT_VARIABLES,
                constants=()) -> Expr:
    """Parse a complete prefix term; inverse of :func:`to_prefix`."""
    registry = registry or default_registry()
    tokens = list(tokens)
    pos = 0
    varset = set(variables)
    constset = set(constants) | set(registry.constants)

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise TruncatedTerm(f"expected a token at position {pos}")
        tok = tokens[pos]
        pos += 1
        if tok in nd.BINARY_OPS:
            return nd.binop(tok, parse(), parse())
        arity = nd.function_arity(tok)
        if arity is not None and tok in registry:
            return nd.apply(tok, *[parse() for _ in range(arity)])
        if _INT_RE.match(tok):
            return nd.integer(int(tok))
        m = _RAT_RE.match(tok)
        if m:
            return nd.rational(int(m.group(1)), int(m.group(2)))
        if tok in varset:
            return nd.var(tok)
        if tok in constset:
            return nd.const(tok)
        raise UnknownSymbol(tok)

    expr = parse()
    if pos != len(tokens):
        raise TrailingTokens(f"{len(tokens) - pos} token(s) left over")
    return expr


def to_prefix_str(e: Expr) -> str:
    return " ".join(to_prefix(e))


def from_prefix_str(s, **kwargs) -> Expr:
    return from_prefix(s.split(), **kwargs)
