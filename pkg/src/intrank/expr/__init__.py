"""Symbolic expression core: nodes, calculus, serialization, statistics."""

from .calculus import differentiate
from .nodes import (DagStats, Expr, add, apply, binop, const, dag_stats, div,
                    integer, mul, neg, pow_, rational, sub, substitute,
                    substitute_consts, var)
from .numeric import UnboundVariable, eval_numeric
from .prefix import (PrefixError, TrailingTokens, TruncatedTerm, UnknownSymbol,
                     from_prefix, from_prefix_str, to_prefix, to_prefix_str)
from .random_expr import GenConfig, InvalidConfig, random_expr
from .registry import (FunctionRegistry, NoNumericKernel, UnknownDerivative,
                       default_registry)
from .simplify import (as_single_fraction, has_zero_denominator, is_zero,
                       normalise, simplify_basic)

# Build the default registry eagerly so function arities are declared before
# any expression construction.
default_registry()

__all__ = [
    "DagStats", "Expr", "FunctionRegistry", "GenConfig", "InvalidConfig",
    "NoNumericKernel", "PrefixError", "TrailingTokens", "TruncatedTerm",
    "UnboundVariable", "UnknownDerivative", "UnknownSymbol",
    "add", "apply", "as_single_fraction", "binop", "const", "dag_stats",
    "default_registry", "differentiate", "div", "eval_numeric", "from_prefix",
    "from_prefix_str", "has_zero_denominator", "integer", "is_zero", "mul",
    "neg", "normalise", "pow_", "random_expr", "rational", "simplify_basic",
    "sub", "substitute", "substitute_consts", "to_prefix", "to_prefix_str",
    "var",
]
