"""Non-elementary expression creation: one special-function group per draw.

An expression starts from a single special-function term and is extended by
binary operators with further terms from the same group or small elementary
expressions.  Term counts stay tiny (at most three) to keep the results
integrable by the downstream generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..expr import nodes as nd
from ..expr.calculus import differentiate
from ..expr.nodes import add, integer, mul, pow_, var
from ..expr.random_expr import GenConfig, random_expr
from ..expr.registry import default_registry
from ..expr.simplify import is_zero, simplify_basic
from .generators import SPECIAL, DataPair, DegeneratePair, verify_pair


class EmptyGroup(Exception):
    pass


def _tiny_elementary():
    return GenConfig(max_ops=2, unary_prob=0.2, var_prob=0.65,
                     int_low=-4, int_high=4, pow_low=2, pow_high=3)


@dataclass
class SpecialConfig:
    max_terms: int = 3
    special_prob: float = 0.5       # coin for special vs elementary new term
    elementary_cfg: GenConfig = field(default_factory=_tiny_elementary)
    groups: tuple = ()              # empty means all registry groups
    variable: str = "x"

    def validate(self):
        if not 1 <= self.max_terms <= 3:
            raise ValueError("term count must stay within 1..3")
        return self


_BINARY_COMBINERS = ("+", "-", "*", "/")


def _special_term(fname, rng, registry, variable):
    """Apply one special function to a simple argument."""
    x = var(variable)
    arity = registry.arity(fname)
    roll = rng.random()
    if roll < 0.6:
        inner = x
    elif roll < 0.8:
        inner = mul(int(rng.integers(2, 4)), x)
    else:
        inner = pow_(x, 2)
    if arity == 1:
        return nd.apply(fname, inner)
    # two-argument specials carry a small constant order parameter
    order = int(rng.integers(2, 4)) if fname == "polylog" \
        else int(rng.integers(0, 3))
    return nd.apply(fname, integer(order), inner)


def gen_special(cfg: SpecialConfig, rng, registry=None) -> nd.Expr:
    """Build a non-elementary expression within a single function group."""
    cfg.validate()
    registry = registry or default_registry()
    groups = registry.groups()
    names = cfg.groups or tuple(sorted(groups))
    group = names[int(rng.integers(0, len(names)))]
    members = groups.get(group, [])
    if not members:
        raise EmptyGroup(group)

    num_terms = int(rng.integers(1, cfg.max_terms + 1))
    fname = members[int(rng.integers(0, len(members)))]
    expr = _special_term(fname, rng, registry, cfg.variable)
    for _ in range(num_terms - 1):
        if rng.random() < cfg.special_prob:
            gname = members[int(rng.integers(0, len(members)))]
            term = _special_term(gname, rng, registry, cfg.variable)
        else:
            term = random_expr(cfg.elementary_cfg, rng)
        op = _BINARY_COMBINERS[int(rng.integers(0, len(_BINARY_COMBINERS)))]
        expr = nd.binop(op, expr, term)
    return expr


def gen_special_bwd(cfg: SpecialConfig, rng, *, seed=0) -> DataPair:
    """Differentiate an Algorithm-style special expression into a pair."""
    integral = gen_special(cfg, rng)
    integrand = simplify_basic(differentiate(integral, cfg.variable))
    if is_zero(integrand):
        raise DegeneratePair("derivative vanished")
    pair = DataPair(integrand, simplify_basic(integral), SPECIAL, seed)
    pair.verified = verify_pair(pair)
    return pair


def special_extensions(f: nd.Expr, variable="x"):
    """Field extensions implied by differentiating a special term.

    Returns the function applications appearing in d(f)/dx that are not
    already part of f, ordered deterministically; these become the middle
    extensions while f itself is the outermost one.
    """
    df = differentiate(f, variable)
    own = {n for n in nd.iter_unique(f) if n.children}
    extras = []
    for n in nd.iter_unique(df):
        if n.children and n.op not in nd.BINARY_OPS and n not in own:
            extras.append(n)
    extras.sort(key=nd.Expr.sort_key)
    return extras
