"""Random unary-binary expression trees, in the style of seq2seq math datasets."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import nodes as nd


class InvalidConfig(Exception):
    pass


def _default_ops():
    return {"+": 8.0, "-": 5.0, "*": 8.0, "/": 3.0, "^": 3.0}


def _default_functions():
    return {"sin": 2.0, "cos": 2.0, "tan": 1.0, "exp": 2.0, "ln": 2.0,
            "sinh": 1.0, "cosh": 1.0, "atan": 1.0}


@dataclass
class GenConfig:
    max_ops: int = 5
    min_ops: int = 1
    op_weights: dict = field(default_factory=_default_ops)
    function_weights: dict = field(default_factory=_default_functions)
    unary_prob: float = 0.3
    var_prob: float = 0.6
    int_low: int = -5
    int_high: int = 5
    pow_low: int = -2
    pow_high: int = 4
    variable: str = "x"

    def validate(self):
        if self.max_ops < 1 or self.min_ops < 0 or self.min_ops > self.max_ops:
            raise InvalidConfig("need 0 <= min_ops <= max_ops and max_ops >= 1")
        if sum(self.op_weights.values()) <= 0:
            raise InvalidConfig("operator weights must sum > 0")
        if self.unary_prob > 0 and self.function_weights \
                and sum(self.function_weights.values()) <= 0:
            raise InvalidConfig("function weights must sum > 0")
        if self.int_low > self.int_high:
            raise InvalidConfig("empty integer leaf range")
        return self


def _weighted_choice(rng, weights):
    names = sorted(weights)
    w = np.array([weights[n] for n in names], dtype=float)
    return names[int(rng.choice(len(names), p=w / w.sum()))]


def random_expr(cfg: GenConfig, rng) -> nd.Expr:
    """Sample one expression; deterministic given (cfg, rng state)."""
    cfg.validate()
    budget = int(rng.integers(cfg.min_ops, cfg.max_ops + 1))
    return _build(cfg, rng, budget)


def _leaf(cfg, rng):
    if rng.random() < cfg.var_prob:
        return nd.var(cfg.variable)
    return nd.integer(_nonzero_int(rng, cfg.int_low, cfg.int_high))


def _nonzero_int(rng, lo, hi):
    for _ in range(64):
        n = int(rng.integers(lo, hi + 1))
        if n != 0:
            return n
    return 1


def _build(cfg, rng, budget):
    if budget <= 0:
        return _leaf(cfg, rng)
    use_unary = cfg.function_weights and rng.random() < cfg.unary_prob
    if use_unary:
        fname = _weighted_choice(rng, cfg.function_weights)
        return nd.apply(fname, _build(cfg, rng, budget - 1))
    op = _weighted_choice(rng, cfg.op_weights)
    if op == "^":
        # integer exponents only: keeps calculus and integration rules sane
        expo = _nonzero_int(rng, cfg.pow_low, cfg.pow_high)
        if expo == 1:
            expo = 2
        return nd.pow_(_build(cfg, rng, budget - 1), nd.integer(expo))
    left_budget = int(rng.integers(0, budget))
    return nd.binop(op, _build(cfg, rng, left_budget),
                    _build(cfg, rng, budget - 1 - left_budget))
