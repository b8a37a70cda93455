"""Liouville-form pair generator: rational part plus weighted logarithms.

The construction follows the parallel-Risch-flavoured recipe: random
denominator factors are square-free refactored, a bounded numerator is
drawn, and two log sums are attached: one over denominator factors, one
over free polynomials.  Differentiating the assembled integral yields the
integrand, so pairs verify by construction (numerically re-checked anyway).

Denominator polynomials use nonnegative rational coefficients in the last
field extension so that every square-free factor stays positive on the
positive axis, which keeps the numeric verification points usable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..expr import nodes as nd
from ..expr.calculus import differentiate
from ..expr.nodes import add, div, integer, mul, var
from ..expr.random_expr import GenConfig, random_expr
from ..expr.registry import default_registry
from ..expr.simplify import is_zero, normalise, simplify_basic
from .generators import LIOUVILLE, SPECIAL, DataPair, DegeneratePair, verify_pair
from .poly import Polynomial, partial_fraction, square_free_factor
from .special import SpecialConfig, _special_term, special_extensions


class ZeroDenominator(Exception):
    pass


@dataclass
class LiouvilleConfig:
    extensions: tuple = ()      # theta_1..theta_n as expressions; theta_0 = x
    r: int = 2                  # max denominator multiplicity
    normal: bool | None = None  # None -> coin flip per draw
    deg_q: int = 2              # max degree of each q_i
    deg_n: int = 2              # max numerator degree (also capped by deg D)
    j: int = 1                  # log terms over denominator factors
    k: int = 1                  # free log terms
    coeff_low: int = -5
    coeff_high: int = 5
    variable: str = "x"

    def validate(self):
        if self.r < 1:
            raise ValueError("need r >= 1")
        if self.deg_q < 1:
            raise ValueError("need deg_q >= 1")
        return self


@dataclass
class LiouvilleParts:
    factors: list               # [(Polynomial, multiplicity)]
    numerator: Polynomial
    log_factors: list           # [(c_i, Polynomial)] with bases among factors
    log_free: list              # [(d_i, Expr)]
    normal: bool


def _nonzero_coeff(rng, lo, hi):
    for _ in range(64):
        c = int(rng.integers(lo, hi + 1))
        if c != 0:
            return c
    return 1


def _rand_qpoly(rng, max_deg):
    """Nonnegative integer coefficients, positive constant and leading term."""
    deg = int(rng.integers(1, max_deg + 1))
    coeffs = [integer(int(rng.integers(0, 4))) for _ in range(deg + 1)]
    coeffs[0] = integer(int(rng.integers(1, 5)))
    coeffs[-1] = integer(int(rng.integers(1, 4)))
    return Polynomial.make(coeffs)


def _rand_numerator_coeff(rng, lowers, lo, hi):
    c = integer(_nonzero_coeff(rng, lo, hi))
    if lowers and rng.random() < 0.4:
        base = lowers[int(rng.integers(0, len(lowers)))]
        p = int(rng.integers(1, 3))
        return mul(c, base if p == 1 else nd.pow_(base, p))
    return c


def build_parts(cfg: LiouvilleConfig, rng) -> LiouvilleParts:
    cfg.validate()
    factors = []
    for _ in range(64):
        qs = [_rand_qpoly(rng, cfg.deg_q) for _ in range(cfg.r)]
        prod = Polynomial((integer(1),))
        for i, q in enumerate(qs, start=1):
            prod = prod * q.pow(i)
        if prod.is_zero or prod.degree < 1:
            continue
        factors = square_free_factor(prod)
        if factors:
            break
    if not factors:
        raise ZeroDenominator("could not draw a usable denominator")

    deg_d = sum(q.degree * m for q, m in factors)
    x = var(cfg.variable)
    lowers = [x] + list(cfg.extensions[:-1])
    n_deg = int(rng.integers(0, min(cfg.deg_n, deg_d) + 1))
    numerator = Polynomial.make(
        [_rand_numerator_coeff(rng, lowers, cfg.coeff_low, cfg.coeff_high)
         for _ in range(n_deg + 1)])
    if numerator.is_zero:
        numerator = Polynomial((integer(1),))

    jj = min(cfg.j, len(factors))
    picks = list(rng.choice(len(factors), size=jj, replace=False)) if jj else []
    log_factors = [(_nonzero_coeff(rng, cfg.coeff_low, cfg.coeff_high),
                    factors[int(i)][0]) for i in picks]

    log_free = []
    for _ in range(cfg.k):
        base = lowers + list(cfg.extensions[-1:])
        sym = base[int(rng.integers(0, len(base)))]
        # squared-plus-constant keeps the argument positive for real checks
        arg = add(mul(int(rng.integers(1, 4)), nd.pow_(sym, 2)),
                  int(rng.integers(1, 5)))
        log_free.append((_nonzero_coeff(rng, cfg.coeff_low, cfg.coeff_high),
                         simplify_basic(arg)))

    normal = cfg.normal if cfg.normal is not None else bool(rng.random() < 0.5)
    return LiouvilleParts(factors, numerator, log_factors, log_free, normal)


def assemble_pair(parts: LiouvilleParts, cfg: LiouvilleConfig, *,
                  tag=LIOUVILLE, seed=0) -> DataPair:
    theta = cfg.extensions[-1] if cfg.extensions else var(cfg.variable)
    v = cfg.variable

    d_expr = integer(1)
    for q, m in parts.factors:
        qe = q.to_expr(theta)
        d_expr = mul(d_expr, qe if m == 1 else nd.pow_(qe, m))
    d_expr = simplify_basic(d_expr)

    log_a = [mul(c, nd.apply("ln", q.to_expr(theta)))
             for c, q in parts.log_factors]
    log_b = [mul(d, nd.apply("ln", b)) for d, b in parts.log_free]
    a_expr = simplify_basic(add(*log_a)) if log_a else None
    b_expr = simplify_basic(add(*log_b)) if log_b else None

    if parts.normal:
        f_hat = div(parts.numerator.to_expr(theta), d_expr)
        core = f_hat if a_expr is None else add(f_hat, a_expr)
        integral = normalise(core)
        integrand = normalise(simplify_basic(differentiate(core, v)))
        if b_expr is not None:
            integral = simplify_basic(add(integral, b_expr))
            integrand = simplify_basic(
                add(integrand, differentiate(b_expr, v)))
    else:
        g = partial_fraction(parts.numerator, parts.factors, theta)
        for t in (a_expr, b_expr):
            if t is not None:
                g = add(g, t)
        integral = simplify_basic(g)
        integrand = simplify_basic(differentiate(integral, v))

    if is_zero(integrand):
        raise DegeneratePair("integrand vanished")
    pair = DataPair(integrand, integral, tag, seed)
    pair.verified = verify_pair(pair)
    return pair


def gen_liouville(cfg: LiouvilleConfig, rng, *, seed=0) -> DataPair:
    return assemble_pair(build_parts(cfg, rng), cfg, seed=seed)


def _default_extension_pool(variable="x"):
    x = var(variable)
    return (
        (),                                  # plain rational field
        (nd.apply("exp", x),),
        (nd.apply("exp", mul(-1, x)),),
        (nd.apply("ln", x),),
        (nd.apply("tan", x),),
    )


def gen_liouville_mixed(cfg: LiouvilleConfig, rng, *, seed=0) -> DataPair:
    """Draw the extension tower from the standard pool, then generate."""
    pool = _default_extension_pool(cfg.variable)
    weights = (0.45, 0.2, 0.1, 0.125, 0.125)
    idx = int(rng.choice(len(pool), p=weights))
    drawn = LiouvilleConfig(**{**cfg.__dict__, "extensions": pool[idx]})
    return gen_liouville(drawn, rng, seed=seed)


def gen_special_liouville(cfg: LiouvilleConfig, rng, special_cfg=None, *,
                          seed=0) -> DataPair:
    """Seed the extension tower by differentiating a special function."""
    registry = default_registry()
    special_cfg = special_cfg or SpecialConfig()
    groups = registry.groups()
    names = special_cfg.groups or tuple(sorted(groups))
    group = names[int(rng.integers(0, len(names)))]
    members = groups[group]
    fname = members[int(rng.integers(0, len(members)))]
    f = _special_term(fname, rng, registry, cfg.variable)
    extras = special_extensions(f, cfg.variable)
    drawn = LiouvilleConfig(**{**cfg.__dict__,
                               "extensions": tuple(extras) + (f,)})
    return assemble_pair(build_parts(drawn, rng), drawn, tag=SPECIAL, seed=seed)
