"""Verified (integrand, integral) pair generators: FWD, BWD, IBP, SUB.

Every emitted pair is numerically verified: the derivative of the claimed
integral must agree with the integrand at sample points.  Generation is
deterministic given the supplied rng.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..expr import nodes as nd
from ..expr.calculus import differentiate
from ..expr.nodes import Expr, add, div, integer, mul, pow_, rational, sub, var
from ..expr.numeric import eval_numeric
from ..expr.prefix import to_prefix_str
from ..expr.random_expr import GenConfig, random_expr
from ..expr.simplify import is_zero, simplify_basic

FWD, BWD, IBP, SUB, LIOUVILLE, SPECIAL = \
    "FWD", "BWD", "IBP", "SUB", "LIOUVILLE", "SPECIAL"
GENERATOR_NAMES = (FWD, BWD, IBP, SUB, LIOUVILLE, SPECIAL)

VERIFY_POINTS = 8
VERIFY_MIN_AGREE = 6
VERIFY_REL_TOL = 1e-6
VERIFY_ABS_TOL = 1e-8
_POINT_LOW, _POINT_HIGH = 0.15, 2.65


class DegeneratePair(Exception):
    pass


class NoApplicablePair(Exception):
    pass


class NotIntegrableByTable(Exception):
    pass


@dataclass
class DataPair:
    integrand: Expr
    integral: Expr
    generator: str
    seed: int = 0
    verified: bool = False


def _pair_rng(pair: DataPair):
    key = f"{to_prefix_str(pair.integrand)}|{to_prefix_str(pair.integral)}"
    return np.random.default_rng(zlib.crc32(key.encode()))


def verify_pair(pair: DataPair, rng=None, variable="x") -> bool:
    """Numeric check: d(integral)/dx matches the integrand at >=6 of 8 points."""
    try:
        derivative = differentiate(pair.integral, variable)
    except Exception:
        return False
    rng = rng or _pair_rng(pair)
    points = rng.uniform(_POINT_LOW, _POINT_HIGH, size=VERIFY_POINTS)
    agree = 0
    for p in points:
        env = {variable: float(p)}
        a = eval_numeric(pair.integrand, env)
        b = eval_numeric(derivative, env)
        if not (math.isfinite(a) and math.isfinite(b)):
            continue
        if math.isclose(a, b, rel_tol=VERIFY_REL_TOL, abs_tol=VERIFY_ABS_TOL):
            agree += 1
    return agree >= VERIFY_MIN_AGREE


# --- rule-table micro-integrator ------------------------------------------

_U = var("@0")

# antiderivative templates over the placeholder argument
_ANTIDERIVATIVES = {
    "sin": mul(-1, nd.apply("cos", _U)),
    "cos": nd.apply("sin", _U),
    "exp": nd.apply("exp", _U),
    "tan": mul(-1, nd.apply("ln", nd.apply("cos", _U))),
    "sinh": nd.apply("cosh", _U),
    "cosh": nd.apply("sinh", _U),
    "tanh": nd.apply("ln", nd.apply("cosh", _U)),
    "ln": sub(mul(_U, nd.apply("ln", _U)), _U),
    "atan": sub(mul(_U, nd.apply("atan", _U)),
                mul(rational(1, 2), nd.apply("ln", add(1, pow_(_U, 2))))),
    "erf": add(mul(_U, nd.apply("erf", _U)),
               mul(pow_(nd.const("pi"), rational(-1, 2)),
                   nd.apply("exp", mul(-1, pow_(_U, 2))))),
}


def linear_form(e: Expr, variable="x"):
    """(a, b) with e == a*x + b for exact rational a, b; else None."""
    if e.is_number:
        return Fraction(0), e.as_fraction()
    if e.op is nd.VAR:
        return (Fraction(1), Fraction(0)) if e.value == variable else None
    if e.op == "+" or e.op == "-":
        l = linear_form(e.children[0], variable)
        r = linear_form(e.children[1], variable)
        if l is None or r is None:
            return None
        if e.op == "+":
            return l[0] + r[0], l[1] + r[1]
        return l[0] - r[0], l[1] - r[1]
    if e.op == "*":
        l = linear_form(e.children[0], variable)
        r = linear_form(e.children[1], variable)
        if l is None or r is None:
            return None
        if l[0] == 0:
            return l[1] * r[0], l[1] * r[1]
        if r[0] == 0:
            return r[1] * l[0], r[1] * l[1]
        return None
    if e.op == "/":
        l = linear_form(e.children[0], variable)
        r = linear_form(e.children[1], variable)
        if l is None or r is None or r[0] != 0 or r[1] == 0:
            return None
        return l[0] / r[1], l[1] / r[1]
    return None


def integrate_table(e: Expr, variable="x") -> Expr | None:
    """Linearity + power rule + f(a*x+b) table; None when no rule applies."""
    e = simplify_basic(e)
    result = _int_node(e, variable)
    return simplify_basic(result) if result is not None else None


def _int_node(e, variable):
    x = var(variable)
    if e.is_number:
        return mul(e, x)
    if e.op is nd.CONST:
        return mul(e, x)
    if e.op is nd.VAR:
        return mul(rational(1, 2), pow_(x, 2)) if e.value == variable else mul(e, x)
    if e.op == "+" or e.op == "-":
        l = _int_node(e.children[0], variable)
        r = _int_node(e.children[1], variable)
        if l is None or r is None:
            return None
        return nd.binop(e.op, l, r)
    if e.op == "*":
        consts, rest = _split_constant_factors(e, variable)
        if rest is None:
            return mul(consts, x)
        inner = _int_node(rest, variable) if consts is not None else None
        if consts is None or inner is None:
            return None
        return mul(consts, inner)
    if e.op == "/":
        num, den = e.children
        if not nd.contains_var(den, variable):
            inner = _int_node(num, variable)
            return div(inner, den) if inner is not None else None
        lf = linear_form(den, variable)
        if lf is not None and lf[0] != 0 and not nd.contains_var(num, variable):
            # c / (a x + b) -> (c/a) ln(a x + b)
            return mul(num, rational(1 / lf[0]), nd.apply("ln", den))
        if den.op == "^" and den.children[1].op is nd.INT \
                and not nd.contains_var(num, variable):
            inner = _int_node(mul(num, pow_(den.children[0],
                                            integer(-den.children[1].value))),
                              variable)
            return inner
        return None
    if e.op == "^":
        base, expo = e.children
        if not expo.is_number:
            return None
        n = expo.as_fraction()
        lf = linear_form(base, variable)
        if lf is None or lf[0] == 0:
            return None
        a = lf[0]
        if n == -1:
            return mul(rational(1 / a), nd.apply("ln", base))
        return mul(rational(1 / (a * (n + 1))), pow_(base, rational(n + 1)))
    # single function application of a linear argument
    if e.children and e.op in _ANTIDERIVATIVES and len(e.children) == 1:
        u = e.children[0]
        lf = linear_form(u, variable)
        if lf is None or lf[0] == 0:
            return None
        template = _ANTIDERIVATIVES[e.op]
        anti = nd.substitute_many(template, {"@0": u})
        return mul(rational(1 / lf[0]), anti)
    return None


def _split_constant_factors(e, variable):
    """Flatten a product into (constant part, non-constant part or None)."""
    factors = []
    stack = [e]
    while stack:
        t = stack.pop()
        if t.op == "*":
            stack.extend(t.children)
        else:
            factors.append(t)
    consts = [f for f in factors if not nd.contains_var(f, variable)]
    rest = [f for f in factors if nd.contains_var(f, variable)]
    cpart = mul(*consts) if consts else integer(1)
    if not rest:
        return cpart, None
    if len(rest) == 1:
        return cpart, rest[0]
    return None, rest[0]


# --- generators ------------------------------------------------------------

def gen_bwd(cfg: GenConfig, rng, *, tag=BWD, seed=0) -> DataPair:
    """Differentiate a random expression; the sampled tree is the integral."""
    integral = random_expr(cfg, rng)
    integrand = simplify_basic(differentiate(integral))
    if is_zero(integrand):
        raise DegeneratePair("derivative vanished")
    pair = DataPair(integrand, simplify_basic(integral), tag, seed)
    pair.verified = verify_pair(pair)
    return pair


def gen_fwd(cfg: GenConfig, rng, *, seed=0) -> DataPair:
    """Integrate a random expression with the rule table; misses are expected."""
    integrand = simplify_basic(random_expr(cfg, rng))
    if is_zero(integrand):
        raise DegeneratePair("zero integrand")
    integral = integrate_table(integrand)
    if integral is None:
        raise NotIntegrableByTable(to_prefix_str(integrand))
    pair = DataPair(integrand, integral, FWD, seed)
    pair.verified = verify_pair(pair)
    return pair


def _pool_lookup(pool_index, expr):
    return pool_index.get(to_prefix_str(simplify_basic(expr)))


def build_pool_index(pool):
    """Map simplified integrand prefix -> integral, first pair wins."""
    index = {}
    for p in pool:
        index.setdefault(to_prefix_str(simplify_basic(p.integrand)), p.integral)
    return index


def ibp_combine(f, g, pool_index=None, seed=0) -> DataPair | None:
    """(f*g', f*g - H) when H = int(f'*g) is known; None otherwise."""
    h = simplify_basic(mul(differentiate(f), g))
    known = _pool_lookup(pool_index or {}, h)
    if known is None:
        known = integrate_table(h)
    if known is None:
        return None
    integrand = simplify_basic(mul(f, differentiate(g)))
    if is_zero(integrand):
        return None
    integral = simplify_basic(sub(mul(f, g), known))
    pair = DataPair(integrand, integral, IBP, seed)
    pair.verified = verify_pair(pair)
    return pair


def gen_ibp(pool, rng, *, pool_index=None, retries=50, seed=0) -> DataPair:
    """Integration by parts against a pool of known pairs."""
    if not pool:
        raise NoApplicablePair("empty pool")
    if pool_index is None:
        pool_index = build_pool_index(pool)
    x = var("x")
    for _ in range(retries):
        expo = int(rng.integers(1, 4))
        f = x if expo == 1 else pow_(x, expo)
        donor = pool[int(rng.integers(0, len(pool)))]
        g = donor.integrand
        if rng.random() < 0.3:
            g = mul(-1, g)
        pair = ibp_combine(f, g, pool_index, seed=seed)
        if pair is not None and pair.verified:
            return pair
    raise NoApplicablePair("no integration-by-parts partner found")


def _inner_sub_expr(rng, cfg=None):
    cfg = cfg or GenConfig(max_ops=2, unary_prob=0.15, var_prob=0.75,
                           pow_low=2, pow_high=3, int_low=-3, int_high=3)
    return random_expr(cfg, rng)


def gen_sub(pool, rng, *, retries=50, inner_cfg=None, seed=0) -> DataPair:
    """Substitution rule: from (f, F) and inner g emit (f(g)*g', F(g))."""
    if not pool:
        raise NoApplicablePair("empty pool")
    for _ in range(retries):
        donor = pool[int(rng.integers(0, len(pool)))]
        g = _inner_sub_expr(rng, inner_cfg)
        if not nd.contains_var(g, "x"):
            continue
        gp = simplify_basic(differentiate(g))
        if is_zero(gp):
            continue
        integrand = simplify_basic(mul(nd.substitute(donor.integrand, "x", g), gp))
        if is_zero(integrand):
            continue
        integral = simplify_basic(nd.substitute(donor.integral, "x", g))
        pair = DataPair(integrand, integral, SUB, seed)
        pair.verified = verify_pair(pair)
        if pair.verified:
            return pair
    raise NoApplicablePair("substitution kept failing verification")


def builtin_seed_pairs():
    """Small table of classic pairs used to bootstrap IBP/SUB pools."""
    x = var("x")
    rows = [
        (nd.apply("cos", x), nd.apply("sin", x)),
        (nd.apply("sin", x), mul(-1, nd.apply("cos", x))),
        (nd.apply("exp", x), nd.apply("exp", x)),
        (div(1, x), nd.apply("ln", x)),
        (x, mul(rational(1, 2), pow_(x, 2))),
        (pow_(x, 2), mul(rational(1, 3), pow_(x, 3))),
        (nd.apply("sinh", x), nd.apply("cosh", x)),
        (nd.apply("cosh", x), nd.apply("sinh", x)),
        (div(1, add(1, pow_(x, 2))), nd.apply("atan", x)),
    ]
    out = []
    for f, big_f in rows:
        pair = DataPair(simplify_basic(f), simplify_basic(big_f), BWD, 0)
        pair.verified = verify_pair(pair)
        out.append(pair)
    return out
