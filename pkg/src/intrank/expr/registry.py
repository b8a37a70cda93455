"""Function registry: arities, derivative templates, numeric kernels, groups.

Derivative rules are data: an expression template per argument slot, written
over the placeholder variables ``@0``, ``@1``, ...  A ``None`` slot means the
function is not differentiable in that argument (e.g. a Bessel order), which
is fine as long as generated expressions keep that argument variable-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import nodes as nd
from .nodes import (add, apply, const, declare_function, div, mul, pow_,
                    rational, sub, var)


class UnknownDerivative(Exception):
    """A function without a usable derivative rule was differentiated."""


class NoNumericKernel(Exception):
    """eval_numeric met a function with no numeric implementation."""


ELEMENTARY = "elementary"

_P0 = var("@0")
_P1 = var("@1")


@dataclass(frozen=True)
class FunctionSpec:
    name: str
    arity: int
    partials: tuple          # one template (or None) per argument slot
    kernel: object = None    # callable on floats, or None
    group: str = ELEMENTARY


@dataclass
class FunctionRegistry:
    functions: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)

    def register(self, name, arity, partials, kernel=None, group=ELEMENTARY):
        if name in self.functions:
            raise ValueError(f"function {name!r} registered twice")
        declare_function(name, arity)
        partials = tuple(partials)
        if len(partials) != arity:
            raise ValueError(f"{name}: {arity} slots, {len(partials)} partials")
        self.functions[name] = FunctionSpec(name, arity, partials, kernel, group)

    def register_constant(self, name, value):
        self.constants[name] = float(value)

    def validate(self):
        """Every derivative template may reference registered functions only."""
        for spec in self.functions.values():
            for t in spec.partials:
                if t is None:
                    continue
                for f in nd.functions_of(t):
                    if f not in self.functions:
                        raise ValueError(f"{spec.name}: derivative rule uses "
                                         f"unregistered function {f!r}")
        return self

    def __contains__(self, name):
        return name in self.functions

    def spec(self, name) -> FunctionSpec:
        try:
            return self.functions[name]
        except KeyError:
            raise UnknownDerivative(name) from None

    def arity(self, name):
        return self.functions[name].arity

    def partial(self, name, slot, args):
        """Instantiated d(name)/d(arg_slot) for the given argument exprs."""
        template = self.spec(name).partials[slot]
        if template is None:
            raise UnknownDerivative(f"{name} (argument {slot})")
        mapping = {f"@{i}": a for i, a in enumerate(args)}
        return nd.substitute_many(template, mapping)

    def kernel(self, name):
        spec = self.functions.get(name)
        if spec is None or spec.kernel is None:
            raise NoNumericKernel(name)
        return spec.kernel

    def groups(self):
        """Special-function group -> sorted member names."""
        out = {}
        for spec in self.functions.values():
            if spec.group != ELEMENTARY:
                out.setdefault(spec.group, []).append(spec.name)
        return {g: sorted(names) for g, names in sorted(out.items())}

    def special_names(self):
        return sorted(n for n, s in self.functions.items()
                      if s.group != ELEMENTARY)


def _real(fn):
    """Wrap a kernel so domain errors and complex escapes become NaN."""
    def call(*xs):
        try:
            y = complex(fn(*xs))
        except (ValueError, OverflowError, ZeroDivisionError, TypeError):
            return math.nan
        if abs(y.imag) > 1e-9 * (1.0 + abs(y.real)):
            return math.nan
        return y.real
    return call


def _declare_all(names_arities):
    for name, arity in names_arities:
        declare_function(name, arity)


def _build_default():
    import mpmath
    from scipy import special as sp

    # declare up front so mutually-referencing templates can be built
    _declare_all([
        ("exp", 1), ("ln", 1), ("sin", 1), ("cos", 1), ("tan", 1),
        ("sinh", 1), ("cosh", 1), ("tanh", 1),
        ("asin", 1), ("acos", 1), ("atan", 1),
        ("erf", 1), ("erfc", 1), ("erfi", 1), ("dawson", 1),
        ("FresnelC", 1), ("FresnelS", 1),
        ("Ei", 1), ("Si", 1), ("Ci", 1), ("Ssi", 1), ("Shi", 1), ("Chi", 1),
        ("dilog", 1), ("polylog", 2),
        ("BesselJ", 2), ("BesselY", 2), ("BesselI", 2), ("BesselK", 2),
        ("GAMMA", 1), ("lnGAMMA", 1), ("Psi", 1), ("polygamma", 2),
    ])

    r = FunctionRegistry()
    r.register_constant("pi", math.pi)

    u = _P0
    r.register("exp", 1, [apply("exp", u)], _real(math.exp))
    r.register("ln", 1, [div(1, u)], _real(math.log))
    r.register("sin", 1, [apply("cos", u)], _real(math.sin))
    r.register("cos", 1, [mul(-1, apply("sin", u))], _real(math.cos))
    r.register("tan", 1, [add(1, pow_(apply("tan", u), 2))], _real(math.tan))
    r.register("sinh", 1, [apply("cosh", u)], _real(math.sinh))
    r.register("cosh", 1, [apply("sinh", u)], _real(math.cosh))
    r.register("tanh", 1, [sub(1, pow_(apply("tanh", u), 2))], _real(math.tanh))
    r.register("asin", 1, [pow_(sub(1, pow_(u, 2)), rational(-1, 2))],
               _real(math.asin))
    r.register("acos", 1, [mul(-1, pow_(sub(1, pow_(u, 2)), rational(-1, 2)))],
               _real(math.acos))
    r.register("atan", 1, [div(1, add(1, pow_(u, 2)))], _real(math.atan))

    pi = const("pi")
    two_over_sqrt_pi = mul(2, pow_(pi, rational(-1, 2)))
    exp_neg_u2 = apply("exp", mul(-1, pow_(u, 2)))
    exp_pos_u2 = apply("exp", pow_(u, 2))

    # error-function family (with the Fresnel integrals, as grouped in CAS docs)
    r.register("erf", 1, [mul(two_over_sqrt_pi, exp_neg_u2)],
               _real(sp.erf), group="error")
    r.register("erfc", 1, [mul(-1, two_over_sqrt_pi, exp_neg_u2)],
               _real(sp.erfc), group="error")
    r.register("erfi", 1, [mul(two_over_sqrt_pi, exp_pos_u2)],
               _real(sp.erfi), group="error")
    r.register("dawson", 1, [sub(1, mul(2, u, apply("dawson", u)))],
               _real(sp.dawsn), group="error")
    half_pi_u2 = mul(rational(1, 2), pi, pow_(u, 2))
    r.register("FresnelC", 1, [apply("cos", half_pi_u2)],
               _real(lambda x: sp.fresnel(x)[1]), group="error")
    r.register("FresnelS", 1, [apply("sin", half_pi_u2)],
               _real(lambda x: sp.fresnel(x)[0]), group="error")

    # exponential-integral family
    r.register("Ei", 1, [div(apply("exp", u), u)], _real(sp.expi),
               group="exp_integral")
    r.register("Si", 1, [div(apply("sin", u), u)],
               _real(lambda x: sp.sici(x)[0]), group="exp_integral")
    r.register("Ci", 1, [div(apply("cos", u), u)],
               _real(lambda x: sp.sici(x)[1]), group="exp_integral")
    r.register("Ssi", 1, [div(apply("sin", u), u)],
               _real(lambda x: sp.sici(x)[0] - math.pi / 2), group="exp_integral")
    r.register("Shi", 1, [div(apply("sinh", u), u)],
               _real(lambda x: sp.shichi(x)[0]), group="exp_integral")
    r.register("Chi", 1, [div(apply("cosh", u), u)],
               _real(lambda x: sp.shichi(x)[1]), group="exp_integral")

    # dilog / polylog; scipy's spence matches d/dx dilog(x) = ln(x)/(1-x)
    r.register("dilog", 1, [div(apply("ln", u), sub(1, u))],
               _real(sp.spence), group="dilog")
    r.register("polylog", 2,
               [None, div(apply("polylog", sub(_P0, 1), _P1), _P1)],
               _real(lambda s, x: mpmath.polylog(int(s), x)),
               group="polylog")

    # Bessel family; order argument stays variable-free
    r.register("BesselJ", 2,
               [None, mul(rational(1, 2),
                          sub(apply("BesselJ", sub(_P0, 1), _P1),
                              apply("BesselJ", add(_P0, 1), _P1)))],
               _real(sp.jv), group="bessel")
    r.register("BesselY", 2,
               [None, mul(rational(1, 2),
                          sub(apply("BesselY", sub(_P0, 1), _P1),
                              apply("BesselY", add(_P0, 1), _P1)))],
               _real(sp.yv), group="bessel")
    r.register("BesselI", 2,
               [None, mul(rational(1, 2),
                          add(apply("BesselI", sub(_P0, 1), _P1),
                              apply("BesselI", add(_P0, 1), _P1)))],
               _real(sp.iv), group="bessel")
    r.register("BesselK", 2,
               [None, mul(rational(-1, 2),
                          add(apply("BesselK", sub(_P0, 1), _P1),
                              apply("BesselK", add(_P0, 1), _P1)))],
               _real(sp.kv), group="bessel")

    # gamma family; polygamma closes the chain under differentiation
    r.register("polygamma", 2, [None, apply("polygamma", add(_P0, 1), _P1)],
               _real(lambda n, x: float(sp.polygamma(int(n), x))), group="gamma")
    r.register("Psi", 1, [apply("polygamma", 1, u)], _real(sp.psi), group="gamma")
    r.register("GAMMA", 1, [mul(apply("GAMMA", u), apply("Psi", u))],
               _real(sp.gamma), group="gamma")
    r.register("lnGAMMA", 1, [apply("Psi", u)], _real(sp.gammaln), group="gamma")

    return r.validate()


_DEFAULT = None


def default_registry() -> FunctionRegistry:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = _build_default()
    return _DEFAULT
