"""Dense univariate polynomials over expression coefficients.

The main symbol is abstract (index -> power); converting to an expression
takes the symbol explicitly.  Division requires a numeric leading
coefficient on the divisor, which holds everywhere we divide: square-free
factorization and partial fractions run over exact rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..expr import nodes as nd
from ..expr.nodes import Expr, integer, rational
from ..expr.simplify import simplify_basic

_ZERO = integer(0)
_ONE = integer(1)


class ZeroPolynomial(Exception):
    pass


class NotCoprimeFactors(Exception):
    pass


def _czero(c: Expr) -> bool:
    return c.is_number and c.as_fraction() == 0


def _cadd(a, b):
    return simplify_basic(nd.add(a, b))


def _csub(a, b):
    if a is b:
        return _ZERO
    return simplify_basic(nd.sub(a, b))


def _cmul(a, b):
    if _czero(a) or _czero(b):
        return _ZERO
    return simplify_basic(nd.mul(a, b))


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple  # coeffs[i] multiplies symbol**i; leading entry nonzero

    @classmethod
    def make(cls, coeffs):
        cs = [c if isinstance(c, Expr) else nd.number(c) for c in coeffs]
        cs = [simplify_basic(c) for c in cs]
        while cs and _czero(cs[-1]):
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def from_fractions(cls, fracs):
        return cls.make([rational(f) for f in fracs])

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self):
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_rational(self):
        return all(c.is_number for c in self.coeffs)

    def as_fractions(self):
        return [c.as_fraction() for c in self.coeffs]

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else _ZERO
            b = other.coeffs[i] if i < len(other.coeffs) else _ZERO
            out.append(_cadd(a, b))
        return Polynomial.make(out)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else _ZERO
            b = other.coeffs[i] if i < len(other.coeffs) else _ZERO
            out.append(_csub(a, b))
        return Polynomial.make(out)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return Polynomial(())
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _czero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = _cadd(out[i + j], _cmul(a, b))
        return Polynomial.make(out)

    def scale(self, c):
        c = c if isinstance(c, Expr) else nd.number(c)
        return Polynomial.make([_cmul(c, a) for a in self.coeffs])

    def pow(self, k):
        out = Polynomial((_ONE,))
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, divisor):
        """Quotient and remainder; the divisor needs a numeric leading term."""
        if divisor.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        if not divisor.leading.is_number:
            raise ValueError("divisor must have a numeric leading coefficient")
        inv_lead = rational(1 / divisor.leading.as_fraction())
        q = [_ZERO] * max(0, self.degree - divisor.degree + 1)
        rem = list(self.coeffs)

        def deg(cs):
            d = len(cs) - 1
            while d >= 0 and _czero(cs[d]):
                d -= 1
            return d

        d_rem = deg(rem)
        while d_rem >= divisor.degree:
            shift = d_rem - divisor.degree
            factor = _cmul(rem[d_rem], inv_lead)
            q[shift] = _cadd(q[shift], factor)
            for i, dc in enumerate(divisor.coeffs):
                rem[shift + i] = _csub(rem[shift + i], _cmul(factor, dc))
            rem[d_rem] = _ZERO  # leading term cancels exactly
            d_rem = deg(rem)
        return Polynomial.make(q), Polynomial.make(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self):
        """Formal derivative in the main symbol."""
        out = [_cmul(integer(i), c) for i, c in enumerate(self.coeffs)][1:]
        return Polynomial.make(out)

    def monic(self):
        if self.is_zero:
            raise ZeroPolynomial("cannot normalise the zero polynomial")
        lead = self.leading
        if not lead.is_number:
            raise ValueError("monic needs a numeric leading coefficient")
        if lead.as_fraction() == 1:
            return self
        return self.scale(rational(1 / lead.as_fraction()))

    def to_expr(self, symbol: Expr) -> Expr:
        terms = []
        for i, c in enumerate(self.coeffs):
            if _czero(c):
                continue
            if i == 0:
                terms.append(c)
            else:
                p = symbol if i == 1 else nd.pow_(symbol, i)
                terms.append(nd.mul(c, p))
        if not terms:
            return _ZERO
        return simplify_basic(nd.add(*terms))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic GCD over exact rationals."""
    if not (a.is_rational and b.is_rational):
        raise ValueError("gcd requires rational coefficients")
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a.monic()


def poly_ext_gcd(a: Polynomial, b: Polynomial):
    """(g, s, t) with s*a + t*b = g, g monic, over exact rationals."""
    one = Polynomial((_ONE,))
    zero = Polynomial(())
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    lead = r0.leading.as_fraction()
    inv = rational(1 / lead)
    return r0.monic(), s0.scale(inv), t0.scale(inv)


def square_free_factor(p: Polynomial):
    """Yun's algorithm: p = const * prod Q_i^i with square-free, coprime Q_i."""
    if p.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if not p.is_rational:
        raise ValueError("square-free factorization needs rational coefficients")
    if p.degree < 1:
        return []
    f = p.monic()
    df = f.derivative()
    g = poly_gcd(f, df)
    out = []
    if g.degree == 0:
        return [(f, 1)]
    c = f // g
    d = (df // g) - c.derivative()
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = c // a if a.degree > 0 else c
        d = (d // a if a.degree > 0 else d) - c.derivative()
        i += 1
    return out


def partial_fraction(n: Polynomial, factors, symbol: Expr) -> Expr:
    """Exact partial-fraction expansion of n / prod(Q_i^m_i).

    ``factors`` is a list of (Polynomial, multiplicity) with pairwise
    coprime, rational-coefficient bases.  The numerator may carry symbolic
    coefficients.  Recombining the result over the common denominator
    reproduces the input exactly.
    """
    factors = [(q.monic(), m) for q, m in factors]
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if poly_gcd(factors[i][0], factors[j][0]).degree > 0:
                raise NotCoprimeFactors(f"factors {i} and {j} share a root")

    den = Polynomial((_ONE,))
    for q, m in factors:
        den = den * q.pow(m)
    whole, rem = n.divmod(den)

    terms = []
    if not whole.is_zero:
        terms.append(whole.to_expr(symbol))

    def split(r, group):
        if r.is_zero:
            return
        if len(group) == 1:
            q, m = group[0]
            _expand(r, q, m)
            return
        half = len(group) // 2
        a_poly = Polynomial((_ONE,))
        for q, m in group[:half]:
            a_poly = a_poly * q.pow(m)
        b_poly = Polynomial((_ONE,))
        for q, m in group[half:]:
            b_poly = b_poly * q.pow(m)
        g, s, t = poly_ext_gcd(a_poly, b_poly)
        if g.degree != 0:
            raise NotCoprimeFactors("moduli unexpectedly share a factor")
        # r/(A*B) = (r*t mod A)/A + (r*s mod B)/B for coprime A, B
        split((r * t) % a_poly, group[:half])
        split((r * s) % b_poly, group[half:])

    def _expand(r, q, m):
        # r/q^m as sum of c_l/q^l with deg c_l < deg q
        for level in range(m, 0, -1):
            quot, part = r.divmod(q)
            if not part.is_zero:
                num = part.to_expr(symbol)
                den_e = q.to_expr(symbol) if level == 1 \
                    else nd.pow_(q.to_expr(symbol), level)
                terms.append(nd.div(num, den_e))
            r = quot

    split(rem, factors)
    if not terms:
        return _ZERO
    return simplify_basic(nd.add(*terms))
