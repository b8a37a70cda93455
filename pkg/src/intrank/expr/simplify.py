"""Weak, terminating expression rewrites: constant folding and identities.

This is deliberately not a general simplifier.  It applies one fixed rewrite
set bottom-up: exact constant folding, identity/annihilator elements (x+0,
x*1, x*0, x^1, x^0), flattening of nested sums/products refolded in a
canonical left-associated order, and nothing else.  The map is idempotent.
"""

from __future__ import annotations

from fractions import Fraction

from . import nodes as nd
from .nodes import Expr, integer, rational

_ZERO = integer(0)
_ONE = integer(1)

# never fold a ^ b for |b| beyond this; keeps folded literals small
_MAX_FOLD_EXP = 64


def simplify_basic(e: Expr) -> Expr:
    memo = {}

    def walk(n):
        r = memo.get(id(n))
        if r is not None:
            return r
        if n.is_leaf:
            r = n
        else:
            kids = [walk(c) for c in n.children]
            r = _rebuild(n.op, kids)
        memo[id(n)] = r
        return r

    return walk(e)


def _rebuild(op, kids):
    if op == "+" or op == "*":
        return _chain(op, kids)
    if op not in nd.BINARY_OPS:
        # function application over already-simplified arguments
        return nd.apply(op, *kids)
    a, b = kids
    if op == "-":
        if a.is_number and b.is_number:
            return rational(a.as_fraction() - b.as_fraction())
        if b is _ZERO:
            return a
        if a is _ZERO:
            return _chain("*", [integer(-1), b])
        return nd.binop("-", a, b)
    if op == "/":
        if b.is_number and b.as_fraction() != 0:
            if a.is_number:
                return rational(a.as_fraction() / b.as_fraction())
            if b is _ONE:
                return a
        if a is _ZERO and not (b.is_number and b.as_fraction() == 0):
            return _ZERO
        return nd.binop("/", a, b)
    if op == "^":
        if b is _ONE:
            return a
        if b.op is nd.INT and b.value == 0:
            return _ONE
        if a is _ONE:
            return _ONE
        if a is _ZERO and b.op is nd.INT and b.value > 0:
            return _ZERO
        if (a.is_number and b.op is nd.INT and abs(b.value) <= _MAX_FOLD_EXP
                and not (a.as_fraction() == 0 and b.value < 0)):
            return rational(a.as_fraction() ** b.value)
    return nd.binop(op, a, b)


def _chain(op, kids):
    """Flatten same-operator children, fold constants, sort, refold left."""
    terms = []
    stack = list(reversed(kids))
    while stack:
        t = stack.pop()
        if t.op == op:
            stack.append(t.children[1])
            stack.append(t.children[0])
        else:
            terms.append(t)

    acc = Fraction(0 if op == "+" else 1)
    rest = []
    for t in terms:
        if t.is_number:
            acc = acc + t.as_fraction() if op == "+" else acc * t.as_fraction()
        else:
            rest.append(t)

    if op == "*" and acc == 0:
        return _ZERO
    identity = Fraction(0) if op == "+" else Fraction(1)
    if acc != identity or not rest:
        rest.append(rational(acc))
    rest.sort(key=Expr.sort_key)

    out = rest[0]
    for t in rest[1:]:
        out = nd.binop(op, out, t)
    return out


def is_zero(e: Expr) -> bool:
    e = simplify_basic(e)
    return e.is_number and e.as_fraction() == 0


def has_zero_denominator(e: Expr) -> bool:
    """True when the simplified tree contains a division by literal zero."""
    s = simplify_basic(e)
    for n in nd.iter_unique(s):
        if n.op == "/" and n.children[1].is_number \
                and n.children[1].as_fraction() == 0:
            return True
    return False


def as_single_fraction(e: Expr):
    """Combine nested fractions into one (numerator, denominator) pair.

    No cancellation is attempted; non-arithmetic nodes are treated as atoms.
    """
    memo = {}

    def walk(n):
        r = memo.get(id(n))
        if r is not None:
            return r
        if n.op == "+" or n.op == "-":
            (na, da), (nb, db) = walk(n.children[0]), walk(n.children[1])
            num = nd.binop(n.op, nd.mul(na, db), nd.mul(nb, da))
            r = (num, nd.mul(da, db))
        elif n.op == "*":
            (na, da), (nb, db) = walk(n.children[0]), walk(n.children[1])
            r = (nd.mul(na, nb), nd.mul(da, db))
        elif n.op == "/":
            (na, da), (nb, db) = walk(n.children[0]), walk(n.children[1])
            r = (nd.mul(na, db), nd.mul(da, nb))
        elif n.op == "^" and n.children[1].op is nd.INT:
            k = n.children[1].value
            na, da = walk(n.children[0])
            if k >= 0:
                r = (nd.pow_(na, k), nd.pow_(da, k))
            else:
                r = (nd.pow_(da, -k), nd.pow_(na, -k))
        elif n.op is nd.RAT:
            f = n.value
            r = (integer(f.numerator), integer(f.denominator))
        else:
            r = (n, _ONE)
        memo[id(n)] = r
        return r

    num, den = walk(e)
    return simplify_basic(num), simplify_basic(den)


def normalise(e: Expr) -> Expr:
    """Put over a common denominator, then apply the basic rewrites."""
    num, den = as_single_fraction(e)
    if den is _ONE:
        return num
    return simplify_basic(nd.div(num, den))
