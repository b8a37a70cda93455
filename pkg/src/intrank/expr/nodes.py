"""Immutable, hash-consed symbolic expression trees.

Every expression is built through the module-level constructors, which
intern structurally-identical nodes in a process-wide table.  Identical
subexpressions are therefore shared (a DAG), which makes structural
equality an identity check and makes the DAG-size statistic well defined.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

BINARY_OPS = ("+", "-", "*", "/", "^")

# leaf kinds
INT = "int"
RAT = "rat"
VAR = "var"
CONST = "const"

_LEAF_OPS = frozenset((INT, RAT, VAR, CONST))

# function name -> arity, populated by the registry before use
_KNOWN_ARITIES: dict[str, int] = {}

_INTERN: dict = {}
_INTERN_LOCK = threading.Lock()


def declare_function(name, arity):
    """Make ``name`` usable as a function node with a fixed arity."""
    if name in _KNOWN_ARITIES and _KNOWN_ARITIES[name] != arity:
        raise ValueError(f"function {name!r} already declared with arity "
                         f"{_KNOWN_ARITIES[name]}, not {arity}")
    _KNOWN_ARITIES[name] = arity


def function_arity(name):
    return _KNOWN_ARITIES.get(name)


class Expr:
    """A node: binary operator, registered function, or leaf.

    Do not instantiate directly; use the constructors below so nodes are
    interned.  Equality falls back to a shallow structural check, but for
    interned nodes ``a == b`` is effectively ``a is b``.
    """

    __slots__ = ("op", "value", "children", "tree_size", "depth",
                 "_hash", "_pstr")

    def __init__(self, op, value, children, h, tree_size, depth):
        self.op = op
        self.value = value
        self.children = children
        self._hash = h
        self.tree_size = tree_size
        self.depth = depth
        self._pstr = None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Expr) and self.op == other.op
                and self.value == other.value
                and self.children == other.children)

    def __ne__(self, other):
        return not self.__eq__(other)

    @property
    def is_leaf(self):
        return not self.children

    @property
    def is_number(self):
        return self.op is INT or self.op is RAT

    def as_fraction(self):
        if self.op is INT:
            return Fraction(self.value)
        if self.op is RAT:
            return self.value
        raise ValueError(f"not a numeric leaf: {self!r}")

    def sort_key(self):
        """Whitespace-joined prefix form, cached; total deterministic order."""
        if self._pstr is None:
            self._pstr = " ".join(prefix_tokens(self))
        return self._pstr

    def __repr__(self):
        return f"Expr({self.sort_key()})"


def _make(op, value, children):
    key = (op, value, children)
    node = _INTERN.get(key)
    if node is not None:
        return node
    if children:
        tree_size = 1 + sum(c.tree_size for c in children)
        depth = 1 + max(c.depth for c in children)
    else:
        tree_size = 1
        depth = 0
    node = Expr(op, value, children, hash(key), tree_size, depth)
    with _INTERN_LOCK:
        return _INTERN.setdefault(key, node)


def integer(n) -> Expr:
    return _make(INT, int(n), ())


def rational(p, q=None) -> Expr:
    """Exact rational leaf; collapses to an integer leaf when integral."""
    f = Fraction(p, q) if q is not None else Fraction(p)
    if f.denominator == 1:
        return integer(f.numerator)
    return _make(RAT, f, ())


def number(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, int):
        return integer(x)
    if isinstance(x, Fraction):
        return rational(x)
    raise TypeError(f"cannot make a numeric leaf from {type(x).__name__}")


def var(name) -> Expr:
    return _make(VAR, name, ())


def const(name) -> Expr:
    return _make(CONST, name, ())


def binop(op, a, b) -> Expr:
    if op not in BINARY_OPS:
        raise ValueError(f"unknown binary operator {op!r}")
    return _make(op, None, (number(a), number(b)))


def add(*terms) -> Expr:
    """Left-folded binary sum; n-ary sums never appear as nodes."""
    return _fold("+", terms)


def sub(a, b) -> Expr:
    return binop("-", a, b)


def mul(*factors) -> Expr:
    return _fold("*", factors)


def div(a, b) -> Expr:
    return binop("/", a, b)


def pow_(a, b) -> Expr:
    return binop("^", a, b)


def neg(a) -> Expr:
    return mul(integer(-1), a)


def _fold(op, terms):
    if not terms:
        raise ValueError(f"{op!r} needs at least one operand")
    acc = number(terms[0])
    for t in terms[1:]:
        acc = _make(op, None, (acc, number(t)))
    return acc


def apply(name, *args) -> Expr:
    """Function application; the name must be declared (see registry)."""
    arity = _KNOWN_ARITIES.get(name)
    if arity is None:
        raise ValueError(f"undeclared function {name!r}")
    if len(args) != arity:
        raise ValueError(f"{name} expects {arity} argument(s), got {len(args)}")
    return _make(name, None, tuple(number(a) for a in args))


def leaf_token(e: Expr) -> str:
    if e.op is INT:
        return str(e.value)
    if e.op is RAT:
        return f"{e.value.numerator}/{e.value.denominator}"
    return e.value  # VAR / CONST carry their name


def prefix_tokens(e: Expr):
    """Pre-order token stream; length equals tree_size."""
    out = []
    stack = [e]
    while stack:
        n = stack.pop()
        if n.is_leaf:
            out.append(leaf_token(n))
        else:
            out.append(n.op)
            stack.extend(reversed(n.children))
    return out


def iter_unique(e: Expr):
    """Each distinct subexpression once, children before parents."""
    seen = set()
    stack = [(e, False)]
    while stack:
        n, expanded = stack.pop()
        if id(n) in seen:
            continue
        if expanded or n.is_leaf:
            seen.add(id(n))
            yield n
        else:
            stack.append((n, True))
            for c in n.children:
                if id(c) not in seen:
                    stack.append((c, False))


@dataclass(frozen=True)
class DagStats:
    dag_size: int
    tree_size: int
    depth: int


def dag_stats(e: Expr) -> DagStats:
    """Node counts under structural sharing; dag_size <= tree_size."""
    dag = sum(1 for _ in iter_unique(e))
    return DagStats(dag_size=dag, tree_size=e.tree_size, depth=e.depth)


def contains_var(e: Expr, name) -> bool:
    for n in iter_unique(e):
        if n.op is VAR and n.value == name:
            return True
    return False


def variables_of(e: Expr):
    return sorted({n.value for n in iter_unique(e) if n.op is VAR})


def constants_of(e: Expr):
    return sorted({n.value for n in iter_unique(e) if n.op is CONST})


def functions_of(e: Expr):
    return sorted({n.op for n in iter_unique(e)
                   if n.children and n.op not in BINARY_OPS})


def substitute(e: Expr, v, replacement: Expr) -> Expr:
    """Replace every occurrence of variable ``v``; no simplification."""
    name = v.value if isinstance(v, Expr) else v
    return substitute_many(e, {name: replacement})


def substitute_many(e: Expr, mapping, kind=VAR) -> Expr:
    """Replace leaves of the given kind whose name is in ``mapping``."""
    memo = {}

    def walk(n):
        r = memo.get(id(n))
        if r is not None:
            return r
        if n.is_leaf:
            if n.op is kind and n.value in mapping:
                r = mapping[n.value]
            else:
                r = n
        else:
            kids = tuple(walk(c) for c in n.children)
            r = n if kids == n.children else _make(n.op, n.value, kids)
        memo[id(n)] = r
        return r

    return walk(e)


def substitute_consts(e: Expr, mapping) -> Expr:
    return substitute_many(e, mapping, kind=CONST)
