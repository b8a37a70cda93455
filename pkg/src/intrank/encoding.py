"""Positional encodings: sinusoidal for sequences, ancestry one-hots for trees.

A tree position vector has length 2*max_depth and is read bottom-up: the
first pair says whether the node is a left or right child of its parent,
the next pair locates the parent under the grandparent, and so on.  The
root is all zeros.  Nodes deeper than max_depth keep their nearest
ancestors and drop root-side pairs.
"""

from __future__ import annotations

import numpy as np

from .expr import nodes as nd
from .tokens import CLS, encode_int

LEFT, RIGHT = 0, 1


class OddDim(Exception):
    pass


def side_vector(sides, max_depth):
    """One-hot pair per ancestor step, nearest first; zero-padded."""
    vec = np.zeros(2 * max_depth, dtype=np.float64)
    for i, s in enumerate(sides[:max_depth]):
        vec[2 * i + s] = 1.0
    return vec


def tree_positions(e: nd.Expr, max_depth=32):
    """Prefix-ordered (node, position vector) pairs for the raw tree.

    Unary function arguments sit in the left slot.  Because identical
    subexpressions are shared, the same node object may appear once per
    occurrence, each with its own position.
    """
    out = []

    def walk(n, sides):
        out.append((n, side_vector(sides, max_depth)))
        for i, c in enumerate(n.children):
            walk(c, [RIGHT if i == 1 else LEFT] + sides)

    walk(e, [])
    return out


def _node_view(n):
    """Tokens and children, with rational leaves presented as divisions."""
    if n.op is nd.INT:
        return tuple(encode_int(n.value)), ()
    if n.op is nd.RAT:
        return ("/",), (nd.integer(n.value.numerator),
                        nd.integer(n.value.denominator))
    if n.is_leaf:
        return (n.value,), ()
    return (n.op,), n.children


def binarize_and_index(e: nd.Expr, max_depth=32):
    """Model-facing traversal: (node tokens, position vector) pairs.

    [CLS] acts as a virtual root with the expression as its left child, so
    position vectors match the plain tree shifted one level down.  Integer
    leaves carry their two tier tokens as a single node.
    """
    entries = [((CLS,), side_vector([], max_depth))]

    def walk(n, sides):
        tokens, children = _node_view(n)
        entries.append((tokens, side_vector(sides, max_depth)))
        for i, c in enumerate(children):
            walk(c, [RIGHT if i == 1 else LEFT] + sides)

    walk(e, [LEFT])
    return entries


def seq_positions(length, dim):
    """Sinusoidal position table; row p, pair 2i at frequency 10000^(-2i/dim)."""
    if dim % 2 != 0:
        raise OddDim(f"model dimension must be even, got {dim}")
    pos = np.arange(length, dtype=np.float64)[:, None]
    i = np.arange(0, dim, 2, dtype=np.float64)[None, :]
    angle = pos / np.power(10000.0, i / dim)
    table = np.zeros((length, dim), dtype=np.float64)
    table[:, 0::2] = np.sin(angle)
    table[:, 1::2] = np.cos(angle)
    return table
