"""Token encoding for expressions: integer tiers, [CLS], vocab, dedup.

Integers are encoded as a sign flag (INT+/INT-) followed by one magnitude
token: 0, 1 and 2 keep their own tokens, other single digits become CONST,
two-digit numbers CONST2, and everything larger CONST3.  Decoding is lossy
by design; the documented sentinel values are CONST=3, CONST2=10, CONST3=100.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .expr import nodes as nd
from .expr.registry import default_registry
from .expr.simplify import has_zero_denominator, simplify_basic

CLS, PAD, UNK = "[CLS]", "[PAD]", "[UNK]"
INT_POS, INT_NEG = "INT+", "INT-"
RESERVED = (CLS, PAD, UNK, INT_POS, INT_NEG,
            "0", "1", "2", "CONST", "CONST2", "CONST3")

TIER_SENTINELS = {"CONST": 3, "CONST2": 10, "CONST3": 100}


class TooLong(Exception):
    pass


class StillSingular(Exception):
    """Symbolic-coefficient substitution kept producing a zero denominator."""


def encode_int(n: int) -> list:
    """Two tokens, always: sign flag then tier magnitude."""
    sign = INT_POS if n >= 0 else INT_NEG
    m = abs(n)
    if m <= 2:
        return [sign, str(m)]
    if m <= 9:
        return [sign, "CONST"]
    if m <= 99:
        return [sign, "CONST2"]
    return [sign, "CONST3"]


def expr_tokens(e: nd.Expr) -> list:
    """Tier-encoded prefix stream, without the [CLS] marker."""
    out = []
    stack = [e]
    while stack:
        n = stack.pop()
        if n.op is nd.INT:
            out.extend(encode_int(n.value))
        elif n.op is nd.RAT:
            out.append("/")
            out.extend(encode_int(n.value.numerator))
            out.extend(encode_int(n.value.denominator))
        elif n.is_leaf:
            out.append(n.value)
        else:
            out.append(n.op)
            stack.extend(reversed(n.children))
    return out


def decode_tokens(tokens, registry=None, variables=("x",)) -> nd.Expr:
    """Rebuild a tier-normalized expression (sentinel integer values)."""
    registry = registry or default_registry()
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("truncated token stream")
        tok = tokens[pos]
        pos += 1
        if tok == INT_POS or tok == INT_NEG:
            mag = tokens[pos]
            pos += 1
            value = TIER_SENTINELS.get(mag, None)
            if value is None:
                value = int(mag)
            return nd.integer(value if tok == INT_POS else -value)
        if tok in nd.BINARY_OPS:
            return nd.binop(tok, parse(), parse())
        arity = nd.function_arity(tok)
        if arity is not None and tok in registry:
            return nd.apply(tok, *[parse() for _ in range(arity)])
        if tok in variables:
            return nd.var(tok)
        if tok in registry.constants:
            return nd.const(tok)
        raise ValueError(f"cannot decode token {tok!r}")

    expr = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens")
    return expr


@dataclass(frozen=True)
class Vocab:
    id_of: dict
    token_of: tuple

    @property
    def size(self):
        return len(self.token_of)

    def encode(self, token):
        return self.id_of.get(token, self.id_of[UNK])

    def decode(self, ids):
        return [self.token_of[i] for i in ids]

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.id_of, fh, indent=0, sort_keys=False)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            id_of = json.load(fh)
        tokens = [None] * len(id_of)
        for tok, i in id_of.items():
            tokens[i] = tok
        return cls(id_of=id_of, token_of=tuple(tokens))


def build_vocab(corpora) -> Vocab:
    """Reserved tokens first, then every seen symbol in lexicographic order."""
    seen = set()
    for stream in corpora:
        seen.update(stream)
    extra = sorted(seen - set(RESERVED))
    tokens = list(RESERVED) + extra
    return Vocab(id_of={t: i for i, t in enumerate(tokens)},
                 token_of=tuple(tokens))


@dataclass
class TokenizedExpr:
    ids: list
    n_unknown: int = 0
    source: object = None

    def __len__(self):
        return len(self.ids)


def tokenize(e: nd.Expr, vocab: Vocab, max_len=256) -> TokenizedExpr:
    """[CLS] + tier-encoded prefix stream, mapped to vocabulary ids."""
    stream = [CLS] + expr_tokens(e)
    if len(stream) > max_len:
        raise TooLong(f"{len(stream)} tokens > max_len {max_len}")
    unk = vocab.id_of[UNK]
    ids = [vocab.encode(t) for t in stream]
    return TokenizedExpr(ids=ids, n_unknown=sum(1 for i in ids if i == unk),
                         source=e)


def dedup_key(e: nd.Expr):
    """Tier-normalized, canonically-ordered prefix form of an expression."""
    return tuple(expr_tokens(simplify_basic(e)))


def dedup(items, expr_of=None):
    """Keep the first occurrence of each tier-normalized integrand."""
    expr_of = expr_of or (lambda it: it)
    seen = set()
    out = []
    for it in items:
        key = dedup_key(expr_of(it))
        if key not in seen:
            seen.add(key)
            out.append(it)
    return out


_SENTINEL_PRIMARY = 100   # CONST3
_SENTINEL_FALLBACK = 10   # CONST2


def normalize_symbolic_coeffs(e: nd.Expr) -> nd.Expr:
    """Replace free symbolic constants with tier sentinels.

    All constants first map to the CONST3 sentinel; if that leaves a
    structurally-zero denominator the substitution is varied between the
    CONST3 and CONST2 sentinels per constant.
    """
    registry = default_registry()
    names = [c for c in nd.constants_of(e) if c not in registry.constants]
    if not names:
        return e
    attempts = [
        {n: nd.integer(_SENTINEL_PRIMARY) for n in names},
        {n: nd.integer(_SENTINEL_PRIMARY if i % 2 == 0 else _SENTINEL_FALLBACK)
         for i, n in enumerate(names)},
    ]
    for mapping in attempts:
        candidate = nd.substitute_consts(e, mapping)
        if not has_zero_denominator(candidate):
            return candidate
    raise StillSingular(f"constants {names} produce a zero denominator "
                        "under both sentinel substitutions")
