"""Terms over an inverse semigroup: products, inversion and named constants.

A term is built from variables x1..xn and element constants with the binary
product and unary inversion.  flatten() rewrites any term into an equivalent
product of literals by pushing inversion inward with (st)' = t's' and x'' = x,
which is valid in every inverse semigroup; constants swallow their inversions
and adjacent constants fuse through the Cayley table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product as _cartesian

import numpy as np

DEFAULT_MAX_CELLS = 5_000_000


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    element: int


@dataclass(frozen=True)
class Product:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inverse:
    inner: "Term"


Term = Var | Const | Product | Inverse


@dataclass(frozen=True)
class VarLit:
    index: int
    sign: int  # +1 or -1

    def __post_init__(self) -> None:
        if self.sign not in (+1, -1):
            raise ValueError(f"literal sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class ConstLit:
    element: int


Literal = VarLit | ConstLit


@dataclass(frozen=True)
class FlatTerm:
    """Nonempty product of literals with no two adjacent constants."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        if not self.literals:
            raise ValueError("a flat term needs at least one literal")
        for a, b in zip(self.literals, self.literals[1:]):
            if isinstance(a, ConstLit) and isinstance(b, ConstLit):
                raise ValueError("adjacent constants must be fused")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


_IDENT = re.compile(r"[A-Za-z0-9_]+")
_VARIABLE = re.compile(r"^x([0-9]+)$")
_INT = re.compile(r"-?[0-9]+")


def _lex(text: str):
    """Tokens: identifiers, '*', parentheses, and '^' with its attached integer."""
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "*()":
            tokens.append((ch, None, pos))
            pos += 1
            continue
        if ch == "^":
            m = _INT.match(text, pos + 1)
            if not m:
                raise ParseError("expected integer exponent after '^'", pos)
            tokens.append(("^", int(m.group()), pos))
            pos = m.end()
            continue
        m = _IDENT.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {ch!r}", pos)
        tokens.append(("ident", m.group(), pos))
        pos = m.end()
    return tokens


def parse(text: str, arity: int, semigroup) -> Term:
    """Parse the surface syntax into a Term.

    Juxtaposition or '*' multiplies, '^k' (k a nonzero integer) repeats a
    variable, constant or parenthesized subterm, with negative exponents
    expanded through inversion at parse time.  Identifiers of the form
    x1..x<arity> are variables; any other identifier must name an element of
    the semigroup.  An element that happens to be named like a variable is
    shadowed and unreachable in this syntax.
    """
    tokens = _lex(text)
    if not tokens:
        raise ParseError("empty input is not a term", 0)
    term, at = _parse_product(tokens, 0, arity, semigroup)
    if at != len(tokens):
        raise ParseError("unexpected trailing input", tokens[at][2])
    return term


def _parse_product(tokens, at, arity, semigroup):
    factors = []
    after_star = False
    while at < len(tokens):
        kind, value, pos = tokens[at]
        if kind == ")":
            break
        if kind == "*":
            if not factors or after_star:
                raise ParseError("'*' needs operands on both sides", pos)
            after_star = True
            at += 1
            continue
        factor, at = _parse_factor(tokens, at, arity, semigroup)
        factors.append(factor)
        after_star = False
    if after_star:
        raise ParseError("'*' needs operands on both sides", tokens[at - 1][2])
    if not factors:
        pos = tokens[at][2] if at < len(tokens) else 0
        raise ParseError("empty product is not a term", pos)
    term = factors[0]
    for f in factors[1:]:
        term = Product(term, f)
    return term, at


def _parse_factor(tokens, at, arity, semigroup):
    kind, value, pos = tokens[at]
    if kind == "(":
        inner, at = _parse_product(tokens, at + 1, arity, semigroup)
        if at >= len(tokens) or tokens[at][0] != ")":
            raise ParseError("unclosed parenthesis", pos)
        atom = inner
        at += 1
    elif kind == "ident":
        atom = _resolve(value, arity, semigroup, pos)
        at += 1
    else:
        raise ParseError(f"unexpected token {kind!r}", pos)
    if at < len(tokens) and tokens[at][0] == "^":
        k = tokens[at][1]
        if k == 0:
            raise ParseError("exponent must be nonzero", tokens[at][2])
        base = atom if k > 0 else Inverse(atom)
        term = base
        for _ in range(abs(k) - 1):
            term = Product(term, base)
        return term, at + 1
    return atom, at


def _resolve(name, arity, semigroup, pos):
    m = _VARIABLE.match(name)
    if m:
        idx = int(m.group(1))
        if not 1 <= idx <= arity:
            raise ParseError(f"variable {name} out of range for arity {arity}", pos)
        return Var(idx - 1)
    try:
        return Const(semigroup.names.index(name))
    except ValueError:
        raise ParseError(f"unknown identifier {name!r}", pos) from None


def flatten(semigroup, term: Term) -> FlatTerm:
    """Equivalent product of literals; evaluation is preserved at every point."""
    lits: list[Literal] = []
    _flatten_into(semigroup, term, +1, lits)
    fused: list[Literal] = []
    for lit in lits:
        if (
            fused
            and isinstance(lit, ConstLit)
            and isinstance(fused[-1], ConstLit)
        ):
            fused[-1] = ConstLit(semigroup.table[fused[-1].element][lit.element])
        else:
            fused.append(lit)
    return FlatTerm(tuple(fused))


def _flatten_into(semigroup, term, sign, out):
    if isinstance(term, Var):
        out.append(VarLit(term.index, sign))
    elif isinstance(term, Const):
        elem = term.element if sign > 0 else semigroup.inv[term.element]
        out.append(ConstLit(elem))
    elif isinstance(term, Inverse):
        _flatten_into(semigroup, term.inner, -sign, out)
    elif isinstance(term, Product):
        if sign > 0:
            _flatten_into(semigroup, term.left, sign, out)
            _flatten_into(semigroup, term.right, sign, out)
        else:
            _flatten_into(semigroup, term.right, sign, out)
            _flatten_into(semigroup, term.left, sign, out)
    else:
        raise TypeError(f"not a term: {term!r}")


def embed(flat: FlatTerm) -> Term:
    """A Term whose flattening is the given flat term (left-associated product)."""
    parts: list[Term] = []
    for lit in flat.literals:
        if isinstance(lit, ConstLit):
            parts.append(Const(lit.element))
        elif lit.sign > 0:
            parts.append(Var(lit.index))
        else:
            parts.append(Inverse(Var(lit.index)))
    term = parts[0]
    for p in parts[1:]:
        term = Product(term, p)
    return term


def variables_of(term) -> frozenset[int]:
    if isinstance(term, FlatTerm):
        return frozenset(
            lit.index for lit in term.literals if isinstance(lit, VarLit)
        )
    if isinstance(term, Var):
        return frozenset((term.index,))
    if isinstance(term, Const):
        return frozenset()
    if isinstance(term, Inverse):
        return variables_of(term.inner)
    if isinstance(term, Product):
        return variables_of(term.left) | variables_of(term.right)
    raise TypeError(f"not a term: {term!r}")


def evaluate(semigroup, term, point) -> int:
    """Value of a Term or FlatTerm at a point (tuple of element indices)."""
    if isinstance(term, FlatTerm):
        table = semigroup.table
        inv = semigroup.inv
        acc = None
        for lit in term.literals:
            if isinstance(lit, ConstLit):
                v = lit.element
            else:
                if lit.index >= len(point):
                    raise ValueError(
                        f"term uses x{lit.index + 1} but the point has arity {len(point)}"
                    )
                v = point[lit.index]
                if lit.sign < 0:
                    v = inv[v]
            acc = v if acc is None else table[acc][v]
        return acc
    return _evaluate_ast(semigroup, term, point)


def _evaluate_ast(semigroup, term, point):
    if isinstance(term, Var):
        if term.index >= len(point):
            raise ValueError(
                f"term uses x{term.index + 1} but the point has arity {len(point)}"
            )
        return point[term.index]
    if isinstance(term, Const):
        return term.element
    if isinstance(term, Inverse):
        return semigroup.inv[_evaluate_ast(semigroup, term.inner, point)]
    if isinstance(term, Product):
        return semigroup.table[
            _evaluate_ast(semigroup, term.left, point)
        ][_evaluate_ast(semigroup, term.right, point)]
    raise TypeError(f"not a term: {term!r}")


def term_text(semigroup, term) -> str:
    """Canonical flattened rendering, e.g. 'e x2^-1 f x1'."""
    flat = term if isinstance(term, FlatTerm) else flatten(semigroup, term)
    parts = []
    for lit in flat.literals:
        if isinstance(lit, ConstLit):
            parts.append(semigroup.names[lit.element])
        elif lit.sign > 0:
            parts.append(f"x{lit.index + 1}")
        else:
            parts.append(f"x{lit.index + 1}^-1")
    return " ".join(parts)


def all_points(order: int, arity: int):
    return _cartesian(range(order), repeat=arity)


def point_index(order: int, point) -> int:
    idx = 0
    for c in point:
        idx = idx * order + c
    return idx


@dataclass(frozen=True)
class TermFunction:
    """An n-ary function table realized by at least one term (its witness)."""

    arity: int
    values: tuple[int, ...]
    witness: FlatTerm = field(compare=False)


@dataclass(frozen=True)
class CloneResult:
    functions: tuple[TermFunction, ...]
    complete: bool
    order: int
    arity: int

    @cached_property
    def value_matrix(self) -> np.ndarray:
        """Row k = value table of functions[k]; dtype int16 (orders are small)."""
        if not self.functions:
            return np.empty((0, self.order ** self.arity), dtype=np.int16)
        return np.array([f.values for f in self.functions], dtype=np.int16)

    @cached_property
    def tables(self) -> frozenset[tuple[int, ...]]:
        return frozenset(f.values for f in self.functions)


def _append_literal(semigroup, word, lit):
    if isinstance(lit, ConstLit) and isinstance(word[-1], ConstLit):
        fused = ConstLit(semigroup.table[word[-1].element][lit.element])
        return word[:-1] + (fused,)
    return word + (lit,)


@lru_cache(maxsize=64)
def clone_closure(semigroup, arity: int, max_cells: int = DEFAULT_MAX_CELLS) -> CloneResult:
    """All n-ary term functions, as the least set of value tables containing the
    projections and the constants and closed under pointwise product and
    pointwise inversion.

    Computed as an orbit: every flattened term is a product of the literals
    x_i, x_i^-1 and the constants, and that generator set is closed under
    inversion, so right-multiplying reachable tables by generators reaches the
    whole clone.  The worklist stops once the tables would exceed max_cells
    total cells; the result is then flagged incomplete and callers must treat
    downstream answers as unknown rather than negative.
    """
    if arity < 1:
        raise ValueError("arity must be at least 1")
    order = semigroup.order
    cells = order ** arity
    limit = max_cells // cells
    table = semigroup.table
    inv = semigroup.inv
    points = list(all_points(order, arity))

    generators: list[tuple[tuple[int, ...], Literal]] = []
    for i in range(arity):
        generators.append((tuple(p[i] for p in points), VarLit(i, +1)))
        generators.append((tuple(inv[p[i]] for p in points), VarLit(i, -1)))
    for c in range(order):
        generators.append(((c,) * cells, ConstLit(c)))

    seen: dict[tuple[int, ...], int] = {}
    values: list[tuple[int, ...]] = []
    words: list[tuple[Literal, ...]] = []
    complete = True

    def try_add(vals, word) -> None:
        nonlocal complete
        if vals in seen:
            return
        if len(values) >= limit:
            complete = False
            return
        seen[vals] = len(values)
        values.append(vals)
        words.append(word)

    for gvals, glit in generators:
        try_add(gvals, (glit,))
    i = 0
    while i < len(values) and complete:
        fv = values[i]
        fw = words[i]
        for gvals, glit in generators:
            prod = tuple(table[a][b] for a, b in zip(fv, gvals))
            if prod not in seen:
                try_add(prod, _append_literal(semigroup, fw, glit))
        i += 1

    functions = tuple(
        TermFunction(arity, v, FlatTerm(w)) for v, w in zip(values, words)
    )
    return CloneResult(functions, complete, order, arity)
