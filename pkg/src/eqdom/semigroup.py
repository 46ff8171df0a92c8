"""Finite inverse semigroups presented by Cayley tables.

The table convention is table[i][j] = (element i) * (element j): the row
element is the left factor.  validate() is the only constructor; everything
downstream may assume the inverse-semigroup axioms hold.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .partialmap import GroundSet, PartialInjection, compose, inverse as pinv


class SemigroupError(ValueError):
    """Base class for table validation failures."""


class NonAssociativeError(SemigroupError):
    def __init__(self, names, triple):
        i, j, k = triple
        self.triple = triple
        super().__init__(
            f"not associative at ({names[i]} {names[j]}) {names[k]} != "
            f"{names[i]} ({names[j]} {names[k]})"
        )


class NotInverseError(SemigroupError):
    def __init__(self, names, element, candidates):
        self.element = element
        self.candidates = tuple(candidates)
        count = len(self.candidates)
        super().__init__(
            f"element {names[element]} has {count} inverse candidate(s), expected exactly 1"
        )


class IdempotentsDontCommuteError(SemigroupError):
    def __init__(self, names, pair):
        self.pair = pair
        e, f = pair
        super().__init__(f"idempotents do not commute: {names[e]} {names[f]} != {names[f]} {names[e]}")


class TableFormatError(ValueError):
    """Raised for malformed Cayley-table text."""


class EmbeddingError(RuntimeError):
    """Raised if the partial-injection embedding fails its own faithfulness check."""


# Characters that would collide with the table file format, point tuples,
# equations, or comments if they appeared inside an element name.
_FORBIDDEN_NAME_CHARS = set(" \t\r\n,():=#")


@dataclass(frozen=True)
class FiniteInverseSemigroup:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    idempotents: frozenset[int]
    zero: int | None
    identity: int | None
    label: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SemigroupError(f"unknown element name: {name!r}") from None

    def is_idempotent(self, s: int) -> bool:
        return s in self.idempotents

    def __repr__(self) -> str:
        tag = self.label or "anonymous"
        return f"<FiniteInverseSemigroup {tag} order={self.order}>"


def validate(names, table, label: str = "") -> FiniteInverseSemigroup:
    """Check the inverse-semigroup axioms on a raw Cayley table.

    Raises NonAssociativeError, NotInverseError or IdempotentsDontCommuteError
    with a concrete witness.  The commuting-idempotents check cannot fire once
    uniqueness of inverses holds, but stays in as a self-check, as do the
    remaining classical properties (ss' idempotent, s e s' idempotent, the
    anti-homomorphism law for inversion, and the single-idempotent group case).
    """
    names = tuple(names)
    n = len(names)
    if n == 0:
        raise SemigroupError("empty element list")
    if len(set(names)) != n:
        raise SemigroupError("element names are not pairwise distinct")
    for nm in names:
        if not nm or any(c in _FORBIDDEN_NAME_CHARS for c in nm) or nm == "-":
            raise SemigroupError(f"element name not usable as a token: {nm!r}")

    rows = tuple(tuple(row) for row in table)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise SemigroupError(f"table must be {n}x{n}")
    for row in rows:
        for entry in row:
            if not isinstance(entry, int) or not 0 <= entry < n:
                raise SemigroupError(f"table entry {entry!r} out of range")

    for i in range(n):
        for j in range(n):
            ij = rows[i][j]
            for k in range(n):
                if rows[ij][k] != rows[i][rows[j][k]]:
                    raise NonAssociativeError(names, (i, j, k))

    inv_list = []
    for s in range(n):
        candidates = [
            t for t in range(n)
            if rows[rows[s][t]][s] == s and rows[rows[t][s]][t] == t
        ]
        if len(candidates) != 1:
            raise NotInverseError(names, s, candidates)
        inv_list.append(candidates[0])
    inv = tuple(inv_list)

    idempotents = frozenset(e for e in range(n) if rows[e][e] == e)
    for e in idempotents:
        for f in idempotents:
            if rows[e][f] != rows[f][e]:
                raise IdempotentsDontCommuteError(names, (e, f))

    for s in range(n):
        ss = rows[s][inv[s]]
        if ss not in idempotents:
            raise SemigroupError(f"{names[s]} {names[inv[s]]} is not idempotent")
        for e in idempotents:
            if rows[rows[s][e]][inv[s]] not in idempotents:
                raise SemigroupError(
                    f"conjugate {names[s]} {names[e]} {names[inv[s]]} is not idempotent"
                )
    for s in range(n):
        for t in range(n):
            if inv[rows[s][t]] != rows[inv[t]][inv[s]]:
                raise SemigroupError(
                    f"inversion is not an anti-homomorphism at ({names[s]}, {names[t]})"
                )

    if len(idempotents) == 1:
        (e,) = idempotents
        for s in range(n):
            if rows[e][s] != s or rows[s][e] != s:
                raise SemigroupError("single idempotent is not a two-sided identity")
            if rows[s][inv[s]] != e or rows[inv[s]][s] != e:
                raise SemigroupError("single-idempotent semigroup is not a group")

    zero = None
    for z in range(n):
        if all(rows[z][s] == z and rows[s][z] == z for s in range(n)):
            zero = z
            break
    identity = None
    for e in range(n):
        if all(rows[e][s] == s and rows[s][e] == s for s in range(n)):
            identity = e
            break

    return FiniteInverseSemigroup(names, rows, inv, idempotents, zero, identity, label)


def is_group(sg: FiniteInverseSemigroup) -> bool:
    """An inverse semigroup is a group exactly when it has a single idempotent."""
    return len(sg.idempotents) == 1


@dataclass(frozen=True)
class IdempotentOrder:
    """The natural partial order e <= f iff ef = e, restricted to idempotents."""

    elements: tuple[int, ...]
    pairs: frozenset[tuple[int, int]]

    def leq(self, e: int, f: int) -> bool:
        return (e, f) in self.pairs

    def is_chain(self) -> bool:
        return all(
            self.leq(e, f) or self.leq(f, e)
            for e in self.elements for f in self.elements
        )

    def minimal(self) -> tuple[int, ...]:
        return tuple(
            e for e in self.elements
            if not any(f != e and self.leq(f, e) for f in self.elements)
        )

    def maximal(self) -> tuple[int, ...]:
        return tuple(
            e for e in self.elements
            if not any(f != e and self.leq(e, f) for f in self.elements)
        )

    def covering_pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs (low, high) with nothing strictly between, for Hasse output."""
        covers = []
        for lo in self.elements:
            for hi in self.elements:
                if lo == hi or not self.leq(lo, hi):
                    continue
                if any(
                    mid != lo and mid != hi and self.leq(lo, mid) and self.leq(mid, hi)
                    for mid in self.elements
                ):
                    continue
                covers.append((lo, hi))
        return tuple(sorted(covers))


def natural_order(sg: FiniteInverseSemigroup) -> IdempotentOrder:
    elems = tuple(sorted(sg.idempotents))
    pairs = frozenset(
        (e, f) for e in elems for f in elems if sg.table[e][f] == e
    )
    order = IdempotentOrder(elems, pairs)
    # partial-order sanity: reflexive by idempotency, antisymmetry and
    # transitivity follow from commuting idempotents; asserted anyway
    for e in elems:
        if not order.leq(e, e):
            raise SemigroupError("natural order is not reflexive")
        for f in elems:
            if order.leq(e, f) and order.leq(f, e) and e != f:
                raise SemigroupError("natural order is not antisymmetric")
            for g in elems:
                if order.leq(e, f) and order.leq(f, g) and not order.leq(e, g):
                    raise SemigroupError("natural order is not transitive")
    return order


def find_incomparable_pair(sg: FiniteInverseSemigroup) -> tuple[int, int] | None:
    """Lexicographically least pair of order-incomparable idempotents, if any."""
    order = natural_order(sg)
    for e in order.elements:
        for f in order.elements:
            if f <= e:
                continue
            if not order.leq(e, f) and not order.leq(f, e):
                return (e, f)
    return None


def is_chain(sg: FiniteInverseSemigroup) -> bool:
    return find_incomparable_pair(sg) is None


def minimal_idempotents(sg: FiniteInverseSemigroup) -> tuple[int, ...]:
    return natural_order(sg).minimal()


def wagner_preston(sg: FiniteInverseSemigroup) -> tuple[PartialInjection, ...]:
    """The right-regular representation by partial injections.

    Element s acts on the ground set of all elements, with domain
    {x : x (s s') = x} and action x -> x s.  The classical Wagner-Preston
    theorem makes this an embedding; injectivity, multiplicativity and
    compatibility with inversion are re-checked here and EmbeddingError is
    raised if any of them fails.
    """
    ground = GroundSet(sg.names)
    n = sg.order
    thetas = []
    for s in range(n):
        dom_idem = sg.table[s][sg.inv[s]]
        images = tuple(
            sg.table[x][s] if sg.table[x][dom_idem] == x else None
            for x in range(n)
        )
        thetas.append(PartialInjection(ground, images))

    if len(set(thetas)) != n:
        raise EmbeddingError("representation is not injective")
    for s in range(n):
        for t in range(n):
            if compose(thetas[s], thetas[t]) != thetas[sg.table[s][t]]:
                raise EmbeddingError(
                    f"representation is not multiplicative at ({sg.names[s]}, {sg.names[t]})"
                )
        if pinv(thetas[s]) != thetas[sg.inv[s]]:
            raise EmbeddingError(f"representation does not preserve inversion at {sg.names[s]}")
    return tuple(thetas)


def hasse_dot(sg: FiniteInverseSemigroup) -> str:
    """DOT digraph of the idempotent order, drawn bottom-up via covering edges."""
    order = natural_order(sg)
    lines = ["digraph idempotent_order {", "  rankdir=BT;"]
    for e in order.elements:
        lines.append(f'  "{sg.names[e]}";')
    for lo, hi in order.covering_pairs():
        lines.append(f'  "{sg.names[lo]}" -> "{sg.names[hi]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_cayley_table(text: str) -> tuple[tuple[str, ...], list[list[int]]]:
    """Parse the plain-text table format.

    Line 1: ``elements`` followed by the n element names.  Then one
    ``row <name>:`` line per element giving the products (row element) *
    (column element) in the column order of line 1.  '#' starts a comment,
    blank lines are ignored.
    """
    names: tuple[str, ...] | None = None
    rows: dict[str, list[int]] = {}
    index: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if names is None:
            if tokens[0] != "elements" or len(tokens) < 2:
                raise TableFormatError(f"line {lineno}: expected 'elements <name> ...'")
            names = tuple(tokens[1:])
            if len(set(names)) != len(names):
                raise TableFormatError(f"line {lineno}: duplicate element name")
            index = {nm: i for i, nm in enumerate(names)}
            continue
        if tokens[0] != "row" or len(tokens) < 2 or not tokens[1].endswith(":"):
            raise TableFormatError(f"line {lineno}: expected 'row <name>: <entries>'")
        rname = tokens[1][:-1]
        if rname not in index:
            raise TableFormatError(f"line {lineno}: unknown row element {rname!r}")
        if rname in rows:
            raise TableFormatError(f"line {lineno}: duplicate row for {rname!r}")
        entries = tokens[2:]
        if len(entries) != len(names):
            raise TableFormatError(
                f"line {lineno}: expected {len(names)} entries, got {len(entries)}"
            )
        try:
            rows[rname] = [index[e] for e in entries]
        except KeyError as exc:
            raise TableFormatError(f"line {lineno}: unknown element {exc.args[0]!r}") from None
    if names is None:
        raise TableFormatError("no 'elements' line found")
    missing = [nm for nm in names if nm not in rows]
    if missing:
        raise TableFormatError(f"missing row(s) for: {' '.join(missing)}")
    return names, [rows[nm] for nm in names]


def load_semigroup(path: str, label: str | None = None) -> FiniteInverseSemigroup:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    names, table = parse_cayley_table(text)
    return validate(names, table, label if label is not None else os.path.basename(path))
