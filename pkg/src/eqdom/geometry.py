"""Algebraic geometry over a finite inverse semigroup.

Solution sets of equation systems, the algebraic-closure operator, and the
certificates showing that a finite inverse semigroup which is not a group is
not an equational domain (some finite union of algebraic sets fails to be
algebraic; the checks below exhibit and re-verify an explicit witness point).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .semigroup import (
    FiniteInverseSemigroup,
    find_incomparable_pair,
    is_group,
    natural_order,
)
from .terms import (
    DEFAULT_MAX_CELLS,
    Const,
    Term,
    Var,
    all_points,
    clone_closure,
    evaluate,
    flatten,
    point_index,
    variables_of,
)

DEFAULT_MAX_POINTS = 20_000


class BoundExceededError(ValueError):
    def __init__(self, message: str, required: int):
        self.required = required
        super().__init__(message)


class CertificateError(RuntimeError):
    """A certificate failed re-validation."""


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term
    arity: int

    def __post_init__(self) -> None:
        used = variables_of(self.lhs) | variables_of(self.rhs)
        if any(i >= self.arity for i in used):
            raise ValueError(f"equation uses x{max(used) + 1} but has arity {self.arity}")


@dataclass(frozen=True)
class EquationSystem:
    equations: tuple[Equation, ...]

    def __post_init__(self) -> None:
        if not self.equations:
            raise ValueError("a system needs at least one equation")
        arities = {eq.arity for eq in self.equations}
        if len(arities) != 1:
            raise ValueError(f"mixed arities in one system: {sorted(arities)}")

    @property
    def arity(self) -> int:
        return self.equations[0].arity


@dataclass(frozen=True)
class PointSet:
    arity: int
    members: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        for p in self.members:
            if len(p) != self.arity:
                raise ValueError(f"point {p} does not have arity {self.arity}")

    def sorted_members(self) -> list[tuple[int, ...]]:
        return sorted(self.members)


def solution_set(sg: FiniteInverseSemigroup, system: EquationSystem) -> PointSet:
    """All points of S^arity satisfying every equation, by direct evaluation."""
    flat = [
        (flatten(sg, eq.lhs), flatten(sg, eq.rhs)) for eq in system.equations
    ]
    members = frozenset(
        p for p in all_points(sg.order, system.arity)
        if all(evaluate(sg, l, p) == evaluate(sg, r, p) for l, r in flat)
    )
    return PointSet(system.arity, members)


def union(a: PointSet, b: PointSet) -> PointSet:
    if a.arity != b.arity:
        raise ValueError("cannot union point sets of different arities")
    return PointSet(a.arity, a.members | b.members)


@dataclass(frozen=True)
class ClosureReport:
    points: PointSet
    exact: bool
    clone_size: int


def closure(
    sg: FiniteInverseSemigroup,
    pts: PointSet,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> ClosureReport:
    """Least algebraic superset of pts (exact only if the clone completed).

    Two term functions that agree on pts must agree on any algebraic set
    containing pts, so the closure is the set of points where every
    pts-agreeing pair still agrees.  Functions are grouped by their value
    fingerprint on pts; within each group all members must coincide.  With a
    truncated clone the constraint set is smaller, so the result is a
    superset of the true closure and only "yes, algebraic" conclusions would
    be unsound: callers get exact=False and must answer unknown.
    """
    n = pts.arity
    total = sg.order ** n
    if total > max_points:
        raise BoundExceededError(
            f"closure over arity {n} needs {total} points, bound is {max_points}",
            required=total,
        )
    clone = clone_closure(sg, n, max_cells)
    matrix = clone.value_matrix
    k = matrix.shape[0]
    mask = np.ones(total, dtype=bool)
    if k >= 2:
        y_idx = sorted(point_index(sg.order, p) for p in pts.members)
        if y_idx:
            fingerprints = matrix[:, y_idx]
            _, labels = np.unique(fingerprints, axis=0, return_inverse=True)
            labels = labels.reshape(-1)
        else:
            labels = np.zeros(k, dtype=np.intp)
        order_idx = np.argsort(labels, kind="stable")
        ordered = matrix[order_idx]
        same_group = (labels[order_idx][1:] == labels[order_idx][:-1])[:, None]
        adjacent_ok = (ordered[1:] == ordered[:-1]) | ~same_group
        mask = adjacent_ok.all(axis=0)
    all_pts = list(all_points(sg.order, n))
    members = frozenset(all_pts[i] for i in np.nonzero(mask)[0])
    return ClosureReport(PointSet(n, members), clone.complete, k)


@dataclass(frozen=True)
class AlgebraicVerdict:
    status: str  # "yes" | "no" | "unknown"
    witness: tuple[int, ...] | None
    report: ClosureReport


def is_algebraic(
    sg: FiniteInverseSemigroup,
    pts: PointSet,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> AlgebraicVerdict:
    """Is pts the solution set of some system?  "no" carries a witness point
    of closure(pts) minus pts; an inexact closure answers "unknown"."""
    report = closure(sg, pts, max_points=max_points, max_cells=max_cells)
    if not report.exact:
        return AlgebraicVerdict("unknown", None, report)
    if report.points.members == pts.members:
        return AlgebraicVerdict("yes", None, report)
    witness = min(report.points.members - pts.members)
    return AlgebraicVerdict("no", witness, report)


@dataclass(frozen=True)
class Unknown:
    """A check that could not finish within bounds; never a negative answer."""

    reason: str


@dataclass(frozen=True)
class Certificate:
    """Recheckable evidence for one verdict.

    Kinds: IncomparableWitness and ChainWitness carry a union of solution
    sets plus a witness point that lies in the closure of the union but not
    in the union; RosenblattWitness does the same for the fixed union
    {x1=x2} or {x3=x4}; ZeroPresent records an absorbing zero (a semigroup
    with zero is never an equational domain, a known result cited rather
    than re-proved here); GroupOutOfScope records that the semigroup is a
    group, for which this tool makes no claim either way.
    """

    kind: str
    semigroup: str
    idempotents: tuple[int, ...]
    union: PointSet | None
    witness: tuple[int, ...] | None
    closure_size: int | None
    exact: bool | None


def _point_str(sg: FiniteInverseSemigroup, p: tuple[int, ...]) -> str:
    return "(" + ",".join(sg.names[i] for i in p) + ")"


def format_certificate(sg: FiniteInverseSemigroup, cert: Certificate) -> str:
    idem = ", ".join(sg.names[e] for e in cert.idempotents) if cert.idempotents else "-"
    if cert.union is None:
        union_text = "-"
    else:
        union_text = ", ".join(_point_str(sg, p) for p in cert.union.sorted_members())
    witness = _point_str(sg, cert.witness) if cert.witness is not None else "-"
    size = str(cert.closure_size) if cert.closure_size is not None else "-"
    exact = "-" if cert.exact is None else ("true" if cert.exact else "false")
    return "\n".join([
        f"kind: {cert.kind}",
        f"semigroup: {cert.semigroup}",
        f"idempotents: {idem}",
        f"union: {union_text}",
        f"witness: {witness}",
        f"closure-size: {size}",
        f"exact: {exact}",
    ])


def _var_equals_const(sg, var: int, element: int, arity: int) -> PointSet:
    eq = Equation(Var(var), Const(element), arity)
    return solution_set(sg, EquationSystem((eq,)))


def _rosenblatt_union(sg) -> PointSet:
    eq12 = Equation(Var(0), Var(1), 4)
    eq34 = Equation(Var(2), Var(3), 4)
    return union(
        solution_set(sg, EquationSystem((eq12,))),
        solution_set(sg, EquationSystem((eq34,))),
    )


def lemma4_check(
    sg: FiniteInverseSemigroup,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> Certificate | Unknown | None:
    """Certificate from an incomparable idempotent pair, or None on a chain.

    For incomparable idempotents e, f the product ef satisfies every equation
    that holds on all of V(x1=e) union V(x1=f), so ef lies in the closure of
    that union while ef is neither e nor f: the union is not algebraic.
    """
    pair = find_incomparable_pair(sg)
    if pair is None:
        return None
    e, f = pair
    u = union(_var_equals_const(sg, 0, e, 1), _var_equals_const(sg, 0, f, 1))
    try:
        report = closure(sg, u, max_points=max_points, max_cells=max_cells)
    except BoundExceededError as exc:
        return Unknown(str(exc))
    if not report.exact:
        return Unknown("clone truncated; closure is not exact")
    witness = (sg.table[e][f],)
    if witness in u.members or witness not in report.points.members:
        raise CertificateError("incomparable-pair witness failed its membership facts")
    return Certificate(
        kind="IncomparableWitness",
        semigroup=sg.label,
        idempotents=(e, f),
        union=u,
        witness=witness,
        closure_size=len(report.points.members),
        exact=report.exact,
    )


def lemma5_check(
    sg: FiniteInverseSemigroup,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> Certificate | Unknown | None:
    """Certificate from a two-element chain e > f, or None for groups and
    non-chains.

    With e the top of the chain and f the minimum, the pair (f, f) satisfies
    every equation holding on all of V(x1=e) union V(x2=e) in S^2, yet lies
    in neither part: that union is not algebraic either.
    """
    if is_group(sg) or find_incomparable_pair(sg) is not None:
        return None
    order = natural_order(sg)
    (top,) = order.maximal()
    (bottom,) = order.minimal()
    u = union(_var_equals_const(sg, 0, top, 2), _var_equals_const(sg, 1, top, 2))
    try:
        report = closure(sg, u, max_points=max_points, max_cells=max_cells)
    except BoundExceededError as exc:
        return Unknown(str(exc))
    if not report.exact:
        return Unknown("clone truncated; closure is not exact")
    witness = (bottom, bottom)
    if witness in u.members or witness not in report.points.members:
        raise CertificateError("chain witness failed its membership facts")
    return Certificate(
        kind="ChainWitness",
        semigroup=sg.label,
        idempotents=(top, bottom),
        union=u,
        witness=witness,
        closure_size=len(report.points.members),
        exact=report.exact,
    )


def rosenblatt_check(
    sg: FiniteInverseSemigroup,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> Certificate | Unknown | None:
    """Is the union {x1=x2} or {x3=x4} in S^4 algebraic?  None when it is
    (e.g. over the trivial group); a certificate with the least witness point
    when it is not, which is the expected outcome for every inverse
    non-group."""
    if sg.order ** 4 > max_points:
        return Unknown(
            f"rosenblatt union over arity 4 needs {sg.order ** 4} points, "
            f"bound is {max_points}"
        )
    u = _rosenblatt_union(sg)
    try:
        report = closure(sg, u, max_points=max_points, max_cells=max_cells)
    except BoundExceededError as exc:
        return Unknown(str(exc))
    if not report.exact:
        return Unknown("clone truncated; closure is not exact")
    extra = report.points.members - u.members
    if not extra:
        return None
    return Certificate(
        kind="RosenblattWitness",
        semigroup=sg.label,
        idempotents=(),
        union=u,
        witness=min(extra),
        closure_size=len(report.points.members),
        exact=report.exact,
    )


@dataclass(frozen=True)
class Verdict:
    semigroup: str
    status: str  # "GroupOutOfScope" | "NotED"
    certificates: tuple[Certificate, ...]
    truncated: tuple[str, ...]

    @property
    def certified(self) -> bool:
        return bool(self.certificates)


def ed_verdict(
    sg: FiniteInverseSemigroup,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> Verdict:
    """Equational-domain verdict.

    Groups are out of scope (their classification is a separate known
    result).  Every other inverse semigroup is not an equational domain; the
    verdict carries a zero certificate when an absorbing zero exists and a
    computed witness certificate when the closure fits the bounds.  If no
    certificate can be produced the verdict stands by the general theorem but
    is flagged as not certified at this size.
    """
    if is_group(sg):
        (e,) = sg.idempotents
        cert = Certificate(
            kind="GroupOutOfScope",
            semigroup=sg.label,
            idempotents=(e,),
            union=None,
            witness=None,
            closure_size=None,
            exact=None,
        )
        return Verdict(sg.label, "GroupOutOfScope", (cert,), ())

    certificates = []
    truncated = []
    if sg.zero is not None:
        certificates.append(Certificate(
            kind="ZeroPresent",
            semigroup=sg.label,
            idempotents=(sg.zero,),
            union=None,
            witness=None,
            closure_size=None,
            exact=None,
        ))
    if find_incomparable_pair(sg) is not None:
        computed = lemma4_check(sg, max_points=max_points, max_cells=max_cells)
    else:
        computed = lemma5_check(sg, max_points=max_points, max_cells=max_cells)
    if isinstance(computed, Certificate):
        certificates.append(computed)
    elif isinstance(computed, Unknown):
        truncated.append(computed.reason)
    return Verdict(sg.label, "NotED", tuple(certificates), tuple(truncated))


def validate_certificate(
    sg: FiniteInverseSemigroup,
    cert: Certificate,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> None:
    """Recheck a certificate from scratch; raises CertificateError on any gap.

    Witness-style kinds recompute the union and its closure and re-verify the
    membership facts; ZeroPresent re-verifies the absorbing law; and
    GroupOutOfScope re-verifies the single idempotent.
    """
    if cert.kind == "GroupOutOfScope":
        if not is_group(sg):
            raise CertificateError("GroupOutOfScope on a non-group")
        if set(cert.idempotents) != set(sg.idempotents):
            raise CertificateError("GroupOutOfScope does not name the idempotent")
        return
    if cert.kind == "ZeroPresent":
        if len(cert.idempotents) != 1:
            raise CertificateError("ZeroPresent must name exactly the zero")
        z = cert.idempotents[0]
        if sg.zero != z:
            raise CertificateError("ZeroPresent element is not the absorbing zero")
        for s in range(sg.order):
            if sg.table[z][s] != z or sg.table[s][z] != z:
                raise CertificateError("zero law fails")
        return
    if cert.kind == "IncomparableWitness":
        e, f = cert.idempotents
        order = natural_order(sg)
        if e not in order.elements or f not in order.elements:
            raise CertificateError("named elements are not idempotent")
        if order.leq(e, f) or order.leq(f, e):
            raise CertificateError("idempotents are comparable")
        expected_union = union(
            _var_equals_const(sg, 0, e, 1), _var_equals_const(sg, 0, f, 1)
        )
        if cert.witness != (sg.table[e][f],):
            raise CertificateError("witness is not the product of the pair")
    elif cert.kind == "ChainWitness":
        e, f = cert.idempotents
        order = natural_order(sg)
        if not order.is_chain():
            raise CertificateError("idempotents do not form a chain")
        if order.maximal() != (e,) or order.minimal() != (f,) or e == f:
            raise CertificateError("named idempotents are not the chain extremes")
        expected_union = union(
            _var_equals_const(sg, 0, e, 2), _var_equals_const(sg, 1, e, 2)
        )
        if cert.witness != (f, f):
            raise CertificateError("witness is not the bottom pair")
    elif cert.kind == "RosenblattWitness":
        expected_union = _rosenblatt_union(sg)
    else:
        raise CertificateError(f"unknown certificate kind {cert.kind!r}")

    if cert.union is None or cert.union.members != expected_union.members:
        raise CertificateError("recorded union does not match its definition")
    report = closure(sg, expected_union, max_points=max_points, max_cells=max_cells)
    if not report.exact:
        raise CertificateError("closure no longer exact under the given bounds")
    if cert.witness in expected_union.members:
        raise CertificateError("witness lies inside the union")
    if cert.witness not in report.points.members:
        raise CertificateError("witness is not in the closure of the union")
    if cert.closure_size != len(report.points.members):
        raise CertificateError("recorded closure size does not match")
    if cert.exact is not True:
        raise CertificateError("witness certificates must record exact=true")


def validate_verdict(sg: FiniteInverseSemigroup, verdict: Verdict, **bounds) -> None:
    for cert in verdict.certificates:
        validate_certificate(sg, cert, **bounds)
