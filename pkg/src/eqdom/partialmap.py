"""Injective partial self-maps of a finite ground set.

Composition is a right action throughout: compose(f, g) sends a point m to
(m f) g, so the left factor acts first.  With this convention the partial
injections on a finite set form an inverse monoid, and semigroup.wagner_preston
embeds any finite inverse semigroup into it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Iterator


class GroundMismatchError(ValueError):
    """Raised when two maps over different ground sets are combined."""


class NotIdempotentError(ValueError):
    """Raised when an idempotent-only operation receives a non-idempotent map."""


@dataclass(frozen=True)
class GroundSet:
    """Immutable, ordered universe of points identified by distinct labels."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError("ground set must be nonempty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"ground labels not pairwise distinct: {self.labels!r}")

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class PartialInjection:
    """images[i] is the image index of point i, or None where undefined."""

    ground: GroundSet
    images: tuple[int | None, ...]

    def __post_init__(self) -> None:
        n = self.ground.size
        if len(self.images) != n:
            raise ValueError(f"expected {n} image slots, got {len(self.images)}")
        seen: set[int] = set()
        for j in self.images:
            if j is None:
                continue
            if not 0 <= j < n:
                raise ValueError(f"image index {j} out of range for {n} points")
            if j in seen:
                raise ValueError(f"not injective: image index {j} occurs twice")
            seen.add(j)

    def __str__(self) -> str:
        return render(self)


def _same_ground(f: PartialInjection, g: PartialInjection) -> None:
    if f.ground != g.ground:
        raise GroundMismatchError("partial injections live on different ground sets")


def compose(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    """Right-action composite m -> (m f) g; defined where both steps are."""
    _same_ground(f, g)
    images = tuple(
        g.images[j] if (j := f.images[i]) is not None else None
        for i in range(f.ground.size)
    )
    return PartialInjection(f.ground, images)


def inverse(f: PartialInjection) -> PartialInjection:
    """The unique partial injection g with fgf = f and gfg = g (arrow reversal)."""
    images: list[int | None] = [None] * f.ground.size
    for i, j in enumerate(f.images):
        if j is not None:
            images[j] = i
    return PartialInjection(f.ground, tuple(images))


def domain_of(f: PartialInjection) -> frozenset[int]:
    return frozenset(i for i, j in enumerate(f.images) if j is not None)


def image_of(f: PartialInjection) -> frozenset[int]:
    return frozenset(j for j in f.images if j is not None)


def is_idempotent(f: PartialInjection) -> bool:
    return compose(f, f) == f


def restrict(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    """f cut down to the domain of g.  Equals compose(domain_idempotent(g), f)."""
    _same_ground(f, g)
    dom = domain_of(g)
    images = tuple(
        f.images[i] if i in dom else None for i in range(f.ground.size)
    )
    return PartialInjection(f.ground, images)


def idempotent_leq(e: PartialInjection, f: PartialInjection) -> bool:
    """Natural order on idempotents: e <= f iff ef = e, i.e. dom(e) within dom(f)."""
    _same_ground(e, f)
    if not is_idempotent(e):
        raise NotIdempotentError(f"left argument is not idempotent: {e}")
    if not is_idempotent(f):
        raise NotIdempotentError(f"right argument is not idempotent: {f}")
    return domain_of(e) <= domain_of(f)


def identity_on(ground: GroundSet, points: Iterable[int]) -> PartialInjection:
    subset = set(points)
    images = tuple(i if i in subset else None for i in range(ground.size))
    return PartialInjection(ground, images)


def empty_map(ground: GroundSet) -> PartialInjection:
    return PartialInjection(ground, (None,) * ground.size)


def from_pairs(ground: GroundSet, pairs: dict[int, int]) -> PartialInjection:
    images = tuple(pairs.get(i) for i in range(ground.size))
    return PartialInjection(ground, images)


def all_partial_injections(ground: GroundSet) -> Iterator[PartialInjection]:
    """Every partial injection on the ground set, in a fixed deterministic order.

    Image slots with a defined value sort before undefined ones, so the full
    identity comes first and the empty map last.
    """
    n = ground.size
    candidates = []
    for images in _cartesian((*range(n), None), repeat=n):
        defined = [j for j in images if j is not None]
        if len(defined) != len(set(defined)):
            continue
        candidates.append(images)
    candidates.sort(key=lambda images: tuple(n if j is None else j for j in images))
    for images in candidates:
        yield PartialInjection(ground, images)


def render(f: PartialInjection) -> str:
    """Space-separated image labels in ground order, '-' for undefined."""
    return " ".join(
        "-" if j is None else f.ground.labels[j] for j in f.images
    )
