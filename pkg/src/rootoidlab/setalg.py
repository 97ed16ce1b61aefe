"""Finite Boolean set algebras.

Elements of a power set are stored as Python ints used as bit vectors; bit
``i`` stands for ``ground.elements[i]``.  Proper subrings are described by a
:class:`SubringPartition` (a finite subring of a power set is exactly the set
of unions of blocks of a partition of some subset of the ground set).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence


class IncompatibleRingsError(ValueError):
    """Raised when set elements over different ground sets are combined."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class GroundSet:
    id: str
    elements: tuple
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        object.__setattr__(self, "elements", elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError(f"ground set {self.id!r} has repeated labels")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of ground set {self.id!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for x in labels:
            m |= 1 << self.index(x)
        return m

    def labels(self, mask: int) -> list:
        return [self.elements[i] for i in iter_bits(mask)]

    def elem(self, labels: Iterable[str] = ()) -> "SetElem":
        return SetElem(self, self.mask(labels))

    def empty(self) -> "SetElem":
        return SetElem(self, 0)

    def unit(self) -> "SetElem":
        return SetElem(self, self.full)


@dataclass(frozen=True)
class SetElem:
    """An element of the power set of ``ground``."""

    ground: GroundSet
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> len(self.ground.elements):
            raise ValueError("bits outside the ground set")

    def _check(self, other):
        if not isinstance(other, SetElem):
            return NotImplemented
        if other.ground != self.ground:
            raise IncompatibleRingsError(
                f"ground sets differ: {self.ground.id!r} vs {other.ground.id!r}")
        return None

    # ring operations: + is symmetric difference, * and & are intersection
    def __add__(self, other):
        r = self._check(other)
        if r is NotImplemented:
            return r
        return SetElem(self.ground, self.bits ^ other.bits)

    __sub__ = __add__
    __xor__ = __add__

    def __and__(self, other):
        r = self._check(other)
        if r is NotImplemented:
            return r
        return SetElem(self.ground, self.bits & other.bits)

    __mul__ = __and__

    def __or__(self, other):
        r = self._check(other)
        if r is NotImplemented:
            return r
        return SetElem(self.ground, self.bits | other.bits)

    def __le__(self, other):
        r = self._check(other)
        if r is NotImplemented:
            return r
        return self.bits & other.bits == self.bits

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __bool__(self):
        return self.bits != 0

    def __len__(self):
        return popcount(self.bits)

    def __iter__(self):
        return iter(self.labels())

    def __contains__(self, label):
        return bool(self.bits >> self.ground.index(label) & 1)

    def is_empty(self) -> bool:
        return self.bits == 0

    def isdisjoint(self, other) -> bool:
        self._check(other)
        return not self.bits & other.bits

    def complement(self) -> "SetElem":
        return SetElem(self.ground, self.ground.full ^ self.bits)

    def labels(self) -> list:
        return self.ground.labels(self.bits)

    def __repr__(self):
        return "{" + ",".join(self.labels()) + "}"


def union(a: SetElem, b: SetElem) -> SetElem:
    """Join in the Boolean ring, written as ``a + b + ab``."""
    return a + b + (a & b)


def rank(a: SetElem, subring: Optional["SubringPartition"] = None) -> int:
    """Number of atoms of the ring below ``a``.

    For a power set this is the cardinality.  Inside a proper subring the
    atoms are the blocks, so ``a`` (assumed to lie in the subring) has rank
    equal to the number of blocks it contains.
    """
    if subring is None:
        return popcount(a.bits)
    return sum(1 for b in subring.blocks if b & a.bits)


@dataclass(frozen=True)
class SubringPartition:
    ambient: GroundSet
    support: int
    blocks: tuple  # int masks, sorted by lowest bit

    def __post_init__(self):
        seen = 0
        for b in self.blocks:
            if not b or b & seen:
                raise ValueError("subring blocks must be nonempty and pairwise disjoint")
            seen |= b
        if seen != self.support:
            raise ValueError("subring blocks must cover the support")
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, key=lambda m: m & -m)))

    @classmethod
    def full(cls, ground: GroundSet) -> "SubringPartition":
        return cls(ground, ground.full, tuple(1 << i for i in range(len(ground))))

    def contains(self, mask: int) -> bool:
        """True iff ``mask`` is a union of blocks."""
        if mask & ~self.support:
            return False
        return all(b & mask in (0, b) for b in self.blocks)

    def is_full(self) -> bool:
        return self.support == self.ambient.full and all(popcount(b) == 1 for b in self.blocks)

    def block_of(self, i: int) -> Optional[int]:
        for b in self.blocks:
            if b >> i & 1:
                return b
        return None

    def support_elem(self) -> SetElem:
        return SetElem(self.ambient, self.support)

    def block_labels(self) -> list:
        return [self.ambient.labels(b) for b in self.blocks]


def signature_blocks(masks: Sequence[int]) -> tuple:
    support = 0
    for m in masks:
        support |= m
    sig = {}
    for i in iter_bits(support):
        key = tuple(m >> i & 1 for m in masks)
        sig[key] = sig.get(key, 0) | 1 << i
    return support, tuple(sig.values())


def generated_subring(gens: Sequence[SetElem], ground: Optional[GroundSet] = None) -> SubringPartition:
    """Smallest Boolean subring (not necessarily unital) containing ``gens``.

    Points of the union of the generators are grouped by which generators
    contain them; the subring consists of all unions of these groups.
    """
    gens = list(gens)
    if ground is None:
        if not gens:
            raise ValueError("ground set required when there are no generators")
        ground = gens[0].ground
    for g in gens:
        if g.ground != ground:
            raise IncompatibleRingsError("generators live over different ground sets")
    support, blocks = signature_blocks([g.bits for g in gens])
    return SubringPartition(ground, support, blocks)


def subring_elements(sub: SubringPartition) -> Iterator[int]:
    """All masks of the subring (2 ** number of blocks of them)."""
    blocks = sub.blocks
    for choice in range(1 << len(blocks)):
        m = 0
        for j in iter_bits(choice):
            m |= blocks[j]
        yield m


@dataclass(frozen=True)
class PartialMap:
    """A partial map ``source -> target`` encoding the ring map A |-> preimage(A).

    The encoded homomorphism goes from the power set of ``target`` to the
    power set of ``source``.  It is unital exactly when the map is total.
    """

    source: GroundSet
    target: GroundSet
    map: Mapping[str, Optional[str]]
    _table: tuple = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        table = []
        for y in self.source.elements:
            x = self.map.get(y)
            table.append(None if x is None else self.target.index(x))
        extra = set(self.map) - set(self.source.elements)
        if extra:
            raise KeyError(f"labels {sorted(extra)} not in source ground {self.source.id!r}")
        object.__setattr__(self, "_table", tuple(table))

    @classmethod
    def identity(cls, ground: GroundSet) -> "PartialMap":
        return cls(ground, ground, {x: x for x in ground.elements})

    @classmethod
    def from_table(cls, source: GroundSet, target: GroundSet, table: Sequence[Optional[int]]) -> "PartialMap":
        return cls(source, target, {source.elements[j]: (None if i is None else target.elements[i])
                                    for j, i in enumerate(table)})

    @property
    def table(self) -> tuple:
        return self._table

    def is_total(self) -> bool:
        return all(i is not None for i in self._table)

    def is_bijective(self) -> bool:
        return self.is_total() and len(set(self._table)) == len(self.target) == len(self.source)

    def apply_mask(self, mask: int) -> int:
        out = 0
        for j, i in enumerate(self._table):
            if i is not None and mask >> i & 1:
                out |= 1 << j
        return out

    def __call__(self, a: SetElem) -> SetElem:
        return apply_hom(self, a)


def apply_hom(h: PartialMap, a: SetElem) -> SetElem:
    if a.ground != h.target:
        raise IncompatibleRingsError(
            f"element over {a.ground.id!r} but homomorphism expects {h.target.id!r}")
    return SetElem(h.source, h.apply_mask(a.bits))
