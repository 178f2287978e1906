"""Dense, integer-backed sets of state indices."""

from __future__ import annotations

from typing import Iterable, Iterator


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def bits_from(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << i
    return bits


class StateSet:
    """An immutable subset of ``range(size)``.

    Membership is stored as the bits of a Python int, so union, intersection
    and subset tests cost one big-int operation regardless of cardinality.
    Iteration is always in ascending index order.
    """

    __slots__ = ("bits", "size")

    def __init__(self, size: int, bits: int = 0):
        if bits >> size:
            raise ValueError("bits outside the state range")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("StateSet is immutable")

    @classmethod
    def empty(cls, size: int) -> StateSet:
        return cls(size, 0)

    @classmethod
    def full(cls, size: int) -> StateSet:
        return cls(size, (1 << size) - 1)

    @classmethod
    def of(cls, size: int, indices: Iterable[int]) -> StateSet:
        return cls(size, bits_from(indices))

    def _check(self, other: StateSet) -> None:
        if self.size != other.size:
            raise ValueError("state sets over different models")

    def __or__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.size, self.bits | other.bits)

    def __and__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.size, self.bits & other.bits)

    def __sub__(self, other: StateSet) -> StateSet:
        self._check(other)
        return StateSet(self.size, self.bits & ~other.bits)

    def __invert__(self) -> StateSet:
        return StateSet(self.size, ((1 << self.size) - 1) & ~self.bits)

    def __le__(self, other: StateSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: StateSet) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: StateSet) -> bool:
        return other <= self

    def __gt__(self, other: StateSet) -> bool:
        return other < self

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateSet):
            return NotImplemented
        return self.size == other.size and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.size, self.bits))

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.size and bool(self.bits >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"StateSet({self.size}, {sorted(self)})"
