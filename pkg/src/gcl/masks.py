"""Fixed-width bit masks over the discernible object classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class ExtentMask:
    """A general extent encoded as one bit per discernible class.

    Bit ``k`` (little-endian) is set when class ``k`` is contained in the
    extent. The string form is written with class 0 leftmost, so the mask
    holding classes 0, 1 and 3 out of five prints as ``"11010"``.
    """

    bits: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ValueError("mask width must be non-negative")
        if self.bits < 0 or self.bits >> self.width:
            raise ValueError(f"bits {self.bits:#x} do not fit in width {self.width}")

    @classmethod
    def from_string(cls, text: str) -> "ExtentMask":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"mask string may only contain 0 and 1: {text!r}")
        bits = sum(1 << k for k, ch in enumerate(text) if ch == "1")
        return cls(bits, len(text))

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int) -> "ExtentMask":
        bits = 0
        for k in indices:
            if not 0 <= k < width:
                raise ValueError(f"class index {k} out of range for width {width}")
            bits |= 1 << k
        return cls(bits, width)

    @classmethod
    def full(cls, width: int) -> "ExtentMask":
        return cls((1 << width) - 1, width)

    @classmethod
    def empty(cls, width: int) -> "ExtentMask":
        return cls(0, width)

    def __str__(self) -> str:
        return "".join("1" if self.bits >> k & 1 else "0" for k in range(self.width))

    def __repr__(self) -> str:
        return f"ExtentMask('{self}')"

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __contains__(self, k: object) -> bool:
        return isinstance(k, int) and 0 <= k < self.width and bool(self.bits >> k & 1)

    def _check(self, other: "ExtentMask") -> None:
        if self.width != other.width:
            raise ValueError(f"mask width mismatch: {self.width} vs {other.width}")

    def __or__(self, other: "ExtentMask") -> "ExtentMask":
        self._check(other)
        return ExtentMask(self.bits | other.bits, self.width)

    def __and__(self, other: "ExtentMask") -> "ExtentMask":
        self._check(other)
        return ExtentMask(self.bits & other.bits, self.width)

    def __invert__(self) -> "ExtentMask":
        return ExtentMask(((1 << self.width) - 1) & ~self.bits, self.width)

    def issubset(self, other: "ExtentMask") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def issuperset(self, other: "ExtentMask") -> bool:
        return other.issubset(self)
