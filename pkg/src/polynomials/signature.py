"""
Signatures
Non-increasing integer tuples labelling highest-weight vectors and their admissibility
"""

from dataclasses import dataclass
from typing import Iterator, List, Tuple

from src.utils.errors import InvalidSignature


@dataclass(frozen=True)
class Signature:
    """
    Signature m = (m_1 >= ... >= m_r >= 0)

    Attributes:
        parts: the integer tuple
    """

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise InvalidSignature("Signature needs at least one part")
        if any(not isinstance(p, int) or isinstance(p, bool) for p in parts):
            raise InvalidSignature(f"Signature parts must be integers: {parts}")
        if any(p < 0 for p in parts):
            raise InvalidSignature(f"Signature parts must be non-negative: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidSignature(f"Signature must be non-increasing: {parts}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def parse(cls, text: str) -> 'Signature':
        """Parse '2,1' or '2 1'"""
        tokens = [t for t in str(text).replace(',', ' ').split() if t]
        try:
            return cls(tuple(int(t) for t in tokens))
        except ValueError as e:
            raise InvalidSignature(f"Cannot parse signature {text!r}: {e}") from e

    @classmethod
    def full(cls, rank: int, m: int = 1) -> 'Signature':
        """(m, ..., m) of length rank, the power of the full determinant"""
        return cls((m,) * rank)

    def padded(self, rank: int) -> 'Signature':
        """Extend with zeros to length rank"""
        if len(self.parts) > rank:
            if any(self.parts[rank:]):
                raise InvalidSignature(f"Signature {self} has more than {rank} non-zero parts")
            return Signature(self.parts[:rank])
        return Signature(self.parts + (0,) * (rank - len(self.parts)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def m1(self) -> int:
        return self.parts[0]

    @property
    def exponents(self) -> List[int]:
        """Exponent of Δ_j in Δ_m: m_j - m_{j+1}"""
        tail = self.parts[1:] + (0,)
        return [a - b for a, b in zip(self.parts, tail)]

    def admissible(self, alpha: float) -> bool:
        """(α + 1)/2 > m_1"""
        return (alpha + 1) / 2 > self.m1

    def boundary_exponent(self, alpha: float) -> float:
        """Exponent of h in |Δ_m(q)|^2 h^α near the boundary, α - 2 m_1"""
        return alpha - 2 * self.m1

    def to_config(self) -> str:
        return ','.join(str(p) for p in self.parts)

    def __str__(self) -> str:
        return f"({self.to_config()})"


def enumerate_signatures(rank: int, max_size: int, include_zero: bool = False) -> Iterator[Signature]:
    """
    All signatures of length rank with |m| <= max_size, ordered by size then lexicographically

    Args:
        rank: number of parts
        max_size: bound on the total degree
        include_zero: whether to yield (0, ..., 0)
    """
    def partitions(remaining: int, slots: int, cap: int):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(remaining, cap), -1, -1):
            for rest in partitions(remaining - first, slots - 1, first):
                yield (first,) + rest

    start = 0 if include_zero else 1
    for size in range(start, max_size + 1):
        for parts in partitions(size, rank, size):
            yield Signature(parts)
