"""
Domain Descriptor
Identifies a bounded symmetric domain (unit ball or type-I matrix ball) and its Jordan data
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple

import numpy as np

from src.utils.errors import ConfigInvalid, DimensionMismatch, UnsupportedDomain

BALL = 'ball'
MATRIX = 'matrix'

MAX_BALL_DIM = 4
MAX_MATRIX_SIDE = 3


@dataclass(frozen=True)
class DomainDescriptor:
    """
    Ball(n) or MatrixI(p, q) together with rank, genus, dimension and frame

    Points are coordinate vectors of length ``dim`` in the fixed orthonormal
    basis. Matrix points are flattened row-major.
    """

    kind: str
    n: int = 1
    p: int = 1
    q: int = 1

    def __post_init__(self):
        if self.kind == BALL:
            if not 1 <= self.n <= MAX_BALL_DIM:
                raise UnsupportedDomain(f"Ball dimension must be in 1..{MAX_BALL_DIM}, got {self.n}")
        elif self.kind == MATRIX:
            if not (1 <= self.p <= MAX_MATRIX_SIDE and 1 <= self.q <= MAX_MATRIX_SIDE):
                raise UnsupportedDomain(
                    f"Matrix sides must be in 1..{MAX_MATRIX_SIDE}, got {self.p}x{self.q}"
                )
        else:
            raise UnsupportedDomain(f"Unknown domain kind: {self.kind}")

    @classmethod
    def ball(cls, n: int = 1) -> 'DomainDescriptor':
        return cls(kind=BALL, n=n)

    @classmethod
    def disk(cls) -> 'DomainDescriptor':
        return cls(kind=BALL, n=1)

    @classmethod
    def matrix(cls, p: int, q: int) -> 'DomainDescriptor':
        return cls(kind=MATRIX, p=p, q=q)

    @classmethod
    def from_config(cls, record: Dict) -> 'DomainDescriptor':
        """
        Build a descriptor from a config record

        Args:
            record: {'kind': 'ball', 'n': 2} or {'kind': 'matrix', 'p': 2, 'q': 3};
                'disk' is accepted as an alias for Ball(1)

        Returns:
            DomainDescriptor
        """
        if not isinstance(record, dict) or 'kind' not in record:
            raise ConfigInvalid(f"Domain record needs a 'kind' field: {record!r}")

        kind = str(record['kind']).lower()
        try:
            if kind == 'disk':
                return cls.disk()
            if kind == BALL:
                return cls.ball(int(record.get('n', 1)))
            if kind == MATRIX:
                return cls.matrix(int(record.get('p', 2)), int(record.get('q', 2)))
        except (TypeError, ValueError) as e:
            raise ConfigInvalid(f"Invalid domain record {record!r}: {e}") from e

        raise ConfigInvalid(f"Unknown domain kind: {record['kind']}")

    def to_config(self) -> Dict:
        if self.kind == BALL:
            return {'kind': BALL, 'n': self.n}
        return {'kind': MATRIX, 'p': self.p, 'q': self.q}

    @property
    def label(self) -> str:
        if self.is_disk:
            return 'disk'
        if self.kind == BALL:
            return f"ball{self.n}"
        return f"matrix{self.p}x{self.q}"

    @property
    def is_ball(self) -> bool:
        return self.kind == BALL

    @property
    def is_disk(self) -> bool:
        return self.kind == BALL and self.n == 1

    @property
    def dim(self) -> int:
        return self.n if self.kind == BALL else self.p * self.q

    @property
    def rank(self) -> int:
        return 1 if self.kind == BALL else min(self.p, self.q)

    @property
    def genus(self) -> int:
        return self.n + 1 if self.kind == BALL else self.p + self.q

    @property
    def matrix_shape(self) -> Tuple[int, int]:
        """Shape of a point viewed as a matrix (a ball point is a 1 x n row)"""
        return (1, self.n) if self.kind == BALL else (self.p, self.q)

    @property
    def real_dim(self) -> int:
        return 2 * self.dim

    @cached_property
    def frame(self) -> List[np.ndarray]:
        """Minimal tripotents e_1 ... e_r"""
        rows, cols = self.matrix_shape
        frame = []
        for j in range(self.rank):
            e = np.zeros((rows, cols), dtype=complex)
            e[j, j] = 1.0
            frame.append(e.reshape(-1))
        return frame

    @cached_property
    def kernel(self):
        """Bilinear triple kernel used by every algebraic map on this domain"""
        from src.domains.triple import BallKernel, MatrixKernel

        if self.kind == BALL:
            return BallKernel(self)
        return MatrixKernel(self)

    def as_points(self, z) -> np.ndarray:
        """
        Coerce coordinates to a complex array with trailing axis ``dim``

        Args:
            z: scalar (disk only), vector or stack of vectors; matrix
                points may also be given with trailing shape (p, q)

        Returns:
            Complex array of shape (..., dim)
        """
        arr = np.asarray(z, dtype=complex)
        if self.kind == MATRIX and arr.ndim >= 2 and arr.shape[-2:] == (self.p, self.q):
            arr = arr.reshape(arr.shape[:-2] + (self.dim,))
        elif arr.ndim == 0:
            if self.dim != 1:
                raise DimensionMismatch(f"Scalar point given for {self.label} (dim {self.dim})")
            arr = arr.reshape(1)
        if arr.shape[-1] != self.dim:
            raise DimensionMismatch(
                f"Expected trailing dimension {self.dim} for {self.label}, got {arr.shape}"
            )
        return arr

    def as_matrix(self, z: np.ndarray) -> np.ndarray:
        """View coordinates (..., dim) as matrices (..., rows, cols)"""
        return np.reshape(z, np.shape(z)[:-1] + self.matrix_shape)

    def operator_norm(self, z) -> np.ndarray:
        z = self.as_points(z)
        if self.kind == BALL:
            return np.linalg.norm(z, axis=-1)
        return np.linalg.norm(self.as_matrix(z), ord=2, axis=(-2, -1))

    def boundary_distance(self, z) -> np.ndarray:
        """1 - |z| for the ball, 1 - largest singular value for matrices"""
        return 1.0 - self.operator_norm(z)

    def contains(self, z, margin: float = 0.0) -> np.ndarray:
        return self.boundary_distance(z) > margin

    def __str__(self) -> str:
        return self.label
