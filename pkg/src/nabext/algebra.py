"""Finite-dimensional algebras presented by structure constants.

An :class:`Algebra` is a vector space with a fixed basis and a bilinear
product ``e_i * e_j = sum_k c[i][j][k] e_k``.  Associativity is a checkable
predicate, not an invariant: candidate products produced during enumeration
are allowed to be non-associative and are filtered afterwards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .fields import Field, FieldError, Scalar
from .linalg import Vector, is_zero_vector, vec_sub, zero_vector


@dataclass(frozen=True)
class SplitSpace:
    """A direct-sum decomposition: the first ``a_dim`` basis indices form the
    A block, the remaining ``b_dim`` the B block."""

    a_dim: int
    b_dim: int

    def __post_init__(self):
        if self.a_dim < 0 or self.b_dim < 0 or self.a_dim + self.b_dim == 0:
            raise ValueError("split blocks must have nonnegative, nonzero total dimension")

    @property
    def dim(self) -> int:
        return self.a_dim + self.b_dim

    @property
    def a_indices(self) -> range:
        return range(self.a_dim)

    @property
    def b_indices(self) -> range:
        return range(self.a_dim, self.dim)

    def block_of(self, index: int) -> str:
        if not 0 <= index < self.dim:
            raise IndexError(f"index {index} outside space of dimension {self.dim}")
        return "A" if index < self.a_dim else "B"

    def block_indices(self, block: str) -> range:
        if block == "A":
            return self.a_indices
        if block == "B":
            return self.b_indices
        raise ValueError(f"unknown block {block!r}")


@dataclass(frozen=True)
class Algebra:
    """Algebra with basis labels and a dense structure-constant table.

    ``table`` is flat with layout ``c[i][j][k] = table[(i*dim + j)*dim + k]``,
    the coefficient of ``e_k`` in ``e_i * e_j``.
    """

    field: Field
    dim: int
    basis: Tuple[str, ...]
    table: Tuple[Scalar, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("algebra dimension must be positive")
        if len(self.basis) != self.dim:
            raise ValueError("basis label count does not match dimension")
        if len(set(self.basis)) != self.dim:
            raise ValueError("basis labels must be distinct")
        if len(self.table) != self.dim ** 3:
            raise ValueError("structure-constant table has wrong size")

    @classmethod
    def from_products(
        cls,
        field: Field,
        basis: Sequence[str],
        products: Mapping[Tuple[int, int], Mapping[int, object]],
    ) -> "Algebra":
        """Build from a sparse product description; absent entries are zero."""
        dim = len(basis)
        table = [field.zero] * dim ** 3
        for (i, j), row in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"product index ({i},{j}) out of range")
            for k, coeff in row.items():
                if not 0 <= k < dim:
                    raise ValueError(f"output index {k} out of range")
                table[(i * dim + j) * dim + k] = field.coerce(coeff)
        return cls(field, dim, tuple(basis), tuple(table))

    @classmethod
    def zero_product(cls, field: Field, basis: Sequence[str]) -> "Algebra":
        return cls.from_products(field, basis, {})

    def c(self, i: int, j: int, k: int) -> Scalar:
        return self.table[(i * self.dim + j) * self.dim + k]

    def product_row(self, i: int, j: int) -> Vector:
        """The vector ``e_i * e_j``."""
        base = (i * self.dim + j) * self.dim
        return self.table[base : base + self.dim]

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))

    def zero_vector(self) -> Vector:
        return zero_vector(self.field, self.dim)

    def multiply(self, x: Vector, y: Vector) -> Vector:
        """Bilinear extension of the structure constants to vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length does not match algebra dimension")
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                coeff = f.mul(xi, yj)
                row = self.product_row(i, j)
                for k, ck in enumerate(row):
                    if ck != 0:
                        out[k] = f.add(out[k], f.mul(coeff, ck))
        return tuple(out)

    def associator(self, x: Vector, y: Vector, z: Vector) -> Vector:
        """``(x*y)*z - x*(y*z)``."""
        return vec_sub(
            self.field,
            self.multiply(self.multiply(x, y), z),
            self.multiply(x, self.multiply(y, z)),
        )

    def associativity_witness(self) -> Optional[Tuple[int, int, int]]:
        """First basis triple with nonzero associator, or None."""
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            a = self.associator(self.basis_vector(i), self.basis_vector(j), self.basis_vector(k))
            if not is_zero_vector(a):
                return (i, j, k)
        return None

    def is_associative(self) -> bool:
        # Vanishing on all basis triples suffices by multilinearity.
        return self.associativity_witness() is None

    def has_zero_product(self) -> bool:
        return all(v == 0 for v in self.table)


def _disambiguate(names_a: Sequence[str], names_b: Sequence[str]) -> Tuple[str, ...]:
    if set(names_a) & set(names_b):
        return tuple(f"{n}.A" for n in names_a) + tuple(f"{n}.B" for n in names_b)
    return tuple(names_a) + tuple(names_b)


def direct_sum_space(a: Algebra, b: Algebra) -> Tuple[Algebra, SplitSpace]:
    """The algebra on A (+) B with blockwise product and zero cross terms.

    Returns the algebra together with the split bookkeeping (A block first).
    """
    if a.field != b.field:
        raise FieldError("direct sum requires a common coefficient field")
    split = SplitSpace(a.dim, b.dim)
    dim = split.dim
    field = a.field
    table = [field.zero] * dim ** 3
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                table[(i * dim + j) * dim + k] = a.c(i, j, k)
    off = a.dim
    for i in range(b.dim):
        for j in range(b.dim):
            for k in range(b.dim):
                table[((i + off) * dim + (j + off)) * dim + (k + off)] = b.c(i, j, k)
    return (
        Algebra(field, dim, _disambiguate(a.basis, b.basis), tuple(table)),
        split,
    )
