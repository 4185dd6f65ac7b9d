"""Multilinear maps as dense exact tensors, with the Hochschild differential
and the Gerstenhaber insertion products and bracket.

Sign conventions, used verbatim everywhere in this package:

* an arity-``n`` map has graded degree ``n - 1``;
* ``delta f(x_1,...,x_{n+1}) = x_1 f(x_2,...,x_{n+1})
  + sum_{i=1}^{n} (-1)^i f(x_1,...,x_i x_{i+1},...,x_{n+1})
  + (-1)^{n+1} f(x_1,...,x_n) x_{n+1}``;
* ``(f o_i g)`` plugs ``g`` into the ``i``-th slot of ``f`` (1-based);
* ``f o g = sum_{i=1}^{m+1} (-1)^{n(i+1)} f o_i g`` where ``n = deg g`` and
  ``m = deg f``;
* ``[f, g] = f o g - (-1)^{m n} g o f``.

These choices satisfy ``delta f = (-1)^{arity(f)-1} [m, f]`` for the
multiplication map ``m`` of an associative algebra; the test suite gates the
package on that identity.  One consequence worth spelling out: the plain
adjoint ``d = [m, -]`` obeys the textbook derivation axiom
``d[f,g] = [df,g] + (-1)^{deg f}[f,dg]``, while the Hochschild ``delta``
(differing from ``d`` by ``(-1)^{arity-1}``) obeys the equivalent rule
``delta[f,g] = (-1)^{deg g}[delta f,g] + [f,delta g]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Sequence, Tuple

from .algebra import Algebra
from .fields import Field, Scalar
from .linalg import Vector, zero_vector


def _flat_size(dims: Sequence[int]) -> int:
    return reduce(lambda a, b: a * b, dims, 1)


@dataclass(frozen=True)
class MultilinearMap:
    """An n-ary multilinear map stored as a dense coefficient tensor.

    ``coeffs`` is flat with the target index outermost:
    ``f(e_{i_1},...,e_{i_n}) = sum_k coeffs[k * prod(source_dims) + flat(i)] e_k``.
    Arity 0 is allowed; such a map is just a vector in the target.
    """

    field: Field
    source_dims: Tuple[int, ...]
    target_dim: int
    coeffs: Tuple[Scalar, ...]

    def __post_init__(self):
        if self.target_dim < 1 or any(d < 1 for d in self.source_dims):
            raise ValueError("dimensions must be positive")
        if len(self.coeffs) != self.target_dim * _flat_size(self.source_dims):
            raise ValueError("coefficient tensor has wrong size")

    # -- shape ------------------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.source_dims)

    @property
    def degree(self) -> int:
        """Graded degree: arity minus one."""
        return self.arity - 1

    @property
    def input_size(self) -> int:
        return _flat_size(self.source_dims)

    def is_uniform(self, dim: int) -> bool:
        return all(d == dim for d in self.source_dims)

    def _flat_index(self, idxs: Sequence[int]) -> int:
        off = 0
        for d, i in zip(self.source_dims, idxs):
            off = off * d + i
        return off

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, field: Field, source_dims: Sequence[int], target_dim: int) -> "MultilinearMap":
        size = target_dim * _flat_size(source_dims)
        return cls(field, tuple(source_dims), target_dim, (field.zero,) * size)

    @classmethod
    def from_function(
        cls,
        field: Field,
        source_dims: Sequence[int],
        target_dim: int,
        fn: Callable[[Tuple[int, ...]], Vector],
    ) -> "MultilinearMap":
        """Tabulate ``fn`` on all basis tuples; ``fn`` returns target vectors."""
        dims = tuple(source_dims)
        in_size = _flat_size(dims)
        buf = [field.zero] * (target_dim * in_size)
        for flat, idxs in enumerate(itertools.product(*(range(d) for d in dims))):
            vec = fn(idxs)
            for k, v in enumerate(vec):
                if v != 0:
                    buf[k * in_size + flat] = v
        return cls(field, dims, target_dim, tuple(buf))

    @classmethod
    def from_entries(
        cls,
        field: Field,
        source_dims: Sequence[int],
        target_dim: int,
        entries: Iterable[Tuple],
    ) -> "MultilinearMap":
        """Entries are ``(k, i_1, ..., i_n, coeff)``; absent entries are zero."""
        dims = tuple(source_dims)
        in_size = _flat_size(dims)
        buf = [field.zero] * (target_dim * in_size)
        for entry in entries:
            *idx, coeff = entry
            k, rest = idx[0], idx[1:]
            if len(rest) != len(dims):
                raise ValueError(f"entry {entry!r} has wrong arity")
            if not 0 <= k < target_dim or any(
                not 0 <= i < d for i, d in zip(rest, dims)
            ):
                raise ValueError(f"entry {entry!r} out of range")
            off = 0
            for d, i in zip(dims, rest):
                off = off * d + i
            buf[k * in_size + off] = field.coerce(coeff)
        return cls(field, dims, target_dim, tuple(buf))

    # -- access -----------------------------------------------------------

    def entry(self, k: int, idxs: Sequence[int]) -> Scalar:
        return self.coeffs[k * self.input_size + self._flat_index(idxs)]

    def column(self, idxs: Sequence[int]) -> Vector:
        """The value on a basis tuple, as a target vector."""
        off = self._flat_index(idxs)
        step = self.input_size
        return tuple(self.coeffs[k * step + off] for k in range(self.target_dim))

    def apply(self, vectors: Sequence[Vector]) -> Vector:
        """Full multilinear evaluation on arbitrary vectors."""
        if len(vectors) != self.arity:
            raise ValueError("wrong number of arguments")
        for v, d in zip(vectors, self.source_dims):
            if len(v) != d:
                raise ValueError("argument length does not match slot dimension")
        f = self.field
        out = [f.zero] * self.target_dim
        for idxs in itertools.product(*(range(d) for d in self.source_dims)):
            weight = f.one
            zero = False
            for v, i in zip(vectors, idxs):
                if v[i] == 0:
                    zero = True
                    break
                weight = f.mul(weight, v[i])
            if zero:
                continue
            col = self.column(idxs)
            for k, c in enumerate(col):
                if c != 0:
                    out[k] = f.add(out[k], f.mul(weight, c))
        return tuple(out)

    def entries(self) -> Iterable[Tuple]:
        """Nonzero entries as ``(k, i_1, ..., i_n, coeff)`` in index order."""
        in_size = self.input_size
        for k in range(self.target_dim):
            for flat, idxs in enumerate(
                itertools.product(*(range(d) for d in self.source_dims))
            ):
                c = self.coeffs[k * in_size + flat]
                if c != 0:
                    yield (k, *idxs, c)

    # -- linear structure ---------------------------------------------------

    def _check_same_shape(self, other: "MultilinearMap"):
        if (
            self.field != other.field
            or self.source_dims != other.source_dims
            or self.target_dim != other.target_dim
        ):
            raise ValueError("shape or field mismatch between multilinear maps")

    def __add__(self, other: "MultilinearMap") -> "MultilinearMap":
        self._check_same_shape(other)
        f = self.field
        return MultilinearMap(
            f,
            self.source_dims,
            self.target_dim,
            tuple(f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "MultilinearMap") -> "MultilinearMap":
        self._check_same_shape(other)
        f = self.field
        return MultilinearMap(
            f,
            self.source_dims,
            self.target_dim,
            tuple(f.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> "MultilinearMap":
        f = self.field
        return MultilinearMap(
            f, self.source_dims, self.target_dim, tuple(f.neg(a) for a in self.coeffs)
        )

    def scale(self, c: Scalar) -> "MultilinearMap":
        f = self.field
        return MultilinearMap(
            f, self.source_dims, self.target_dim, tuple(f.mul(c, a) for a in self.coeffs)
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def identity_map(field: Field, dim: int) -> MultilinearMap:
    return MultilinearMap.from_function(
        field, (dim,), dim, lambda idxs: tuple(
            field.one if k == idxs[0] else field.zero for k in range(dim)
        )
    )


def multiplication_map(alg: Algebra) -> MultilinearMap:
    """The product of ``alg`` as an arity-2 map on its own space."""
    return MultilinearMap.from_function(
        alg.field, (alg.dim, alg.dim), alg.dim, lambda idxs: alg.product_row(*idxs)
    )


def hochschild_delta(f: MultilinearMap, amb: Algebra) -> MultilinearMap:
    """The Hochschild differential of ``f`` with actions from ``amb``.

    ``f`` must be an n-ary map on ``amb``'s space with values inside it;
    the outer actions are multiplications in ``amb``.
    """
    if f.field != amb.field:
        raise ValueError("field mismatch between cochain and algebra")
    if not f.is_uniform(amb.dim) or f.target_dim != amb.dim:
        raise ValueError("cochain does not live on the algebra's space")
    field = f.field
    n = f.arity
    dim = amb.dim
    minus_one = field.from_int(-1)

    def value(idxs: Tuple[int, ...]) -> Vector:
        out = [field.zero] * dim
        # x_1 * f(x_2, ..., x_{n+1})
        head = f.column(idxs[1:])
        for t, v in enumerate(head):
            if v != 0:
                row = amb.product_row(idxs[0], t)
                for k, c in enumerate(row):
                    if c != 0:
                        out[k] = field.add(out[k], field.mul(v, c))
        # (-1)^i f(..., x_i x_{i+1}, ...)
        sign = field.one
        for i in range(1, n + 1):
            sign = field.mul(sign, minus_one)
            row = amb.product_row(idxs[i - 1], idxs[i])
            for t, c in enumerate(row):
                if c == 0:
                    continue
                col = f.column(idxs[: i - 1] + (t,) + idxs[i + 1 :])
                w = field.mul(sign, c)
                for k, v in enumerate(col):
                    if v != 0:
                        out[k] = field.add(out[k], field.mul(w, v))
        # (-1)^{n+1} f(x_1, ..., x_n) * x_{n+1}
        sign = field.mul(sign, minus_one)
        tail = f.column(idxs[:n])
        for t, v in enumerate(tail):
            if v != 0:
                row = amb.product_row(t, idxs[n])
                w = field.mul(sign, v)
                for k, c in enumerate(row):
                    if c != 0:
                        out[k] = field.add(out[k], field.mul(w, c))
        return tuple(out)

    return MultilinearMap.from_function(field, (dim,) * (n + 1), dim, value)


def hochschild_delta_module(
    f: MultilinearMap,
    ring: Algebra,
    left_action: MultilinearMap,
    right_action: MultilinearMap,
) -> MultilinearMap:
    """Hochschild differential for maps ``ring^(x)n -> M`` with bimodule
    actions given as tensors ``left: ring (x) M -> M`` and
    ``right: M (x) ring -> M``."""
    m_dim = f.target_dim
    r_dim = ring.dim
    if f.field != ring.field or not f.is_uniform(r_dim):
        raise ValueError("cochain does not live on the ring's space")
    if left_action.source_dims != (r_dim, m_dim) or left_action.target_dim != m_dim:
        raise ValueError("left action has wrong shape")
    if right_action.source_dims != (m_dim, r_dim) or right_action.target_dim != m_dim:
        raise ValueError("right action has wrong shape")
    field = f.field
    n = f.arity
    minus_one = field.from_int(-1)

    def value(idxs: Tuple[int, ...]) -> Vector:
        out = list(left_action.apply([ring.basis_vector(idxs[0]), f.column(idxs[1:])]))
        sign = field.one
        for i in range(1, n + 1):
            sign = field.mul(sign, minus_one)
            row = ring.product_row(idxs[i - 1], idxs[i])
            for t, c in enumerate(row):
                if c == 0:
                    continue
                col = f.column(idxs[: i - 1] + (t,) + idxs[i + 1 :])
                w = field.mul(sign, c)
                for k, v in enumerate(col):
                    if v != 0:
                        out[k] = field.add(out[k], field.mul(w, v))
        sign = field.mul(sign, minus_one)
        tail = right_action.apply([f.column(idxs[:n]), ring.basis_vector(idxs[n])])
        for k, v in enumerate(tail):
            if v != 0:
                out[k] = field.add(out[k], field.mul(sign, v))
        return tuple(out)

    return MultilinearMap.from_function(field, (r_dim,) * (n + 1), m_dim, value)


def circ_i(f: MultilinearMap, g: MultilinearMap, i: int) -> MultilinearMap:
    """Plug ``g`` into slot ``i`` of ``f`` (1-based)."""
    if f.field != g.field:
        raise ValueError("field mismatch")
    if not 1 <= i <= f.arity:
        raise ValueError(f"slot {i} out of range for arity {f.arity}")
    if g.target_dim != f.source_dims[i - 1]:
        raise ValueError("target of inner map does not match the slot space")
    field = f.field
    out_dims = f.source_dims[: i - 1] + g.source_dims + f.source_dims[i:]
    pre = i - 1
    mid = g.arity

    def value(idxs: Tuple[int, ...]) -> Vector:
        head = idxs[:pre]
        inner = idxs[pre : pre + mid]
        tail = idxs[pre + mid :]
        plug = g.column(inner)
        out = [field.zero] * f.target_dim
        for t, v in enumerate(plug):
            if v == 0:
                continue
            col = f.column(head + (t,) + tail)
            for k, c in enumerate(col):
                if c != 0:
                    out[k] = field.add(out[k], field.mul(v, c))
        return tuple(out)

    return MultilinearMap.from_function(field, out_dims, f.target_dim, value)


def _sign(field: Field, exponent: int) -> Scalar:
    return field.one if exponent % 2 == 0 else field.from_int(-1)


def circ(f: MultilinearMap, g: MultilinearMap) -> MultilinearMap:
    """Signed sum of all insertions: ``sum_i (-1)^{deg(g)(i+1)} f o_i g``.

    Both maps must be cochains on one space (uniform slots of the dimension
    that ``g`` targets); for arity-0 ``f`` the empty sum is the zero map.
    """
    dim = g.target_dim
    if not f.is_uniform(dim) or not g.is_uniform(dim):
        raise ValueError("insertion sum needs cochains on a single space")
    if f.arity == 0:
        out_arity = g.arity - 1
        if out_arity < 0:
            raise ValueError("insertion sum of two arity-0 maps is undefined")
        return MultilinearMap.zero(f.field, (dim,) * out_arity, f.target_dim)
    n = g.degree
    total = None
    for i in range(1, f.arity + 1):
        term = circ_i(f, g, i)
        if _sign(f.field, n * (i + 1)) != f.field.one:
            term = -term
        total = term if total is None else total + term
    return total


def gerstenhaber_bracket(f: MultilinearMap, g: MultilinearMap) -> MultilinearMap:
    """``[f, g] = f o g - (-1)^{deg(f) deg(g)} g o f``."""
    dim = g.target_dim
    if f.target_dim != dim:
        raise ValueError("bracket needs cochains valued in one space")
    left = circ(f, g)
    right = circ(g, f)
    if _sign(f.field, f.degree * g.degree) != f.field.one:
        return left + right
    return left - right


def delta_as_bracket(f: MultilinearMap, m: MultilinearMap) -> MultilinearMap:
    """The differential in bracket form: ``(-1)^{arity(f)-1} [m, f]``.

    ``m`` is an arity-2 candidate multiplication on the same space.  When
    ``m`` is the product of an associative algebra this agrees with
    :func:`hochschild_delta`.
    """
    if m.arity != 2:
        raise ValueError("expected an arity-2 multiplication map")
    result = gerstenhaber_bracket(m, f)
    if _sign(f.field, f.arity - 1) != f.field.one:
        result = -result
    return result
