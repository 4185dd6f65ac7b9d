"""Cocycle triples for twisted products on a direct sum, the Maurer-Cartan
residual, gauge transformations, and the abelian specialization.

A cocycle is a triple of bilinear maps ``phi: B (x) A -> A`` (left twist),
``psi: A (x) B -> A`` (right twist) and ``chi: B (x) B -> A`` (curvature).
Valid triples are exactly the ones whose twisted product on ``A (+) B``

    (a1 + b1)(a2 + b2) = a1 a2 + phi(b1, a2) + psi(a1, b2) + chi(b1, b2) + b1 b2

is associative; invalid candidates stay representable so enumeration can
filter them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from .algebra import Algebra, SplitSpace, _disambiguate, direct_sum_space
from .cochains import (
    MultilinearMap,
    circ,
    gerstenhaber_bracket,
    hochschild_delta,
    hochschild_delta_module,
)
from .fields import Field, FieldError, Scalar
from .linalg import Vector, is_zero_vector, vec_add, vec_neg, vec_sub
from .splitspace import (
    embed_block_map,
    extract_component,
    project_block_map,
    require_in_L,
)


class CrossCheckError(RuntimeError):
    """An internal consistency identity failed; this indicates a bug, not
    bad input, and is never raised for any input the test suite covers."""


class ViolationKind(Enum):
    EQ1_LEFT_TWIST = "eq1_left_twist"
    EQ2_RIGHT_TWIST = "eq2_right_twist"
    EQ3_COMMUTE = "eq3_commute"
    EQ4_DERIVATION = "eq4_derivation"
    EQ5_CHI_COCYCLE = "eq5_chi_cocycle"


@dataclass(frozen=True)
class CocycleViolation:
    which: ViolationKind
    witness: Tuple[int, ...]
    discrepancy: Tuple[Scalar, ...]
    detail: str = ""

    def __post_init__(self):
        if is_zero_vector(self.discrepancy):
            raise ValueError("a violation must carry a nonzero discrepancy")


@dataclass(frozen=True)
class NabCocycle:
    """Candidate cocycle triple; validity is a predicate, not an invariant."""

    A: Algebra
    B: Algebra
    phi: MultilinearMap  # (b_dim, a_dim) -> a_dim
    psi: MultilinearMap  # (a_dim, b_dim) -> a_dim
    chi: MultilinearMap  # (b_dim, b_dim) -> a_dim

    def __post_init__(self):
        a, b = self.A.dim, self.B.dim
        if self.A.field != self.B.field:
            raise FieldError("cocycle requires one common field")
        for part, dims, name in (
            (self.phi, (b, a), "phi"),
            (self.psi, (a, b), "psi"),
            (self.chi, (b, b), "chi"),
        ):
            if part.field != self.A.field:
                raise FieldError(f"{name} has a mismatched field")
            if part.source_dims != dims or part.target_dim != a:
                raise ValueError(f"{name} has shape {part.source_dims}->{part.target_dim}, expected {dims}->{a}")

    @classmethod
    def zero(cls, a: Algebra, b: Algebra) -> "NabCocycle":
        f = a.field
        return cls(
            a,
            b,
            MultilinearMap.zero(f, (b.dim, a.dim), a.dim),
            MultilinearMap.zero(f, (a.dim, b.dim), a.dim),
            MultilinearMap.zero(f, (b.dim, b.dim), a.dim),
        )


@dataclass(frozen=True)
class GaugeParam:
    """A linear map B -> A: ``matrix[i][j]`` is the ``a_i`` coefficient of
    the image of ``b_j``."""

    matrix: Tuple[Tuple[Scalar, ...], ...]

    @classmethod
    def zero(cls, field: Field, a_dim: int, b_dim: int) -> "GaugeParam":
        return cls(tuple((field.zero,) * b_dim for _ in range(a_dim)))

    @property
    def a_dim(self) -> int:
        return len(self.matrix)

    @property
    def b_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def column(self, j: int) -> Vector:
        """The image of the j-th B basis vector, as an A vector."""
        return tuple(row[j] for row in self.matrix)

    def apply(self, field: Field, bvec: Vector) -> Vector:
        out = [field.zero] * self.a_dim
        for j, c in enumerate(bvec):
            if c != 0:
                for i in range(self.a_dim):
                    if self.matrix[i][j] != 0:
                        out[i] = field.add(out[i], field.mul(c, self.matrix[i][j]))
        return tuple(out)

    def negate(self, field: Field) -> "GaugeParam":
        return GaugeParam(tuple(tuple(field.neg(v) for v in row) for row in self.matrix))


# ---------------------------------------------------------------------------
# cocycle equations
# ---------------------------------------------------------------------------

def _equation_defects(c: NabCocycle, early_exit: bool) -> List[CocycleViolation]:
    """Defects of the five twisted-product equations on all basis tuples.

    The right-twist equation composes in the order forced by associativity
    of the twisted product: ``psi_{b1}(psi_{b2}(a)) = psi_{b2 b1}(a)
    + a chi(b2, b1)``.  The derivation condition is checked through the
    three Leibniz-type identities (the form associativity consumes); the
    weaker "difference is a derivation" reading is available separately via
    :func:`derivation_condition_defect`.
    """
    A, B, phi, psi, chi = c.A, c.B, c.phi, c.psi, c.chi
    f = A.field
    out: List[CocycleViolation] = []
    a_idx, b_idx = range(A.dim), range(B.dim)

    def record(kind, witness, disc, detail=""):
        out.append(CocycleViolation(kind, witness, disc, detail))
        return early_exit

    def a_basis(i):
        return A.basis_vector(i)

    def b_basis(j):
        return B.basis_vector(j)

    for j1, j2, i in itertools.product(b_idx, b_idx, a_idx):
        lhs = phi.apply([b_basis(j1), phi.column((j2, i))])
        rhs = vec_add(
            f,
            phi.apply([B.product_row(j1, j2), a_basis(i)]),
            A.multiply(chi.column((j1, j2)), a_basis(i)),
        )
        disc = vec_sub(f, lhs, rhs)
        if not is_zero_vector(disc):
            if record(ViolationKind.EQ1_LEFT_TWIST, (j1, j2, i), disc):
                return out

    for j1, j2, i in itertools.product(b_idx, b_idx, a_idx):
        lhs = psi.apply([psi.column((i, j2)), b_basis(j1)])
        rhs = vec_add(
            f,
            psi.apply([a_basis(i), B.product_row(j2, j1)]),
            A.multiply(a_basis(i), chi.column((j2, j1))),
        )
        disc = vec_sub(f, lhs, rhs)
        if not is_zero_vector(disc):
            if record(ViolationKind.EQ2_RIGHT_TWIST, (j1, j2, i), disc):
                return out

    for j1, j2, i in itertools.product(b_idx, b_idx, a_idx):
        lhs = phi.apply([b_basis(j1), psi.column((i, j2))])
        rhs = psi.apply([phi.column((j1, i)), b_basis(j2)])
        disc = vec_sub(f, lhs, rhs)
        if not is_zero_vector(disc):
            if record(ViolationKind.EQ3_COMMUTE, (j1, j2, i), disc):
                return out

    for i1, i2, j in itertools.product(a_idx, a_idx, b_idx):
        row = A.product_row(i1, i2)
        checks = (
            (
                "psi_leibniz",
                vec_sub(
                    f,
                    psi.apply([row, b_basis(j)]),
                    A.multiply(a_basis(i1), psi.column((i2, j))),
                ),
            ),
            (
                "phi_leibniz",
                vec_sub(
                    f,
                    phi.apply([b_basis(j), row]),
                    A.multiply(phi.column((j, i1)), a_basis(i2)),
                ),
            ),
            (
                "cross_compat",
                vec_sub(
                    f,
                    A.multiply(psi.column((i1, j)), a_basis(i2)),
                    A.multiply(a_basis(i1), phi.column((j, i2))),
                ),
            ),
        )
        for detail, disc in checks:
            if not is_zero_vector(disc):
                if record(ViolationKind.EQ4_DERIVATION, (i1, i2, j), disc, detail):
                    return out

    for j1, j2, j3 in itertools.product(b_idx, b_idx, b_idx):
        acc = vec_neg(f, phi.apply([b_basis(j1), chi.column((j2, j3))]))
        acc = vec_add(f, acc, chi.apply([B.product_row(j1, j2), b_basis(j3)]))
        acc = vec_sub(f, acc, chi.apply([b_basis(j1), B.product_row(j2, j3)]))
        acc = vec_add(f, acc, psi.apply([chi.column((j1, j2)), b_basis(j3)]))
        if not is_zero_vector(acc):
            if record(ViolationKind.EQ5_CHI_COCYCLE, (j1, j2, j3), acc):
                return out

    return out


def check_cocycle(c: NabCocycle, *, check_ambient: bool = True) -> List[CocycleViolation]:
    """All violations of the five cocycle equations; empty means valid."""
    if check_ambient:
        if not c.A.is_associative():
            raise ValueError("kernel algebra is not associative")
        if not c.B.is_associative():
            raise ValueError("quotient algebra is not associative")
    return _equation_defects(c, early_exit=False)


def is_valid_cocycle(c: NabCocycle) -> bool:
    """Early-exit validity test (ambient associativity is the caller's job)."""
    return not _equation_defects(c, early_exit=True)


def derivation_condition_defect(c: NabCocycle) -> Optional[CocycleViolation]:
    """First failure of the literal reading "psi - phi maps into derivations",
    or None.  Informational: validity is gated on the three Leibniz-type
    identities, which imply this condition but not conversely."""
    A, B, phi, psi = c.A, c.B, c.phi, c.psi
    f = A.field

    def diff_on(bvec_j: int, avec: Vector) -> Vector:
        return vec_sub(
            f,
            psi.apply([avec, B.basis_vector(bvec_j)]),
            phi.apply([B.basis_vector(bvec_j), avec]),
        )

    for i1, i2, j in itertools.product(range(A.dim), range(A.dim), range(B.dim)):
        a1, a2 = A.basis_vector(i1), A.basis_vector(i2)
        lhs = diff_on(j, A.multiply(a1, a2))
        rhs = vec_add(
            f,
            A.multiply(diff_on(j, a1), a2),
            A.multiply(a1, diff_on(j, a2)),
        )
        disc = vec_sub(f, lhs, rhs)
        if not is_zero_vector(disc):
            return CocycleViolation(
                ViolationKind.EQ4_DERIVATION, (i1, i2, j), disc, "derivation"
            )
    return None


# ---------------------------------------------------------------------------
# the twisted product
# ---------------------------------------------------------------------------

def build_extension(c: NabCocycle) -> Tuple[Algebra, SplitSpace]:
    """The twisted product on the split space A (+) B.

    No validity requirement: associativity of the result is a theorem to
    test, not a precondition.
    """
    A, B = c.A, c.B
    split = SplitSpace(A.dim, B.dim)
    dim = split.dim
    f = A.field
    off = A.dim
    table = [f.zero] * dim ** 3
    for i, j in itertools.product(range(dim), repeat=2):
        if i < off and j < off:
            row = A.product_row(i, j)
            for k, v in enumerate(row):
                table[(i * dim + j) * dim + k] = v
        elif i < off:  # A x B: right twist
            row = c.psi.column((i, j - off))
            for k, v in enumerate(row):
                table[(i * dim + j) * dim + k] = v
        elif j < off:  # B x A: left twist
            row = c.phi.column((i - off, j))
            for k, v in enumerate(row):
                table[(i * dim + j) * dim + k] = v
        else:  # B x B: curvature into A plus the B product
            arow = c.chi.column((i - off, j - off))
            for k, v in enumerate(arow):
                table[(i * dim + j) * dim + k] = v
            brow = B.product_row(i - off, j - off)
            for k, v in enumerate(brow):
                table[(i * dim + j) * dim + (k + off)] = v
    return Algebra(f, dim, _disambiguate(A.basis, B.basis), tuple(table)), split


def base_context(c: NabCocycle) -> Tuple[Algebra, SplitSpace]:
    """The untwisted blockwise product on the same split space."""
    return direct_sum_space(c.A, c.B)


def associator_component_table(m: Algebra, split: SplitSpace):
    """All 16 embedded components of the associator of ``m``.

    Computed directly from the product (no cochain machinery), so it can
    serve as an independent oracle for the Maurer-Cartan residual.
    """
    if m.dim != split.dim:
        raise ValueError("algebra does not live on the split space")
    assoc = MultilinearMap.from_function(
        m.field,
        (m.dim,) * 3,
        m.dim,
        lambda idxs: m.associator(*(m.basis_vector(i) for i in idxs)),
    )
    from .splitspace import all_components

    return all_components(assoc, split)


# ---------------------------------------------------------------------------
# Maurer-Cartan side
# ---------------------------------------------------------------------------

def cocycle_to_mc(c: NabCocycle) -> MultilinearMap:
    """Assemble chi + phi + psi as one A-valued arity-2 map on the split
    space (components at patterns BB, BA, AB; the AA component is zero)."""
    split = SplitSpace(c.A.dim, c.B.dim)
    return (
        embed_block_map(c.chi, split, "BB", "A")
        + embed_block_map(c.phi, split, "BA", "A")
        + embed_block_map(c.psi, split, "AB", "A")
    )


def cocycle_from_mc(x: MultilinearMap, a: Algebra, b: Algebra) -> NabCocycle:
    """Recover the triple from an assembled element (inverse of
    :func:`cocycle_to_mc`); requires the AA component to vanish."""
    split = SplitSpace(a.dim, b.dim)
    require_in_L(x, split, "assembled element")
    if not extract_component(x, split, "AA", "A").is_zero():
        raise ValueError("element has a nonzero AA component; not a cocycle assembly")
    return NabCocycle(
        a,
        b,
        project_block_map(x, split, "BA", "A"),
        project_block_map(x, split, "AB", "A"),
        project_block_map(x, split, "BB", "A"),
    )


def mc_context(c: NabCocycle) -> Tuple[MultilinearMap, Algebra, SplitSpace]:
    """(assembled element, base algebra, split) for one cocycle."""
    base, split = base_context(c)
    return cocycle_to_mc(c), base, split


def mc_residual(x: MultilinearMap, base: Algebra, split: SplitSpace) -> MultilinearMap:
    """``delta x + x o x`` for a degree-1 element.

    For degree-1 ``x`` the self-insertion ``x o x`` equals ``[x, x] / 2``
    whenever 2 is invertible, and is the characteristic-free form, so this
    residual is meaningful over F_2 as well.
    """
    if x.arity != 2:
        raise ValueError("Maurer-Cartan residual is defined for arity-2 elements")
    require_in_L(x, split, "Maurer-Cartan candidate")
    return hochschild_delta(x, base) + circ(x, x)


def associator_residual(x: MultilinearMap, base: Algebra, split: SplitSpace) -> MultilinearMap:
    """``x o x - delta x``: the associator of the twisted product
    ``base + x`` when ``base`` is associative.

    Over F_2 this coincides with :func:`mc_residual`; in odd or zero
    characteristic it is the residual whose vanishing is equivalent to
    associativity of the twisted product (the two residuals are exchanged
    by ``x -> -x``).
    """
    if x.arity != 2:
        raise ValueError("associator residual is defined for arity-2 elements")
    require_in_L(x, split, "twist candidate")
    return circ(x, x) - hochschild_delta(x, base)


def is_mc(x: MultilinearMap, base: Algebra, split: SplitSpace) -> bool:
    return mc_residual(x, base, split).is_zero()


# ---------------------------------------------------------------------------
# gauge action
# ---------------------------------------------------------------------------

def beta_element(beta: GaugeParam, split: SplitSpace, field: Field) -> MultilinearMap:
    """The gauge parameter as a degree-0 element: an arity-1 A-valued map on
    the split space vanishing on the A block."""
    if beta.a_dim != split.a_dim or beta.b_dim != split.b_dim:
        raise ValueError("gauge parameter shape does not match the split")

    def value(idxs):
        (i,) = idxs
        if i < split.a_dim:
            return (field.zero,) * split.dim
        col = beta.column(i - split.a_dim)
        return tuple(col) + (field.zero,) * split.b_dim

    return MultilinearMap.from_function(field, (split.dim,), split.dim, value)


def _require_twist_shape(x: MultilinearMap, split: SplitSpace):
    if x.arity != 2:
        raise ValueError("gauge transforms act on arity-2 elements")
    require_in_L(x, split, "gauge transform input")
    if not extract_component(x, split, "AA", "A").is_zero():
        raise ValueError(
            "gauge transform input must have zero AA component (twist shape)"
        )


def gauge_closed_form(
    x: MultilinearMap, beta: GaugeParam, base: Algebra, split: SplitSpace
) -> MultilinearMap:
    """The division-free gauge transform, valid in every characteristic:

        x'(e1, e2) = x(e1, e2) - phi_{b1}(beta(b2)) - psi_{b2}(beta(b1))
                     - beta(b1) a2 - a1 beta(b2) + beta(b1 b2)
                     + beta(b1) beta(b2)

    where (chi, phi, psi) are the components of ``x`` and the products are
    the blockwise base products.  Built term by term from the components,
    independently of the bracket machinery, so the series form can be
    cross-checked against it.
    """
    _require_twist_shape(x, split)
    if beta.a_dim != split.a_dim or beta.b_dim != split.b_dim:
        raise ValueError("gauge parameter shape does not match the split")
    f = base.field
    a_dim, b_dim = split.a_dim, split.b_dim
    off = a_dim
    phi = project_block_map(x, split, "BA", "A")
    psi = project_block_map(x, split, "AB", "A")

    def a_unit(i: int) -> Vector:
        return tuple(f.one if t == i else f.zero for t in range(a_dim))

    def b_unit(j: int) -> Vector:
        return tuple(f.one if t == j else f.zero for t in range(b_dim))

    def a_mul(v: Vector, w: Vector) -> Vector:
        # products inside the A block of the base algebra
        full = base.multiply(tuple(v) + (f.zero,) * b_dim, tuple(w) + (f.zero,) * b_dim)
        return full[:a_dim]

    def b_product_row(j1: int, j2: int) -> Vector:
        return base.product_row(off + j1, off + j2)[off:]

    def bb_term(idxs) -> Vector:
        j1, j2 = idxs
        col1, col2 = beta.column(j1), beta.column(j2)
        acc = vec_neg(f, phi.apply([b_unit(j1), col2]))
        acc = vec_sub(f, acc, psi.apply([col1, b_unit(j2)]))
        acc = vec_add(f, acc, beta.apply(f, b_product_row(j1, j2)))
        acc = vec_add(f, acc, a_mul(col1, col2))
        return acc

    def ba_term(idxs) -> Vector:
        j1, i2 = idxs
        return vec_neg(f, a_mul(beta.column(j1), a_unit(i2)))

    def ab_term(idxs) -> Vector:
        i1, j2 = idxs
        return vec_neg(f, a_mul(a_unit(i1), beta.column(j2)))

    correction = (
        embed_block_map(
            MultilinearMap.from_function(f, (b_dim, b_dim), a_dim, bb_term),
            split, "BB", "A",
        )
        + embed_block_map(
            MultilinearMap.from_function(f, (b_dim, a_dim), a_dim, ba_term),
            split, "BA", "A",
        )
        + embed_block_map(
            MultilinearMap.from_function(f, (a_dim, b_dim), a_dim, ab_term),
            split, "AB", "A",
        )
    )
    return x + correction


#: Iteration bound for the gauge series; the parameter is nilpotent of order
#: 2 on twist-shaped elements, so anything past arity + 2 signals a bug.
_SERIES_CAP = 6


def gauge_series(
    x: MultilinearMap, beta: GaugeParam, base: Algebra, split: SplitSpace
) -> MultilinearMap:
    """The exponential form ``exp(ad_beta) x + g_beta`` with
    ``g_beta = - sum_{n>=0} (ad_beta)^n (delta beta) / (n+1)!``.

    The series is summed until the iterated brackets vanish (verified, not
    assumed); in characteristic 2 the 1/2! coefficient does not exist and
    callers must use :func:`gauge_closed_form` instead.
    """
    if base.field.characteristic == 2:
        raise FieldError(
            "gauge series needs 1/2; use gauge_closed_form in characteristic 2"
        )
    _require_twist_shape(x, split)
    f = base.field
    b_elt = beta_element(beta, split, f)

    def summed(first_term: MultilinearMap, coeff_den) -> MultilinearMap:
        # sum of (ad_beta)^n term / den(n), stopping at the verified
        # nilpotency order
        total = None
        term = first_term
        n = 0
        while not term.is_zero():
            if n > _SERIES_CAP:
                raise CrossCheckError("gauge parameter failed to be ad-nilpotent")
            scaled = term.scale(f.inv(f.from_int(coeff_den(n))))
            total = scaled if total is None else total + scaled
            term = gerstenhaber_bracket(b_elt, term)
            n += 1
        if total is None:
            total = MultilinearMap.zero(f, first_term.source_dims, first_term.target_dim)
        return total

    exp_part = summed(x, lambda n: math.factorial(n))
    g_part = summed(hochschild_delta(b_elt, base), lambda n: math.factorial(n + 1))
    return exp_part - g_part


def check_gauge_witness(
    x: MultilinearMap,
    x_prime: MultilinearMap,
    beta: GaugeParam,
    base: Algebra,
    split: SplitSpace,
) -> bool:
    """Exact check that ``beta`` gauges ``x`` to ``x_prime``."""
    return gauge_closed_form(x, beta, base, split) == x_prime


def apply_equivalence(c: NabCocycle, beta: GaugeParam) -> NabCocycle:
    """The equivalence transform on triples:

        phi'(b, a)   = phi(b, a) - beta(b) a
        psi'(a, b)   = psi(a, b) - a beta(b)
        chi'(b1, b2) = chi(b1, b2) - phi(b1, beta(b2)) - psi(beta(b1), b2)
                       + beta(b1 b2) + beta(b1) beta(b2)

    This is the transform realized by changing the section ``s`` of an
    extension to ``s - beta``; it matches the gauge transform of the
    assembled element component by component (a tested identity) and is
    inverted by ``-beta``.
    """
    A, B = c.A, c.B
    f = A.field
    if beta.a_dim != A.dim or beta.b_dim != B.dim:
        raise ValueError("gauge parameter shape does not match the cocycle")

    def phi_new(idxs):
        j, i = idxs
        return vec_sub(
            f,
            c.phi.column((j, i)),
            A.multiply(beta.column(j), A.basis_vector(i)),
        )

    def psi_new(idxs):
        i, j = idxs
        return vec_sub(
            f,
            c.psi.column((i, j)),
            A.multiply(A.basis_vector(i), beta.column(j)),
        )

    def chi_new(idxs):
        j1, j2 = idxs
        acc = c.chi.column((j1, j2))
        acc = vec_sub(f, acc, c.phi.apply([B.basis_vector(j1), beta.column(j2)]))
        acc = vec_sub(f, acc, c.psi.apply([beta.column(j1), B.basis_vector(j2)]))
        acc = vec_add(f, acc, beta.apply(f, B.product_row(j1, j2)))
        acc = vec_add(f, acc, A.multiply(beta.column(j1), beta.column(j2)))
        return acc

    return NabCocycle(
        A,
        B,
        MultilinearMap.from_function(f, (B.dim, A.dim), A.dim, phi_new),
        MultilinearMap.from_function(f, (A.dim, B.dim), A.dim, psi_new),
        MultilinearMap.from_function(f, (B.dim, B.dim), A.dim, chi_new),
    )


def cocycles_equivalent_by(c: NabCocycle, c_prime: NabCocycle, beta: GaugeParam) -> bool:
    return apply_equivalence(c, beta) == c_prime


# ---------------------------------------------------------------------------
# abelian specialization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianStructure:
    """A valid cocycle with zero kernel product, repackaged: the twists are
    an honest bimodule action and the curvature a module-valued 2-cocycle."""

    left_action: MultilinearMap   # B (x) M -> M
    right_action: MultilinearMap  # M (x) B -> M
    cocycle: MultilinearMap       # B (x) B -> M


def abelian_specialize(c: NabCocycle) -> AbelianStructure:
    """Specialize a valid cocycle with ``m_A = 0``.

    With the kernel product zero, the twist equations collapse to exact
    bimodule axioms and the curvature equation says the curvature is a
    2-cocycle for the module-valued Hochschild differential; the latter is
    re-verified here against :func:`hochschild_delta_module` and a failure
    raises :class:`CrossCheckError` (it cannot happen for valid input).
    """
    if not c.A.has_zero_product():
        raise ValueError("abelian specialization requires a zero kernel product")
    violations = check_cocycle(c)
    if violations:
        raise ValueError(
            f"not a valid cocycle ({len(violations)} violation(s); first: {violations[0].which.value})"
        )
    dchi = hochschild_delta_module(c.chi, c.B, c.phi, c.psi)
    if not dchi.is_zero():
        raise CrossCheckError(
            "curvature of a valid abelian cocycle is not a module cocycle"
        )
    return AbelianStructure(left_action=c.phi, right_action=c.psi, cocycle=c.chi)


def module_coboundary(beta: GaugeParam, c: NabCocycle) -> MultilinearMap:
    """``delta beta`` for the bimodule structure carried by ``c``:
    ``(b1, b2) -> phi(b1, beta(b2)) - beta(b1 b2) + psi(beta(b1), b2)``."""
    B, f = c.B, c.A.field

    def value(idxs):
        j1, j2 = idxs
        acc = c.phi.apply([B.basis_vector(j1), beta.column(j2)])
        acc = vec_sub(f, acc, beta.apply(f, B.product_row(j1, j2)))
        acc = vec_add(f, acc, c.psi.apply([beta.column(j1), B.basis_vector(j2)]))
        return acc

    return MultilinearMap.from_function(f, (B.dim, B.dim), c.A.dim, value)
