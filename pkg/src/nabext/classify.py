"""Brute-force classification over prime fields: enumerate candidate twist
triples, keep the valid ones, partition them by equivalence, and cross-check
every step against the extension picture.

Candidates are indexed by writing all twist coefficients as base-p digits,
so runs are deterministic and trivially splittable across workers.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Algebra, direct_sum_space
from .cochains import MultilinearMap
from .exact_sequences import (
    ExtensionPresentation,
    canonical_section,
    cocycle_from_section,
)
from .fields import PrimeField
from .nonabelian import (
    CrossCheckError,
    GaugeParam,
    NabCocycle,
    apply_equivalence,
    associator_residual,
    build_extension,
    cocycle_to_mc,
    gauge_closed_form,
    is_valid_cocycle,
)

DEFAULT_BUDGET = 2 ** 24


class BudgetExceededError(ValueError):
    """The requested sweep is larger than the configured budget."""


@dataclass(frozen=True)
class CandidateSpace:
    """All twist triples for a fixed pair of finite-field algebras."""

    A: Algebra
    B: Algebra
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if not isinstance(self.A.field, PrimeField):
            raise ValueError("candidate enumeration needs a prime field")
        if self.A.field != self.B.field:
            raise ValueError("candidate spaces need one common field")
        if not self.A.is_associative():
            raise ValueError("kernel algebra is not associative")
        if not self.B.is_associative():
            raise ValueError("quotient algebra is not associative")

    @property
    def p(self) -> int:
        return self.A.field.p

    @property
    def shapes(self) -> Tuple[Tuple[Tuple[int, int], int], ...]:
        a, b = self.A.dim, self.B.dim
        # (source_dims, target) per component, in phi, psi, chi order
        return (((b, a), a), ((a, b), a), ((b, b), a))

    @property
    def entry_counts(self) -> Tuple[int, ...]:
        return tuple(t * dims[0] * dims[1] for dims, t in self.shapes)

    @property
    def total_entries(self) -> int:
        return sum(self.entry_counts)

    @property
    def total_candidates(self) -> int:
        return self.p ** self.total_entries

    def candidate(self, index: int) -> NabCocycle:
        """Decode a candidate from its base-p digit expansion."""
        if not 0 <= index < self.total_candidates:
            raise IndexError(f"candidate index {index} out of range")
        field = self.A.field
        digits = []
        rest = index
        for _ in range(self.total_entries):
            rest, d = divmod(rest, self.p)
            digits.append(d)
        parts = []
        pos = 0
        for (dims, target), count in zip(self.shapes, self.entry_counts):
            coeffs = tuple(digits[pos : pos + count])
            pos += count
            parts.append(MultilinearMap(field, dims, target, coeffs))
        phi, psi, chi = parts
        return NabCocycle(self.A, self.B, phi, psi, chi)

    def index_of(self, c: NabCocycle) -> int:
        digits = list(c.phi.coeffs) + list(c.psi.coeffs) + list(c.chi.coeffs)
        idx = 0
        for d in reversed(digits):
            idx = idx * self.p + d
        return idx

    def exhaustive_indices(self) -> range:
        if self.total_candidates > self.budget:
            raise BudgetExceededError(
                f"{self.total_candidates} candidates exceed the budget of {self.budget};"
                " use sampling"
            )
        return range(self.total_candidates)

    def sample_indices(self, count: int, seed: int) -> Tuple[int, ...]:
        """Deterministic uniform sample without replacement (sorted)."""
        import random

        if count > self.total_candidates:
            raise ValueError("sample larger than the candidate space")
        rng = random.Random(seed)
        seen = set()
        while len(seen) < count:
            seen.add(rng.randrange(self.total_candidates))
        return tuple(sorted(seen))

    def gauge_params(self) -> List[GaugeParam]:
        """Every linear map from the quotient into the kernel."""
        field = self.A.field
        a, b = self.A.dim, self.B.dim
        if self.p ** (a * b) > self.budget:
            raise BudgetExceededError("gauge parameter space exceeds the budget")
        scalars = list(field.elements())
        out = []
        for combo in itertools.product(scalars, repeat=a * b):
            out.append(
                GaugeParam(tuple(tuple(combo[i * b + j] for j in range(b)) for i in range(a)))
            )
        return out


# ---------------------------------------------------------------------------
# scanning (parallelizable, deterministic)
# ---------------------------------------------------------------------------

def _valid_chunk(space: CandidateSpace, chunk: Sequence[int]) -> List[int]:
    return [i for i in chunk if is_valid_cocycle(space.candidate(i))]


def _associative_chunk(space: CandidateSpace, chunk: Sequence[int]) -> List[int]:
    return [i for i in chunk if build_extension(space.candidate(i))[0].is_associative()]


def _chunks(indices: Sequence[int], jobs: int) -> List[List[int]]:
    n = max(1, len(indices) // max(jobs, 1) + (len(indices) % max(jobs, 1) > 0))
    return [list(indices[i : i + n]) for i in range(0, len(indices), n)]


def _scan(space, indices, worker, jobs) -> List[int]:
    indices = list(indices)
    if jobs <= 1 or len(indices) < 64:
        return worker(space, indices)
    out: List[int] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(worker, itertools.repeat(space), _chunks(indices, jobs)):
            out.extend(part)
    return out


def enumerate_cocycles(
    space: CandidateSpace,
    indices: Optional[Iterable[int]] = None,
    jobs: int = 1,
) -> List[Tuple[int, NabCocycle]]:
    """All candidates passing the cocycle equations, in index order."""
    if indices is None:
        indices = space.exhaustive_indices()
    hits = _scan(space, indices, _valid_chunk, jobs)
    return [(i, space.candidate(i)) for i in hits]


def enumerate_extensions(
    space: CandidateSpace,
    indices: Optional[Iterable[int]] = None,
    jobs: int = 1,
) -> List[Tuple[int, Algebra]]:
    """All candidates whose twisted product is associative, in index order.

    This is the extension-side route: it never consults the cocycle
    equations, so it can cross-check them.
    """
    if indices is None:
        indices = space.exhaustive_indices()
    hits = _scan(space, indices, _associative_chunk, jobs)
    return [(i, build_extension(space.candidate(i))[0]) for i in hits]


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------

class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # anchor to the smaller root for determinism
            lo, hi = min(rx, ry), max(rx, ry)
            self.parent[hi] = lo

    def groups(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class Orbit:
    representative: int
    members: Tuple[int, ...]
    # member index -> chain of gauge parameters carrying the representative
    # cocycle to that member, one equivalence step each
    witnesses: Tuple[Tuple[int, Tuple[GaugeParam, ...]], ...]


@dataclass
class ClassificationReport:
    p: int
    a_dim: int
    b_dim: int
    num_candidates: int
    num_cocycles: int
    cocycle_indices: Tuple[int, ...]
    num_extensions: int
    orbits: List[Orbit]
    checks: Dict[str, bool] = dc_field(default_factory=dict)


def orbit_partition(
    space: CandidateSpace, cocycles: Sequence[Tuple[int, NabCocycle]]
) -> Tuple[List[Orbit], bool]:
    """Partition an equivalence-closed cocycle list two independent ways.

    The triple route applies every gauge parameter through the component
    transform; the assembled route transports the Maurer-Cartan images with
    the closed-form gauge action and matches tensors.  A mismatch between
    the two partitions raises :class:`CrossCheckError`.  Returns the orbits
    (by min-index representatives, with witness chains) and the agreement
    flag (always True when it returns).
    """
    betas = space.gauge_params()
    idx_of_pos = [i for i, _ in cocycles]
    pos_by_key = {
        (c.phi.coeffs, c.psi.coeffs, c.chi.coeffs): pos
        for pos, (_, c) in enumerate(cocycles)
    }
    base, split = direct_sum_space(space.A, space.B)
    mc_by_key = {
        cocycle_to_mc(c).coeffs: pos for pos, (_, c) in enumerate(cocycles)
    }

    uf_triples = UnionFind(len(cocycles))
    edges: List[Tuple[int, int, GaugeParam]] = []
    for pos, (_, c) in enumerate(cocycles):
        for beta in betas:
            image = apply_equivalence(c, beta)
            key = (image.phi.coeffs, image.psi.coeffs, image.chi.coeffs)
            to = pos_by_key.get(key)
            if to is None:
                raise CrossCheckError(
                    "equivalence left the enumerated cocycle set; the input "
                    "list was not exhaustive or validity is not preserved"
                )
            edges.append((pos, to, beta))
            uf_triples.union(pos, to)

    uf_mc = UnionFind(len(cocycles))
    mc_elements = [cocycle_to_mc(c) for _, c in cocycles]
    for pos, x in enumerate(mc_elements):
        for beta in betas:
            y = gauge_closed_form(x, beta, base, split)
            to = mc_by_key.get(y.coeffs)
            if to is None:
                raise CrossCheckError(
                    "gauge action left the enumerated Maurer-Cartan set"
                )
            uf_mc.union(pos, to)

    groups_triples = {frozenset(v) for v in uf_triples.groups().values()}
    groups_mc = {frozenset(v) for v in uf_mc.groups().values()}
    if groups_triples != groups_mc:
        raise CrossCheckError(
            "cocycle-equivalence partition differs from the gauge partition"
        )

    # witness chains by breadth-first search from each representative
    adjacency: Dict[int, List[Tuple[int, GaugeParam]]] = {}
    field = space.A.field
    for src, dst, beta in edges:
        adjacency.setdefault(src, []).append((dst, beta))
        adjacency.setdefault(dst, []).append((src, beta.negate(field)))

    orbits: List[Orbit] = []
    for members in sorted(uf_triples.groups().values(), key=lambda g: idx_of_pos[g[0]]):
        members = sorted(members, key=lambda pos: idx_of_pos[pos])
        rep = members[0]
        chains: Dict[int, Tuple[GaugeParam, ...]] = {}
        frontier = [rep]
        chains[rep] = ()
        while frontier:
            cur = frontier.pop(0)
            for nxt, beta in adjacency.get(cur, ()):  # deterministic edge order
                if nxt not in chains:
                    chains[nxt] = chains[cur] + (beta,)
                    frontier.append(nxt)
        for pos in members:
            if pos not in chains:
                raise CrossCheckError("witness graph does not connect an orbit")
            # replay the chain as a safety net
            current = cocycles[rep][1]
            for beta in chains[pos]:
                current = apply_equivalence(current, beta)
            if current != cocycles[pos][1]:
                raise CrossCheckError("witness chain replay failed")
        orbits.append(
            Orbit(
                representative=idx_of_pos[rep],
                members=tuple(idx_of_pos[pos] for pos in members),
                witnesses=tuple(
                    (idx_of_pos[pos], chains[pos]) for pos in members
                ),
            )
        )
    return orbits, True


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------

def _presentation_for(space: CandidateSpace, ext_alg: Algebra) -> ExtensionPresentation:
    field = space.A.field
    a, dim = space.A.dim, space.A.dim + space.B.dim
    iota = tuple(
        tuple(field.one if (i == j and i < a) else field.zero for j in range(a))
        for i in range(dim)
    )
    proj = tuple(
        tuple(field.one if j == a + i else field.zero for j in range(dim))
        for i in range(space.B.dim)
    )
    return ExtensionPresentation(ext_alg, iota, proj, space.A, space.B)


def census(space: CandidateSpace, jobs: int = 1) -> ClassificationReport:
    """Run the whole pipeline with every cross-check armed.

    Raises :class:`CrossCheckError` (with the offending candidate index in
    the message) if any of the following fail: the cocycle and associative-
    extension index sets coincide; every cocycle's assembled element
    satisfies the Maurer-Cartan equation; the canonical section recovers
    every generating triple; the two equivalence partitions agree.
    """
    cocycles = enumerate_cocycles(space, jobs=jobs)
    extensions = enumerate_extensions(space, jobs=jobs)

    cocycle_idx = [i for i, _ in cocycles]
    extension_idx = [i for i, _ in extensions]
    if cocycle_idx != extension_idx:
        only_c = set(cocycle_idx) - set(extension_idx)
        only_e = set(extension_idx) - set(cocycle_idx)
        raise CrossCheckError(
            f"cocycle/extension mismatch: valid-only {sorted(only_c)[:5]}, "
            f"associative-only {sorted(only_e)[:5]}"
        )
    built_tables = {build_extension(c)[0].table for _, c in cocycles}
    listed_tables = {e.table for _, e in extensions}
    if built_tables != listed_tables:
        raise CrossCheckError("extension structure-constant tables disagree")

    base, split = direct_sum_space(space.A, space.B)
    for i, c in cocycles:
        # the characteristic-free residual: equals the dgLa Maurer-Cartan
        # residual over F_2 and tracks associativity over every field
        if not associator_residual(cocycle_to_mc(c), base, split).is_zero():
            raise CrossCheckError(f"cocycle {i} fails the Maurer-Cartan equation")

    for (i, c), (_, ext_alg) in zip(cocycles, extensions):
        pres = _presentation_for(space, ext_alg)
        back = cocycle_from_section(pres, canonical_section(pres))
        if not (
            back.phi.coeffs == c.phi.coeffs
            and back.psi.coeffs == c.psi.coeffs
            and back.chi.coeffs == c.chi.coeffs
        ):
            raise CrossCheckError(f"canonical section does not recover candidate {i}")

    orbits, partitions_agree = orbit_partition(space, cocycles)

    return ClassificationReport(
        p=space.p,
        a_dim=space.A.dim,
        b_dim=space.B.dim,
        num_candidates=space.total_candidates,
        num_cocycles=len(cocycles),
        cocycle_indices=tuple(cocycle_idx),
        num_extensions=len(extensions),
        orbits=orbits,
        checks={
            "counts_match": True,
            "tables_match": True,
            "cocycles_satisfy_mc": True,
            "section_roundtrip": True,
            "partitions_agree": partitions_agree,
        },
    )
