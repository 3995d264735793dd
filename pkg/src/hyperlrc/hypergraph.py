"""Sparse uniform hypergraphs whose edges serve as generating sets.

A hypergraph is 𝒢_R(v, e)-free when no ``e`` of its edges together span
``v`` or fewer vertices.  The code constructions need hypergraphs that are
simultaneously free for the whole list ``(iR - floor((i-1)δ/2) - 1, i)``,
``2 <= i <= μ``; :class:`FreenessSpec` produces that list.

Edge subsets are searched depth-first over vertex bitmasks.  Because a
union only grows as edges are added, any partial union already larger than
``v`` prunes its whole subtree.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError
from .galois import Field, FieldElement, field_from_descriptor
from .matgf import WorkCounter

DEFAULT_SUBSET_CAP = 5_000_000


def _as_int(x) -> int:
    return x.value if isinstance(x, FieldElement) else int(x)


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[int, ...]
    R: int
    edges: tuple[tuple[int, ...], ...]
    field: Field | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        verts = tuple(_as_int(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise ParameterError("repeated vertex")
        vset = set(verts)
        edges = []
        seen = set()
        for e in self.edges:
            e = tuple(sorted(_as_int(x) for x in e))
            if len(e) != self.R or len(set(e)) != self.R:
                raise ParameterError(f"edge {list(e)} does not have {self.R} distinct vertices")
            if not vset.issuperset(e):
                raise ParameterError(f"edge {list(e)} uses vertices outside the vertex set")
            if e in seen:
                raise ParameterError(f"duplicate edge {list(e)}")
            seen.add(e)
            edges.append(e)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(edges))

    def __len__(self):
        return len(self.edges)

    def masks(self) -> list[int]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return [sum(1 << pos[x] for x in e) for e in self.edges]

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            for x in e:
                deg[x] += 1
        return deg

    def to_json(self) -> dict:
        obj = {
            "R": self.R,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }
        if self.field is not None:
            obj["field"] = self.field.descriptor()
            obj["q"] = self.field.q
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "Hypergraph":
        f = field_from_descriptor(obj["field"]) if "field" in obj else None
        return cls(tuple(obj["vertices"]), int(obj["R"]),
                   tuple(tuple(e) for e in obj["edges"]), f)


@dataclass(frozen=True)
class FreenessSpec:
    """Simultaneous freeness for ``2 <= i <= mu`` with parameter ``delta``."""

    delta: int
    mu: int

    def __post_init__(self):
        if self.delta < 2 or self.mu < 2:
            raise ParameterError("FreenessSpec needs delta >= 2 and mu >= 2")

    def forbidden(self, R: int) -> list[tuple[int, int]]:
        """The ``(v_i, i)`` list; entries with ``v_i <= R`` are dropped with a warning."""
        out = []
        for i in range(2, self.mu + 1):
            v = i * R - ((i - 1) * self.delta) // 2 - 1
            if v < R + 1:
                warnings.warn(f"dropping degenerate forbidden entry ({v}, {i}) for R={R}")
                continue
            out.append((v, i))
        return out


def _subsets_spanning_at_most(masks: Sequence[int], v: int, e: int, work: WorkCounter,
                              alive: Sequence[bool] | None = None,
                              base: int = 0) -> Iterator[tuple[int, ...]]:
    """Index tuples of ``e`` edges whose union with ``base`` has ``<= v`` vertices."""
    n = len(masks)
    chosen: list[int] = []

    def dfs(start: int, depth: int, union: int):
        for i in range(start, n - (e - depth) + 1):
            if alive is not None and not alive[i]:
                continue
            work.tick()
            u = union | masks[i]
            if u.bit_count() > v:
                continue
            chosen.append(i)
            if depth + 1 == e:
                yield tuple(chosen)
            else:
                yield from dfs(i + 1, depth + 1, u)
            chosen.pop()

    if e == 0:
        if base.bit_count() <= v:
            yield ()
        return
    yield from dfs(0, 0, base)


def free_violation(h: Hypergraph, v: int, e: int,
                   cap: int | None = DEFAULT_SUBSET_CAP) -> tuple[tuple[int, ...], ...] | None:
    """An ``e``-subset of edges spanning ``<= v`` vertices, or ``None`` if free.

    Fewer than ``e`` edges is vacuously free.
    """
    if e < 2:
        raise ParameterError("e must be at least 2")
    if v < h.R + 1:
        raise ParameterError(f"v must be at least R+1 = {h.R + 1}")
    if len(h.edges) < e:
        return None
    hit = next(_subsets_spanning_at_most(h.masks(), v, e, WorkCounter(cap)), None)
    if hit is None:
        return None
    return tuple(h.edges[i] for i in hit)


def is_free(h: Hypergraph, v: int, e: int, cap: int | None = DEFAULT_SUBSET_CAP) -> bool:
    return free_violation(h, v, e, cap) is None


def simultaneous_violation(h: Hypergraph, spec: FreenessSpec,
                           cap: int | None = DEFAULT_SUBSET_CAP):
    """First ``(i, edges)`` violation over the forbidden list, or ``None``."""
    for v, i in spec.forbidden(h.R):
        hit = free_violation(h, v, i, cap)
        if hit is not None:
            return i, hit
    return None


def is_simultaneously_free(h: Hypergraph, spec: FreenessSpec,
                           cap: int | None = DEFAULT_SUBSET_CAP) -> bool:
    return simultaneous_violation(h, spec, cap) is None


def degree_violation(h: Hypergraph, t: int) -> tuple[int, int] | None:
    """A ``(vertex, degree)`` pair whose degree differs from ``t``."""
    for vert, deg in h.degrees().items():
        if deg != t:
            return vert, deg
    return None


def is_regular(h: Hypergraph, t: int) -> bool:
    return degree_violation(h, t) is None


def auto_probability(n: int, R: int, delta: int, mu: int) -> float:
    """Edge probability ε·n^(a - R) with ε = (μR)^(-3R), clamped to (0, 1].

    The exponent ``a`` is δ/2 + 1/(2(μ-2)) when both δ and μ (≥ 3) are odd,
    δ/2 + 1/(μ-1) for even δ and δ/2 + 1/(2(μ-1)) otherwise.  Only the first
    regime comes with an explicit probability; the others reuse its shape
    without the log factors and are heuristic.
    """
    if delta % 2 == 1 and mu % 2 == 1 and mu >= 3:
        a = delta / 2 + 1 / (2 * (mu - 2))
    elif delta % 2 == 0:
        a = delta / 2 + 1 / (mu - 1)
    else:
        a = delta / 2 + 1 / (2 * (mu - 1))
    eps = float(mu * R) ** (-3 * R)
    p = eps * float(n) ** (a - R)
    return min(1.0, max(p, math.ulp(0.0)))


def _vertex_list(vertices: Iterable) -> tuple[int, ...]:
    out = tuple(_as_int(v) for v in vertices)
    if len(set(out)) != len(out):
        raise ParameterError("repeated vertex")
    return out


def _subset_count_guard(nv: int, R: int, cap: int | None, what: str):
    total = math.comb(nv, R)
    if cap is not None and total > cap:
        raise ParameterError(
            f"C({nv},{R}) = {total} candidate edges exceeds the cap of {cap}; {what}")


def random_sparse(vertices: Iterable, R: int, spec: FreenessSpec, p="auto", seed: int = 0,
                  field: Field | None = None, cap: int | None = DEFAULT_SUBSET_CAP) -> Hypergraph:
    """Sample-then-delete generation.

    Every R-subset (in lexicographic order of vertex positions) is kept
    independently with probability ``p`` using ``random.Random(seed)``
    (MT19937).  Then, for ``i = 2..μ``, violating i-subsets of surviving
    edges are visited in lexicographic order of edge indices and the last
    edge of each still-violating subset is removed.
    """
    verts = _vertex_list(vertices)
    if len(verts) < R:
        raise ParameterError(f"need at least R={R} vertices, got {len(verts)}")
    _subset_count_guard(len(verts), R, cap, "reduce the vertex set")
    if p == "auto":
        p = auto_probability(len(verts), R, spec.delta, spec.mu)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ParameterError("sampling probability must lie in [0, 1]")
    rng = random.Random(seed)
    sampled = [c for c in itertools.combinations(range(len(verts)), R) if rng.random() < p]
    masks = [sum(1 << i for i in c) for c in sampled]
    alive = [True] * len(masks)
    work = WorkCounter(cap)
    for v, i in spec.forbidden(R):
        for hit in _subsets_spanning_at_most(masks, v, i, work, alive):
            alive[hit[-1]] = False
    edges = tuple(tuple(verts[j] for j in c) for c, ok in zip(sampled, alive) if ok)
    h = Hypergraph(verts, R, edges, field)
    assert is_simultaneously_free(h, spec, cap)
    return h


def greedy_sparse(vertices: Iterable, R: int, spec: FreenessSpec, seed: int = 0,
                  field: Field | None = None, cap: int | None = DEFAULT_SUBSET_CAP) -> Hypergraph:
    """Accept R-subsets in a seeded random order whenever freeness survives."""
    verts = _vertex_list(vertices)
    if len(verts) < R:
        raise ParameterError(f"need at least R={R} vertices, got {len(verts)}")
    _subset_count_guard(len(verts), R, cap, "use random_sparse instead")
    order = list(itertools.combinations(range(len(verts)), R))
    random.Random(seed).shuffle(order)
    forbidden = spec.forbidden(R)
    work = WorkCounter(None)
    masks: list[int] = []
    chosen = []
    for c in order:
        m = sum(1 << i for i in c)
        clash = any(next(_subsets_spanning_at_most(masks, v, i - 1, work, base=m), None) is not None
                    for v, i in forbidden)
        if not clash:
            masks.append(m)
            chosen.append(c)
    edges = tuple(tuple(verts[j] for j in c) for c in chosen)
    h = Hypergraph(verts, R, edges, field)
    assert is_simultaneously_free(h, spec, cap)
    return h


@dataclass(frozen=True)
class GeneratingSystemReport:
    passed: bool
    worst_subset: tuple[int, ...] | None
    margin: int | None
    subsets_checked: int

    def __bool__(self):
        return self.passed


def check_generating_system(groups: Sequence[Iterable], r: int, delta: int, mu: int,
                            special_index: int | None = None, v: int | None = None,
                            cap: int | None = DEFAULT_SUBSET_CAP) -> GeneratingSystemReport:
    """Check ``2|∪_{i∈S} G_i| >= (2r+δ-2)|S| + δ`` for every ``2 <= |S| <= μ``.

    When ``special_index`` is in ``S`` the right-hand side gains ``2(v-r)``.
    ``margin`` is the smallest difference of the two sides (doubled units);
    ``worst_subset`` is the first subset attaining it.
    """
    sets = [frozenset(_as_int(x) for x in g) for g in groups]
    if any(not s for s in sets):
        raise ParameterError("generating sets must be nonempty")
    if special_index is not None and v is None:
        raise ParameterError("special_index needs v")
    universe = sorted(set().union(*sets)) if sets else []
    pos = {x: i for i, x in enumerate(universe)}
    masks = [sum(1 << pos[x] for x in s) for s in sets]
    top = min(mu, len(sets))
    total = sum(math.comb(len(sets), s) for s in range(2, top + 1))
    if cap is not None and total > cap:
        raise ParameterError(f"{total} subsets exceeds the cap of {cap}")
    worst, margin = None, None
    for size in range(2, top + 1):
        for S in itertools.combinations(range(len(sets)), size):
            union = 0
            for i in S:
                union |= masks[i]
            need = (2 * r + delta - 2) * size + delta
            if special_index is not None and special_index in S:
                need += 2 * (v - r)
            gap = 2 * union.bit_count() - need
            if margin is None or gap < margin:
                worst, margin = S, gap
    return GeneratingSystemReport(margin is None or margin >= 0, worst, margin, total)
