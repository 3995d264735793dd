"""Parity-check constructions for codes with (r, δ)-locality.

Both builders lay out one column block per generating set.  Each block
carries ``δ-1`` local parity rows on the block diagonal (a Vandermonde
matrix on the block's elements) and contributes to a shared strip of
global parity rows at the bottom.

* Construction A: local rows use powers ``0..δ-2``; the strip uses powers
  ``δ-1..d-2``.  Groups may overlap.
* Construction B: local rows are scaled by ``f(g) = prod (g - s)`` over a
  disjoint global set ``s``; the strip uses powers ``0..h-1`` and also
  spans the global columns, which sit last.

Columns within a block are sorted by integer encoding and blocks keep the
input order, so serialized matrices are canonical.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParameterError
from .galois import Field, FieldElement, eval_poly, field_from_descriptor, poly_from_roots
from .hypergraph import FreenessSpec, Hypergraph, simultaneous_violation
from .matgf import MatrixGF, block_diag, hstack, rank, vandermonde, vstack


def _elements(f: Field, group: Iterable, what: str) -> tuple[int, ...]:
    out = []
    for x in group:
        if isinstance(x, FieldElement):
            f._check(x)
            x = x.value
        x = int(x)
        if not 0 <= x < f.q:
            raise ParameterError(f"{x} is not an element of {f}")
        out.append(x)
    if len(set(out)) != len(out):
        raise ParameterError(f"{what} repeats an element: {sorted(out)}")
    return tuple(sorted(out))


@dataclass(frozen=True)
class LrcCode:
    field: Field
    construction: str
    r: int
    delta: int
    d_target: int
    groups: tuple[tuple[int, ...], ...]
    parity_check: MatrixGF
    block_spans: tuple[tuple[int, int], ...]
    k: int
    global_set: tuple[int, ...] = ()
    v: int | None = None
    h: int | None = None
    f_coeffs: tuple[int, ...] = (1,)
    certified: bool = False
    certificate: str | None = None

    @property
    def n(self) -> int:
        """Total length, global columns included."""
        return self.parity_check.cols

    n_total = n

    @property
    def n_local(self) -> int:
        """Number of columns that belong to a local block."""
        return self.n - len(self.global_set)

    @property
    def m(self) -> int:
        return len(self.groups)

    @property
    def l(self) -> int:
        return len(self.groups) - 1

    @property
    def R(self) -> int:
        return self.r + self.delta - 1

    def local_rows(self, block: int) -> range:
        w = self.delta - 1
        return range(block * w, (block + 1) * w)

    def column_labels(self) -> list[tuple[int, int]]:
        """``(block, element)`` per column; the global block has index ``m``."""
        labels = [(b, x) for b, g in enumerate(self.groups) for x in g]
        labels += [(len(self.groups), x) for x in self.global_set]
        return labels

    def column_of(self, block: int, element: int) -> int:
        if block == len(self.groups):
            try:
                return self.n_local + self.global_set.index(element)
            except ValueError:
                raise ParameterError(f"{element} is not in the global set") from None
        if not 0 <= block < len(self.groups):
            raise ParameterError(f"no block {block}")
        try:
            return self.block_spans[block][0] + self.groups[block].index(element)
        except ValueError:
            raise ParameterError(f"{element} is not in group {block}") from None

    def to_json(self) -> dict:
        obj = {
            "field": self.field.descriptor(),
            "q": self.field.q,
            "construction": self.construction,
            "r": self.r,
            "delta": self.delta,
            "d_target": self.d_target,
            "groups": [list(g) for g in self.groups],
            "n": self.n,
            "k": self.k,
            "certified": self.certified,
            "certificate": self.certificate,
        }
        if self.construction == "B":
            obj.update({"v": self.v, "h": self.h, "global": list(self.global_set),
                        "n_local": self.n_local, "f": list(self.f_coeffs)})
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "LrcCode":
        f = field_from_descriptor(obj["field"])
        if obj["construction"] == "A":
            code = construct_a(f, obj["groups"], obj["r"], obj["delta"], obj["d_target"])
        elif obj["construction"] == "B":
            code = construct_b(f, obj["groups"], obj["global"], obj["r"], obj["delta"],
                               obj["v"], obj["h"])
        else:
            raise ParameterError(f"unknown construction {obj['construction']!r}")
        return dataclasses.replace(code, certified=bool(obj.get("certified", False)),
                                   certificate=obj.get("certificate"))


def _spans(sizes: Sequence[int]) -> tuple[tuple[int, int], ...]:
    out, start = [], 0
    for s in sizes:
        out.append((start, start + s))
        start += s
    return tuple(out)


def construct_a(f: Field, groups: Sequence[Iterable], r: int, delta: int, d: int) -> LrcCode:
    if delta < 2:
        raise ParameterError("delta must be at least 2")
    if r < 1:
        raise ParameterError("r must be positive")
    if d < delta + 1:
        raise ParameterError(f"d={d} must be at least delta+1={delta + 1}")
    if r < d - delta:
        raise ParameterError(f"r={r} < d-delta={d - delta}")
    R = r + delta - 1
    gs = tuple(_elements(f, g, "group") for g in groups)
    if not gs:
        raise ParameterError("at least one group is required")
    for i, g in enumerate(gs):
        if len(g) != R:
            raise ParameterError(f"group {i} has {len(g)} elements, expected R={R}")
    local = block_diag([vandermonde(f, g, 0, delta - 1) for g in gs])
    strip = hstack([vandermonde(f, g, delta - 1, d - delta) for g in gs])
    H = vstack([local, strip])
    return LrcCode(f, "A", r, delta, d, gs, H, _spans([R] * len(gs)), H.cols - rank(H))


def construct_a_repeated(f: Field, G: Iterable, m: int, r: int, delta: int, d: int) -> LrcCode:
    """Construction A with ``m`` copies of one group; distance ``d`` is guaranteed."""
    if not delta + 1 <= d <= 2 * delta:
        raise ParameterError(f"d={d} must lie in [delta+1, 2*delta] = [{delta + 1}, {2 * delta}]")
    if m < 1:
        raise ParameterError("m must be positive")
    g = _elements(f, G, "group")
    code = construct_a(f, [g] * m, r, delta, d)
    return dataclasses.replace(code, certified=True, certificate="repeated-group")


def construct_b(f: Field, groups: Sequence[Iterable], global_set: Iterable, r: int, delta: int,
                v: int, h: int) -> LrcCode:
    if delta < 2:
        raise ParameterError("delta must be at least 2")
    if not 1 <= v <= r:
        raise ParameterError(f"v={v} must satisfy 1 <= v <= r={r}")
    if h < 0:
        raise ParameterError("h must be non-negative")
    R = r + delta - 1
    gs = tuple(_elements(f, g, "group") for g in groups)
    S = _elements(f, global_set, "global set")
    if not gs:
        raise ParameterError("at least one group is required")
    if len(S) != h:
        raise ParameterError(f"global set has {len(S)} elements, expected h={h}")
    for i, g in enumerate(gs):
        want = R if i < len(gs) - 1 else v + delta - 1
        if len(g) != want:
            raise ParameterError(f"group {i} has {len(g)} elements, expected {want}")
        clash = set(g) & set(S)
        if clash:
            raise ParameterError(f"group {i} meets the global set in {sorted(clash)}")
    fc = tuple(poly_from_roots(f, S))
    local = block_diag([vandermonde(f, g, 0, delta - 1, [eval_poly(f, fc, x) for x in g])
                        for g in gs])
    allpts = [x for g in gs for x in g] + list(S)
    n = len(allpts)
    # Vandermonde rows over all columns; points may repeat across groups
    strip = MatrixGF._raw(f, [[f.pow(x, i) for x in allpts] for i in range(h)], n)
    local = MatrixGF._raw(f, [list(row) + [0] * h for row in local.data], n)
    H = vstack([local, strip]) if h else local
    k = n - rank(H)
    l = len(gs) - 1
    if k != l * r + v:
        raise ParameterError(f"parity-check rank deficient: k={k}, expected lr+v={l * r + v}")
    sizes = [len(g) for g in gs]
    return LrcCode(f, "B", r, delta, h + delta, gs, H, _spans(sizes), k,
                   global_set=S, v=v, h=h, f_coeffs=fc)


def _field_for(hg: Hypergraph, f: Field | None) -> Field:
    f = f or hg.field
    if f is None:
        raise ParameterError("hypergraph carries no field; pass one explicitly")
    return f


def from_hypergraph_a(hg: Hypergraph, r: int, delta: int, d: int,
                      f: Field | None = None) -> LrcCode:
    """One group per edge (edge-list order); freeness is certified first."""
    f = _field_for(hg, f)
    if hg.R != r + delta - 1:
        raise ParameterError(f"hypergraph is {hg.R}-uniform, expected R=r+delta-1={r + delta - 1}")
    if r < d - delta:
        raise ParameterError(f"r={r} < d-delta={d - delta}")
    if d < 2 * delta + 1:
        raise ParameterError(f"d={d} must be at least 2*delta+1={2 * delta + 1}")
    if not hg.edges:
        raise ParameterError("hypergraph has no edges")
    spec = FreenessSpec(delta, (d - 1) // delta)
    bad = simultaneous_violation(hg, spec)
    if bad is not None:
        i, edges = bad
        raise ParameterError(f"hypergraph not free at i={i}: edges {[list(e) for e in edges]}")
    code = construct_a(f, hg.edges, r, delta, d)
    return dataclasses.replace(code, certified=True, certificate="free-hypergraph")


def from_hypergraph_b(hg: Hypergraph, global_set: Iterable, r: int, delta: int, v: int, h: int,
                      f: Field | None = None) -> LrcCode:
    """Edges become groups; the last edge keeps only its ``v+δ-1`` smallest elements."""
    f = _field_for(hg, f)
    S = _elements(f, global_set, "global set")
    if hg.R != r + delta - 1:
        raise ParameterError(f"hypergraph is {hg.R}-uniform, expected R=r+delta-1={r + delta - 1}")
    if len(S) != h:
        raise ParameterError(f"global set has {len(S)} elements, expected h={h}")
    if set(S) & set(hg.vertices):
        raise ParameterError("global set meets the hypergraph's vertex set")
    if not 1 <= v <= r:
        raise ParameterError(f"v={v} must satisfy 1 <= v <= r={r}")
    if not hg.edges:
        raise ParameterError("hypergraph has no edges")
    mu = (h + delta - 1) // delta
    if mu >= 2:
        bad = simultaneous_violation(hg, FreenessSpec(delta, mu))
        if bad is not None:
            i, edges = bad
            raise ParameterError(f"hypergraph not free at i={i}: edges {[list(e) for e in edges]}")
    groups = list(hg.edges[:-1]) + [sorted(hg.edges[-1])[:v + delta - 1]]
    code = construct_b(f, groups, S, r, delta, v, h)
    return dataclasses.replace(code, certified=True, certificate="free-hypergraph")
