"""Hierarchical LRCs and generalized sector-disk (GSD) array codes.

An H-LRC stacks ``m1`` copies of a Construction A middle code block
diagonally.  The GSD builders place the symbols of a Construction B code
into an array: one array column per generating element, so erasing a
column erases that element from every block at once.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .construct import LrcCode, _elements, construct_a, construct_b, from_hypergraph_b
from .errors import ParameterError, WorkCapExceeded
from .galois import Field
from .hypergraph import (DEFAULT_SUBSET_CAP, FreenessSpec, Hypergraph, check_generating_system,
                         degree_violation, simultaneous_violation)
from .matgf import MatrixGF, block_diag, columns_independent


# -- hierarchical codes -------------------------------------------------------

@dataclass(frozen=True)
class HlrcCode:
    middle: LrcCode
    m1: int
    r1: int
    parity_check: MatrixGF

    @property
    def n(self) -> int:
        return self.parity_check.cols

    @property
    def k(self) -> int:
        return self.m1 * self.middle.k

    @property
    def d_target(self) -> int:
        return self.middle.d_target

    @property
    def delta1(self) -> int:
        return self.middle.d_target

    @property
    def middle_spans(self) -> list[tuple[int, int]]:
        w = self.middle.n
        return [(i * w, (i + 1) * w) for i in range(self.m1)]

    def to_json(self) -> dict:
        return {"middle": self.middle.to_json(), "m1": self.m1, "r1": self.r1,
                "n": self.n, "k": self.k, "d_target": self.d_target}

    @classmethod
    def from_json(cls, obj: dict) -> "HlrcCode":
        mid = LrcCode.from_json(obj["middle"])
        return hlrc_construct(mid.field, mid.m, mid.r, mid.delta, mid.d_target,
                              mid.groups, obj["m1"], obj["r1"])


def hlrc_window_failure(m2: int, r2: int, delta2: int, d2: int, m1: int, r1: int) -> str | None:
    """Name of the first violated parameter inequality, or ``None``."""
    k2 = m2 * r2 - d2 + delta2
    if m1 < 1:
        return "m1 >= 1"
    if not r1 * (m1 - 1) < m1 * k2:
        return "r1(1-1/m1) < m2*r2-d2+delta2"
    if not k2 <= r1:
        return "m2*r2-d2+delta2 <= r1"
    if not m1 * (d2 - delta2) < r2:
        return "m1 < r2/(d2-delta2)"
    if not d2 < r2 + delta2:
        return "d2 < r2+delta2"
    return None


def hlrc_construct(f: Field, m2: int, r2: int, delta2: int, d2: int, groups: Sequence[Iterable],
                   m1: int, r1: int) -> HlrcCode:
    groups = [_elements(f, g, "group") for g in groups]
    if len(groups) != m2:
        raise ParameterError(f"{len(groups)} middle groups given, expected m2={m2}")
    bad = hlrc_window_failure(m2, r2, delta2, d2, m1, r1)
    if bad is not None:
        raise ParameterError(f"parameter window violated: {bad}")
    mu = (d2 - 1) // delta2
    if mu >= 2:
        rep = check_generating_system(groups, r2, delta2, mu)
        if not rep.passed:
            raise ParameterError(f"middle groups fail the union condition at {rep.worst_subset} "
                                 f"(margin {rep.margin})")
    elif len(set(groups)) != 1:
        raise ParameterError("for d2 <= 2*delta2 the middle groups must be identical")
    middle = construct_a(f, groups, r2, delta2, d2)
    return HlrcCode(middle, m1, r1, block_diag([middle.parity_check] * m1))


def hlrc_bound_check(n: int, k: int, d: int, r1: int, delta1: int, r2: int, delta2: int) -> int:
    """Amount by which ``d`` falls short of the two-level Singleton-type bound."""
    if r2 > r1:
        raise ParameterError("need r2 <= r1")
    if not 2 <= delta2 < delta1:
        raise ParameterError("need 2 <= delta2 < delta1")
    bound = (n - k + 1 - (-(-k // r2) - 1) * (delta2 - 1)
             - (-(-k // r1) - 1) * (delta1 - delta2))
    return bound - d


# -- generalized sector-disk codes ---------------------------------------------

@dataclass(frozen=True)
class GsdCode:
    base: LrcCode
    kind: str
    placement: tuple[tuple[int | None, ...], ...]  # rows of code-symbol indices; None = zero pad
    claims: tuple[tuple[int, int], ...]
    column_elements: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.placement), len(self.placement[0]) if self.placement else 0)

    @property
    def b(self) -> int:
        return self.shape[0]

    @property
    def a(self) -> int:
        return self.shape[1]

    @property
    def parity_check(self) -> MatrixGF:
        return self.base.parity_check

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "kind": self.kind, "rows": self.b, "cols": self.a,
                "placement": [list(r) for r in self.placement],
                "column_elements": list(self.column_elements),
                "claims": [list(c) for c in self.claims]}

    @classmethod
    def from_json(cls, obj: dict) -> "GsdCode":
        return cls(LrcCode.from_json(obj["base"]), obj["kind"],
                   tuple(tuple(r) for r in obj["placement"]),
                   tuple(tuple(c) for c in obj["claims"]), tuple(obj["column_elements"]))


def _claims(x: int, delta: int) -> tuple[tuple[int, int], ...]:
    """``(γ, x+δ-1-2γ)`` for ``γ <= x`` then ``(γ, δ-1-γ)`` for ``x < γ < δ-1``."""
    out = [(g, x + delta - 1 - 2 * g) for g in range(x + 1) if x + delta - 1 - 2 * g >= 0]
    out += [(g, delta - 1 - g) for g in range(x + 1, delta - 1)]
    return tuple(out)


def gsd_construct_c(f: Field, r: int, delta: int, h: int, l: int, S: Iterable, G: Iterable) -> GsdCode:
    """(l+2) x R array over a Construction B code with identical groups."""
    S = _elements(f, S, "global set")
    G = _elements(f, G, "group")
    if not 1 <= h <= delta:
        raise ParameterError(f"h={h} must satisfy 1 <= h <= delta={delta}")
    if len(S) != h:
        raise ParameterError(f"S has {len(S)} elements, expected h={h}")
    if len(G) != r + delta - 1:
        raise ParameterError(f"G has {len(G)} elements, expected r+delta-1={r + delta - 1}")
    if set(S) & set(G):
        raise ParameterError("S and G must be disjoint")
    if l < 1:
        raise ParameterError("l must be at least 1")
    base = construct_b(f, [G] * (l + 1), S, r, delta, r, h)
    R = len(G)
    rows = [tuple(base.column_of(b, x) for x in G) for b in range(l + 1)]
    rows.append(tuple(base.column_of(l + 1, S[a]) if a < h else None for a in range(R)))
    return GsdCode(base, "C", tuple(rows), _claims(h, delta), G)


def gsd_construct_d(f: Field, r: int, delta: int, v: int, t: int, hg: Hypergraph,
                    S: Iterable, cap: int | None = DEFAULT_SUBSET_CAP) -> GsdCode:
    """t x (q-r+v) array over a Construction B code built from a t-regular hypergraph."""
    S = _elements(f, S, "global set")
    if not 1 <= v < r:
        raise ParameterError(f"v={v} must satisfy 1 <= v < r={r}")
    if t < 2:
        raise ParameterError("t must be at least 2")
    if len(S) != r - v:
        raise ParameterError(f"S has {len(S)} elements, expected r-v={r - v}")
    if set(hg.vertices) != set(range(f.q)) - set(S):
        raise ParameterError("hypergraph vertices must be exactly the field minus S")
    bad = degree_violation(hg, t)
    if bad is not None:
        raise ParameterError(f"hypergraph is not {t}-regular: vertex {bad[0]} has degree {bad[1]}")
    mu = math.comb(r - v + delta - 1, delta)
    if mu >= 2:
        spec = FreenessSpec(delta, mu)
        hit = simultaneous_violation(hg, spec, cap)
        if hit is not None:
            raise ParameterError(f"hypergraph not free at i={hit[0]}")
    base = from_hypergraph_b(hg, S, r, delta, v, r - v, f)
    last = sorted(hg.edges[-1])
    dropped = last[v + delta - 1:]
    rest = sorted(set(hg.vertices) - set(dropped))
    order = dropped + rest
    cols = []
    for a, x in enumerate(order):
        cells = [base.column_of(b, x) for b, g in enumerate(base.groups) if x in g]
        if a < len(dropped):
            cells.append(base.column_of(base.m, S[a]))
        assert len(cells) == t
        cols.append(cells)
    rows = tuple(tuple(c[i] for c in cols) for i in range(t))
    return GsdCode(base, "D", rows, _claims(r - v, delta), tuple(order))


@dataclass(frozen=True)
class GsdResult:
    ok: bool
    gamma: int
    s: int
    patterns: int
    exceeds_distance: bool
    counterexample: tuple[tuple[int, ...], tuple[tuple[int, int], ...]] | None = None
    beyond_distance_witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


def gsd_pattern_count(g: GsdCode, gamma: int, s: int) -> int:
    return math.comb(g.a, gamma) * math.comb((g.a - gamma) * g.b, s)


def gsd_verify(g: GsdCode, gamma: int, s: int, budget: int | None = 10 ** 6,
               d: int | None = None) -> GsdResult:
    """Check every pattern of ``gamma`` whole columns plus ``s`` further cells.

    ``ok`` reports recoverability of all patterns; whether ``γb + s > d-1``
    is reported separately as ``exceeds_distance``.  The counterexample is
    ``(columns, sectors)`` with sectors as ``(row, column)`` cells.
    """
    if gamma < 0 or s < 0:
        raise ParameterError("gamma and s must be non-negative")
    if gamma > g.a:
        raise ParameterError(f"gamma={gamma} exceeds the {g.a} array columns")
    total = gsd_pattern_count(g, gamma, s)
    if budget is not None and total > budget:
        raise WorkCapExceeded(f"{total} patterns exceed the budget of {budget}", total, budget)
    d = g.base.d_target if d is None else d
    H = g.parity_check
    witness = None
    for cols in itertools.combinations(range(g.a), gamma):
        erased_cols = {g.placement[i][j] for j in cols for i in range(g.b)} - {None}
        cells = [(i, j) for j in range(g.a) if j not in cols for i in range(g.b)]
        for sectors in itertools.combinations(cells, s):
            erased = erased_cols | ({g.placement[i][j] for i, j in sectors} - {None})
            idx = sorted(erased)
            if not columns_independent(H, idx):
                return GsdResult(False, gamma, s, total, gamma * g.b + s > d - 1,
                                 (cols, tuple(sectors)))
            if witness is None and len(idx) > d - 1:
                witness = tuple(idx)
    return GsdResult(True, gamma, s, total, gamma * g.b + s > d - 1, None, witness)
