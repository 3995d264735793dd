"""Exact certification of distance, locality and optimality.

Every check here is exhaustive.  When a search would exceed its work cap it
raises :class:`~hyperlrc.errors.WorkCapExceeded` instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError, WorkCapExceeded
from .matgf import (MatrixGF, WorkCounter, all_subsets_independent, columns_independent,
                    find_dependent_columns, nullspace, rref)

CODEWORD_CAP = 2 ** 24
SUBSET_CAP = 10 ** 8
_CHUNK = 1 << 16


def _parity(code) -> MatrixGF:
    return code if isinstance(code, MatrixGF) else code.parity_check


def _dual_basis(H: MatrixGF) -> MatrixGF:
    """Rows spanning the code with parity-check ``H``, in reduced echelon form."""
    basis = nullspace(H)
    if not basis:
        return MatrixGF.zeros(H.field, 0, H.cols)
    red, _ = rref(MatrixGF._raw(H.field, basis, H.cols))
    return MatrixGF._raw(H.field, red, H.cols)


@dataclass(frozen=True)
class DistanceResult:
    d: int
    support: tuple[int, ...]
    method: str
    work: int

    def __int__(self):
        return self.d


def _span(f, rows: np.ndarray) -> np.ndarray:
    """All ``q^len(rows)`` linear combinations, as rows."""
    out = np.zeros((1, rows.shape[1]), dtype=np.int64)
    scalars = np.arange(f.q, dtype=np.int64)
    for g in rows:
        multiples = f.np_mul(scalars[:, None], g[None, :])  # q x n
        out = f.np_add(out[None, :, :], multiples[:, None, :]).reshape(-1, rows.shape[1])
    return out


def _by_codewords(H: MatrixGF, cap: int | None) -> DistanceResult:
    f = H.field
    G = _dual_basis(H)
    k = G.rows
    total = f.q ** k
    if cap is not None and total > cap:
        raise WorkCapExceeded(f"{total} codewords exceed the cap of {cap}; try method=columns",
                              total, cap)
    gen = np.asarray(G.data, dtype=np.int64)
    # meet in the middle: every codeword is a + b with a, b from two half spans
    A = _span(f, gen[: k // 2])
    B = _span(f, gen[k // 2:])
    step = max(1, _CHUNK * 16 // (len(B) * H.cols))
    best_w, best = H.cols + 1, None
    for i in range(0, len(A), step):
        words = f.np_add(A[i:i + step, None, :], B[None, :, :])
        weights = np.count_nonzero(words, axis=2)
        if i == 0:
            weights[0, 0] = H.cols + 1  # skip the zero codeword
        j = np.unravel_index(int(np.argmin(weights)), weights.shape)
        if weights[j] < best_w:
            best_w = int(weights[j])
            best = tuple(int(c) for c in np.flatnonzero(words[j]))
    return DistanceResult(best_w, best, "codewords", total - 1)


def _by_columns(H: MatrixGF, cap: int | None) -> DistanceResult:
    work = WorkCounter(cap)
    for w in range(1, H.cols + 1):
        hit = find_dependent_columns(H, w, work)
        if hit is not None:
            return DistanceResult(len(hit), tuple(hit), "columns", work.count)
    raise AssertionError("columns exhausted without a dependency")  # only when k = 0


def distance_search(code, method: str = "auto", cap_codewords: int | None = CODEWORD_CAP,
                    cap_subsets: int | None = SUBSET_CAP) -> DistanceResult:
    """Minimum distance with a witness support (a minimum-weight codeword's)."""
    H = _parity(code)
    k = H.cols - (len(rref(H)[1]) if H.rows else 0)
    if k < 1:
        raise ParameterError("the code has dimension 0; minimum distance is undefined")
    if method == "codewords":
        return _by_codewords(H, cap_codewords)
    if method == "columns":
        return _by_columns(H, cap_subsets)
    if method != "auto":
        raise ParameterError(f"unknown method {method!r}")
    if cap_codewords is None or H.field.q ** k <= cap_codewords:
        return _by_codewords(H, cap_codewords)
    top = getattr(code, "d_target", None) or (H.cols - k + 1)
    est = sum(math.comb(H.cols, w) for w in range(top + 1))
    if cap_subsets is not None and est > cap_subsets:
        raise WorkCapExceeded(
            f"q^k = {H.field.q}^{k} codewords and about {est} column subsets both exceed "
            f"their caps; raise --cap-codewords or --cap-subsets", est, cap_subsets)
    return _by_columns(H, cap_subsets)


def min_distance(code, method: str = "auto", cap_codewords: int | None = CODEWORD_CAP,
                 cap_subsets: int | None = SUBSET_CAP) -> int:
    return distance_search(code, method, cap_codewords, cap_subsets).d


def punctured_distance_at_least(H: MatrixGF, cols: Sequence[int], delta: int,
                                work: WorkCounter | None = None) -> bool:
    """Whether the code punctured to ``cols`` has minimum distance ``>= delta``."""
    G = _dual_basis(H)
    if G.rows == 0:
        return True  # zero code: no nonzero codeword at all
    cols = list(cols)
    Gs = G.select_columns(cols)
    if Gs.is_zero():
        return True
    # parity-check of the punctured code; empty when it is the whole space
    dual = MatrixGF._raw(H.field, nullspace(Gs), len(cols))
    return all_subsets_independent(dual, delta - 1, work)


def verify_locality(code, r: int | None = None, delta: int | None = None) -> bool:
    """Every local block has at most ``r+δ-1`` columns and punctured distance ``>= δ``.

    Global columns of a Construction B code are never claimed to be local.
    """
    r = code.r if r is None else r
    delta = code.delta if delta is None else delta
    H = code.parity_check
    covered = 0
    for start, stop in code.block_spans:
        if stop - start > r + delta - 1:
            return False
        if not punctured_distance_at_least(H, range(start, stop), delta):
            return False
        covered += stop - start
    return covered == code.n_local


@dataclass(frozen=True)
class OptimalityReport:
    n: int
    k: int
    d_measured: int
    bound_used: int
    d_bound: int
    defect: int
    locality_ok: bool

    @property
    def optimal(self) -> bool:
        return self.defect == 0 and self.locality_ok

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "d_measured": self.d_measured,
                "bound_used": self.bound_used, "d_bound": self.d_bound,
                "defect": self.defect, "locality_ok": self.locality_ok,
                "optimal": self.optimal}


def singleton_bound(n: int, k: int, r: int, delta: int, which: int = 1) -> int:
    """Right-hand side of the Singleton-type bound; ``which=3`` is the sharper form."""
    if which == 1:
        return n - k + 1 - (-(-k // r) - 1) * (delta - 1)
    if which == 3:
        return n - k + 1 - (-(-k // r)) * (delta - 1)
    raise ParameterError("bound must be 1 or 3")


def applicable_bound(n: int, r: int, delta: int, d: int) -> int:
    """3 when ``r = d-δ`` and ``(r+δ-1) | n``, otherwise 1."""
    return 3 if r == d - delta and n % (r + delta - 1) == 0 else 1


def singleton_report(code, d_measured: int, locality_ok: bool | None = None) -> OptimalityReport:
    if locality_ok is None:
        locality_ok = verify_locality(code)
    which = applicable_bound(code.n, code.r, code.delta, d_measured)
    bound = singleton_bound(code.n, code.k, code.r, code.delta, which)
    return OptimalityReport(code.n, code.k, d_measured, which, bound, bound - d_measured,
                            bool(locality_ok))


@dataclass(frozen=True)
class LemmaResult:
    nk: int
    k: int
    consistent: bool


def lemma_nk(n: int, r: int, delta: int, d: int) -> LemmaResult:
    """Redundancy forced by meeting the bound with equality when ``R | n``."""
    R = r + delta - 1
    if r < 1 or delta < 2:
        raise ParameterError("need r >= 1 and delta >= 2")
    if n % R:
        raise ParameterError(f"R={R} does not divide n={n}")
    if d < delta:
        raise ParameterError(f"d={d} must be at least delta={delta}")
    nk = (delta - 1) * (n // R) + d - delta - (delta - 1) * ((d - delta) // R)
    k = n - nk
    ok = 1 <= k <= n and singleton_bound(n, k, r, delta) == d
    return LemmaResult(nk, k, ok)


# -- erasure patterns -----------------------------------------------------------

@dataclass(frozen=True)
class ErasurePattern:
    """Erased generating elements per local block plus erased global elements."""

    per_block: tuple[frozenset, ...]
    global_erasures: frozenset = frozenset()

    @classmethod
    def of(cls, per_block: Iterable[Iterable[int]], global_erasures: Iterable[int] = ()):
        return cls(tuple(frozenset(int(x) for x in e) for e in per_block),
                   frozenset(int(x) for x in global_erasures))

    @classmethod
    def from_columns(cls, code, cols: Iterable[int]) -> "ErasurePattern":
        labels = code.column_labels()
        blocks = [set() for _ in code.groups]
        glob = set()
        for c in cols:
            b, x = labels[c]
            (glob if b == len(code.groups) else blocks[b]).add(x)
        return cls.of(blocks, glob)

    def columns(self, code) -> list[int]:
        if len(self.per_block) != len(code.groups):
            raise ParameterError(f"pattern has {len(self.per_block)} blocks, code has {len(code.groups)}")
        if self.global_erasures and not code.global_set:
            raise ParameterError("code has no global symbols")
        cols = [code.column_of(b, x) for b, e in enumerate(self.per_block) for x in sorted(e)]
        cols += [code.column_of(len(code.groups), x) for x in sorted(self.global_erasures)]
        return sorted(cols)

    @property
    def size(self) -> int:
        return sum(len(e) for e in self.per_block) + len(self.global_erasures)


def recoverable(code, pattern) -> bool:
    """Erased columns of the parity-check have full column rank."""
    cols = pattern.columns(code) if isinstance(pattern, ErasurePattern) else list(pattern)
    return columns_independent(code.parity_check, cols)


def meets_recovery_conditions(code, pattern: ErasurePattern) -> bool:
    """The sufficient recoverability conditions for Construction B patterns.

    With ``S`` the blocks holding at least δ erasures: the union of their
    erased elements plus the global erasures must not exceed ``h+δ-1``, and
    the union of their groups must be large enough (doubled to stay integral).
    """
    if code.construction != "B":
        raise ParameterError("the predicate applies to Construction B codes only")
    pattern.columns(code)  # validates membership
    S = [i for i, e in enumerate(pattern.per_block) if len(e) >= code.delta]
    if not S:
        return True
    erased = set().union(*(pattern.per_block[i] for i in S))
    if len(erased) + len(pattern.global_erasures) > code.h + code.delta - 1:
        return False
    union = set().union(*(code.groups[i] for i in S))
    need = (2 * code.r + code.delta - 2) * len(S) + code.delta
    if code.l in S:
        need += 2 * (code.v - code.r)
    return 2 * len(union) >= need


# name used by the original operation list
pattern_meets_theorem41 = meets_recovery_conditions
