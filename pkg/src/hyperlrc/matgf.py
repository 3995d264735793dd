"""Dense exact linear algebra over a :class:`~hyperlrc.galois.Field`.

Matrices store integer element encodings.  Elimination always takes the
first nonzero entry of a column as pivot, so reduced forms and nullspace
bases are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ParameterError, WorkCapExceeded
from .galois import Field, FieldElement, field_from_descriptor, field_new


def _enc(f: Field, x) -> int:
    if isinstance(x, FieldElement):
        f._check(x)
        return x.value
    x = int(x)
    if not 0 <= x < f.q:
        raise ParameterError(f"{x} is not an element encoding of {f}")
    return x


class MatrixGF:
    """Immutable ``rows x cols`` matrix over ``field``."""

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: Field, data: Sequence[Sequence], cols: int | None = None):
        data = tuple(tuple(_enc(field, x) for x in row) for row in data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise ParameterError("ragged matrix rows")
        self.field = field
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def _raw(cls, field: Field, data, cols: int) -> "MatrixGF":
        m = cls.__new__(cls)
        m.field = field
        m._data = tuple(tuple(r) for r in data)
        m.rows = len(m._data)
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "MatrixGF":
        return cls._raw(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixGF":
        return cls._raw(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def data(self) -> tuple[tuple[int, ...], ...]:
        return self._data

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self._data[i][j])

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self._data]

    def columns(self) -> list[list[int]]:
        return [list(c) for c in zip(*self._data)] if self.rows else [[] for _ in range(self.cols)]

    def transpose(self) -> "MatrixGF":
        return MatrixGF._raw(self.field, self.columns(), self.rows)

    def select_columns(self, idx: Iterable[int]) -> "MatrixGF":
        idx = list(idx)
        return MatrixGF._raw(self.field, [[r[j] for j in idx] for r in self._data], len(idx))

    def select_rows(self, idx: Iterable[int]) -> "MatrixGF":
        return MatrixGF._raw(self.field, [self._data[i] for i in idx], self.cols)

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        if self.field != other.field:
            raise ParameterError("matrices over different fields")
        if self.cols != other.rows:
            raise ParameterError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        ocols = other.columns()
        out = [[dot(f, r, c) for c in ocols] for r in self._data]
        return MatrixGF._raw(f, out, other.cols)

    def apply(self, vec: Sequence[int]) -> list[int]:
        """Matrix-vector product ``self @ vec``."""
        if len(vec) != self.cols:
            raise ParameterError("vector length does not match column count")
        return [dot(self.field, r, vec) for r in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __eq__(self, other):
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.field, self.shape, self._data))

    def __repr__(self):
        return f"MatrixGF({self.field}, {self.rows}x{self.cols})"

    # -- export -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "q": self.field.q,
            "field": self.field.descriptor(),
            "entries": [x for r in self._data for x in r],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MatrixGF":
        if "field" in obj:
            f = field_from_descriptor(obj["field"])
        else:
            f = field_new(int(obj["q"]))
        rows, cols = int(obj["rows"]), int(obj["cols"])
        flat = list(obj["entries"])
        if len(flat) != rows * cols:
            raise ParameterError("entry count does not match shape")
        return cls(f, [flat[i * cols:(i + 1) * cols] for i in range(rows)], cols)

    def to_text(self) -> str:
        width = len(str(self.field.q - 1))
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self._data)


# -- vector helpers -----------------------------------------------------------

def dot(f: Field, a: Sequence[int], b: Sequence[int]) -> int:
    if f.e == 1:
        return sum(x * y for x, y in zip(a, b)) % f.p
    acc = 0
    add, mul = f.add, f.mul
    for x, y in zip(a, b):
        if x and y:
            acc = add(acc, mul(x, y))
    return acc


def _axpy(f: Field, y: list[int], x: Sequence[int], c: int) -> list[int]:
    """Return ``y - c*x``."""
    if f.e == 1:
        p = f.p
        return [(yi - c * xi) % p for yi, xi in zip(y, x)]
    sub, mul = f.sub, f.mul
    return [sub(yi, mul(c, xi)) if xi else yi for yi, xi in zip(y, x)]


def _scale(f: Field, x: Sequence[int], c: int) -> list[int]:
    if f.e == 1:
        p = f.p
        return [(c * xi) % p for xi in x]
    mul = f.mul
    return [mul(c, xi) for xi in x]


# -- builders -----------------------------------------------------------------

def vandermonde(f: Field, points: Sequence, first_power: int, num_rows: int,
                scale: Sequence | None = None) -> MatrixGF:
    """Entry ``(i, j) = scale[j] * points[j] ** (first_power + i)``, with ``0**0 = 1``."""
    pts = [_enc(f, x) for x in points]
    if len(set(pts)) != len(pts):
        raise ParameterError("Vandermonde points must be distinct")
    if first_power < 0 or num_rows < 0:
        raise ParameterError("powers and row counts must be non-negative")
    if scale is None:
        sc = [1] * len(pts)
    else:
        sc = [_enc(f, x) for x in scale]
        if len(sc) != len(pts):
            raise ParameterError("one scale entry per point required")
    data = [[f.mul(s, f.pow(x, first_power + i)) for x, s in zip(pts, sc)]
            for i in range(num_rows)]
    return MatrixGF._raw(f, data, len(pts))


def hstack(mats: Sequence[MatrixGF]) -> MatrixGF:
    f = mats[0].field
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ParameterError("hstack needs equal row counts")
    data = [sum((list(m.row(i)) for m in mats), []) for i in range(rows)]
    return MatrixGF._raw(f, data, sum(m.cols for m in mats))


def vstack(mats: Sequence[MatrixGF]) -> MatrixGF:
    f = mats[0].field
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ParameterError("vstack needs equal column counts")
    return MatrixGF._raw(f, [r for m in mats for r in m.data], cols)


def block_diag(mats: Sequence[MatrixGF]) -> MatrixGF:
    f = mats[0].field
    total = sum(m.cols for m in mats)
    data = []
    offset = 0
    for m in mats:
        for r in m.data:
            data.append([0] * offset + list(r) + [0] * (total - offset - m.cols))
        offset += m.cols
    return MatrixGF._raw(f, data, total)


# -- elimination --------------------------------------------------------------

def rref(m: MatrixGF) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and the pivot column list."""
    f = m.field
    work = [list(r) for r in m.data]
    pivots = []
    prow = 0
    for col in range(m.cols):
        if prow == len(work):
            break
        sel = next((i for i in range(prow, len(work)) if work[i][col]), None)
        if sel is None:
            continue
        work[prow], work[sel] = work[sel], work[prow]
        piv = work[prow]
        if piv[col] != 1:
            piv = _scale(f, piv, f.inv(piv[col]))
            work[prow] = piv
        for i in range(len(work)):
            if i != prow and work[i][col]:
                work[i] = _axpy(f, work[i], piv, work[i][col])
        pivots.append(col)
        prow += 1
    return work[:prow], pivots


def rank(m: MatrixGF) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    basis = EchelonBasis(m.field)
    vecs = m.data if m.rows <= m.cols else m.columns()
    for v in vecs:
        basis.push(v)
        if len(basis) == min(m.rows, m.cols):
            break
    return len(basis)


def nullspace(m: MatrixGF) -> list[list[int]]:
    """Basis of ``{x : m @ x = 0}``, one vector per non-pivot column."""
    f = m.field
    red, pivots = rref(m)
    pset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pset:
            continue
        v = [0] * m.cols
        v[free] = 1
        for row, pc in zip(red, pivots):
            v[pc] = f.neg(row[free])
        basis.append(v)
    return basis


def solve(m: MatrixGF, rhs: Sequence) -> tuple[list[int], list[list[int]]] | None:
    """Solve ``m @ x = rhs`` exactly.

    Returns ``None`` when the system is inconsistent, otherwise a witness
    solution and a basis of the homogeneous solution space (empty when the
    solution is unique).
    """
    f = m.field
    b = [_enc(f, x) for x in rhs]
    if len(b) != m.rows:
        raise ParameterError(f"rhs has length {len(b)}, expected {m.rows}")
    aug = MatrixGF._raw(f, [list(r) + [bi] for r, bi in zip(m.data, b)], m.cols + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [0] * m.cols
    for row, pc in zip(red, pivots):
        x[pc] = row[m.cols]
    return x, nullspace(m)


def _check_subset(m: MatrixGF, subset: Iterable[int]) -> list[int]:
    idx = sorted(int(i) for i in subset)
    if len(set(idx)) != len(idx):
        raise ParameterError("repeated column index")
    if idx and (idx[0] < 0 or idx[-1] >= m.cols):
        raise ParameterError("column index out of range")
    return idx


def columns_independent(m: MatrixGF, subset: Iterable[int]) -> bool:
    idx = _check_subset(m, subset)
    if not idx:
        return True
    if len(idx) > m.rows:
        return False
    return rank(m.select_columns(idx)) == len(idx)


class EchelonBasis:
    """Incrementally grown echelon basis supporting push/pop.

    Each stored vector has a normalised pivot and zeros at every earlier
    pivot, so reducing a new vector against the stack in order is exact.
    """

    def __init__(self, field: Field):
        self.field = field
        self._stack: list[tuple[int, list[int]]] = []

    def __len__(self):
        return len(self._stack)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        f = self.field
        v = list(vec)
        for piv, b in self._stack:
            c = v[piv]
            if c:
                v = _axpy(f, v, b, c)
        return v

    def push(self, vec: Sequence[int]) -> bool:
        """Add ``vec`` if independent of the stack; report whether it was."""
        v = self.reduce(vec)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        if v[piv] != 1:
            v = _scale(self.field, v, self.field.inv(v[piv]))
        self._stack.append((piv, v))
        return True

    def pop(self):
        self._stack.pop()


class WorkCounter:
    """Counts elementary tests and enforces an optional cap."""

    def __init__(self, cap: int | None = None):
        self.cap = cap
        self.count = 0

    def tick(self, n: int = 1):
        self.count += n
        if self.cap is not None and self.count > self.cap:
            raise WorkCapExceeded(f"work limit of {self.cap} tests exceeded", self.count, self.cap)


def find_dependent_columns(m: MatrixGF, size: int, work: WorkCounter | None = None,
                           candidates: Sequence[int] | None = None) -> list[int] | None:
    """First dependent column set of size ``<= size`` in lexicographic DFS order.

    When every smaller subset is already known to be independent, a returned
    set has exactly ``size`` columns.  ``None`` means every ``size``-subset of
    ``candidates`` is independent.
    """
    work = work or WorkCounter()
    cols = m.columns()
    cand = list(range(m.cols)) if candidates is None else sorted(candidates)
    n = len(cand)
    if size <= 0 or size > n:
        return None
    basis = EchelonBasis(m.field)
    chosen: list[int] = []

    def dfs(start: int, depth: int):
        for pos in range(start, n - (size - depth) + 1):
            c = cand[pos]
            work.tick()
            if not basis.push(cols[c]):
                return chosen + [c]
            if depth + 1 < size:
                chosen.append(c)
                hit = dfs(pos + 1, depth + 1)
                if hit is not None:
                    return hit
                chosen.pop()
            basis.pop()
        return None

    return dfs(0, 0)


def all_subsets_independent(m: MatrixGF, size: int, work: WorkCounter | None = None,
                            candidates: Sequence[int] | None = None) -> bool:
    size = min(size, m.cols if candidates is None else len(candidates))
    return find_dependent_columns(m, size, work, candidates) is None
