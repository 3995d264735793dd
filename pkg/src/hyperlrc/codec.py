"""Encoding, erasure decoding and local repair for parity-check defined codes.

Words are plain lists of integer encodings; ``None`` marks an erased symbol.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from .errors import DecodeFailure, ParameterError
from .galois import FieldElement
from .matgf import MatrixGF, dot, nullspace, rref, solve


@dataclass(frozen=True)
class Generator:
    matrix: MatrixGF
    info_set: tuple[int, ...]


@functools.lru_cache(maxsize=64)
def _generator(H: MatrixGF) -> Generator:
    basis = nullspace(H)
    if not basis:
        raise ParameterError("the code has dimension 0")
    red, pivots = rref(MatrixGF._raw(H.field, basis, H.cols))
    return Generator(MatrixGF._raw(H.field, red, H.cols), tuple(pivots))


def generator_matrix(code) -> Generator:
    """Systematic generator on the leftmost information set (reported as ``info_set``)."""
    return _generator(code.parity_check)


def _symbol(f, x) -> int:
    if isinstance(x, FieldElement):
        f._check(x)
        return x.value
    x = int(x)
    if not 0 <= x < f.q:
        raise ParameterError(f"{x} is not an element of {f}")
    return x


def encode(code, message: Sequence) -> list[int]:
    gen = generator_matrix(code)
    f = code.parity_check.field
    if len(message) != gen.matrix.rows:
        raise ParameterError(f"message has length {len(message)}, expected k={gen.matrix.rows}")
    msg = [_symbol(f, x) for x in message]
    return [dot(f, msg, col) for col in gen.matrix.columns()]


def syndrome(code, word: Sequence[int]) -> list[int]:
    return code.parity_check.apply([_symbol(code.parity_check.field, x) for x in word])


def _split(code, word):
    H = code.parity_check
    if len(word) != H.cols:
        raise ParameterError(f"word has length {len(word)}, expected n={H.cols}")
    erased = [i for i, x in enumerate(word) if x is None]
    known = {i: _symbol(H.field, x) for i, x in enumerate(word) if x is not None}
    return erased, known


def _partial_syndrome(H: MatrixGF, known: dict[int, int], rows: Sequence[int]) -> list[int]:
    f = H.field
    idx = sorted(known)
    vals = [known[i] for i in idx]
    return [dot(f, [H.data[r][i] for i in idx], vals) for r in rows]


def decode_erasures(code, word: Sequence) -> list[int]:
    """Fill erased positions; raises :class:`DecodeFailure` when impossible."""
    H = code.parity_check
    f = H.field
    erased, known = _split(code, word)
    s = _partial_syndrome(H, known, range(H.rows))
    if not erased:
        if any(s):
            raise DecodeFailure("corrupt", "word has a nonzero syndrome")
        return [known[i] for i in range(H.cols)]
    sol = solve(H.select_columns(erased), [f.neg(x) for x in s])
    if sol is None:
        raise DecodeFailure("corrupt", "known symbols are inconsistent with every codeword")
    x, kernel = sol
    if kernel:
        raise DecodeFailure("ambiguous", f"{len(kernel)} free dimensions among erased symbols")
    out = dict(known)
    out.update(zip(erased, x))
    return [out[i] for i in range(H.cols)]


@dataclass(frozen=True)
class RepairResult:
    values: dict[int, int]
    read: tuple[int, ...]


def local_repair(code, word: Sequence, block_index: int) -> RepairResult:
    """Repair erasures inside one block from that block's local parity rows only."""
    H = code.parity_check
    f = H.field
    if not 0 <= block_index < len(code.block_spans):
        raise ParameterError(f"no local block {block_index}")
    if len(word) != H.cols:
        raise ParameterError(f"word has length {len(word)}, expected n={H.cols}")
    start, stop = code.block_spans[block_index]
    block = range(start, stop)
    erased = [i for i in block if word[i] is None]
    if len(erased) > code.delta - 1:
        raise ParameterError(f"{len(erased)} erasures exceed the local capability "
                             f"delta-1={code.delta - 1}; use decode_erasures")
    if not erased:
        return RepairResult({}, ())
    read = tuple(i for i in block if word[i] is not None)
    known = {i: _symbol(f, word[i]) for i in read}
    rows = list(code.local_rows(block_index))
    s = _partial_syndrome(H, known, rows)
    A = MatrixGF._raw(f, [[H.data[r][i] for i in erased] for r in rows], len(erased))
    sol = solve(A, [f.neg(x) for x in s])
    if sol is None:
        raise DecodeFailure("corrupt", "block symbols are inconsistent")
    x, kernel = sol
    if kernel:
        raise DecodeFailure("ambiguous", "local parity rows do not determine the erasures")
    return RepairResult(dict(zip(erased, x)), read)
