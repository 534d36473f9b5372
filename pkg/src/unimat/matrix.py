"""Immutable dense integer matrices and their text/JSON serialization.

Entries are plain Python ``int`` so any bit length is supported. Heavy
routines elsewhere in the package convert to lists of lists with
:meth:`IntMat.tolist`, work in place, and wrap the result again.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    EmptyInput,
    MalformedHeader,
    NonIntegerToken,
    ParseError,
    RowLengthMismatch,
)

_INT_RE = re.compile(r"-?[0-9]+\Z")
_HEADER_RE = re.compile(r"([0-9]+) ([0-9]+)\Z")


class IntMat:
    """Dense row-major matrix of arbitrary-precision integers.

    Instances are immutable and hashable. ``rows`` holds the entries as a
    tuple of row tuples.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(_as_int(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise EmptyInput("IntMat needs at least one row and one column")
        ncols = len(data[0])
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise RowLengthMismatch(
                    f"row {i} has {len(row)} entries, expected {ncols}"
                )
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMat is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMat":
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "IntMat":
        return cls(zip(*cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat view."""
        return tuple(x for row in self.rows for x in row)

    @property
    def T(self) -> "IntMat":
        return IntMat(zip(*self.rows))

    def transpose(self) -> "IntMat":
        return self.T

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMat({[list(r) for r in self.rows]!r})"

    def __matmul__(self, other: "IntMat") -> "IntMat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return IntMat(
            [sum(a * b for a, b in zip(row, c)) for c in cols] for row in self.rows
        )

    def __mul__(self, scalar: int) -> "IntMat":
        return IntMat([x * scalar for x in row] for row in self.rows)

    __rmul__ = __mul__

    def __neg__(self) -> "IntMat":
        return self * -1

    def vstack(self, other: "IntMat") -> "IntMat":
        if self.ncols != other.ncols:
            raise ValueError("column counts differ")
        return IntMat(self.rows + other.rows)

    def hstack(self, other: "IntMat") -> "IntMat":
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return IntMat(a + b for a, b in zip(self.rows, other.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMat":
        return IntMat([self.rows[i][j] for j in cols] for i in rows)

    def with_column(self, j: int, values: Sequence[int]) -> "IntMat":
        """Copy of ``self`` with column ``j`` replaced."""
        out = self.tolist()
        for i, v in enumerate(values):
            out[i][j] = v
        return IntMat(out)


@dataclass(frozen=True)
class EmptyMat:
    """A 0 x ``ncols`` matrix: the input of a completion with no given rows."""

    ncols: int

    nrows = 0

    @property
    def shape(self) -> tuple[int, int]:
        return 0, self.ncols


AnyMat = Union[IntMat, EmptyMat]


def _as_int(x) -> int:
    if isinstance(x, bool) or not hasattr(x, "__index__"):
        raise NonIntegerToken(f"not an integer: {x!r}")
    return x.__index__()


def max_norm(A: IntMat) -> int:
    """Largest absolute entry of ``A``."""
    if isinstance(A, EmptyMat):
        raise EmptyInput("max_norm of an empty matrix")
    return max(abs(x) for row in A.rows for x in row)


def serialize_matrix(A: AnyMat) -> bytes:
    lines = [f"{A.nrows} {A.ncols}"]
    if isinstance(A, IntMat):
        lines.extend(" ".join(str(x) for x in row) for row in A.rows)
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_matrix(text: Union[bytes, str]) -> AnyMat:
    """Parse the plain-text matrix format, or its JSON alternative.

    The text form is a ``"<rows> <cols>"`` header line followed by one line
    per row of single-space separated decimal integers. A header with zero
    rows yields an :class:`EmptyMat`. Input starting with ``{`` is read as
    ``{"rows": r, "cols": c, "data": [[...], ...]}``.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(f"matrix text must be ASCII: {exc}") from None
    if text.startswith("{"):
        return _parse_json(text)

    if text.endswith("\n"):
        text = text[:-1]
    lines = text.split("\n")
    m = _HEADER_RE.match(lines[0])
    if m is None:
        raise MalformedHeader(f"bad header line {lines[0]!r}")
    nrows, ncols = int(m.group(1)), int(m.group(2))
    if ncols == 0:
        raise MalformedHeader("matrix must have at least one column")
    body = lines[1:]
    if nrows == 0:
        if body:
            raise MalformedHeader("header declares 0 rows but body is not empty")
        return EmptyMat(ncols)
    if len(body) != nrows:
        raise MalformedHeader(f"header declares {nrows} rows, found {len(body)}")
    rows = []
    for i, line in enumerate(body):
        tokens = line.split(" ")
        if len(tokens) != ncols:
            raise RowLengthMismatch(
                f"row {i} has {len(tokens)} entries, expected {ncols}"
            )
        for tok in tokens:
            if not _INT_RE.match(tok):
                raise NonIntegerToken(f"row {i}: bad token {tok!r}")
        rows.append([int(t) for t in tokens])
    return IntMat(rows)


def _parse_json(text: str) -> AnyMat:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedHeader(f"invalid JSON: {exc}") from None
    try:
        nrows, ncols, data = obj["rows"], obj["cols"], obj["data"]
    except (KeyError, TypeError):
        raise MalformedHeader("JSON matrix needs 'rows', 'cols' and 'data'") from None
    if not isinstance(nrows, int) or not isinstance(ncols, int) or ncols < 1:
        raise MalformedHeader("'rows' and 'cols' must be integers")
    if nrows == 0 and data == []:
        return EmptyMat(ncols)
    if not isinstance(data, list) or len(data) != nrows:
        raise MalformedHeader(f"'data' must hold {nrows} rows")
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != ncols:
            raise RowLengthMismatch(f"row {i} does not have {ncols} entries")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise NonIntegerToken(f"row {i}: bad entry {x!r}")
    return IntMat(data)
