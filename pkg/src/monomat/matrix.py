"""Exact matrices, sign comparisons, monotonicity predicates, and the text format.

Entries are exact integers or fractions, never floats. Row and column indices
are 0-based throughout the Python API.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FormatError,
    IndexOutOfBoundsError,
    LengthMismatchError,
    TiedCoordinateError,
)

INCREASING = "increasing"
DECREASING = "decreasing"

ROW_MONOTONE = "row-monotone"
MONOTONE = "monotone"

# A sign vector is a tuple over {-1, +1}, one entry per matrix row.
SignVector = tuple[int, ...]


def sign_diff(v, w) -> SignVector:
    """Coordinatewise sign of w - v.

    Raises TiedCoordinateError if the vectors agree on any coordinate, since
    the comparison pattern is undefined there.
    """
    if len(v) != len(w):
        raise LengthMismatchError(f"dimension mismatch: {len(v)} vs {len(w)}")
    out = []
    for a, (x, y) in enumerate(zip(v, w)):
        if x == y:
            raise TiedCoordinateError(a)
        out.append(1 if y > x else -1)
    return tuple(out)


def negate_sign(s: SignVector) -> SignVector:
    return tuple(-x for x in s)


def sign_str(s: SignVector) -> str:
    """Render a sign vector as a '+'/'-' string."""
    return "".join("+" if x > 0 else "-" for x in s)


def parse_sign_str(text: str) -> SignVector:
    return tuple(1 if ch == "+" else -1 for ch in text)


_EXACT_TYPES = (int, Fraction)


@dataclass(frozen=True)
class Matrix:
    """Dense matrix of exact values, stored row-major as nested tuples."""

    entries: tuple[tuple, ...]

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = tuple(tuple(row) for row in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged rows")
            for value in row:
                if isinstance(value, bool) or not isinstance(value, _EXACT_TYPES):
                    raise TypeError(f"entries must be int or Fraction, got {value!r}")
        return cls(rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, a: int, i: int):
        if not (0 <= a < self.rows and 0 <= i < self.cols):
            raise IndexOutOfBoundsError(f"entry ({a}, {i}) outside {self.rows}x{self.cols}")
        return self.entries[a][i]

    def row(self, a: int) -> tuple:
        if not 0 <= a < self.rows:
            raise IndexOutOfBoundsError(f"row {a} outside {self.rows}x{self.cols}")
        return self.entries[a]

    def column(self, i: int) -> tuple:
        if not 0 <= i < self.cols:
            raise IndexOutOfBoundsError(f"column {i} outside {self.rows}x{self.cols}")
        return tuple(row[i] for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries)))


def submatrix(m: Matrix, rows, cols) -> Matrix:
    """Induced submatrix on the given strictly sorted index sets."""
    rows = tuple(rows)
    cols = tuple(cols)
    for name, idx, bound in (("row", rows, m.rows), ("column", cols, m.cols)):
        if not idx:
            raise ValueError(f"empty {name} selection")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"{name} indices must be strictly sorted")
        if idx[0] < 0 or idx[-1] >= bound:
            raise IndexOutOfBoundsError(f"{name} index outside matrix of {bound}")
    return Matrix(tuple(tuple(m.entries[a][i] for i in cols) for a in rows))


def _non_decreasing(seq) -> bool:
    return all(x <= y for x, y in zip(seq, seq[1:]))


def _non_increasing(seq) -> bool:
    return all(x >= y for x, y in zip(seq, seq[1:]))


def is_row_monotone(m: Matrix):
    """Common weak direction of all rows, or None.

    Constant rows count as increasing, so an all-constant matrix reports
    'increasing'.
    """
    if all(_non_decreasing(row) for row in m.entries):
        return INCREASING
    if all(_non_increasing(row) for row in m.entries):
        return DECREASING
    return None


def is_monotone(m: Matrix):
    """(row direction, column direction) when both axes are uniform, else None.

    Columns are read top to bottom; the two directions are independent.
    """
    row_dir = is_row_monotone(m)
    if row_dir is None:
        return None
    col_dir = is_row_monotone(m.transpose())
    if col_dir is None:
        return None
    return row_dir, col_dir


def tie_break_compare(m: Matrix, a: int, i: int, j: int) -> int:
    """Strict comparison of columns i and j within row a; -1 for '<', 1 for '>'.

    Equal entries are ordered by column index, which realizes a symbolic
    perturbation: the induced order is total and any witness found under it is
    weakly valid for the original values.
    """
    if i == j:
        raise ValueError("tie_break_compare needs two distinct columns")
    x, y = m.entry(a, i), m.entry(a, j)
    if x != y:
        return -1 if x < y else 1
    return -1 if i < j else 1


@dataclass(frozen=True)
class SubmatrixWitness:
    """Row set, column set, and directions certifying a found submatrix.

    kind is 'row-monotone' (col_direction is None) or 'monotone' (both
    directions set). Directions are claims under the weak predicates: a
    constant row satisfies either direction.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    kind: str
    row_direction: str
    col_direction: str | None = None

    def __post_init__(self):
        if self.kind not in (ROW_MONOTONE, MONOTONE):
            raise ValueError(f"unknown witness kind {self.kind!r}")
        if (self.kind == MONOTONE) != (self.col_direction is not None):
            raise ValueError("col_direction is set exactly for kind 'monotone'")
        for idx in (self.rows, self.cols):
            if not idx or any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError("witness index sets must be non-empty and strictly sorted")

    def validate(self, m: Matrix) -> bool:
        """True iff the claimed kind holds weakly on the induced submatrix."""
        if self.rows[-1] >= m.rows or self.cols[-1] >= m.cols or self.rows[0] < 0 or self.cols[0] < 0:
            return False
        sub = submatrix(m, self.rows, self.cols)
        row_ok = _non_decreasing if self.row_direction == INCREASING else _non_increasing
        if not all(row_ok(row) for row in sub.entries):
            return False
        if self.kind == MONOTONE:
            col_ok = _non_decreasing if self.col_direction == INCREASING else _non_increasing
            if not all(col_ok(col) for col in zip(*sub.entries)):
                return False
        return True


def ceil_log2(n: int) -> int:
    """Smallest s with 2^s >= n, for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class PipelineParams:
    """Parameter bundle for the guaranteed extraction pipelines.

    derive() fills in the canonical values for a target size n; arbitrary
    positive overrides are allowed for best-effort experiments.
    """

    n: int
    d: int
    s: int
    t: int
    m: int
    ell: int
    c: int = 1000
    c0: int = 2000

    def __post_init__(self):
        for name in ("n", "d", "t", "m", "ell", "c", "c0"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.s < 0:
            raise ValueError("s must be non-negative")

    @classmethod
    def derive(cls, n: int, d: int | None = None) -> "PipelineParams":
        if n < 2:
            raise ValueError("derived parameters need n >= 2")
        s = ceil_log2(n)
        t = 4 * s * s
        if d is None:
            d = 8 * n * n
        return cls(n=n, d=d, s=s, t=t, m=2 * d * t, ell=8 * n * n)

    @property
    def row_monotone_cols_exponent(self) -> int:
        """log2 of the column count that guarantees an n x n row-monotone find."""
        return self.c * self.n**4 * self.s**2

    @property
    def monotone_cols_exponent(self) -> int:
        """log2 of the column count that guarantees an n x n monotone find."""
        return self.c0 * self.n**4 * self.s**2


def _parse_value(token: str, lineno: int):
    try:
        return int(token)
    except ValueError:
        pass
    try:
        if "/" in token:
            num, den = token.split("/")
            return Fraction(int(num), int(den))
        if "." in token or "e" in token or "E" in token:
            return Fraction(token)
    except (ValueError, ZeroDivisionError):
        pass
    raise FormatError(lineno, f"bad value {token!r}")


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def parse_matrix(text: str) -> Matrix:
    """Parse the matrix text format: 'd N' then d rows of N values.

    '#' comment lines are ignored. Errors name the offending line.
    """
    lines = list(_meaningful_lines(text))
    if not lines:
        raise FormatError(1, "empty matrix file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(lineno, "header must be 'd N'")
    try:
        d, n_cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(lineno, "header must be 'd N'") from None
    if d < 1 or n_cols < 1:
        raise FormatError(lineno, "dimensions must be positive")
    if len(lines) - 1 != d:
        raise FormatError(lineno, f"expected {d} data rows, found {len(lines) - 1}")
    rows = []
    for lineno, content in lines[1:]:
        tokens = content.split()
        if len(tokens) != n_cols:
            raise FormatError(lineno, f"expected {n_cols} values, found {len(tokens)}")
        rows.append(tuple(_parse_value(tok, lineno) for tok in tokens))
    return Matrix.from_rows(rows)


def _format_value(value) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value)) if isinstance(value, Fraction) else str(value)


def format_matrix(m: Matrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines.extend(" ".join(_format_value(v) for v in row) for row in m.entries)
    return "\n".join(lines) + "\n"
