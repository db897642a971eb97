"""Lower-bound witness matrices: colex machinery, sampled sign matrices, and checks.

A witness matrix is defined implicitly by a d x t sign matrix: column k of the
witness is u_k = sum_i 2^i * y_k(i) * s_i, where y_k is the k-th bit vector of
length t in colexicographic order and s_i is the i-th sign-matrix column. The
comparison pattern of any two witness columns equals the sign-matrix column at
the highest coordinate where their bit vectors differ, so a sign matrix with
no large single-sign block yields a matrix with no large row-monotone
submatrix. Entries are exact integers below 2^(t+1) in magnitude.

Bit-vector coordinates and colex ranks are 1-based, matching the weight 2^i of
coordinate i; matrix row indices stay 0-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import (
    EqualVectorsError,
    ExhaustedAttemptsError,
    FormatError,
    IndexOutOfBoundsError,
    LengthMismatchError,
    MonomatError,
    RankOutOfRangeError,
)
from .extraction import ColoredMatrix
from .matrix import Matrix

BitVector = tuple[int, ...]


def colex_delta(x: BitVector, y: BitVector) -> int:
    """Largest coordinate (1-based) where two bit vectors differ."""
    if len(x) != len(y):
        raise LengthMismatchError(f"length mismatch: {len(x)} vs {len(y)}")
    for i in range(len(x) - 1, -1, -1):
        if x[i] != y[i]:
            return i + 1
    raise EqualVectorsError("vectors are equal")


def colex_compare(x: BitVector, y: BitVector) -> int:
    """-1, 0, or 1 comparing in colexicographic order."""
    if len(x) != len(y):
        raise LengthMismatchError(f"length mismatch: {len(x)} vs {len(y)}")
    if x == y:
        return 0
    b = colex_delta(x, y)
    return -1 if y[b - 1] == 1 else 1


def colex_unrank(t: int, k: int) -> BitVector:
    """k-th bit vector of length t in colex order, k in 1..2^t.

    Coordinate i holds bit i-1 of k-1, so coordinate 1 is the least
    significant bit.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if not 1 <= k <= 1 << t:
        raise RankOutOfRangeError(f"rank {k} outside 1..2^{t}")
    return tuple((k - 1) >> i & 1 for i in range(t))


@dataclass(frozen=True)
class SignMatrix:
    """d x t matrix over {-1, +1}, stored row-major."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "SignMatrix":
        rows = tuple(tuple(row) for row in rows)
        if not rows:
            raise ValueError("need at least one row")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged rows")
            if any(v not in (-1, 1) for v in row):
                raise ValueError("entries must be -1 or +1")
        return cls(rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def col(self, j: int) -> tuple[int, ...]:
        if not 0 <= j < self.cols:
            raise IndexOutOfBoundsError(f"column {j} outside 0..{self.cols - 1}")
        return tuple(row[j] for row in self.entries)

    def to_colored(self) -> ColoredMatrix:
        """+1 becomes red, -1 becomes blue."""
        return ColoredMatrix.from_sign_columns(
            [self.col(j) for j in range(self.cols)], dim=self.rows
        )


def parse_sign_matrix(text: str) -> SignMatrix:
    """Parse the sign-matrix format: 'd t' then d rows of +/- entries."""
    lines = [
        (lineno, stripped)
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if (stripped := raw.strip()) and not stripped.startswith("#")
    ]
    if not lines:
        raise FormatError(1, "empty sign-matrix file")
    lineno, header = lines[0]
    parts = header.split()
    try:
        d, t = int(parts[0]), int(parts[1])
    except (ValueError, IndexError):
        raise FormatError(lineno, "header must be 'd t'") from None
    if len(parts) != 2 or d < 1 or t < 0:
        raise FormatError(lineno, "header must be 'd t' with d >= 1, t >= 0")
    if len(lines) - 1 != d:
        raise FormatError(lineno, f"expected {d} data rows, found {len(lines) - 1}")
    rows = []
    for lineno, content in lines[1:]:
        tokens = content.split() if " " in content else list(content)
        if len(tokens) != t:
            raise FormatError(lineno, f"expected {t} entries, found {len(tokens)}")
        row = []
        for tok in tokens:
            if tok in ("+", "+1"):
                row.append(1)
            elif tok in ("-", "-1"):
                row.append(-1)
            else:
                raise FormatError(lineno, f"bad sign entry {tok!r}")
        rows.append(tuple(row))
    return SignMatrix.from_rows(rows)


def format_sign_matrix(sm: SignMatrix) -> str:
    lines = [f"{sm.rows} {sm.cols}"]
    lines.extend(" ".join("+" if v > 0 else "-" for v in row) for row in sm.entries)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class WitnessMatrix:
    """Implicit integer matrix with 2^t columns driven by a sign matrix."""

    signs: SignMatrix

    @property
    def rows(self) -> int:
        return self.signs.rows

    @property
    def t(self) -> int:
        return self.signs.cols

    @property
    def cols(self) -> int:
        return 1 << self.t

    def entry(self, a: int, k: int) -> int:
        """Entry at row a (0-based) and colex rank k (1-based)."""
        if not 0 <= a < self.rows:
            raise IndexOutOfBoundsError(f"row {a} outside 0..{self.rows - 1}")
        if not 1 <= k <= self.cols:
            raise IndexOutOfBoundsError(f"column rank {k} outside 1..{self.cols}")
        bits = k - 1
        row = self.signs.entries[a]
        return sum(1 << (i + 1) for i in range(self.t) if bits >> i & 1 and row[i] > 0) - sum(
            1 << (i + 1) for i in range(self.t) if bits >> i & 1 and row[i] < 0
        )

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(self.entry(a, k) for a in range(self.rows))

    def materialize(self, max_t: int = 20) -> Matrix:
        """Dense form; refused above 2^max_t columns."""
        if self.t > max_t:
            raise MonomatError(f"refusing to materialize 2^{self.t} columns (limit 2^{max_t})")
        return Matrix.from_rows(
            [[self.entry(a, k) for k in range(1, self.cols + 1)] for a in range(self.rows)]
        )


def build_witness(sm: SignMatrix) -> WitnessMatrix:
    """Implicit witness with 2^t columns; nothing is materialized."""
    return WitnessMatrix(signs=sm)


def sample_sign_matrix(
    d: int, t: int, n: int, s: int, seed: int = 0, max_attempts: int = 1000
) -> SignMatrix:
    """Uniform d x t sign matrix certified free of n x s single-sign blocks.

    Rejection sampling against the brute-force block finder; the certificate
    is the exhaustive check itself. Raises ExhaustedAttemptsError when no
    sample passes, which signals parameters where such matrices are rare or
    nonexistent.
    """
    from . import oracle

    if d < 1 or t < 1 or n < 1 or s < 1:
        raise ValueError("dimensions and targets must be positive")
    rng = random.Random(seed)
    budget = oracle.SearchBudget(max_col_subsets=comb(t, s) + 1)
    for _ in range(max_attempts):
        candidate = SignMatrix.from_rows(
            [[1 - 2 * rng.getrandbits(1) for _ in range(t)] for _ in range(d)]
        )
        if oracle.brute_force_monochromatic(candidate.to_colored(), n, s, budget) is None:
            return candidate
    raise ExhaustedAttemptsError(max_attempts)


def row_set_profiles(w: WitnessMatrix, n: int):
    """Yield (row set, all-plus columns, all-minus columns) over all n-row sets.

    Column indices are 0-based positions in the sign matrix.
    """
    entries = w.signs.entries
    for rows in combinations(range(w.rows), n):
        plus = tuple(j for j in range(w.t) if all(entries[r][j] > 0 for r in rows))
        minus = tuple(j for j in range(w.t) if all(entries[r][j] < 0 for r in rows))
        yield rows, plus, minus


@dataclass(frozen=True)
class WitnessCheckReport:
    """Result of the structural no-row-monotone-submatrix check."""

    verdict: str  # 'PASS' | 'FAIL'
    mode: str  # 'exhaustive' | 'sampled'
    target: int
    row_sets_tested: int
    row_sets_total: int
    max_plus: int
    max_minus: int
    clique_bound: int  # 2^max(|B+|, |B-|): cap on any row-monotone column clique
    worst_rows: tuple[int, ...]
    worst_plus: tuple[int, ...]
    worst_minus: tuple[int, ...]

    @property
    def coverage(self) -> float:
        if self.row_sets_total == 0:
            return 1.0
        return self.row_sets_tested / self.row_sets_total


def verify_witness(
    w: WitnessMatrix, n: int, max_row_sets: int = 10**6, seed: int = 0
) -> WitnessCheckReport:
    """Certify structurally that the witness has no n x n row-monotone submatrix.

    For each row set R of size n, count the sign-matrix columns constant +1
    (and constant -1) on R; any set of witness columns monotone on R pairwise
    differs inside those coordinates, so at most 2^|B| columns qualify. The
    verdict is PASS when that bound stays below n for every tested R.
    Enumeration is exhaustive when C(d, n) fits the budget, otherwise a seeded
    sample is drawn and the coverage is reported.
    """
    if n < 1:
        raise ValueError("n must be positive")
    d, t = w.rows, w.t
    total = comb(d, n) if n <= d else 0
    exhaustive = total <= max_row_sets
    if n > d:
        return WitnessCheckReport(
            verdict="PASS",
            mode="exhaustive",
            target=n,
            row_sets_tested=0,
            row_sets_total=0,
            max_plus=0,
            max_minus=0,
            clique_bound=1,
            worst_rows=(),
            worst_plus=(),
            worst_minus=(),
        )

    if exhaustive:
        row_sets = combinations(range(d), n)
    else:
        rng = random.Random(seed)
        seen = set()
        for _ in range(max_row_sets):
            seen.add(tuple(sorted(rng.sample(range(d), n))))
        row_sets = sorted(seen)

    entries = w.signs.entries
    tested = 0
    worst = ((), (), ())
    max_plus = max_minus = 0
    verdict = "PASS"
    for rows in row_sets:
        tested += 1
        plus = tuple(j for j in range(t) if all(entries[r][j] > 0 for r in rows))
        minus = tuple(j for j in range(t) if all(entries[r][j] < 0 for r in rows))
        if max(len(plus), len(minus)) > max(max_plus, max_minus):
            worst = (rows, plus, minus)
        max_plus = max(max_plus, len(plus))
        max_minus = max(max_minus, len(minus))
        if (1 << max(len(plus), len(minus))) >= n:
            verdict = "FAIL"
            break
    return WitnessCheckReport(
        verdict=verdict,
        mode="exhaustive" if exhaustive else "sampled",
        target=n,
        row_sets_tested=tested,
        row_sets_total=total,
        max_plus=max_plus,
        max_minus=max_minus,
        clique_bound=1 << max(max_plus, max_minus),
        worst_rows=worst[0],
        worst_plus=worst[1],
        worst_minus=worst[2],
    )


def structural_counterexample(w: WitnessMatrix, report: WitnessCheckReport):
    """Concrete row-monotone submatrix realizing a FAIL report.

    The offending row set together with columns whose bit vectors vary only
    inside the constant-sign coordinate set give 2^|B| columns that are
    monotone on those rows. Returns (rows, colex ranks, direction).
    """
    from .matrix import DECREASING, INCREASING

    if report.verdict != "FAIL":
        raise ValueError("no counterexample: report verdict is PASS")
    if len(report.worst_plus) >= len(report.worst_minus):
        coords, direction = report.worst_plus, INCREASING
    else:
        coords, direction = report.worst_minus, DECREASING
    ranks = [1]
    for j in coords:
        ranks += [k + (1 << j) for k in ranks]
    return report.worst_rows, tuple(sorted(ranks)), direction
