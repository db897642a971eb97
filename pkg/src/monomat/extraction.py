"""Constructive extraction of (row-)monotone submatrices from wide matrices.

The chain of tools: split a vector sequence into two halves with a uniform
comparison pattern, iterate that into a tree-like subsequence, thin the
associated labeled tree to a perfect leaf set with a layered labeling, find a
single-sign block in the layer labels, and read off a witness. The end-to-end
pipelines run in best-effort mode on any matrix and report the largest square
witness they can certify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    InsufficientLengthError,
    InsufficientTreeError,
    InternalCheckError,
    GuaranteeUnmetError,
    NotPowerOfTwoError,
    TiedCoordinateError,
    TooShortError,
)
from .matrix import (
    DECREASING,
    INCREASING,
    MONOTONE,
    ROW_MONOTONE,
    Matrix,
    PipelineParams,
    SignVector,
    SubmatrixWitness,
    ceil_log2,
    is_monotone,
    is_row_monotone,
    sign_diff,
    sign_str,
    submatrix,
)
from .trees import (
    LabeledBinaryTree,
    induced_subtree,
    is_layered,
    levels_leafset,
    vertex_ancestor,
)

RED = "red"
BLUE = "blue"


@dataclass(frozen=True)
class IndexedSequence:
    """Sequence of d-dimensional vectors tagged with their original positions."""

    vectors: tuple[tuple, ...]
    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vectors) != len(self.indices):
            raise ValueError("vectors and indices must have equal length")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("original indices must be strictly increasing")
        if self.vectors:
            dim = len(self.vectors[0])
            if any(len(v) != dim for v in self.vectors):
                raise ValueError("all vectors must share one dimension")

    @classmethod
    def from_vectors(cls, vectors) -> "IndexedSequence":
        vectors = tuple(tuple(v) for v in vectors)
        return cls(vectors, tuple(range(len(vectors))))

    @classmethod
    def from_columns(cls, m: Matrix) -> "IndexedSequence":
        """Columns of a matrix, with every coordinate lifted to (value, column).

        The lift makes all coordinates pairwise distinct, so strict sign
        comparisons are total; any monotone structure found in the lifted
        sequence is weakly monotone in the original values.
        """
        vectors = tuple(
            tuple((m.entries[a][i], i) for a in range(m.rows)) for i in range(m.cols)
        )
        return cls(vectors, tuple(range(m.cols)))

    def __len__(self):
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    def subsequence(self, positions) -> "IndexedSequence":
        positions = tuple(positions)
        return IndexedSequence(
            tuple(self.vectors[p] for p in positions),
            tuple(self.indices[p] for p in positions),
        )

    def check_coordinate_distinct(self) -> bool:
        """True iff no two vectors agree on any coordinate."""
        for a in range(self.dim):
            seen = set()
            for v in self.vectors:
                if v[a] in seen:
                    return False
                seen.add(v[a])
        return True


@dataclass(frozen=True)
class TreeLikeCertificate:
    """A subsequence together with the labeled tree explaining all its sign patterns."""

    sequence: IndexedSequence
    tree: LabeledBinaryTree

    def check(self) -> bool:
        """Exhaustively confirm that ancestor labels match pairwise sign patterns."""
        n = len(self.sequence)
        for i in range(n):
            for j in range(i + 1, n):
                expected = self.tree.leaf_label(i + 1, j + 1)
                if sign_diff(self.sequence.vectors[i], self.sequence.vectors[j]) != expected:
                    return False
        return True


@dataclass(frozen=True)
class ColoredMatrix:
    """Total red/blue coloring of a d x t grid."""

    entries: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("need at least one row")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")
            if any(c not in (RED, BLUE) for c in row):
                raise ValueError("entries must be 'red' or 'blue'")

    @classmethod
    def from_sign_columns(cls, columns, dim: int) -> "ColoredMatrix":
        """Columns of sign vectors; +1 maps to red, -1 to blue."""
        return cls(
            tuple(
                tuple(RED if col[a] > 0 else BLUE for col in columns) for a in range(dim)
            )
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])


def _split_positions(seq: IndexedSequence, positions):
    """One splitting round: two equal-size sub-groups with a uniform sign pattern.

    Returns (sign, first_positions, second_positions). Every element of the
    first group precedes every element of the second, and the sign of
    (second - first) is the returned vector on every coordinate. Sizes shrink
    by at most half per coordinate, so both groups keep at least
    ceil(len/2^(d+1)) elements whenever 2^(d+1) divides len.
    """
    if len(positions) < 2:
        raise TooShortError(f"cannot split a group of {len(positions)}")
    half = len(positions) // 2
    first = list(positions[:half])
    second = list(positions[len(positions) - half :])
    signs = []
    for a in range(seq.dim):
        ordered = sorted(first + second, key=lambda p: seq.vectors[p][a])
        for p, q in zip(ordered, ordered[1:]):
            if seq.vectors[p][a] == seq.vectors[q][a]:
                raise TiedCoordinateError(a)
        low = set(ordered[: len(ordered) // 2])
        first_low = [p for p in first if p in low]
        first_high = [p for p in first if p not in low]
        if len(first_low) >= len(first_high):
            first = first_low
            second = [p for p in second if p not in low]
            signs.append(1)
        else:
            first = first_high
            second = [p for p in second if p in low]
            signs.append(-1)
        if len(first) != len(second):
            raise InternalCheckError("split halves lost size parity")
    return tuple(signs), first, second


def bipartite_split(seq: IndexedSequence):
    """Split a sequence into halves A, B with A before B and one sign pattern.

    Returns (sign, A, B) with |A| = |B|; the guarantee |A| >= N/2^(d+1) is
    exact whenever 2^(d+1) divides N.
    """
    sign, first, second = _split_positions(seq, tuple(range(len(seq))))
    return sign, seq.subsequence(first), seq.subsequence(second)


def _descend_tree_like(seq: IndexedSequence, target: int | None):
    """Iterate the halving construction level by level.

    Stops after `target` levels, or as deep as possible when target is None.
    Returns (achieved height, groups, labels).
    """
    groups = [list(range(len(seq)))]
    labels = {}
    height = 0
    while target is None or height < target:
        new_groups = []
        new_labels = {}
        try:
            for gi, group in enumerate(groups):
                sign, first, second = _split_positions(seq, group)
                new_labels[(height, gi + 1)] = sign
                new_groups.append(first)
                new_groups.append(second)
        except TooShortError:
            if target is not None:
                raise InsufficientLengthError(achieved=height, target=target) from None
            break
        labels.update(new_labels)
        groups = new_groups
        height += 1
    return height, groups, labels


def tree_like_subsequence(seq: IndexedSequence, m: int) -> TreeLikeCertificate:
    """Extract a length-2^m subsequence whose sign patterns follow one labeled tree.

    Success is guaranteed when len(seq) >= 2^(m(d+1)); on shorter input the
    construction may die early, raising InsufficientLengthError. The earliest
    element of each surviving group is kept as its representative.
    """
    if m < 0:
        raise ValueError("height must be non-negative")
    if not len(seq):
        raise TooShortError("empty sequence")
    height, groups, labels = _descend_tree_like(seq, m)
    reps = [group[0] for group in groups]
    return TreeLikeCertificate(
        sequence=seq.subsequence(reps),
        tree=LabeledBinaryTree(height=height, dim=seq.dim, labels=labels),
    )


def best_tree_like(seq: IndexedSequence) -> TreeLikeCertificate:
    """Tree-like subsequence of the largest height the construction reaches."""
    if not len(seq):
        raise TooShortError("empty sequence")
    height, groups, labels = _descend_tree_like(seq, None)
    reps = [group[0] for group in groups]
    return TreeLikeCertificate(
        sequence=seq.subsequence(reps),
        tree=LabeledBinaryTree(height=height, dim=seq.dim, labels=labels),
    )


def is_binary_tree_like(seq: IndexedSequence):
    """The unique labeled tree consistent with all pairwise signs, or None.

    The length must be a power of two. Each pair (i, j) proposes the label
    sign(v_j - v_i) for the common ancestor of leaves i and j; the sequence is
    tree-like exactly when no vertex receives two conflicting proposals.
    """
    n = len(seq)
    if n < 1 or n & (n - 1):
        raise NotPowerOfTwoError(f"length {n} is not a power of two")
    m = n.bit_length() - 1
    labels = {}
    for i in range(n):
        for j in range(i + 1, n):
            vertex = vertex_ancestor(m, (m, i + 1), (m, j + 1))
            proposed = sign_diff(seq.vectors[i], seq.vectors[j])
            if labels.setdefault(vertex, proposed) != proposed:
                return None
    return LabeledBinaryTree(height=m, dim=seq.dim, labels=labels)


def _perfect_descent(tree: LabeledBinaryTree, max_height: int | None = None):
    """Pair-and-group induction producing one perfect leaf set per height.

    Consecutive perfect subtrees are joined; the joined roots are grouped by
    (ambient depth, label) and the largest group survives, ties broken by the
    lexicographically smallest (depth, label string). Returns (per-height
    leaf sets, per-round chosen labels).
    """
    m = tree.height
    sets = [(leaf,) for leaf in range(1, (1 << m) + 1)]
    roots = [(m, leaf) for leaf in range(1, (1 << m) + 1)]
    levels = [sets[0]]
    round_labels = []
    while len(sets) >= 2 and (max_height is None or len(levels) <= max_height):
        joined = []
        for j in range(len(sets) // 2):
            q = vertex_ancestor(m, roots[2 * j], roots[2 * j + 1])
            joined.append((q, tree.label(q)))
        groups: dict[tuple, list[int]] = {}
        for j, (q, label) in enumerate(joined):
            groups.setdefault((q[0], label), []).append(j)
        best_key = min(groups, key=lambda k: (-len(groups[k]), k[0], sign_str(k[1])))
        chosen = groups[best_key]
        sets = [sets[2 * j] + sets[2 * j + 1] for j in chosen]
        roots = [joined[j][0] for j in chosen]
        round_labels.append(best_key[1])
        levels.append(sets[0])
    return levels, round_labels


def perfect_leafset_extract(tree: LabeledBinaryTree, target: int):
    """Perfect leaf set of size 2^target with a layered induced labeling.

    Guaranteed to exist when 2^m >= (2^(d+1) * m)^target; otherwise the
    induction may run out of subtrees, raising InsufficientTreeError.
    """
    if target < 0:
        raise ValueError("target height must be non-negative")
    levels, _ = _perfect_descent(tree, max_height=target)
    if target >= len(levels):
        raise InsufficientTreeError(achieved=len(levels) - 1, target=target)
    return levels[target]


def monochromatic_submatrix(cm: ColoredMatrix, n: int, s: int):
    """First n x s single-color block, or None.

    Guaranteed to exist when t >= 4s^2 and d >= 4n * 2^s. Red is tried before
    blue; rows are scanned top down and the s-subsets of each row's colored
    columns are tallied in lexicographic order, stopping at the first subset
    seen in n rows.
    """
    if n < 1 or s < 0:
        raise ValueError("need n >= 1 and s >= 0")
    if n > cm.rows or s > cm.cols:
        return None
    for color in (RED, BLUE):
        table: dict[tuple, list[int]] = {}
        for a in range(cm.rows):
            row = cm.entries[a]
            colored_cols = [j for j in range(cm.cols) if row[j] == color]
            for subset in combinations(colored_cols, s):
                rows_seen = table.setdefault(subset, [])
                rows_seen.append(a)
                if len(rows_seen) == n:
                    return tuple(rows_seen), subset, color
    return None


def monotone_subsequence_1d(seq, n: int):
    """Length-n monotone subsequence with the lexicographically smallest indices.

    Ties count as increasing (the symbolic perturbation by position), so
    'increasing' means non-decreasing values and 'decreasing' means strictly
    decreasing. Increasing wins when both directions admit length n. Always
    succeeds when len(seq) >= (n-1)^2 + 1; returns None otherwise when no
    direction reaches length n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    values = tuple(seq)
    if len(values) < n:
        return None
    for direction in (INCREASING, DECREASING):
        indices = _lex_smallest_run(values, n, direction)
        if indices is not None:
            return indices, direction
    return None


def _lex_smallest_run(values, n, direction):
    size = len(values)
    if direction == INCREASING:
        def follows(i, j):
            return values[j] >= values[i]
    else:
        def follows(i, j):
            return values[j] < values[i]
    run = [1] * size
    for i in range(size - 2, -1, -1):
        best = 0
        vi = values[i]
        for j in range(i + 1, size):
            if run[j] > best and follows(i, j):
                best = run[j]
        run[i] = best + 1
    out = []
    prev = None
    for need in range(n, 0, -1):
        start = prev + 1 if prev is not None else 0
        for i in range(start, size):
            if run[i] >= need and (prev is None or follows(prev, i)):
                out.append(i)
                prev = i
                break
        else:
            return None
    return tuple(out)


@dataclass(frozen=True)
class PipelineResult:
    """Outcome of a best-effort or guaranteed pipeline run."""

    witness: SubmatrixWitness | None
    target: int
    achieved: int
    met_target: bool
    guaranteed: bool
    stages: tuple[tuple[str, str], ...]
    bottleneck: str | None


def _trivial_result(m: Matrix, n: int, kind: str, directions, guaranteed: bool):
    k = min(n, m.rows, m.cols)
    if kind == ROW_MONOTONE:
        witness = SubmatrixWitness(
            rows=tuple(range(k)), cols=tuple(range(k)), kind=kind, row_direction=directions
        )
        detail = directions
    else:
        witness = SubmatrixWitness(
            rows=tuple(range(k)),
            cols=tuple(range(k)),
            kind=kind,
            row_direction=directions[0],
            col_direction=directions[1],
        )
        detail = f"{directions[0]}/{directions[1]}"
    met = k >= n
    return PipelineResult(
        witness=witness,
        target=n,
        achieved=k,
        met_target=met,
        guaranteed=guaranteed and met,
        stages=(("fast_path", f"whole matrix is {kind} ({detail})"),),
        bottleneck=None if met else "matrix size",
    )


def _fallback_search(m: Matrix, n: int, kind: str, budget: int):
    """Exhaustive search for an n x n witness when the whole space fits the budget.

    Returns (witness_or_None, searched: bool).
    """
    from . import oracle

    if n > m.rows or n > m.cols:
        return None, True
    space = math.comb(m.rows, n) * math.comb(m.cols, n)
    if space > budget:
        return None, False
    finder = (
        oracle.brute_force_row_monotone if kind == ROW_MONOTONE else oracle.brute_force_monotone
    )
    bound = oracle.SearchBudget(max_row_subsets=space + 1, max_col_subsets=space + 1)
    return finder(m, n, bound), True


def _check_guaranteed_row(m: Matrix, n: int):
    params = PipelineParams.derive(max(n, 2))
    exponent = params.row_monotone_cols_exponent
    if m.rows < params.d or m.cols.bit_length() <= exponent:
        raise GuaranteeUnmetError(
            f"guaranteed mode needs at least {params.d} rows and more than 2^{exponent} "
            f"columns for n={n}; got {m.rows}x{m.cols}"
        )
    return params


def _check_guaranteed_full(m: Matrix, n: int):
    params = PipelineParams.derive(max(n, 2))
    exponent = params.monotone_cols_exponent
    if m.rows < 64 * n**4 or m.cols.bit_length() <= exponent:
        raise GuaranteeUnmetError(
            f"guaranteed mode needs at least {64 * n ** 4} rows and more than 2^{exponent} "
            f"columns for n={n}; got {m.rows}x{m.cols}"
        )
    return params


def find_row_monotone(
    m: Matrix, n: int, mode: str = "best-effort", fallback_budget: int = 200_000
) -> PipelineResult:
    """Search for an n x n row-monotone submatrix.

    Pipeline: lift columns to tie-free vectors, build the deepest tree-like
    subsequence, thin it to a perfect leaf set, find a single-sign block in
    the layer labels, and select columns through the depth-set leaf formula.
    Best-effort mode accepts any matrix and degrades the target; when the
    target is missed and the n x n search space fits the fallback budget, an
    exhaustive pass settles existence. Guaranteed mode refuses matrices below
    the proven thresholds.
    """
    if n < 1:
        raise ValueError("n must be positive")
    guaranteed = mode == "guaranteed"
    if mode not in ("best-effort", "guaranteed"):
        raise ValueError(f"unknown mode {mode!r}")
    if guaranteed:
        _check_guaranteed_row(m, n)

    whole = is_row_monotone(m)
    if whole is not None:
        return _trivial_result(m, n, ROW_MONOTONE, whole, guaranteed)

    stages = []
    seq = IndexedSequence.from_columns(m)
    cert = best_tree_like(seq)
    tree_height = cert.tree.height
    stages.append(("tree_like_subsequence", f"height {tree_height}"))

    levels, round_labels = _perfect_descent(cert.tree)
    layers = len(levels) - 1
    stages.append(("perfect_leafset_extract", f"height {layers}"))

    # Layer q of the height-`layers` leaf set carries the label chosen in
    # round (layers - q), so depth 0 holds the newest root label.
    depth_labels = list(reversed(round_labels))
    colored = ColoredMatrix.from_sign_columns(depth_labels, dim=m.rows)

    witness = None
    achieved = 0
    for k in range(n, 0, -1):
        s_k = ceil_log2(k)
        if k > m.rows or s_k > layers:
            continue
        block = monochromatic_submatrix(colored, k, s_k)
        if block is None:
            continue
        row_set, depth_set, color = block
        positions = levels_leafset(layers, depth_set)
        leaf_pool = levels[layers]
        chosen_cols = tuple(
            sorted(cert.sequence.indices[leaf_pool[q - 1] - 1] for q in positions)
        )[:k]
        direction = INCREASING if color == RED else DECREASING
        witness = SubmatrixWitness(
            rows=row_set, cols=chosen_cols, kind=ROW_MONOTONE, row_direction=direction
        )
        if not witness.validate(m):
            raise InternalCheckError("pipeline produced an invalid row-monotone witness")
        achieved = k
        stages.append(
            ("monochromatic_submatrix", f"{k} rows x {s_k} layers, {color}")
        )
        break

    met = achieved >= n
    if not met:
        found, searched = _fallback_search(m, n, ROW_MONOTONE, fallback_budget)
        if found is not None:
            witness = found
            achieved = n
            met = True
            stages.append(("exhaustive_fallback", "witness found"))
        elif searched:
            stages.append(("exhaustive_fallback", "no witness exists"))

    bottleneck = None
    if not met:
        s_target = ceil_log2(n)
        if n > m.rows:
            bottleneck = "matrix size"
        elif tree_height < s_target:
            bottleneck = "tree_like_subsequence"
        elif layers < s_target:
            bottleneck = "perfect_leafset_extract"
        else:
            bottleneck = "monochromatic_submatrix"
    if guaranteed and not met:
        raise InternalCheckError(
            "guaranteed preconditions held but the pipeline missed its target"
        )
    return PipelineResult(
        witness=witness,
        target=n,
        achieved=achieved,
        met_target=met,
        guaranteed=guaranteed and met,
        stages=tuple(stages),
        bottleneck=bottleneck,
    )


def find_monotone(
    m: Matrix, n: int, mode: str = "best-effort", fallback_budget: int = 200_000
) -> PipelineResult:
    """Search for an n x n monotone submatrix (rows and columns both uniform).

    Every column is reduced to its canonical monotone run of a common length,
    columns are grouped by (direction, exact row tuple), and the row-monotone
    pipeline runs inside the largest group; since all surviving columns are
    monotone over those rows, the combined witness is fully monotone.
    """
    if n < 1:
        raise ValueError("n must be positive")
    guaranteed = mode == "guaranteed"
    if mode not in ("best-effort", "guaranteed"):
        raise ValueError(f"unknown mode {mode!r}")
    params = _check_guaranteed_full(m, n) if guaranteed else None

    whole = is_monotone(m)
    if whole is not None:
        return _trivial_result(m, n, MONOTONE, whole, guaranteed)

    stages = []
    if guaranteed:
        run_length = params.ell
    else:
        run_length = max(n, math.isqrt(m.rows - 1) + 1)
    run_length = min(run_length, m.rows)

    table: dict[tuple, list[int]] = {}
    while True:
        table.clear()
        qualifying = 0
        for i in range(m.cols):
            found = monotone_subsequence_1d(m.column(i), run_length)
            if found is None:
                continue
            qualifying += 1
            indices, direction = found
            table.setdefault((direction, indices), []).append(i)
        if table or run_length == 1:
            break
        run_length -= 1
    stages.append(("column_runs", f"length {run_length}, {qualifying}/{m.cols} columns"))

    best_key = None
    for key, cols in table.items():
        if best_key is None or len(cols) > len(table[best_key]):
            best_key = key
    direction, row_set = best_key
    group_cols = table[best_key]
    stages.append(("pigeonhole_group", f"{len(group_cols)} columns, {direction}"))

    inner = find_row_monotone(
        submatrix(m, row_set, group_cols), n, mode="best-effort", fallback_budget=fallback_budget
    )
    stages.extend((f"row_stage:{name}", detail) for name, detail in inner.stages)

    witness = None
    achieved = 0
    if inner.witness is not None:
        witness = SubmatrixWitness(
            rows=tuple(row_set[r] for r in inner.witness.rows),
            cols=tuple(group_cols[c] for c in inner.witness.cols),
            kind=MONOTONE,
            row_direction=inner.witness.row_direction,
            col_direction=direction,
        )
        if not witness.validate(m):
            raise InternalCheckError("pipeline produced an invalid monotone witness")
        achieved = inner.achieved

    met = achieved >= n
    if not met:
        found, searched = _fallback_search(m, n, MONOTONE, fallback_budget)
        if found is not None:
            witness = found
            achieved = n
            met = True
            stages.append(("exhaustive_fallback", "witness found"))
        elif searched:
            stages.append(("exhaustive_fallback", "no witness exists"))

    bottleneck = None
    if not met:
        if n > m.rows or n > m.cols:
            bottleneck = "matrix size"
        elif run_length < n or len(group_cols) < n:
            bottleneck = "pigeonhole_group"
        else:
            bottleneck = f"row_stage:{inner.bottleneck}" if inner.bottleneck else "row_stage"
    if guaranteed and not met:
        raise InternalCheckError(
            "guaranteed preconditions held but the pipeline missed its target"
        )
    return PipelineResult(
        witness=witness,
        target=n,
        achieved=achieved,
        met_target=met,
        guaranteed=guaranteed and met,
        stages=tuple(stages),
        bottleneck=bottleneck,
    )
