"""
Linear algebra over the two-element field.

Rows are packed into Python integers: bit ``j-1`` of ``rows[i-1]`` holds entry
``(i, j)``. Indices in every public signature are 1-based.
"""

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ValidationError

logger = logging.getLogger(__name__)


class PatternClass(str, enum.Enum):
    """Square 0/1 patterns whose rank is known in closed form."""

    DIAGONAL = "diagonal"
    ANTIDIAGONAL = "antidiagonal"
    TRIANGULAR = "triangular"
    NEAR_TRIANGULAR = "near_triangular"
    # probing witnesses: no constrained entries, rank checked directly
    GENERAL = "general"


@dataclass(frozen=True)
class Gf2Matrix:
    """Immutable 0/1 matrix with word-packed rows."""

    n_rows: int
    n_cols: int
    rows: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValidationError("matrix dimensions must be non-negative")
        if len(self.rows) != self.n_rows:
            raise ValidationError(
                f"expected {self.n_rows} rows, got {len(self.rows)}"
            )
        limit = 1 << self.n_cols
        for row in self.rows:
            if row < 0 or row >= limit:
                raise ValidationError(f"row {row:#x} does not fit in {self.n_cols} bits")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        n_rows = len(entries)
        n_cols = len(entries[0]) if n_rows else 0
        packed = []
        for row in entries:
            if len(row) != n_cols:
                raise ValidationError("ragged matrix rows")
            bits = 0
            for j, value in enumerate(row):
                if value not in (0, 1):
                    raise ValidationError(f"entry {value!r} is not 0 or 1")
                if value:
                    bits |= 1 << j
            packed.append(bits)
        return cls(n_rows, n_cols, tuple(packed))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "Gf2Matrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n_rows and 1 <= j <= self.n_cols):
            raise ValidationError(
                f"entry ({i}, {j}) outside {self.n_rows}x{self.n_cols} matrix"
            )
        return (self.rows[i - 1] >> (j - 1)) & 1

    def to_lists(self) -> List[List[int]]:
        return [
            [(row >> j) & 1 for j in range(self.n_cols)] for row in self.rows
        ]

    def transpose(self) -> "Gf2Matrix":
        cols = []
        for j in range(self.n_cols):
            bits = 0
            for i, row in enumerate(self.rows):
                if (row >> j) & 1:
                    bits |= 1 << i
            cols.append(bits)
        return Gf2Matrix(self.n_cols, self.n_rows, tuple(cols))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Gf2Matrix":
        """Rows and columns are 1-based and kept in the given order."""
        packed = []
        for i in rows:
            source = self.rows[i - 1] if 1 <= i <= self.n_rows else None
            if source is None:
                raise ValidationError(f"row {i} out of range")
            bits = 0
            for position, j in enumerate(cols):
                if not 1 <= j <= self.n_cols:
                    raise ValidationError(f"column {j} out of range")
                if (source >> (j - 1)) & 1:
                    bits |= 1 << position
            packed.append(bits)
        return Gf2Matrix(len(rows), len(cols), tuple(packed))

    def rank(self) -> int:
        return rank_of_rows(self.rows)


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of packed rows; any integers may serve as bit vectors.

    Pivot: lowest-index column present in the remaining rows, taken from the
    lowest-index row holding it.
    """
    work = [row for row in rows if row]
    rank = 0
    while work:
        combined = 0
        for row in work:
            combined |= row
        low = combined & -combined
        for index, row in enumerate(work):
            if row & low:
                pivot = work.pop(index)
                break
        work = [row ^ pivot if row & low else row for row in work]
        work = [row for row in work if row]
        rank += 1
    return rank


def rank(matrix: Gf2Matrix) -> int:
    return rank_of_rows(matrix.rows)


def independent_rows(rows: Sequence[int]) -> List[int]:
    """0-based indices of a maximal independent subset, greedy in input order."""
    # lead bit -> vector; no vector contains another vector's lead bit
    basis: Dict[int, int] = {}
    chosen = []
    for index, row in enumerate(rows):
        reduced = row
        for lead, vector in basis.items():
            if reduced & lead:
                reduced ^= vector
        if reduced:
            lead = reduced & -reduced
            for other, vector in basis.items():
                if vector & lead:
                    basis[other] = vector ^ reduced
            basis[lead] = reduced
            chosen.append(index)
    return chosen


def pattern(
    cls: PatternClass, r: int, diagonal_bits: Optional[Sequence[int]] = None
) -> Gf2Matrix:
    """The r x r matrix of the given class.

    ``diagonal_bits`` is required for near-triangular matrices and forbidden
    otherwise.
    """
    cls = PatternClass(cls)
    if r < 1:
        raise ValidationError(f"pattern size must be at least 1, got {r}")
    if cls is PatternClass.GENERAL:
        raise ValidationError("the general class does not determine a matrix")
    if cls is PatternClass.NEAR_TRIANGULAR:
        if diagonal_bits is None or len(diagonal_bits) != r:
            raise ValidationError(
                "near_triangular needs exactly r diagonal bits"
            )
    elif diagonal_bits is not None:
        raise ValidationError(f"{cls.value} takes no diagonal bits")

    rows = []
    full = (1 << r) - 1
    for i in range(r):
        below = (1 << i) - 1  # columns j < i
        if cls is PatternClass.DIAGONAL:
            bits = 1 << i
        elif cls is PatternClass.ANTIDIAGONAL:
            bits = full & ~(1 << i)
        elif cls is PatternClass.TRIANGULAR:
            bits = below | (1 << i)
        else:
            bits = below | ((1 << i) if diagonal_bits[i] else 0)  # type: ignore[index]
        rows.append(bits)
    return Gf2Matrix(r, r, tuple(rows))


def matches_pattern(matrix: Gf2Matrix, cls: PatternClass) -> bool:
    """True when every entry the class constrains has the class's value."""
    cls = PatternClass(cls)
    if cls is PatternClass.GENERAL:
        return True
    if matrix.n_rows != matrix.n_cols or matrix.n_rows == 0:
        return False
    size = matrix.n_rows
    if cls is PatternClass.NEAR_TRIANGULAR:
        for i, row in enumerate(matrix.rows):
            if (row & ~(1 << i)) != (1 << i) - 1:
                return False
        return True
    return matrix == pattern(cls, size)


def classify_pattern(matrix: Gf2Matrix) -> Optional[PatternClass]:
    for cls in (
        PatternClass.TRIANGULAR,
        PatternClass.DIAGONAL,
        PatternClass.ANTIDIAGONAL,
    ):
        if matches_pattern(matrix, cls):
            return cls
    return None


def pattern_rank_bound(cls: PatternClass, size: int) -> int:
    """Rank guaranteed by a size x size matrix of the class.

    Exact for diagonal, triangular and antidiagonal (size - 1 when the
    antidiagonal size is odd); a lower bound of size // 2 for near-triangular.
    """
    cls = PatternClass(cls)
    if cls is PatternClass.ANTIDIAGONAL:
        return size - 1 if size % 2 else size
    if cls is PatternClass.NEAR_TRIANGULAR:
        return size // 2
    if cls is PatternClass.GENERAL:
        return 0
    return size


def triangular_core(matrix: Gf2Matrix) -> Gf2Matrix:
    """Even rows against odd columns: triangular when ``matrix`` is near-triangular."""
    half = matrix.n_rows // 2
    rows = [2 * i for i in range(1, half + 1)]
    cols = [2 * j - 1 for j in range(1, half + 1)]
    return matrix.submatrix(rows, cols)


def _arrange(
    rows: Sequence[int], size: int
) -> Optional[Tuple[PatternClass, List[int], List[int]]]:
    """Row and column orders putting a square matrix into a structured class."""
    counts = [bin(row).count("1") for row in rows]
    order = sorted(range(size), key=lambda i: counts[i])
    if [counts[i] for i in order] == list(range(1, size + 1)):
        # supports must form a chain, each row adding one column
        cols: List[int] = []
        seen = 0
        for i in order:
            if rows[i] & seen != seen:
                break
            cols.append((rows[i] & ~seen).bit_length() - 1)
            seen = rows[i]
        else:
            return PatternClass.TRIANGULAR, order, cols
    distinct = len(set(rows)) == size
    if distinct and all(count == 1 for count in counts):
        return PatternClass.DIAGONAL, list(range(size)), [row.bit_length() - 1 for row in rows]
    full = (1 << size) - 1
    if size >= 2 and distinct and all(count == size - 1 for count in counts):
        missing = [(full & ~row).bit_length() - 1 for row in rows]
        return PatternClass.ANTIDIAGONAL, list(range(size)), missing
    return None


def structured_square(
    matrix: Gf2Matrix, min_rank: int
) -> Optional[Tuple[PatternClass, List[int], List[int]]]:
    """Largest square submatrix that reorders into a triangular, diagonal or
    antidiagonal pattern whose rank bound is at least ``min_rank``.

    Returns the class and 0-based row and column indices in pattern order, or
    None. Subsets are enumerated exhaustively, so keep the matrix small.
    """
    floor = max(min_rank, 1)
    for size in range(min(matrix.n_rows, matrix.n_cols), floor - 1, -1):
        for row_pick in itertools.combinations(range(matrix.n_rows), size):
            for col_pick in itertools.combinations(range(matrix.n_cols), size):
                local = [
                    sum(1 << t for t, c in enumerate(col_pick) if matrix.rows[i] >> c & 1)
                    for i in row_pick
                ]
                found = _arrange(local, size)
                if found is None or pattern_rank_bound(found[0], size) < min_rank:
                    continue
                cls, row_order, col_order = found
                return (
                    cls,
                    [row_pick[i] for i in row_order],
                    [col_pick[c] for c in col_order],
                )
    return None
