"""
Lower-bound certificates for carousels.

A partition of rank below ``r`` must be unbalanced. For a concrete balanced
partition this module looks for a small submatrix of its cut matrix whose
rank is at least ``r``: first from many alternations inside ``X_1``, then from
a label jump across one gap, then from random probing.
"""

import enum
import itertools
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .carousel import (
    CarouselFlavor,
    CarouselGraph,
    PartRef,
    part_ids,
    tail_fraction,
    tilde_part,
)
from .config import Caps, resolve_caps
from .errors import (
    FormatError,
    InvalidPartitionError,
    InvalidTripleError,
    ValidationError,
    WitnessError,
)
from .gf2 import (
    PatternClass,
    classify_pattern,
    independent_rows,
    matches_pattern,
    pattern_rank_bound,
    structured_square,
)
from .graph import Bipartition, Graph, balanced_sizes, is_balanced, ordered_cut_matrix
from .triples import TripleKind, expanding_image

logger = logging.getLogger(__name__)


def _offset(r: int, flavor: CarouselFlavor) -> int:
    return (8 if CarouselFlavor(flavor) is CarouselFlavor.EVEN else 16) * r


def _order_holds(n: int, r: int, q: int, offset: int) -> bool:
    return 2 ** (q + offset - 1) >= 10 * (n + 1) * (q + offset + 1) * r


def min_order(n: int, r: int, flavor: CarouselFlavor) -> Tuple[int, int]:
    """Smallest ``q >= 1`` with ``2^(q+c-1) >= 10(n+1)(q+c+1)r``; ``s = q + c + 1``.

    ``c`` is ``8r`` for even carousels and ``16r`` for odd ones.
    """
    if n < 3 or r < 2:
        raise ValidationError(f"min_order needs n >= 3 and r >= 2, got n={n}, r={r}")
    offset = _offset(r, flavor)
    q = 1
    while not _order_holds(n, r, q, offset):
        q += 1
    # left side doubles, right side grows linearly
    assert _order_holds(n, r, q + 1, offset), (n, r, q)
    return q, q + offset + 1


class Side(str, enum.Enum):
    Y = "Y"
    Z = "Z"

    @property
    def other(self) -> "Side":
        return Side.Z if self is Side.Y else Side.Y


def side_of(partition: Bipartition, v: int) -> Side:
    return Side.Y if partition.in_y(v) else Side.Z


@dataclass(frozen=True)
class Block:
    """Positions ``start..end`` (1-based, inclusive) of the ordered set."""

    start: int
    end: int
    side: Side

    @property
    def size(self) -> int:
        return self.end - self.start + 1


def _iter_blocks(partition: Bipartition, ordered: Sequence[int]) -> Iterator[Block]:
    start = 1
    current = side_of(partition, ordered[0])
    for position in range(2, len(ordered) + 1):
        side = side_of(partition, ordered[position - 1])
        if side is not current:
            yield Block(start, position - 1, current)
            start, current = position, side
    yield Block(start, len(ordered), current)


def blocks(graph: Graph, partition: Bipartition, ordered: Sequence[int]) -> List[Block]:
    """Maximal monochromatic intervals of ``ordered``, in order."""
    if not ordered:
        raise ValidationError("blocks need a non-empty ordered vertex list")
    partition.validate(graph)
    for v in ordered:
        graph.check_vertex(v)
    return list(_iter_blocks(partition, ordered))


def label(vertices: Sequence[int], partition: Bipartition, r: int) -> int:
    """``ceil(|S & Y| / r)``; zero exactly when S lies inside Z."""
    if r < 1:
        raise ValidationError(f"label threshold must be at least 1, got {r}")
    inside = sum(1 for v in vertices if partition.in_y(v))
    return -(-inside // r)


@dataclass(frozen=True)
class RankWitness:
    """Rows and columns whose cut submatrix certifies ``rank >= claimed_rank_lb``."""

    row_vertices: Tuple[int, ...]
    col_vertices: Tuple[int, ...]
    pattern: PatternClass
    claimed_rank_lb: int

    def to_text(self) -> str:
        lines = [
            "# rank witness",
            f"pattern {self.pattern.value}",
            f"claim {self.claimed_rank_lb}",
            "rows " + " ".join(str(v) for v in self.row_vertices),
            "cols " + " ".join(str(v) for v in self.col_vertices),
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RankWitness":
        fields = {}
        for raw in text.splitlines():
            parts = raw.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] not in ("pattern", "claim", "rows", "cols"):
                raise FormatError(f"unknown witness record '{parts[0]}'")
            fields[parts[0]] = parts[1:]
        if set(fields) != {"pattern", "claim", "rows", "cols"}:
            raise FormatError("witness needs pattern, claim, rows and cols")
        try:
            return cls(
                row_vertices=tuple(int(v) for v in fields["rows"]),
                col_vertices=tuple(int(v) for v in fields["cols"]),
                pattern=PatternClass(fields["pattern"][0]),
                claimed_rank_lb=int(fields["claim"][0]),
            )
        except (IndexError, ValueError):
            raise FormatError("malformed witness text") from None


def witness_problem(
    graph: Graph, witness: RankWitness, partition: Optional[Bipartition] = None
) -> Optional[str]:
    """Why ``witness`` fails against the live adjacency, or None when it holds."""
    rows, cols = witness.row_vertices, witness.col_vertices
    for v in rows + cols:
        if not 1 <= v <= graph.vertex_count:
            return f"vertex {v} outside 1..{graph.vertex_count}"
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        return "repeated witness vertex"
    if set(rows) & set(cols):
        return "row and column vertices overlap"
    if witness.claimed_rank_lb < 0:
        return "negative claimed bound"
    if partition is not None:
        row_sides = {side_of(partition, v) for v in rows}
        col_sides = {side_of(partition, v) for v in cols}
        if len(row_sides) > 1 or len(col_sides) > 1 or row_sides == col_sides:
            return "rows and columns are not on opposite sides of the partition"
    matrix = ordered_cut_matrix(graph, rows, cols)
    if not matches_pattern(matrix, witness.pattern):
        return f"cut matrix does not match the {witness.pattern.value} pattern"
    found = matrix.rank()
    if found < witness.claimed_rank_lb:
        return f"rank {found} is below the claimed {witness.claimed_rank_lb}"
    return None


def verify_witness(
    graph: Graph, witness: RankWitness, partition: Optional[Bipartition] = None
) -> bool:
    problem = witness_problem(graph, witness, partition)
    if problem:
        logger.debug(f"witness rejected: {problem}")
    return problem is None


def make_witness(
    graph: Graph,
    rows: Sequence[int],
    cols: Sequence[int],
    pattern: PatternClass,
    claimed_rank_lb: int,
    partition: Optional[Bipartition] = None,
) -> RankWitness:
    """Build a witness and re-verify it before handing it out."""
    witness = RankWitness(tuple(rows), tuple(cols), PatternClass(pattern), claimed_rank_lb)
    problem = witness_problem(graph, witness, partition)
    if problem:
        raise WitnessError(problem)
    return witness


def _carousel(graph: Graph) -> CarouselGraph:
    if not isinstance(graph, CarouselGraph):
        raise ValidationError("this check needs a graph built from a carousel spec")
    return graph


def block_witness(
    graph: Graph, partition: Bipartition, r: int
) -> Optional[RankWitness]:
    """Near-triangular 2r x 2r witness when ``X_1`` has at least ``8r`` blocks.

    Representatives are the lowest position of each of the first ``8r`` blocks;
    their bar images in ``X_2`` decide which side supplies the columns.
    """
    carousel = _carousel(graph)
    partition.validate(graph)
    if r < 1:
        raise ValidationError(f"r must be at least 1, got {r}")
    if carousel.spec.kinds[0] is not TripleKind.REGULAR_CROSSING:
        raise InvalidTripleError("block witnesses need a regular crossing on (X_1, X_2)")
    first: List[Block] = []
    for block in _iter_blocks(partition, carousel.set_ids(1)):
        first.append(block)
        if len(first) == 8 * r:
            break
    if len(first) < 8 * r:
        return None

    k = carousel.k
    side_a = first[0].side
    pairs = []
    for index in range(4 * r):
        a_rep = carousel.vertex(1, first[2 * index].start)
        b_rep = carousel.vertex(1, first[2 * index + 1].start)
        # bar images, lowest position first
        images = [
            carousel.vertex(2, k - first[2 * index + 1].start + 1),
            carousel.vertex(2, k - first[2 * index].start + 1),
        ]
        pairs.append((a_rep, b_rep, images))

    on_a = sum(
        1 for _, _, images in pairs for v in images if side_of(partition, v) is side_a
    )
    column_side = side_a if on_a >= 4 * r else side_a.other
    rows, cols = [], []
    for a_rep, b_rep, images in pairs:
        chosen = next((v for v in images if side_of(partition, v) is column_side), None)
        if chosen is None:
            continue
        rows.append(b_rep if column_side is side_a else a_rep)
        cols.append(chosen)
        if len(rows) == 2 * r:
            break
    assert len(rows) == 2 * r, "majority side must meet 2r pairs"
    return make_witness(graph, rows, cols, PatternClass.NEAR_TRIANGULAR, r, partition)


class PropagationStatus(str, enum.Enum):
    OK = "ok"
    WITNESS = "witness"
    # label bound exceeded without a structured witness of the expected shape
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PropagationOutcome:
    status: PropagationStatus
    gap: int
    source: PartRef
    target: PartRef
    source_label: int
    target_label: int
    witness: Optional[RankWitness] = None

    @property
    def ok(self) -> bool:
        return self.status is PropagationStatus.OK


def gap_pairs(graph: CarouselGraph, i: int, j: int) -> List[Tuple[PartRef, PartRef]]:
    """(source, target) part pairs whose labels the gap ``(X_i, X_{i+1})`` ties.

    The pair starting at the set's own part (plain for top sets, barred for
    bottom sets) comes first.
    """
    spec = graph.spec
    if not (1 <= i <= spec.n and 1 <= j <= spec.s):
        raise ValidationError(f"gap {i}, part {j} outside 1..{spec.n} x 1..{spec.s}")
    kind = spec.kinds[i - 1]
    if i < spec.n:
        pairs = [
            (PartRef(i, j, False), PartRef(i + 1, j, kind.is_cross)),
            (PartRef(i, j, True), PartRef(i + 1, j, not kind.is_cross)),
        ]
        own = tilde_part(spec, i, j)
        pairs.sort(key=lambda pair: pair[0] != own)
        return pairs
    if j == spec.s:
        raise ValidationError(f"closing gap has no part {j + 1}; j must be below s={spec.s}")
    if kind.is_expanding:
        return [(PartRef(i, j, kind.is_cross), PartRef(1, j + 1, False))]
    pairs = [
        (PartRef(i, j, False), PartRef(1, j + 1, kind.is_cross)),
        (PartRef(i, j, True), PartRef(1, j + 1, not kind.is_cross)),
    ]
    own = tilde_part(spec, i, j)
    pairs.sort(key=lambda pair: pair[0] != own)
    return pairs


def _image_indices(graph: CarouselGraph, source: PartRef, target: PartRef) -> List[List[int]]:
    """For each source vertex (part order), the target-list indices it is paired with."""
    size = 1 << (source.j - 1)
    if target.j == source.j:
        return [[t] for t in range(size)]
    base = 1 << (target.j - 1)
    return [
        sorted(c - base for c in expanding_image((1 << (source.j - 1)) + t, graph.k))
        for t in range(size)
    ]


def _pair_witness(
    graph: CarouselGraph,
    partition: Bipartition,
    rows: Sequence[int],
    cols: Sequence[int],
    need: int,
) -> Optional[RankWitness]:
    """Reordered structured square among the collected (source, image) pairs."""
    found = structured_square(ordered_cut_matrix(graph, rows, cols), need)
    if found is None:
        return None
    cls, picked_rows, picked_cols = found
    return make_witness(
        graph,
        [rows[i] for i in picked_rows],
        [cols[c] for c in picked_cols],
        cls,
        pattern_rank_bound(cls, len(picked_rows)),
        partition,
    )


def _cut_witness(
    graph: CarouselGraph,
    partition: Bipartition,
    sources: Sequence[int],
    targets: Sequence[int],
    source_side: Side,
    r: int,
    need: int,
    caps: Caps,
) -> Optional[RankWitness]:
    """Full-rank core of the cut between the two parts, at most ``r + 1`` square.

    Each side is cut down to its first ``caps.probe_size`` vertices in part order.
    """
    rows = list(
        itertools.islice(
            (v for v in sources if side_of(partition, v) is source_side), caps.probe_size
        )
    )
    cols = list(
        itertools.islice(
            (v for v in targets if side_of(partition, v) is source_side.other),
            caps.probe_size,
        )
    )
    if not rows or not cols:
        return None
    picked = independent_rows(ordered_cut_matrix(graph, rows, cols).rows)[: r + 1]
    if len(picked) < need:
        return None
    core_rows = [rows[i] for i in picked]
    core = ordered_cut_matrix(graph, core_rows, cols).transpose()
    core_cols = [cols[c] for c in independent_rows(core.rows)[: len(core_rows)]]
    return make_witness(
        graph, core_rows, core_cols, PatternClass.GENERAL, len(core_rows), partition
    )


def check_pair(
    graph: Graph,
    partition: Bipartition,
    r: int,
    gap: int,
    source: PartRef,
    target: PartRef,
    caps: Optional[Caps] = None,
) -> PropagationOutcome:
    """Compare the labels of one (source, target) pair and extract a witness on a jump.

    A jump yields a witness of rank at least ``max(r - 1, 1)`` whenever the cut
    between the two parts has that rank: first the ``r + 1`` collected pairs
    in their natural order, then a reordered structured square among the
    pairs found, then a general full-rank core of the cut.
    """
    carousel = _carousel(graph)
    spec = carousel.spec
    sources = part_ids(spec, source)
    targets = part_ids(spec, target)
    m = label(sources, partition, r)
    m_target = label(targets, partition, r)
    tolerance = 1 if gap < spec.n else 2
    if abs(m_target - m) <= tolerance:
        return PropagationOutcome(PropagationStatus.OK, gap, source, target, m, m_target)

    source_side = Side.Z if m_target > m else Side.Y
    image_side = source_side.other
    images = _image_indices(carousel, source, target)
    rows, cols = [], []
    for t, vertex in enumerate(sources):
        if side_of(partition, vertex) is not source_side:
            continue
        chosen = next(
            (targets[c] for c in images[t] if side_of(partition, targets[c]) is image_side),
            None,
        )
        if chosen is None:
            continue
        rows.append(vertex)
        cols.append(chosen)
        if len(rows) == r + 1:
            break

    need = max(r - 1, 1)
    witness = None
    if len(rows) == r + 1:
        for ordered_rows, ordered_cols in ((rows, cols), (rows[::-1], cols[::-1])):
            matrix = ordered_cut_matrix(carousel, ordered_rows, ordered_cols)
            found = classify_pattern(matrix)
            if found is not None:
                witness = make_witness(
                    carousel,
                    ordered_rows,
                    ordered_cols,
                    found,
                    pattern_rank_bound(found, r + 1),
                    partition,
                )
                break
    if witness is None and rows:
        witness = _pair_witness(carousel, partition, rows, cols, need)
    if witness is None:
        witness = _cut_witness(
            carousel, partition, sources, targets, source_side, r, need, resolve_caps(caps)
        )
    status = PropagationStatus.WITNESS if witness else PropagationStatus.INCONCLUSIVE
    logger.debug(
        f"gap {gap}: {source} label {m} -> {target} label {m_target}: {status.value}"
    )
    return PropagationOutcome(status, gap, source, target, m, m_target, witness)


def propagation_check(
    graph: Graph,
    partition: Bipartition,
    r: int,
    i: int,
    j: int,
    caps: Optional[Caps] = None,
) -> PropagationOutcome:
    """First failing pair of the gap ``(X_i, X_{i+1})`` at part ``j``, else the first ok."""
    carousel = _carousel(graph)
    partition.validate(graph)
    if r < 1:
        raise ValidationError(f"r must be at least 1, got {r}")
    outcomes = [
        check_pair(carousel, partition, r, i, source, target, caps)
        for source, target in gap_pairs(carousel, i, j)
    ]
    for outcome in outcomes:
        if not outcome.ok:
            return outcome
    return outcomes[0]


def propagation_chain(
    graph: Graph, partition: Bipartition, r: int, t: int, caps: Optional[Caps] = None
) -> List[PropagationOutcome]:
    """Walk ``X~_{1,t} -> X~_{2,t} -> ... -> X~_{n,t} -> X~_{1,t+1} -> ...`` up to part s."""
    carousel = _carousel(graph)
    spec = carousel.spec
    if not 1 <= t <= spec.s:
        raise ValidationError(f"start part {t} outside 1..{spec.s}")
    steps = []
    current = tilde_part(spec, 1, t)
    j = t
    while True:
        for i in range(1, spec.n + 1):
            if i == spec.n and j == spec.s:
                return steps
            pair = next(
                (p for p in gap_pairs(carousel, i, j) if p[0] == current), None
            )
            if pair is None:
                raise ValidationError(f"no propagation step starts at {current}")
            steps.append(check_pair(carousel, partition, r, i, *pair, caps=caps))
            current = pair[1]
        j += 1


@dataclass(frozen=True)
class ZeroLabelScan:
    """Consecutive parts of ``X_1`` lying entirely on ``side``."""

    parts: Tuple[PartRef, ...]
    side: Side


def find_zero_label_part(
    graph: Graph, partition: Bipartition, r: int, q: int
) -> Optional[ZeroLabelScan]:
    """Scan ``X_{1,q}..X_{1,q+8r-1}`` (pairs of parts over ``q..q+16r-1`` when odd).

    With fewer than ``8r`` blocks in ``X_1`` one of them is monochromatic.
    """
    carousel = _carousel(graph)
    spec = carousel.spec
    if q < 1:
        raise ValidationError(f"scan start must be at least 1, got {q}")
    if spec.flavor is CarouselFlavor.EVEN:
        windows = [
            (PartRef(1, t),) for t in range(q, min(q + 8 * r - 1, spec.s) + 1)
        ]
    else:
        windows = [
            (PartRef(1, t), PartRef(1, t + 1))
            for t in range(q, min(q + 16 * r - 2, spec.s - 1) + 1, 2)
        ]
    for window in windows:
        vertices = [v for part in window for v in part_ids(spec, part)]
        sides = {side_of(partition, v) for v in vertices}
        if len(sides) == 1:
            return ZeroLabelScan(window, sides.pop())
    return None


def label_budget(n: int, r: int, flavor: CarouselFlavor) -> int:
    """Largest label index the propagation steps can reach from a zero label."""
    return (n + 1) * (_offset(r, flavor) + 1)


def y_share_bound(n: int, r: int, flavor: CarouselFlavor, q: int) -> Fraction:
    """Upper bound on the Y share of the two largest parts of every set.

    Each of those parts holds at most ``(n+1) s r`` vertices of Y.
    """
    s = q + _offset(r, flavor) + 1
    per_part = (n + 1) * s * r
    parts_per_set = 2 if CarouselFlavor(flavor) is CarouselFlavor.EVEN else 4
    covered = (parts_per_set // 2) * ((1 << (s - 2)) + (1 << (s - 1)))
    return Fraction(parts_per_set * per_part, covered)


def unbalanced_by_labels(n: int, r: int, flavor: CarouselFlavor, q: int) -> bool:
    """Whether the label argument forces ``|Z| > 2N/3`` at order ``q``."""
    s = q + _offset(r, flavor) + 1
    share = y_share_bound(n, r, flavor, q)
    covered = tail_fraction(s)
    return covered > Fraction(3, 4) and share <= Fraction(1, 10) and (
        covered * (1 - share) > Fraction(2, 3)
    )


class CertificationMethod(str, enum.Enum):
    BLOCKS = "blocks"
    PROPAGATION = "propagation"
    PROBE = "probe"


@dataclass(frozen=True)
class Certification:
    certified: bool
    method: Optional[CertificationMethod] = None
    witness: Optional[RankWitness] = None


def _probe(
    graph: CarouselGraph,
    partition: Bipartition,
    r: int,
    rng: random.Random,
    caps: Caps,
) -> Optional[RankWitness]:
    """Random Y x Z submatrices across one gap, shrunk to an r x r full-rank core."""
    spec = graph.spec
    for _ in range(caps.probe_attempts):
        i = rng.randint(1, spec.n)
        window = list(graph.set_ids(i)) + list(graph.set_ids(graph.successor(i)))
        ys = [v for v in window if partition.in_y(v)]
        zs = [v for v in window if not partition.in_y(v)]
        if len(ys) < r or len(zs) < r:
            continue
        rows = sorted(rng.sample(ys, min(caps.probe_size, len(ys))))
        cols = sorted(rng.sample(zs, min(caps.probe_size, len(zs))))
        matrix = ordered_cut_matrix(graph, rows, cols)
        picked_rows = independent_rows(matrix.rows)
        if len(picked_rows) < r:
            continue
        core_rows = [rows[index] for index in picked_rows[:r]]
        core = ordered_cut_matrix(graph, core_rows, cols).transpose()
        picked_cols = independent_rows(core.rows)[:r]
        core_cols = [cols[index] for index in picked_cols]
        return make_witness(graph, core_rows, core_cols, PatternClass.GENERAL, r, partition)
    return None


def certify_partition(
    graph: Graph,
    partition: Bipartition,
    r: int,
    rng: Optional[random.Random] = None,
    caps: Optional[Caps] = None,
) -> Certification:
    """Try to show ``rank(Y, Z) >= r`` for one balanced partition.

    Block witness first, then every propagation pair, then random probing.
    """
    carousel = _carousel(graph)
    partition.validate(graph)
    if not is_balanced(graph, partition):
        raise InvalidPartitionError(
            f"partition with |Y|={partition.y_size}, |Z|={partition.z_size} is unbalanced"
        )
    caps = resolve_caps(caps)
    rng = rng or random.Random(0)

    witness = block_witness(carousel, partition, r)
    if witness is not None:
        return Certification(True, CertificationMethod.BLOCKS, witness)

    spec = carousel.spec
    for i in range(1, spec.n + 1):
        for j in range(1, spec.s + (0 if i < spec.n else -1) + 1):
            for source, target in gap_pairs(carousel, i, j):
                outcome = check_pair(carousel, partition, r, i, source, target, caps)
                found = outcome.witness
                if found is not None and found.claimed_rank_lb >= r:
                    return Certification(True, CertificationMethod.PROPAGATION, found)

    witness = _probe(carousel, partition, r, rng, caps)
    if witness is not None:
        return Certification(True, CertificationMethod.PROBE, witness)
    return Certification(False)


class SamplingMode(str, enum.Enum):
    UNIFORM = "uniform"
    BLOCKY = "blocky"


BLOCKY_ATTEMPTS = 10_000


def sample_partition(
    graph: CarouselGraph, rng: random.Random, mode: SamplingMode = SamplingMode.UNIFORM
) -> Bipartition:
    """A balanced partition drawn with ``rng``.

    ``uniform``: a random Y of a random balanced size. ``blocky``: every set is
    cut into at most four intervals with alternating sides.
    """
    total = graph.vertex_count
    if SamplingMode(mode) is SamplingMode.UNIFORM:
        low, high = -(-total // 3), (2 * total) // 3
        drawn = rng.sample(range(1, total + 1), rng.randint(low, high))
        return Bipartition(frozenset(drawn), total)
    k = graph.k
    for _ in range(BLOCKY_ATTEMPTS):
        y: List[int] = []
        for i in range(1, graph.n + 1):
            cuts = sorted(rng.randint(0, k) for _ in range(3))
            bounds = [0] + cuts + [k]
            in_y = rng.random() < 0.5
            ids = graph.set_ids(i)
            for start, end in zip(bounds, bounds[1:]):
                if in_y:
                    y.extend(ids[start:end])
                in_y = not in_y
        if balanced_sizes(total, len(y)):
            return Bipartition(frozenset(y), total)
    raise ValidationError("could not draw a balanced blocky partition")


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    y_size: int
    certification: Certification

    @property
    def certified(self) -> bool:
        return self.certification.certified


@dataclass(frozen=True)
class SampledReport:
    r: int
    seed: int
    trials: Tuple[TrialOutcome, ...]

    @property
    def certified_count(self) -> int:
        return sum(1 for trial in self.trials if trial.certified)

    def to_text(self) -> str:
        lines = [f"# sampled certificate r={self.r} seed={self.seed}"]
        for trial in self.trials:
            cert = trial.certification
            if cert.certified and cert.witness is not None:
                witness = cert.witness
                lines.append(
                    f"trial {trial.index} |Y|={trial.y_size} certified "
                    f"{cert.method.value if cert.method else '-'} "
                    f"{witness.pattern.value} rank>={witness.claimed_rank_lb} "
                    f"rows={','.join(map(str, witness.row_vertices))} "
                    f"cols={','.join(map(str, witness.col_vertices))}"
                )
            else:
                lines.append(f"trial {trial.index} |Y|={trial.y_size} uncertified")
        lines.append(f"certified {self.certified_count}/{len(self.trials)}")
        return "\n".join(lines) + "\n"


def sampled_certificate(
    graph: Graph,
    r: int,
    trials: int,
    seed: int,
    threads: int = 1,
    sampling: SamplingMode = SamplingMode.UNIFORM,
    caps: Optional[Caps] = None,
) -> SampledReport:
    """Certify ``trials`` seeded balanced partitions; trial ``t`` depends only on (seed, t)."""
    carousel = _carousel(graph)
    caps = resolve_caps(caps)
    if trials < 0:
        raise ValidationError(f"trial count must be non-negative, got {trials}")
    mode = SamplingMode(sampling)

    def run(index: int) -> TrialOutcome:
        rng = random.Random(f"{seed}/{index}")
        partition = sample_partition(carousel, rng, mode)
        certification = certify_partition(carousel, partition, r, rng, caps)
        if certification.certified:
            logger.debug(f"trial {index} certified by {certification.method.value}")  # type: ignore[union-attr]
        else:
            logger.warning(f"trial {index} uncertified; no witness of rank {r} found")
        return TrialOutcome(index, partition.y_size, certification)

    logger.info(f"sampling {trials} {mode.value} partitions of {carousel.spec.describe()}")
    if threads > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(run, range(trials)))
    else:
        outcomes = [run(index) for index in range(trials)]
    report = SampledReport(r, seed, tuple(outcomes))
    logger.info(f"certified {report.certified_count}/{trials} partitions at r={r}")
    return report
