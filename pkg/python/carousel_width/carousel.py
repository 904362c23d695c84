"""
Carousel specifications and the implicit graphs they describe.

A carousel has ``n`` sets ``X_1..X_n`` of ``k`` vertices each. Consecutive sets
``(X_i, X_{i+1})`` (indices modulo ``n``) follow the triple ``kinds[i]``; edges
inside a set and between non-consecutive sets follow the two policies.
"""

import enum
import hashlib
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import FormatError, InvalidSpecError, InvalidTripleError, ValidationError
from .graph import Graph, Provenance, VertexRef
from .triples import TripleKind, _adjacent, parse_kind, validate_kind

logger = logging.getLogger(__name__)

SEED_LIMIT = 1 << 64


class CarouselFlavor(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


class PolicyMode(str, enum.Enum):
    EMPTY = "empty"
    CLIQUE = "clique"
    SEEDED_RANDOM = "seeded_random"


class SetRole(str, enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"

    def flipped(self) -> "SetRole":
        return SetRole.BOTTOM if self is SetRole.TOP else SetRole.TOP


@dataclass(frozen=True)
class CarouselSpec:
    """Blueprint of a carousel; ``kinds[i - 1]`` governs ``(X_i, X_{i+1})``."""

    n: int
    s: int
    flavor: CarouselFlavor
    kinds: Tuple[TripleKind, ...]
    intra_set: PolicyMode = PolicyMode.EMPTY
    long_range: PolicyMode = PolicyMode.EMPTY
    seed: int = 0
    density: Fraction = field(default=Fraction(1, 2))

    @property
    def k(self) -> int:
        return set_size(self.flavor, self.s)

    @property
    def vertex_count(self) -> int:
        return self.n * self.k

    def kind(self, i: int) -> TripleKind:
        """Triple kind of the gap ``(X_i, X_{i+1})``."""
        if not 1 <= i <= self.n:
            raise ValidationError(f"gap index {i} outside 1..{self.n}")
        return self.kinds[i - 1]

    def describe(self) -> str:
        return (
            f"{self.flavor.value} carousel n={self.n} s={self.s} k={self.k} "
            f"kinds={','.join(kind.value for kind in self.kinds)}"
        )

    def to_text(self) -> str:
        """Flat ``key = value`` document with a fixed key order."""
        lines = [
            "# carousel spec",
            f"n = {self.n}",
            f"s = {self.s}",
            f"flavor = {self.flavor.value}",
            f"kinds = {', '.join(kind.value for kind in self.kinds)}",
            f"intra_set = {self.intra_set.value}",
            f"long_range = {self.long_range.value}",
            f"seed = {self.seed}",
            f"density = {self.density}",
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CarouselSpec":
        values: Dict[str, str] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep:
                raise FormatError(f"line {number}: expected key = value, got {raw!r}")
            if key not in _SPEC_KEYS:
                raise FormatError(f"line {number}: unknown key '{key}'")
            if key in values:
                raise FormatError(f"line {number}: duplicate key '{key}'")
            values[key] = value.strip()
        missing = [key for key in ("n", "s", "flavor", "kinds") if key not in values]
        if missing:
            raise FormatError(f"spec is missing {', '.join(missing)}")
        try:
            return cls(
                n=int(values["n"]),
                s=int(values["s"]),
                flavor=CarouselFlavor(values["flavor"]),
                kinds=tuple(parse_kind(name) for name in values["kinds"].split(",")),
                intra_set=PolicyMode(values.get("intra_set", "empty")),
                long_range=PolicyMode(values.get("long_range", "empty")),
                seed=int(values.get("seed", "0")),
                density=Fraction(values.get("density", "1/2")),
            )
        except (ValueError, ZeroDivisionError, InvalidTripleError) as exc:
            raise FormatError(f"malformed spec value: {exc}") from None


_SPEC_KEYS = ("n", "s", "flavor", "kinds", "intra_set", "long_range", "seed", "density")


def set_size(flavor: CarouselFlavor, s: int) -> int:
    base = (1 << s) - 1
    return base if CarouselFlavor(flavor) is CarouselFlavor.EVEN else 2 * base


def default_kinds(n: int, flavor: CarouselFlavor) -> Tuple[TripleKind, ...]:
    """Regular crossing, then regular matchings, then the closing kind.

    Two crossings for even carousels, one for odd ones.
    """
    closing = (
        TripleKind.EXPANDING_CROSSING
        if CarouselFlavor(flavor) is CarouselFlavor.EVEN
        else TripleKind.SKEW_EXPANDING_MATCHING
    )
    return (
        (TripleKind.REGULAR_CROSSING,)
        + (TripleKind.REGULAR_MATCHING,) * (n - 2)
        + (closing,)
    )


@dataclass(frozen=True)
class SpecViolation:
    clause: str
    message: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.message}"


def validate_spec(spec: CarouselSpec) -> List[SpecViolation]:
    """Every violated clause; an empty list means the spec is valid."""
    found: List[SpecViolation] = []

    def fail(clause: str, message: str) -> None:
        found.append(SpecViolation(clause, message))

    if spec.n < 3:
        fail("n_at_least_3", f"n={spec.n}")
    if spec.s < 1:
        fail("s_at_least_1", f"s={spec.s}")
    if len(spec.kinds) != spec.n:
        fail("kinds_length", f"{len(spec.kinds)} kinds for n={spec.n}")
    elif spec.n >= 3:
        kinds = spec.kinds
        if kinds[0] is not TripleKind.REGULAR_CROSSING:
            fail("first_kind_regular_crossing", f"kinds[1]={kinds[0].value}")
        for i, kind in enumerate(kinds[1:-1], start=2):
            if not kind.is_regular:
                fail("interior_kinds_regular", f"kinds[{i}]={kind.value}")
        crossings = sum(1 for kind in kinds if kind.is_cross)
        closing = kinds[-1]
        if spec.flavor is CarouselFlavor.EVEN:
            if not closing.is_expanding:
                fail("closing_kind_expanding", f"kinds[{spec.n}]={closing.value}")
            if crossings % 2:
                fail("cross_parity", f"crossing count {crossings} is odd")
        else:
            if not closing.is_skew:
                fail("closing_kind_skew", f"kinds[{spec.n}]={closing.value}")
            if crossings % 2 == 0:
                fail("cross_parity", f"crossing count {crossings} is even")
        if spec.s >= 1:
            for i, kind in enumerate(kinds, start=1):
                try:
                    validate_kind(kind, spec.k)
                except InvalidTripleError as exc:
                    fail("kind_size", f"kinds[{i}]: {exc}")
    if spec.long_range is PolicyMode.CLIQUE:
        fail("long_range_policy", "long-range policy must be empty or seeded_random")
    if not 0 <= spec.density <= 1:
        fail("density_range", f"density {spec.density} outside [0, 1]")
    if not 0 <= spec.seed < SEED_LIMIT:
        fail("seed_range", f"seed {spec.seed} is not a 64-bit unsigned value")
    return found


def require_valid(spec: CarouselSpec) -> None:
    violations = validate_spec(spec)
    if violations:
        raise InvalidSpecError(violations)


def _pseudo_random_edge(seed: int, tag: bytes, u: int, v: int, density: Fraction) -> bool:
    """Counter-based coin keyed by (seed, tag, min id, max id)."""
    lo, hi = (u, v) if u < v else (v, u)
    digest = hashlib.blake2b(
        tag + seed.to_bytes(8, "little") + lo.to_bytes(8, "little") + hi.to_bytes(8, "little"),
        digest_size=8,
    ).digest()
    value = int.from_bytes(digest, "little")
    return value < density * SEED_LIMIT


class CarouselGraph(Graph):
    """Implicit carousel; adjacency is evaluated from the spec on demand."""

    def __init__(self, spec: CarouselSpec, origin: Optional[Provenance] = None):
        require_valid(spec)
        self.spec = spec
        self.k = spec.k
        self.n = spec.n
        super().__init__(spec.vertex_count, origin or Provenance("spec", spec.describe()))

    def ref(self, v: int) -> VertexRef:
        self.check_vertex(v)
        return VertexRef.from_id(v, self.k)

    def vertex(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.k):
            raise ValidationError(f"vertex ({i}, {j}) outside the carousel")
        return (i - 1) * self.k + j

    def set_ids(self, i: int) -> range:
        """Ids of ``X_i`` in position order."""
        return range((i - 1) * self.k + 1, i * self.k + 1)

    def successor(self, i: int) -> int:
        return i % self.n + 1

    def gap_adjacent(self, a: VertexRef, b: VertexRef) -> Optional[bool]:
        """Triple adjacency when ``a`` and ``b`` lie in consecutive sets."""
        if b.i == self.successor(a.i):
            return _adjacent(self.spec.kinds[a.i - 1], self.k, a.j, b.j)
        if a.i == self.successor(b.i):
            return _adjacent(self.spec.kinds[b.i - 1], self.k, b.j, a.j)
        return None

    def _unspecified_adjacent(self, a: VertexRef, b: VertexRef, u: int, v: int) -> bool:
        """Edges the carousel definition leaves free: same set or far apart."""
        spec = self.spec
        if a.i == b.i:
            mode, tag = spec.intra_set, b"intra"
        else:
            mode, tag = spec.long_range, b"long"
        if mode is PolicyMode.EMPTY:
            return False
        if mode is PolicyMode.CLIQUE:
            return True
        return _pseudo_random_edge(spec.seed, tag, u, v, spec.density)

    def _adjacent(self, u: int, v: int) -> bool:
        a = VertexRef.from_id(u, self.k)
        b = VertexRef.from_id(v, self.k)
        if a.i != b.i:
            across = self.gap_adjacent(a, b)
            if across is not None:
                return across
        return self._unspecified_adjacent(a, b, u, v)

    def _scan_sets(self, i: int) -> Sequence[int]:
        """Sets that may hold neighbours of a vertex of ``X_i``."""
        if self.spec.long_range is not PolicyMode.EMPTY:
            return range(1, self.n + 1)
        return sorted({(i - 2) % self.n + 1, i, self.successor(i)})

    def neighbor_mask(self, v: int) -> int:
        i = self.ref(v).i
        mask = 0
        for t in self._scan_sets(i):
            for u in self.set_ids(t):
                if u != v and self._adjacent(u, v):
                    mask |= 1 << (u - 1)
        return mask


def build(spec: CarouselSpec) -> CarouselGraph:
    graph = CarouselGraph(spec)
    logger.debug(f"built {spec.describe()} with {graph.vertex_count} vertices")
    return graph


class PartRef(NamedTuple):
    """``X_{i,j}``, or its image under the bar involution when ``barred``."""

    i: int
    j: int
    barred: bool = False

    def __str__(self) -> str:
        name = f"X[{self.i},{self.j}]"
        return f"bar {name}" if self.barred else name


def _check_part(spec: CarouselSpec, part: PartRef) -> None:
    if not (1 <= part.i <= spec.n and 1 <= part.j <= spec.s):
        raise ValidationError(
            f"part {part} outside i in 1..{spec.n}, j in 1..{spec.s}"
        )


def part_positions(spec: CarouselSpec, part: PartRef) -> List[int]:
    """Positions ``2^(j-1)..2^j - 1``, or their images ``k - p + 1`` in order."""
    _check_part(spec, part)
    positions = range(1 << (part.j - 1), 1 << part.j)
    if part.barred:
        return [spec.k - p + 1 for p in positions]
    return list(positions)


def part_vertices(spec: CarouselSpec, part: PartRef) -> List[VertexRef]:
    return [VertexRef(part.i, p) for p in part_positions(spec, part)]


def part_ids(spec: CarouselSpec, part: PartRef) -> List[int]:
    base = (part.i - 1) * spec.k
    return [base + p for p in part_positions(spec, part)]


def set_role(spec: CarouselSpec, i: int) -> SetRole:
    """``X_1`` is a top set; the role flips across every cross triple."""
    if not 1 <= i <= spec.n:
        raise ValidationError(f"set index {i} outside 1..{spec.n}")
    role = SetRole.TOP
    for kind in spec.kinds[: i - 1]:
        if kind.is_cross:
            role = role.flipped()
    return role


def closing_role_consistent(spec: CarouselSpec) -> bool:
    """Whether carrying the role of ``X_n`` across the closing gap gives top."""
    role = set_role(spec, spec.n)
    if spec.kinds[-1].is_cross:
        role = role.flipped()
    return role is SetRole.TOP


def tilde_part(spec: CarouselSpec, i: int, j: int) -> PartRef:
    """``X_{i,j}`` for a top set, its bar image for a bottom set."""
    return PartRef(i, j, barred=set_role(spec, i) is SetRole.BOTTOM)


def bar(spec: CarouselSpec, v: VertexRef) -> VertexRef:
    if not (1 <= v.i <= spec.n and 1 <= v.j <= spec.k):
        raise ValidationError(f"vertex {v} outside the carousel")
    return VertexRef(v.i, spec.k - v.j + 1)


def tail_fraction(s: int) -> Fraction:
    """Share of ``X_i`` covered by its two largest parts (unbarred)."""
    if s < 2:
        raise ValidationError("the two largest parts need s >= 2")
    return Fraction((1 << (s - 2)) + (1 << (s - 1)), (1 << s) - 1)
