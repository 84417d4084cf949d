"""Endofunctions of {0, ..., n-1}: the elements of the full transformation monoid.

Composition is LEFT-TO-RIGHT throughout: ``compose(f, g)`` applies f first,
then g, i.e. v(fg) = (vf)g.  This matches the postfix convention used in
transformation-monoid work and is the opposite of function composition in
most Python libraries, so it is worth stating once and loudly.

Points are 0-based internally; the 1-based convention of the file formats
is handled at the I/O boundary (see formats.py).
"""

from __future__ import annotations

from dataclasses import dataclass

from .rng import Stream


class Endofunction:
    """A total map on {0, ..., n-1}, stored as an image table."""

    __slots__ = ("n", "images")

    def __init__(self, images):
        imgs = tuple(images)
        n = len(imgs)
        if n == 0:
            raise ValueError("degree must be at least 1")
        for v in imgs:
            if not 0 <= v < n:
                raise ValueError(f"image {v} out of range for degree {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, name, value):
        raise AttributeError("Endofunction is immutable")

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __eq__(self, other):
        return isinstance(other, Endofunction) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Endofunction({list(self.images)})"

    def __mul__(self, other: "Endofunction") -> "Endofunction":
        """Left-to-right product: (f * g)(v) = g(f(v))."""
        return compose(self, other)

    @classmethod
    def from_one_based(cls, images) -> "Endofunction":
        """Construct from a 1-based image table, e.g. [2, 3, 1]."""
        return cls([v - 1 for v in images])

    def one_based(self) -> list[int]:
        return [v + 1 for v in self.images]


def identity(n: int) -> Endofunction:
    return Endofunction(range(n))


def constant(n: int, target: int) -> Endofunction:
    return Endofunction([target] * n)


def compose(f: Endofunction, g: Endofunction) -> Endofunction:
    """Apply f, then g (left-to-right): result(v) = g(f(v))."""
    if f.n != g.n:
        raise ValueError(f"degree mismatch: {f.n} != {g.n}")
    gi = g.images
    return Endofunction([gi[v] for v in f.images])


def image_set(f: Endofunction) -> frozenset[int]:
    return frozenset(f.images)


def rank(f: Endofunction) -> int:
    """Number of distinct images; 1 means f is constant."""
    return len(set(f.images))


def is_permutation(f: Endofunction) -> bool:
    return rank(f) == f.n


@dataclass(frozen=True)
class KernelPartition:
    """Partition of the domain into preimage classes: v ~ w iff vf = wf."""

    n: int
    blocks: tuple[frozenset[int], ...]

    def block_of(self, v: int) -> frozenset[int]:
        for b in self.blocks:
            if v in b:
                return b
        raise ValueError(f"point {v} out of range")


def kernel(f: Endofunction) -> KernelPartition:
    by_image: dict[int, list[int]] = {}
    for v, w in enumerate(f.images):
        by_image.setdefault(w, []).append(v)
    blocks = sorted(by_image.values(), key=min)
    return KernelPartition(f.n, tuple(frozenset(b) for b in blocks))


@dataclass(frozen=True)
class PeriodicitySummary:
    """Periodic points of a map and the cycle structure they carry."""

    periodic_points: frozenset[int]
    cycle_lengths: tuple[int, ...]


def periodicity(f: Endofunction) -> PeriodicitySummary:
    """Iterate image sets to their fixed point.

    The image chain f(X) >= f^2(X) >= ... stabilizes exactly at the set of
    periodic points, in at most n steps; f restricted there is a permutation,
    whose cycle lengths we read off.
    """
    imgs = f.images
    current = set(imgs)
    while True:
        nxt = {imgs[v] for v in current}
        if len(nxt) == len(current):
            break
        current = nxt
    seen = set()
    cycles = []
    for start in sorted(current):
        if start in seen:
            continue
        length = 0
        v = start
        while v not in seen:
            seen.add(v)
            length += 1
            v = imgs[v]
        cycles.append(length)
    return PeriodicitySummary(frozenset(current), tuple(sorted(cycles)))


def has_unique_periodic_point(f: Endofunction) -> bool:
    """True iff exactly one point of f is periodic (iff f eventually collapses
    everything to one fixed point, i.e. some power of f has rank 1).

    Single O(n) sweep marking each point's eventual cycle; bails out as soon
    as a second periodic point is known.
    """
    return _count_periodic(f.images, limit=2) == 1


def _count_periodic(imgs, limit=None) -> int:
    # state: 0 unvisited, 1 on current walk, 2 finished
    n = len(imgs)
    state = [0] * n
    periodic = 0
    for start in range(n):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = imgs[v]
        if state[v] == 1:
            # found a new cycle: count from v's position in the walk
            periodic += len(path) - path.index(v)
            if limit is not None and periodic >= limit:
                return periodic
        for w in path:
            state[w] = 2
    return periodic


def random_endofunction(n: int, stream: Stream) -> Endofunction:
    """Uniform over all n**n maps."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    return Endofunction(stream.integers(n, n))


def random_permutation(n: int, stream: Stream) -> Endofunction:
    """Uniform over all n! permutations (Fisher-Yates)."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    imgs = list(range(n))
    for i in range(n - 1, 0, -1):
        j = stream.randbelow(i + 1)
        imgs[i], imgs[j] = imgs[j], imgs[i]
    return Endofunction(imgs)
