"""Permutation arithmetic and cycle-notation parsing and printing.

Points are 0-based everywhere in code; all text I/O (cycle strings) is
1-based, which is the usual convention for permutation groups. The degree is
always explicit and never inferred from the largest moved point, because
fixed points at the top of the point set matter for closures.

Products use the right-action convention: ``a * b`` applies ``a`` first,
so ``point^(a*b) == (point^a)^b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "ParseError",
    "Permutation",
    "Cycle",
    "parse_cycle_notation",
    "format_cycle_notation",
    "compose",
    "cycle_decomposition",
    "are_independent",
    "support",
]


class ParseError(ValueError):
    """Malformed cycle notation; `position` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., degree-1}; ``images[p]`` is the image of point p."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if n == 0:
            raise ValueError("degree must be positive")
        seen = [False] * n
        for x in self.images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError(f"images {self.images!r} are not a permutation of 0..{n - 1}")
            seen[x] = True

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Product of pairwise disjoint cycles, given as 0-based point sequences."""
        images = list(range(degree))
        used: set[int] = set()
        for cycle in cycles:
            pts = list(cycle)
            for p in pts:
                if not 0 <= p < degree:
                    raise ValueError(f"point {p} out of range for degree {degree}")
                if p in used:
                    raise ValueError(f"cycles overlap at point {p}")
                used.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        return parse_cycle_notation(text, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        o = other.images
        return Permutation(tuple(o[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        return math.lcm(*(len(c.points) for c in self.cycles())) if self.support() else 1

    def support(self) -> frozenset[int]:
        return frozenset(p for p, x in enumerate(self.images) if x != p)

    def cycles(self) -> tuple["Cycle", ...]:
        """Disjoint cycles, fixed points omitted, each cycle starting at its
        least point, cycles ordered by least moved point."""
        out = []
        done = [False] * self.degree
        for start in range(self.degree):
            if done[start] or self.images[start] == start:
                continue
            pts = [start]
            done[start] = True
            q = self.images[start]
            while q != start:
                pts.append(q)
                done[q] = True
                q = self.images[q]
            out.append(Cycle(tuple(pts)))
        return tuple(out)

    def __str__(self) -> str:
        return format_cycle_notation(self)

    def __repr__(self) -> str:
        return f"Permutation.parse({format_cycle_notation(self)!r}, {self.degree})"


@dataclass(frozen=True)
class Cycle:
    """A single cycle: at least two distinct points, stored 0-based."""

    points: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise ValueError("a cycle moves at least two points")
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"cycle points {self.points!r} are not distinct")
        if any(not isinstance(p, int) or p < 0 for p in self.points):
            raise ValueError(f"cycle points {self.points!r} must be nonnegative integers")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __str__(self) -> str:
        return "(" + ",".join(str(p + 1) for p in self.points) + ")"


def parse_cycle_notation(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1,2,3)(4 5)"``.

    Both comma and whitespace separate points inside a cycle. ``"()"`` and the
    empty string denote the identity. Cycles within one literal must be
    pairwise disjoint. Raises ParseError carrying the character position of
    the first problem.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    cycles: list[list[int]] = []
    used: set[int] = set()
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ParseError(f"expected '(' but found {ch!r}", i)
        open_pos = i
        i += 1
        points: list[int] = []
        after_comma = False
        while True:
            while i < n and text[i].isspace():
                i += 1
            if i >= n:
                raise ParseError("unclosed cycle", open_pos)
            ch = text[i]
            if ch == ")":
                if after_comma:
                    raise ParseError("expected a point after ','", i)
                i += 1
                break
            if ch == ",":
                if after_comma or not points:
                    raise ParseError("unexpected ','", i)
                after_comma = True
                i += 1
                continue
            if not ch.isdigit():
                raise ParseError(f"unexpected character {ch!r}", i)
            start = i
            while i < n and text[i].isdigit():
                i += 1
            label = int(text[start:i])
            if not 1 <= label <= degree:
                raise ParseError(f"point {label} out of range 1..{degree}", start)
            p = label - 1
            if p in points:
                raise ParseError(f"point {label} repeated inside a cycle", start)
            if p in used:
                raise ParseError(f"point {label} appears in more than one cycle", start)
            points.append(p)
            after_comma = False
        used.update(points)
        if len(points) >= 2:
            cycles.append(points)
    return Permutation.from_cycles(cycles, degree)


def format_cycle_notation(p: Permutation) -> str:
    """Canonical text form: 1-based, comma-separated, least point first per
    cycle, cycles ordered by least point; the identity prints as "()"."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join(str(c) for c in cycles)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Product applying ``a`` first: result maps p to ``b.images[a.images[p]]``."""
    return a * b


def cycle_decomposition(a: Permutation) -> list[Cycle]:
    return list(a.cycles())


def are_independent(cycles: Iterable[Cycle]) -> bool:
    """True iff the supports are pairwise disjoint (vacuously true when empty)."""
    seen: set[int] = set()
    for c in cycles:
        if seen & c.support:
            return False
        seen |= c.support
    return True


def support(a: Permutation) -> frozenset[int]:
    return a.support()
