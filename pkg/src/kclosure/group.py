"""Permutation groups from generators: orbits, order, membership, stabilizers,
element enumeration, and exact minimal base size.

Everything is backed by a deterministic Schreier-Sims stabilizer chain with a
prescribed base order, so repeated runs produce identical certificates. No
randomization anywhere.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .abelian import pi_part
from .perm import Permutation, format_cycle_notation, parse_cycle_notation

__all__ = [
    "DEFAULT_ELEMENT_CAP",
    "CapExceededError",
    "OrbitPartition",
    "PermGroup",
    "StabilizerChain",
    "abelian_hall_subgroup",
    "groups_equal",
]

DEFAULT_ELEMENT_CAP = 1_000_000


class CapExceededError(RuntimeError):
    """A configured resource cap was exceeded; `required` is what the
    computation would have needed."""

    def __init__(self, message: str, required: int | None = None) -> None:
        if required is not None:
            message = f"{message} (required {required})"
        super().__init__(message)
        self.required = required


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # right action: apply a, then b
    return tuple(b[x] for x in a)


def _inverse(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base: int, identity: tuple[int, ...]) -> None:
        self.base = base
        self.gens: list[tuple[int, ...]] = []
        self.transversal: dict[int, tuple[int, ...]] = {base: identity}


class StabilizerChain:
    """Deterministic Schreier-Sims stabilizer chain along a prescribed base.

    Levels always form a prefix of `base_order`. Level i describes the
    subgroup fixing the first i base points; its transversal maps every point
    of the basic orbit to a coset representative. Inserting an element keeps
    the chain verified, so `order` and `contains` are always exact.
    """

    def __init__(self, degree: int, base_order: Sequence[int] | None = None) -> None:
        if degree < 1:
            raise ValueError("degree must be positive")
        order = tuple(base_order) if base_order is not None else tuple(range(degree))
        if sorted(order) != list(range(degree)):
            raise ValueError("base order must enumerate every point exactly once")
        self.degree = degree
        self.base_order = order
        self._slot = {p: i for i, p in enumerate(order)}
        self._identity = tuple(range(degree))
        self.levels: list[_Level] = []

    def order(self) -> int:
        return prod(len(lvl.transversal) for lvl in self.levels)

    def contains(self, images: tuple[int, ...]) -> bool:
        residue, _ = self._strip(tuple(images), 0)
        return residue == self._identity

    def orbit_at(self, slot: int):
        """Basic orbit of the subgroup fixing the first `slot` base points."""
        if slot < len(self.levels):
            return self.levels[slot].transversal.keys()
        return (self.base_order[slot],)

    def gens_from(self, slot: int) -> list[tuple[int, ...]]:
        """All strong generators fixing the first `slot` base points."""
        return [g for lvl in self.levels[slot:] for g in lvl.gens]

    def insert(self, images: tuple[int, ...]) -> bool:
        """Add an element; returns True iff the chain group grew."""
        g = tuple(images)
        if len(g) != self.degree:
            raise ValueError(f"degree mismatch: {len(g)} vs {self.degree}")
        residue, _ = self._strip(g, 0)
        if residue == self._identity:
            return False
        self._place(residue)
        self._verify()
        return True

    def _strip(self, g: tuple[int, ...], start: int) -> tuple[tuple[int, ...], int]:
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            u = lvl.transversal.get(g[lvl.base])
            if u is None:
                return g, i
            g = _compose(g, _inverse(u))
        return g, len(self.levels)

    def _place(self, g: tuple[int, ...]) -> int:
        slot = min(self._slot[p] for p in range(self.degree) if g[p] != p)
        while len(self.levels) <= slot:
            self.levels.append(_Level(self.base_order[len(self.levels)], self._identity))
        self.levels[slot].gens.append(g)
        self._rebuild(slot)
        return slot

    def _rebuild(self, slot: int) -> None:
        lvl = self.levels[slot]
        gens = self.gens_from(slot)
        trans = {lvl.base: self._identity}
        frontier = [lvl.base]
        while frontier:
            new = []
            for v in frontier:
                uv = trans[v]
                for g in gens:
                    w = g[v]
                    if w not in trans:
                        trans[w] = _compose(uv, g)
                        new.append(w)
            frontier = sorted(new)
        lvl.transversal = trans

    def _check_level(self, i: int) -> int | None:
        """Sift all Schreier generators of level i; place the first escaping
        residue and return its slot, or None when the level verifies."""
        self._rebuild(i)
        lvl = self.levels[i]
        gens = self.gens_from(i)
        for v in sorted(lvl.transversal):
            uv = lvl.transversal[v]
            for g in gens:
                moved = _compose(uv, g)
                uw = lvl.transversal[g[v]]
                if moved == uw:
                    continue
                residue, _ = self._strip(_compose(moved, _inverse(uw)), i + 1)
                if residue != self._identity:
                    return self._place(residue)
        return None

    def _verify(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            placed = self._check_level(i)
            i = i - 1 if placed is None else placed


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits of a group: `orbit_id[p]` is the block index of point p, and
    `blocks` lists the orbits in order of least element."""

    degree: int
    orbit_id: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]


class PermGroup:
    """Group generated by permutations of {0, ..., degree-1}.

    The stabilizer chain is built lazily under a lock; afterwards every query
    is read-only, so instances may be shared freely across threads.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), *,
                 _chain: StabilizerChain | None = None) -> None:
        gens = tuple(generators)
        if degree < 1:
            raise ValueError("degree must be positive")
        for g in gens:
            if not isinstance(g, Permutation):
                raise TypeError(f"generator {g!r} is not a Permutation")
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} does not match group degree {degree}")
        self.degree = degree
        self.generators = gens
        self._lock = threading.Lock()
        self._chain_obj = _chain
        self._orbit_cache: OrbitPartition | None = None
        self._abelian_cache: bool | None = None

    @classmethod
    def from_cycles(cls, degree: int, cycle_strings: Iterable[str]) -> "PermGroup":
        return cls(degree, tuple(parse_cycle_notation(s, degree) for s in cycle_strings))

    @classmethod
    def from_json(cls, data: object) -> "PermGroup":
        """Group input format: object with integer `degree` and `generators`,
        an array of cycle-notation strings."""
        if not isinstance(data, dict):
            raise ValueError("group input must be a JSON object")
        degree = data.get("degree")
        gens = data.get("generators")
        if not isinstance(degree, int) or degree < 1:
            raise ValueError("'degree' must be a positive integer")
        if not isinstance(gens, list) or not all(isinstance(s, str) for s in gens):
            raise ValueError("'generators' must be an array of cycle strings")
        return cls.from_cycles(degree, gens)

    @classmethod
    def from_file(cls, path: str) -> "PermGroup":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_json(json.load(handle))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [format_cycle_notation(g) for g in self.generators],
        }

    def __repr__(self) -> str:
        return f"<PermGroup degree {self.degree}, {len(self.generators)} generators, order {self.order()}>"

    def _chain(self) -> StabilizerChain:
        if self._chain_obj is None:
            with self._lock:
                if self._chain_obj is None:
                    chain = StabilizerChain(self.degree)
                    for g in self.generators:
                        chain.insert(g.images)
                    self._chain_obj = chain
        return self._chain_obj

    def order(self) -> int:
        return self._chain().order()

    def contains(self, x: Permutation) -> bool:
        if x.degree != self.degree:
            raise ValueError(f"degree mismatch: {x.degree} vs {self.degree}")
        return self._chain().contains(x.images)

    def __contains__(self, x: Permutation) -> bool:
        return self.contains(x)

    def is_trivial(self) -> bool:
        return self.order() == 1

    def is_abelian(self) -> bool:
        if self._abelian_cache is None:
            gens = self.generators
            self._abelian_cache = all(
                (gens[i] * gens[j]).images == (gens[j] * gens[i]).images
                for i in range(len(gens))
                for j in range(i + 1, len(gens))
            )
        return self._abelian_cache

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> list[Permutation]:
        """All elements exactly once, in a deterministic order."""
        n = self.order()
        if n > cap:
            raise CapExceededError("element enumeration cap exceeded", required=n)
        chain = self._chain()
        elems: list[tuple[int, ...]] = [tuple(range(self.degree))]
        for lvl in reversed(chain.levels):
            if len(lvl.transversal) == 1:
                continue
            elems = [
                _compose(h, lvl.transversal[v])
                for v in sorted(lvl.transversal)
                for h in elems
            ]
        return [Permutation(t) for t in elems]

    def orbits(self) -> OrbitPartition:
        if self._orbit_cache is None:
            deg = self.degree
            orbit_id = [-1] * deg
            blocks: list[tuple[int, ...]] = []
            for start in range(deg):
                if orbit_id[start] != -1:
                    continue
                idx = len(blocks)
                orbit_id[start] = idx
                members = [start]
                frontier = [start]
                while frontier:
                    new = []
                    for v in frontier:
                        for g in self.generators:
                            w = g.images[v]
                            if orbit_id[w] == -1:
                                orbit_id[w] = idx
                                members.append(w)
                                new.append(w)
                    frontier = new
                blocks.append(tuple(sorted(members)))
            self._orbit_cache = OrbitPartition(deg, tuple(orbit_id), tuple(blocks))
        return self._orbit_cache

    def point_stabilizer(self, point: int) -> "PermGroup":
        """Stabilizer of a point, generated by the strong generators of a
        chain rebased to start at that point."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range for degree {self.degree}")
        base = [point] + [p for p in range(self.degree) if p != point]
        chain = StabilizerChain(self.degree, base_order=base)
        for g in self.generators:
            chain.insert(g.images)
        gens = tuple(Permutation(t) for t in chain.gens_from(1))
        return PermGroup(self.degree, gens)

    def setwise_stabilizer_of_blocks(self, blocks: Iterable[Iterable[int]],
                                     cap: int = DEFAULT_ELEMENT_CAP) -> "PermGroup":
        """Subgroup fixing each listed block setwise, by element filtering.

        Intended for small groups (every caller here is a desk-scale abelian
        group); the element cap guards against misuse.
        """
        block_sets = [frozenset(b) for b in blocks]
        for b in block_sets:
            if any(not isinstance(p, int) or not 0 <= p < self.degree for p in b):
                raise ValueError("block is not a subset of the point set")
        if not block_sets:
            return self
        kept = tuple(
            e for e in self.elements(cap)
            if all({e.images[p] for p in b} == b for b in block_sets)
        )
        return PermGroup(self.degree, kept)

    def restriction(self, points: Iterable[int]) -> "PermGroup":
        """Induced group on an invariant point set, relabeled 0..len-1 in
        increasing order of original label."""
        delta = sorted(set(points))
        if not delta:
            raise ValueError("cannot restrict to an empty point set")
        if any(not 0 <= p < self.degree for p in delta):
            raise ValueError("point out of range")
        pos = {p: i for i, p in enumerate(delta)}
        for g in self.generators:
            if any(g.images[p] not in pos for p in delta):
                raise ValueError("point set is not invariant under the generators")
        gens = tuple(
            Permutation(tuple(pos[g.images[p]] for p in delta)) for g in self.generators
        )
        return PermGroup(len(delta), gens)

    def is_base(self, points: Sequence[int]) -> bool:
        """True iff the pointwise stabilizer of the tuple is trivial."""
        group: PermGroup = self
        for p in points:
            if not 0 <= p < self.degree:
                raise ValueError(f"point {p} out of range for degree {self.degree}")
            group = group.point_stabilizer(p)
        return group.order() == 1

    def minimal_base_size(self) -> int:
        """Exact minimum base size, by depth-first search over point tuples.

        Candidate points are restricted to one representative per orbit of
        the running stabilizer (conjugate choices reach the same depth), and
        a branch is pruned when the stabilizer order cannot shrink to 1
        within the remaining budget. Stabilizers are memoized by fixed set.
        """
        if self.order() == 1:
            return 0
        memo: dict[frozenset[int], PermGroup] = {}

        def stabilizer(group: PermGroup, fixed: frozenset[int], point: int) -> PermGroup:
            key = fixed | {point}
            sub = memo.get(key)
            if sub is None:
                sub = group.point_stabilizer(point)
                memo[key] = sub
            return sub

        def completable(group: PermGroup, fixed: frozenset[int], budget: int) -> bool:
            if group.order() == 1:
                return True
            if budget == 0:
                return False
            moved = [b for b in group.orbits().blocks if len(b) > 1]
            widest = max(len(b) for b in moved)
            if group.order() > widest ** budget:
                return False
            for block in moved:
                rep = block[0]
                if completable(stabilizer(group, fixed, rep), fixed | {rep}, budget - 1):
                    return True
            return False

        for size in range(1, self.degree + 1):
            if completable(self, frozenset(), size):
                return size
        raise AssertionError("unreachable: every finite group has a base within its degree")


def abelian_hall_subgroup(G: PermGroup, primes: Iterable[int]) -> PermGroup:
    """Hall subgroup of an abelian permutation group for the given prime set,
    generated by the prime-part powers of the generators."""
    if not G.is_abelian():
        raise ValueError("Hall subgroups are only computed for abelian groups here")
    prime_set = set(primes)
    gens = []
    for g in G.generators:
        m = g.order()
        h = g ** (m // pi_part(m, prime_set))
        if not h.is_identity():
            gens.append(h)
    return PermGroup(G.degree, tuple(gens))


def groups_equal(a: PermGroup, b: PermGroup) -> bool:
    """Exact equality as permutation groups: same degree, same order, and
    one's generators inside the other."""
    return (
        a.degree == b.degree
        and a.order() == b.order()
        and all(g in a for g in b.generators)
    )
