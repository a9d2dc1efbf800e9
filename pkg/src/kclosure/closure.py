"""Wielandt k-closures: tuple-orbit indexes, the pointwise membership test,
the backtracking closure search, the base-size shortcut, and the Sylow
product checker for abelian groups.

The k-closure of a permutation group G is the largest subgroup of the full
symmetric group that preserves every G-orbit on ordered k-tuples; it always
contains G. Here it is computed exactly, by image backtracking over the
tuple-orbit index, with an independent brute-force oracle available at small
degree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

from .abelian import factorize
from .group import (
    CapExceededError,
    PermGroup,
    StabilizerChain,
    abelian_hall_subgroup,
)
from .perm import Permutation, format_cycle_notation
from .report import Check, VerificationReport

__all__ = [
    "DEFAULT_TUPLE_CAP",
    "DEFAULT_BRUTE_DEGREE_CAP",
    "TupleOrbitIndex",
    "tuple_orbits",
    "in_k_closure",
    "k_closure",
    "is_k_closed",
    "closure_via_base_shortcut",
    "brute_force_k_closure",
    "abelian_sylow_subgroups",
    "closure_product_check",
]

DEFAULT_TUPLE_CAP = 2_000_000
DEFAULT_BRUTE_DEGREE_CAP = 7


@dataclass(frozen=True)
class TupleOrbitIndex:
    """Orbit labels for the diagonal action on all degree**k ordered tuples.

    A tuple (t0, ..., t_{k-1}) is encoded as the base-degree integer with
    digits t0..t_{k-1}, so lexicographic tuple order matches code order.
    Labels are assigned in order of least tuple.
    """

    degree: int
    k: int
    labels: tuple[int, ...]
    orbit_count: int

    def encode(self, tup) -> int:
        code = 0
        for t in tup:
            code = code * self.degree + t
        return code

    def label_of(self, tup) -> int:
        return self.labels[self.encode(tup)]


def tuple_orbits(G: PermGroup, k: int, cap: int = DEFAULT_TUPLE_CAP) -> TupleOrbitIndex:
    """Orbit labeling of all ordered k-tuples under the diagonal action."""
    if k < 1:
        raise ValueError("tuple arity k must be at least 1")
    deg = G.degree
    total = deg**k
    if total > cap:
        raise CapExceededError(f"tuple index over degree {deg} with k={k} exceeds the cap {cap}",
                               required=total)
    gens = [g.images for g in G.generators]
    labels = [-1] * total
    count = 0
    for code, seed in enumerate(product(range(deg), repeat=k)):
        if labels[code] != -1:
            continue
        label = count
        count += 1
        labels[code] = label
        stack = [seed]
        while stack:
            tup = stack.pop()
            for g in gens:
                img = tuple(g[t] for t in tup)
                c = 0
                for t in img:
                    c = c * deg + t
                if labels[c] == -1:
                    labels[c] = label
                    stack.append(img)
    return TupleOrbitIndex(deg, k, tuple(labels), count)


def in_k_closure(G: PermGroup, x: Permutation, k: int, *,
                 index: TupleOrbitIndex | None = None,
                 cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """Membership test: x lies in the k-closure iff it maps every ordered
    k-tuple into that tuple's orbit."""
    if x.degree != G.degree:
        raise ValueError(f"degree mismatch: {x.degree} vs {G.degree}")
    idx = index if index is not None else tuple_orbits(G, k, cap)
    deg = G.degree
    labels = idx.labels
    imgs = x.images
    for code, tup in enumerate(product(range(deg), repeat=k)):
        c = 0
        for t in tup:
            c = c * deg + imgs[t]
        if labels[c] != labels[code]:
            return False
    return True


def k_closure(G: PermGroup, k: int, *, tuple_cap: int = DEFAULT_TUPLE_CAP) -> PermGroup:
    """The full k-closure of G, as a group containing G.

    Image backtracking: candidate permutations are built point by point in
    increasing label order, pruning a partial assignment as soon as a fully
    assigned tuple leaves its orbit (the 2-tuple index is the first filter
    when k > 2). Completed candidates accumulate into a stabilizer chain, and
    the search only descends into cosets not yet covered by the chain, so the
    closure is never enumerated element by element.
    """
    deg = G.degree
    idx_k = tuple_orbits(G, k, cap=tuple_cap)
    lab_k = idx_k.labels
    lab_2 = None
    if k == 2:
        lab_2 = lab_k
    elif k > 2:
        lab_2 = tuple_orbits(G, 2, cap=tuple_cap).labels

    # Constraint lists per point m: every tuple over {0..m} whose maximum
    # coordinate is m, so each tuple is checked exactly once, when its last
    # point gets assigned. Pairs are split out to run first.
    pair_checks: list[list[tuple[int, int, int]]] = []
    for m in range(deg):
        row = []
        if lab_2 is not None:
            row.append((lab_2[m * deg + m], m, m))
            for j in range(m):
                row.append((lab_2[j * deg + m], j, m))
                row.append((lab_2[m * deg + j], m, j))
        pair_checks.append(row)

    k_checks: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(deg)]
    if k == 1:
        for m in range(deg):
            k_checks[m].append((lab_k[m], (m,)))
    elif k >= 3:
        for code, tup in enumerate(product(range(deg), repeat=k)):
            k_checks[max(tup)].append((lab_k[code], tup))

    chain = StabilizerChain(deg)
    for g in G.generators:
        chain.insert(g.images)
    found: list[Permutation] = []

    x = list(range(deg))
    used = [False] * deg

    def point_ok(m: int) -> bool:
        for lbl, a, b in pair_checks[m]:
            if lab_2[x[a] * deg + x[b]] != lbl:
                return False
        for lbl, digits in k_checks[m]:
            c = 0
            for d in digits:
                c = c * deg + x[d]
            if lab_k[c] != lbl:
                return False
        return True

    def first_completion(m: int) -> bool:
        if m == deg:
            return True
        for w in range(deg):
            if used[w]:
                continue
            x[m] = w
            if point_ok(m):
                used[w] = True
                if first_completion(m + 1):
                    return True
                used[w] = False
        return False

    # Deepest level first: after level i is processed the chain covers every
    # closure element fixing points 0..i-1, so at level i one representative
    # per uncovered image of point i is enough.
    for i in range(deg - 1, -1, -1):
        for v in range(i + 1, deg):
            if v in chain.orbit_at(i):
                continue
            for t in range(deg):
                x[t] = t
                used[t] = t < i
            x[i] = v
            if not point_ok(i):
                continue
            used[v] = True
            if first_completion(i + 1):
                g = Permutation(tuple(x))
                chain.insert(g.images)
                found.append(g)
    return PermGroup(deg, G.generators + tuple(found), _chain=chain)


def closure_via_base_shortcut(G: PermGroup, k: int) -> PermGroup | None:
    """Returns G itself when some (k-1)-point base has trivial pointwise
    stabilizer, which forces the k-closure to equal G; otherwise None and the
    caller must run the search."""
    if k >= 1 and G.minimal_base_size() <= k - 1:
        return G
    return None


def is_k_closed(G: PermGroup, k: int, *, tuple_cap: int = DEFAULT_TUPLE_CAP,
                use_base_shortcut: bool = True) -> bool:
    if use_base_shortcut and closure_via_base_shortcut(G, k) is not None:
        return True
    return k_closure(G, k, tuple_cap=tuple_cap).order() == G.order()


def brute_force_k_closure(G: PermGroup, k: int, *,
                          degree_cap: int = DEFAULT_BRUTE_DEGREE_CAP,
                          tuple_cap: int = DEFAULT_TUPLE_CAP) -> list[Permutation]:
    """Independent oracle: filter all degree! permutations through the
    membership test. Only sensible at small degree."""
    deg = G.degree
    if deg > degree_cap:
        raise CapExceededError(f"brute-force oracle limited to degree {degree_cap}", required=deg)
    idx = tuple_orbits(G, k, cap=tuple_cap)
    labels = idx.labels
    tuples = list(product(range(deg), repeat=k))
    out = []
    for images in permutations(range(deg)):
        ok = True
        for code, tup in enumerate(tuples):
            c = 0
            for t in tup:
                c = c * deg + images[t]
            if labels[c] != labels[code]:
                ok = False
                break
        if ok:
            out.append(Permutation(images))
    return out


def abelian_sylow_subgroups(G: PermGroup) -> list[PermGroup]:
    """One Sylow subgroup per prime dividing the order of an abelian group,
    generated by prime-part powers of the generators."""
    if not G.is_abelian():
        raise ValueError("Sylow decomposition by generator powers needs an abelian group")
    return [abelian_hall_subgroup(G, {p}) for p in sorted(factorize(G.order()))] if G.order() > 1 else []


def closure_product_check(G: PermGroup, k: int, *,
                          tuple_cap: int = DEFAULT_TUPLE_CAP,
                          campaign: str = "verify-product") -> VerificationReport:
    """Check that the k-closure of an abelian group equals the group generated
    by the k-closures of its Sylow subgroups, computing both sides
    independently."""
    start = time.perf_counter()
    if k < 2:
        raise ValueError("the Sylow product identity requires k >= 2")
    if not G.is_abelian():
        raise ValueError("the Sylow product identity applies to abelian groups only")
    left = k_closure(G, k, tuple_cap=tuple_cap)
    sylows = abelian_sylow_subgroups(G)
    parts = [k_closure(P, k, tuple_cap=tuple_cap) for P in sylows]
    right_gens = tuple(g for part in parts for g in part.generators)
    right = PermGroup(G.degree, right_gens)
    checks = [
        Check.equal("left and right closures have equal order", left.order(), right.order()),
        Check.equal("every right-side generator lies in the left closure", True,
                    all(g in left for g in right.generators)),
        Check.equal("every left-side generator lies in the right closure", True,
                    all(g in right for g in left.generators)),
    ]
    wall = time.perf_counter() - start
    return VerificationReport(
        campaign=campaign,
        inputs={"degree": G.degree,
                "generators": [format_cycle_notation(g) for g in G.generators],
                "k": k},
        checks=checks,
        wall_time=wall,
        data={
            "group_order": G.order(),
            "left_closure_order": left.order(),
            "right_closure_order": right.order(),
            "sylow_orders": [P.order() for P in sylows],
            "sylow_closure_orders": [P.order() for P in parts],
        },
    )
