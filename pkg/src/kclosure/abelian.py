"""Abstract finite abelian groups given as lists of cyclic orders.

An AbelianSpec is the direct product of cyclic groups of the stated orders.
From it we derive the primary (Sylow) decomposition, the canonical invariant
factors d1 | d2 | ... | dn, the count n of invariant factors, the sum N of
the primary factor counts, and prime-part arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable

__all__ = [
    "AbelianSpec",
    "InvariantFactors",
    "factorize",
    "is_prime",
    "primary_decomposition",
    "invariant_factors",
    "n_of",
    "capital_N",
    "pi_part",
]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for word-sized inputs."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


@dataclass(frozen=True)
class AbelianSpec:
    """Direct product of cyclic groups of the given orders.

    Orders equal to 1 are dropped on normalization and the remaining ones are
    sorted; the empty spec is the trivial group.
    """

    orders: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for x in self.orders:
            if not isinstance(x, int) or x < 1:
                raise ValueError(f"cyclic order {x!r} must be a positive integer")
        object.__setattr__(self, "orders", tuple(sorted(x for x in self.orders if x > 1)))

    @classmethod
    def parse(cls, text: str) -> "AbelianSpec":
        """Parse a comma-separated order list such as "2,4,3"."""
        items = [s.strip() for s in text.split(",") if s.strip()]
        try:
            orders = tuple(int(s) for s in items)
        except ValueError:
            raise ValueError(f"bad order list {text!r}: expected comma-separated integers") from None
        return cls(orders)

    @property
    def group_order(self) -> int:
        return prod(self.orders)

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    def __str__(self) -> str:
        return "trivial" if self.is_trivial else " x ".join(f"C{d}" for d in self.orders)


@dataclass(frozen=True)
class InvariantFactors:
    """Canonical decomposition d1 | d2 | ... | dn with d1 > 1."""

    d: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.d:
            if self.d[0] <= 1:
                raise ValueError("the first invariant factor must exceed 1")
            for a, b in zip(self.d, self.d[1:]):
                if b % a != 0:
                    raise ValueError(f"invariant factors {self.d!r} violate the divisibility chain")

    def __len__(self) -> int:
        return len(self.d)

    def __iter__(self):
        return iter(self.d)


def primary_decomposition(spec: AbelianSpec) -> dict[int, tuple[int, ...]]:
    """For each prime dividing the group order, the multiset of prime-power
    cyclic parts greater than 1, sorted ascending."""
    parts: dict[int, list[int]] = {}
    for m in spec.orders:
        for p, e in factorize(m).items():
            parts.setdefault(p, []).append(p**e)
    return {p: tuple(sorted(v)) for p, v in sorted(parts.items())}


def invariant_factors(spec: AbelianSpec) -> InvariantFactors:
    """Combine the j-th largest prime-power parts across primes (CRT), giving
    the unique chain d1 | d2 | ... | dn."""
    primary = primary_decomposition(spec)
    if not primary:
        return InvariantFactors(())
    n = max(len(v) for v in primary.values())
    ds = []
    for j in range(n):
        f = 1
        for v in primary.values():
            if j < len(v):
                f *= v[len(v) - 1 - j]
        ds.append(f)
    ds.reverse()
    return InvariantFactors(tuple(ds))


def n_of(spec: AbelianSpec) -> int:
    """Number of invariant factors; 0 for the trivial group."""
    return len(invariant_factors(spec))


def capital_N(spec: AbelianSpec) -> int:
    """Sum over primes of the number of primary cyclic factors."""
    return sum(len(v) for v in primary_decomposition(spec).values())


def pi_part(m: int, primes: Iterable[int]) -> int:
    """Product of the maximal p-power divisors of m over the given primes."""
    if m < 1:
        raise ValueError("m must be positive")
    prime_set = set(primes)
    return prod(p**e for p, e in factorize(m).items() if p in prime_set)
