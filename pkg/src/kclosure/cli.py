"""Command-line verification harness.

Subcommands: closure, witness, verify-thm2, verify-product, verify-lemmas,
self-test. Every command produces a VerificationReport, printed as a plain
text summary by default or as JSON with --format json.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 resource cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from itertools import combinations
from typing import Sequence

from .abelian import AbelianSpec, capital_N, factorize, invariant_factors, n_of, pi_part
from .closure import (
    DEFAULT_BRUTE_DEGREE_CAP,
    DEFAULT_TUPLE_CAP,
    brute_force_k_closure,
    closure_product_check,
    closure_via_base_shortcut,
    in_k_closure,
    k_closure,
)
from .constructions import enumerate_faithful_actions, mixed_witness, pgroup_witness
from .group import CapExceededError, PermGroup, abelian_hall_subgroup, groups_equal
from .perm import ParseError, Permutation, format_cycle_notation
from .report import Check, VerificationReport

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_CAP_EXCEEDED = 3

# Degree guards keep default runs at minutes scale; override with --cap-degree.
DEFAULT_DEGREE_CAPS = {1: 16, 2: 16, 3: 12}
DEFAULT_SUBSET_LIMIT = 128


def _degree_cap(k: int) -> int:
    return DEFAULT_DEGREE_CAPS.get(k, 8)


def _orbit_signature(G: PermGroup) -> str:
    return "+".join(str(len(b)) for b in G.orbits().blocks)


def _check_degree(G: PermGroup, k: int, cap_degree: int | None) -> None:
    cap = cap_degree if cap_degree is not None else _degree_cap(k)
    if G.degree > cap:
        raise CapExceededError(
            f"degree {G.degree} exceeds the default cap {cap} for k={k}; raise --cap-degree",
            required=G.degree,
        )


def cmd_closure(G: PermGroup, k: int, *, tuple_cap: int = DEFAULT_TUPLE_CAP,
                cap_degree: int | None = None,
                brute_cap: int = DEFAULT_BRUTE_DEGREE_CAP) -> VerificationReport:
    """Compute the k-closure and report order, generators, and a strict
    containment witness if there is one. At small degree the backtracking
    result is cross-checked against the brute-force filter."""
    start = time.perf_counter()
    _check_degree(G, k, cap_degree)
    closure = k_closure(G, k, tuple_cap=tuple_cap)
    new_gens = closure.generators[len(G.generators):]
    witness = format_cycle_notation(new_gens[0]) if new_gens else None
    checks = [
        Check.equal("closure contains the input group", True,
                    all(g in closure for g in G.generators)),
        Check.equal("closure order is a multiple of the group order", 0,
                    closure.order() % G.order()),
    ]
    if G.degree <= brute_cap:
        oracle = brute_force_k_closure(G, k, degree_cap=brute_cap, tuple_cap=tuple_cap)
        same = len(oracle) == closure.order() and all(p in closure for p in oracle)
        checks.append(Check.equal("backtracking closure matches the brute-force filter",
                                  True, same))
    wall = time.perf_counter() - start
    return VerificationReport(
        campaign="closure",
        inputs={"degree": G.degree,
                "generators": [format_cycle_notation(g) for g in G.generators],
                "k": k},
        checks=checks,
        wall_time=wall,
        data={
            "group_order": G.order(),
            "closure_order": closure.order(),
            "closure_generators": [format_cycle_notation(g) for g in closure.generators],
            "is_closed": closure.order() == G.order(),
            "strict_containment_witness": witness,
        },
    )


def cmd_witness(spec: AbelianSpec, *, tuple_cap: int = DEFAULT_TUPLE_CAP) -> VerificationReport:
    """Build the witness action for the group and verify that its closure at
    arity n (the invariant factor count) is strictly larger."""
    start = time.perf_counter()
    if spec.is_trivial:
        raise ValueError("the trivial group has no witness action")
    n = n_of(spec)
    W = mixed_witness(spec)
    from .abelian import primary_decomposition  # local alias for the q-block descriptor

    primary = primary_decomposition(spec)
    q = min(p for p, parts in primary.items() if len(parts) == n)
    q_witness = pgroup_witness(primary[q], q)
    tau0 = Permutation(tuple(
        q_witness.extra_cycle.images[p] if p < q_witness.group.degree else p
        for p in range(W.degree)
    ))
    closure = k_closure(W, n, tuple_cap=tuple_cap)
    checks = [
        Check.equal("witness action is faithful", spec.group_order, W.order()),
        Check.equal("closure at arity n is strictly larger", True,
                    closure.order() > W.order()),
        Check.equal("distinguished cycle lies in the closure but outside the group",
                    (True, False),
                    (in_k_closure(W, tau0, n, cap=tuple_cap), W.contains(tau0))),
    ]
    wall = time.perf_counter() - start
    return VerificationReport(
        campaign="witness",
        inputs={"orders": list(spec.orders)},
        checks=checks,
        wall_time=wall,
        data={
            "invariant_factors": list(invariant_factors(spec)),
            "n": n,
            "witness": W.to_json(),
            "prime_block": q_witness.to_json(),
            "closure_order_at_n": closure.order(),
        },
    )


def cmd_verify_thm2(spec: AbelianSpec, max_points: int, *,
                    tuple_cap: int = DEFAULT_TUPLE_CAP) -> VerificationReport:
    """Check both closure bounds for one abelian group: every faithful action
    on at most max_points points is closed at arity n+1 (base shortcut when
    available), and the witness action is not closed at arity n."""
    start = time.perf_counter()
    if spec.is_trivial:
        raise ValueError("need a nontrivial abelian group")
    n = n_of(spec)
    actions = enumerate_faithful_actions(spec, max_points)
    checks = []
    for j, A in enumerate(actions):
        shortcut = closure_via_base_shortcut(A, n + 1)
        if shortcut is not None:
            closed = True
            how = "base shortcut"
        else:
            closed = k_closure(A, n + 1, tuple_cap=tuple_cap).order() == A.order()
            how = "search"
        checks.append(Check.equal(
            f"action {j} (degree {A.degree}, orbits {_orbit_signature(A)}) closed at k={n + 1} [{how}]",
            True, closed))
    W = mixed_witness(spec)
    witness_closed = k_closure(W, n, tuple_cap=tuple_cap).order() == W.order()
    checks.append(Check.equal(f"witness action (degree {W.degree}) is NOT closed at k={n}",
                              False, witness_closed))
    wall = time.perf_counter() - start
    return VerificationReport(
        campaign="verify-thm2",
        inputs={"orders": list(spec.orders), "max_points": max_points},
        checks=checks,
        wall_time=wall,
        data={"n": n, "action_count": len(actions)},
    )


def _orbit_subsets(count: int, limit: int, seed: int | None) -> list[tuple[int, ...]]:
    """Nonempty subsets of range(count), smallest first; truncated
    deterministically at `limit`, or sampled with an explicit seed."""
    all_subsets = []
    for size in range(1, count + 1):
        for combo in combinations(range(count), size):
            all_subsets.append(combo)
            if seed is None and len(all_subsets) >= limit:
                return all_subsets
    if len(all_subsets) > limit:
        rng = random.Random(seed)
        all_subsets = sorted(rng.sample(all_subsets, limit))
    return all_subsets


def cmd_verify_lemmas(spec: AbelianSpec, max_points: int, *,
                      seed: int | None = None,
                      subset_limit: int = DEFAULT_SUBSET_LIMIT) -> VerificationReport:
    """Structural checks over every enumerated faithful action: the setwise
    stabilizer of any set of Sylow orbits restricts to the Sylow restriction,
    and on each transitive constituent the Hall subgroup for any prime subset
    has orbits of size equal to the prime part, with kernel the Hall subgroup
    itself."""
    start = time.perf_counter()
    if spec.is_trivial:
        raise ValueError("need a nontrivial abelian group")
    actions = enumerate_faithful_actions(spec, max_points)
    checks = []
    for j, A in enumerate(actions):
        order = A.order()
        primes = sorted(factorize(order))

        # setwise stabilizers of Sylow orbit subsets
        failures = 0
        tested = 0
        for p in primes:
            P = abelian_hall_subgroup(A, {p})
            blocks = P.orbits().blocks
            for subset in _orbit_subsets(len(blocks), subset_limit, seed):
                chosen = [blocks[i] for i in subset]
                union = sorted(pt for b in chosen for pt in b)
                L = A.setwise_stabilizer_of_blocks(chosen)
                left = frozenset(e.images for e in L.restriction(union).elements())
                right = frozenset(e.images for e in P.restriction(union).elements())
                tested += 1
                if left != right:
                    failures += 1
        checks.append(Check.equal(
            f"action {j} (degree {A.degree}): stabilizer restrictions match the Sylow "
            f"restriction on all {tested} tested orbit subsets", 0, failures))

        # Hall subgroups on transitive constituents
        hall_failures = 0
        hall_tested = 0
        for orbit in A.orbits().blocks:
            C = A.restriction(orbit)
            c_primes = sorted(factorize(C.order()))
            for size in range(len(c_primes) + 1):
                for pi in combinations(c_primes, size):
                    H = abelian_hall_subgroup(C, pi)
                    target = pi_part(len(orbit), pi)
                    hall_tested += 1
                    if any(len(b) != target for b in H.orbits().blocks):
                        hall_failures += 1
                        continue
                    kernel = C.setwise_stabilizer_of_blocks(H.orbits().blocks)
                    if frozenset(e.images for e in kernel.elements()) != \
                            frozenset(e.images for e in H.elements()):
                        hall_failures += 1
        checks.append(Check.equal(
            f"action {j} (degree {A.degree}): Hall orbit sizes and kernels correct in all "
            f"{hall_tested} constituent/prime-set combinations", 0, hall_failures))
    wall = time.perf_counter() - start
    return VerificationReport(
        campaign="verify-lemmas",
        inputs={"orders": list(spec.orders), "max_points": max_points,
                "seed": seed, "subset_limit": subset_limit},
        checks=checks,
        wall_time=wall,
        data={"action_count": len(actions)},
    )


def cmd_self_test(*, tuple_cap: int = DEFAULT_TUPLE_CAP) -> VerificationReport:
    """Quick built-in sanity campaign over the worked examples."""
    start = time.perf_counter()
    checks = []

    g1 = PermGroup.from_cycles(5, ["(1,2,3)", "(1,2)(4,5)"])
    checks.append(Check.equal("2-closure of the intransitive degree-5 group has order 12",
                              12, k_closure(g1, 2, tuple_cap=tuple_cap).order()))

    s3 = PermGroup.from_cycles(3, ["(1,2,3)", "(1,2)"])
    checks.append(Check.equal("natural degree-3 full symmetric group is 2-closed",
                              6, k_closure(s3, 2, tuple_cap=tuple_cap).order()))

    c2 = PermGroup.from_cycles(4, ["(1,2)(3,4)"])
    one_closure = k_closure(c2, 1, tuple_cap=tuple_cap)
    checks.append(Check.equal("1-closure of the double transposition has order 4",
                              4, one_closure.order()))
    checks.append(Check.equal("1-closure equals the two independent transpositions", True,
                              groups_equal(one_closure, PermGroup.from_cycles(4, ["(1,2)", "(3,4)"]))))

    z6 = PermGroup.from_cycles(5, ["(1,2,3)(4,5)"])
    checks.append(Check.equal("Sylow product identity holds for the degree-5 cyclic group at k=2",
                              True, closure_product_check(z6, 2, tuple_cap=tuple_cap).passed))

    wall = time.perf_counter() - start
    return VerificationReport(
        campaign="self-test",
        inputs={},
        checks=checks,
        wall_time=wall,
    )


def _load_group(args: argparse.Namespace) -> PermGroup:
    if getattr(args, "file", None):
        if args.degree is not None or args.gens:
            raise ValueError("give either a group file or --degree/--gens, not both")
        return PermGroup.from_file(args.file)
    if args.degree is None:
        raise ValueError("need a group: either a group file or --degree with --gens")
    return PermGroup.from_cycles(args.degree, args.gens or [])


def _add_group_arguments(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("file", nargs="?", default=None,
                     help="JSON group file with fields 'degree' and 'generators'")
    sub.add_argument("--degree", type=int, default=None, help="number of points")
    sub.add_argument("--gens", nargs="*", default=None, metavar="CYCLES",
                     help="generators in 1-based cycle notation, e.g. \"(1,2,3)\"")


def _add_common_arguments(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--cap-tuples", type=int, default=DEFAULT_TUPLE_CAP,
                     help="maximum number of ordered tuples to index")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kclosure",
        description="Exact Wielandt k-closures of finite permutation groups, "
                    "with verification campaigns for abelian groups.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("closure", help="compute the k-closure of a permutation group")
    _add_group_arguments(p)
    p.add_argument("--k", type=int, required=True, help="closure arity (k >= 1)")
    p.add_argument("--cap-degree", type=int, default=None,
                   help="override the per-arity degree guard")
    p.add_argument("--cap-brute", type=int, default=DEFAULT_BRUTE_DEGREE_CAP,
                   help="largest degree for the brute-force cross-check (0 disables)")
    _add_common_arguments(p)

    p = subs.add_parser("witness", help="build the non-closure witness for an abelian group")
    p.add_argument("--orders", required=True, help="cyclic orders, e.g. 2,2 or 2,6")
    _add_common_arguments(p)

    p = subs.add_parser("verify-thm2",
                        help="closed at n+1 on all small faithful actions; witness fails at n")
    p.add_argument("--orders", required=True)
    p.add_argument("--max-points", type=int, default=8)
    _add_common_arguments(p)

    p = subs.add_parser("verify-product",
                        help="k-closure equals the product of the Sylow k-closures")
    _add_group_arguments(p)
    p.add_argument("--k", type=int, required=True)
    _add_common_arguments(p)

    p = subs.add_parser("verify-lemmas",
                        help="setwise-stabilizer and Hall-orbit structure on small actions")
    p.add_argument("--orders", required=True)
    p.add_argument("--max-points", type=int, default=8)
    p.add_argument("--seed", type=int, default=None,
                   help="sample orbit subsets with this seed instead of truncating")
    p.add_argument("--subset-limit", type=int, default=DEFAULT_SUBSET_LIMIT)
    _add_common_arguments(p)

    p = subs.add_parser("self-test", help="run the built-in example campaign")
    _add_common_arguments(p)

    return parser


def _dispatch(args: argparse.Namespace) -> VerificationReport:
    if args.command == "closure":
        return cmd_closure(_load_group(args), args.k, tuple_cap=args.cap_tuples,
                           cap_degree=args.cap_degree, brute_cap=args.cap_brute)
    if args.command == "witness":
        return cmd_witness(AbelianSpec.parse(args.orders), tuple_cap=args.cap_tuples)
    if args.command == "verify-thm2":
        return cmd_verify_thm2(AbelianSpec.parse(args.orders), args.max_points,
                               tuple_cap=args.cap_tuples)
    if args.command == "verify-product":
        return closure_product_check(_load_group(args), args.k, tuple_cap=args.cap_tuples)
    if args.command == "verify-lemmas":
        return cmd_verify_lemmas(AbelianSpec.parse(args.orders), args.max_points,
                                 seed=args.seed, subset_limit=args.subset_limit)
    if args.command == "self-test":
        return cmd_self_test(tuple_cap=args.cap_tuples)
    raise AssertionError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _dispatch(args)
    except CapExceededError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except (ParseError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.text_summary())
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
