"""Additive-energy counting engine for S = {1**c, ..., N**c}.

Counts ordered quadruples with x1**c + x2**c = x3**c + x4**c, the nontrivial
excess over the forced 2N^2 - N, and the sumset cardinality |S+S|; also the
constructions that produce nontrivial solutions (sporadic quadruples and
three-term progressions from roots of trinomial-like polynomials) and the
exponent upper bound beyond which no nontrivial solution exists.

Pipeline: the N(N+1)/2 unordered pair sums are enclosed in common fixed-point
scale, sorted by lower endpoint, merged into overlap components (the lo-sorted
running-hull merge recovers exact connected components), and each component is
resolved by the comparison kernel.  Equalities are only ever certified by the
kernel's exact escapes; anything undecided is reported as unresolved, never
guessed.
"""

from __future__ import annotations

import heapq
import pickle
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from . import polys
from .realcore import (
    GUARD_BITS,
    INITIAL_PRECISION,
    MAX_PRECISION,
    AlgebraicLogExponent,
    CompareVerdict,
    Exponent,
    RationalExponent,
    RealBall,
    compare_sums,
    power_ball,
    _radical_canonical_sum,
)

SCHEMA_VERSION = 1


class DegenerateConstruction(ValueError):
    """The requested construction collapses (n = 1 kills the polynomial)."""


class NoAdmissibleRoot(ValueError):
    """No root of the construction polynomial lies in the admissible interval."""


@dataclass
class EnergyReport:
    """Counting convention: total_energy counts ORDERED quadruples (x1,..,x4)
    with x1^c + x2^c = x3^c + x4^c; trivial_count is the multiset-equality
    count 2N^2 - N (exact whenever x -> x^c is injective, i.e. c != 0)."""

    N: int
    c_descriptor: str
    total_energy: int
    trivial_count: int
    nontrivial_count: int
    sumset_size: int
    unresolved: int
    max_precision_used: int
    certified: bool
    # pair groups of size >= 2 (the interesting collisions), as lists of (x, y)
    collision_groups: List[List[Tuple[int, int]]] = field(default_factory=list)

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "schema_version": SCHEMA_VERSION,
            "N": self.N,
            "c_descriptor": self.c_descriptor,
            "energy": self.total_energy,
            "trivial": self.trivial_count,
            "nontrivial": self.nontrivial_count,
            "sumset": self.sumset_size,
            "unresolved": self.unresolved,
            "precision_bits": self.max_precision_used,
            "certified": self.certified,
        }

    CSV_HEADER = "N,c_descriptor,energy,trivial,nontrivial,sumset,unresolved,precision_bits,certified"

    def to_csv_row(self) -> str:
        d = self.to_json_dict()
        return ",".join(
            str(d[k])
            for k in (
                "N",
                "c_descriptor",
                "energy",
                "trivial",
                "nontrivial",
                "sumset",
                "unresolved",
                "precision_bits",
                "certified",
            )
        )


@dataclass
class SporadicSolution:
    n: int
    c: AlgebraicLogExponent
    quadruple: Tuple[int, int, int, int]
    kind: str  # "sporadic" | "three_ap"
    verdict: CompareVerdict


# ---------------------------------------------------------------------------
# pair-sum enumeration and clustering
# ---------------------------------------------------------------------------


def _fixed_point_powers(c: Exponent, N: int, prec: int) -> Tuple[List[Tuple[int, int]], int]:
    """Enclosures of x**c for x in [1, N] as integer multiples of 2**-scale."""
    scale = prec + GUARD_BITS
    out: List[Tuple[int, int]] = []
    for x in range(1, N + 1):
        b = power_ball(x, c, prec)
        mlo, elo = b.lo.as_mantissa_exp()
        mhi, ehi = b.hi.as_mantissa_exp()
        slo = int(elo) + scale
        shi = int(ehi) + scale
        ilo = int(mlo) << slo if slo >= 0 else int(mlo) >> (-slo)  # floor
        mh = int(mhi)
        ihi = mh << shi if shi >= 0 else -((-mh) >> (-shi))  # ceil
        out.append((ilo, ihi))
    return out, scale


def _pair_items(powers: Sequence[Tuple[int, int]]) -> Iterator[Tuple[int, int, int, int]]:
    n = len(powers)
    for i in range(n):
        ilo, ihi = powers[i]
        for j in range(i, n):
            jlo, jhi = powers[j]
            yield (ilo + jlo, ihi + jhi, i + 1, j + 1)


def _sorted_pair_stream(
    powers: Sequence[Tuple[int, int]], chunk_size: int
) -> Iterator[Tuple[int, int, int, int]]:
    """Sort the pair items by (lo, hi, x, y), spilling sorted chunks to disk
    when they do not fit in a single chunk."""
    chunks: List[List[Tuple[int, int, int, int]]] = []
    spill_files: List[tempfile.TemporaryFile] = []
    cur: List[Tuple[int, int, int, int]] = []
    for item in _pair_items(powers):
        cur.append(item)
        if len(cur) >= chunk_size:
            cur.sort()
            f = tempfile.TemporaryFile()
            pickle.dump(cur, f, protocol=pickle.HIGHEST_PROTOCOL)
            f.seek(0)
            spill_files.append(f)
            cur = []
    if cur:
        cur.sort()
        chunks.append(cur)

    def replay(f) -> Iterator[Tuple[int, int, int, int]]:
        yield from pickle.load(f)
        f.close()

    streams = [iter(ch) for ch in chunks] + [replay(f) for f in spill_files]
    if len(streams) == 1:
        yield from streams[0]
    else:
        yield from heapq.merge(*streams)


@dataclass
class PairGroup:
    """A set of unordered pairs certified to share one pair-sum value."""

    members: List[Tuple[int, int]]
    weight: int  # ordered representations: sum over members of (1 if x==y else 2)
    lo: int
    hi: int

    def value_ball(self, scale: int, prec: int) -> RealBall:
        return RealBall.from_interval(
            Fraction(self.lo, 1 << scale), Fraction(self.hi, 1 << scale), prec
        )


def _weight(pair: Tuple[int, int]) -> int:
    return 1 if pair[0] == pair[1] else 2


def _resolve_component(
    members: List[Tuple[int, int, int, int]],
    c: Exponent,
    max_precision: int,
    initial_precision: int,
    exact_paths: bool,
) -> Tuple[List[List[Tuple[int, int, int, int]]], int, int]:
    """Partition a component of overlapping pair sums into certified-equal
    groups.  Returns (groups, unresolved_pair_count, max_precision_used)."""
    if len(members) == 1:
        return [members], 0, 0

    if exact_paths and isinstance(c, RationalExponent):
        keyed: Dict[object, List[Tuple[int, int, int, int]]] = {}
        for item in members:
            terms = {}
            for x in (item[2], item[3]):
                terms[x] = terms.get(x, 0) + 1
            groups = _radical_canonical_sum(terms, c.a, c.q)
            key = tuple(sorted((k, (v.numerator, v.denominator)) for k, v in groups.items()))
            keyed.setdefault(key, []).append(item)
        return list(keyed.values()), 0, 0

    # pairwise resolution via the comparison kernel (components are tiny for
    # irrational exponents)
    parent = list(range(len(members)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    unresolved = 0
    max_prec = 0
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if find(i) == find(j):
                continue
            a, b = members[i], members[j]
            verdict = compare_sums(
                [(1, a[2]), (1, a[3])],
                [(1, b[2]), (1, b[3])],
                c,
                max_precision,
                initial_precision=initial_precision,
                exact_paths=exact_paths,
            )
            max_prec = max(max_prec, verdict.precision_reached)
            if verdict.is_equal:
                parent[find(i)] = find(j)
            elif not verdict.is_resolved:
                unresolved += 1
    buckets: Dict[int, List[Tuple[int, int, int, int]]] = {}
    for i, m in enumerate(members):
        buckets.setdefault(find(i), []).append(m)
    return list(buckets.values()), unresolved, max_prec


def pair_sum_groups(
    c: Exponent,
    N: int,
    max_precision: int = MAX_PRECISION,
    *,
    initial_precision: int = INITIAL_PRECISION,
    exact_paths: bool = True,
    chunk_size: int = 1 << 24,
) -> Tuple[List[PairGroup], int, int, int]:
    """Certified grouping of all unordered pair sums of {x**c : x <= N}.

    Returns (groups sorted ascending by value, unresolved_count, scale,
    max_precision_used).
    """
    powers, scale = _fixed_point_powers(c, N, initial_precision)
    groups: List[PairGroup] = []
    unresolved_total = 0
    max_prec_used = initial_precision

    component: List[Tuple[int, int, int, int]] = []
    hull_hi: Optional[int] = None

    def close_component() -> None:
        nonlocal unresolved_total, max_prec_used
        if not component:
            return
        parts, unresolved, used = _resolve_component(
            component, c, max_precision, initial_precision, exact_paths
        )
        unresolved_total += unresolved
        max_prec_used = max(max_prec_used, used)
        parts.sort(key=lambda ms: min(m[:2] for m in ms))
        for ms in parts:
            pairs = [(m[2], m[3]) for m in ms]
            groups.append(
                PairGroup(
                    members=pairs,
                    weight=sum(_weight(p) for p in pairs),
                    lo=min(m[0] for m in ms),
                    hi=max(m[1] for m in ms),
                )
            )

    for item in _sorted_pair_stream(powers, chunk_size):
        if hull_hi is None or item[0] <= hull_hi:
            component.append(item)
            hull_hi = item[1] if hull_hi is None else max(hull_hi, item[1])
        else:
            close_component()
            component = [item]
            hull_hi = item[1]
    close_component()
    return groups, unresolved_total, scale, max_prec_used


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def additive_energy(
    c: Exponent,
    N: int,
    max_precision: int = MAX_PRECISION,
    *,
    initial_precision: int = INITIAL_PRECISION,
    exact_paths: bool = True,
    chunk_size: int = 1 << 24,
    threads: int = 1,
) -> EnergyReport:
    """Count ordered quadruples with equal pair sums of c-th powers.

    The report is certified iff no comparison was left unresolved; unresolved
    collisions are counted pessimistically as distinct (the energy is then a
    certified lower bound and the report says so via certified=False).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    del threads  # results are thread-count invariant; kept for interface parity

    if c.is_certified_zero():
        # x**0 = 1: every quadruple is a solution; trivial means x1 in {x3, x4}
        total = N**4
        trivial = 2 * N**3 - N**2
        return EnergyReport(
            N=N,
            c_descriptor=c.descriptor(),
            total_energy=total,
            trivial_count=trivial,
            nontrivial_count=total - trivial,
            sumset_size=1,
            unresolved=0,
            max_precision_used=initial_precision,
            certified=True,
        )

    groups, unresolved, _scale, max_prec = pair_sum_groups(
        c,
        N,
        max_precision,
        initial_precision=initial_precision,
        exact_paths=exact_paths,
        chunk_size=chunk_size,
    )
    energy = sum(g.weight**2 for g in groups)
    trivial = 2 * N * N - N
    return EnergyReport(
        N=N,
        c_descriptor=c.descriptor(),
        total_energy=energy,
        trivial_count=trivial,
        nontrivial_count=energy - trivial,
        sumset_size=len(groups),
        unresolved=unresolved,
        max_precision_used=max_prec,
        certified=(unresolved == 0),
        collision_groups=[g.members for g in groups if len(g.members) >= 2],
    )


def sumset_size(
    c: Exponent,
    N: int,
    max_precision: int = MAX_PRECISION,
    **kwargs,
) -> Union[int, Tuple[int, int]]:
    """Certified |S+S|; with unresolved collisions, a certified [lower, upper]
    interval is returned instead of a point value."""
    groups, unresolved, _scale, _prec = pair_sum_groups(c, N, max_precision, **kwargs)
    q = len(groups)
    if unresolved == 0:
        return q
    return (q - unresolved, q)


def brute_force_energy(
    c: Exponent,
    N: int,
    max_precision: int = MAX_PRECISION,
    *,
    exact_paths: bool = True,
) -> Tuple[int, int, int]:
    """Independent oracle: direct pairwise comparison of all pair sums
    (the O(N^4) enumeration factored through unordered pairs).

    Returns (energy, nontrivial, sumset).  Quadratic in the number of pairs;
    keep N small.
    """
    pairs = [(i, j) for i in range(1, N + 1) for j in range(i, N + 1)]
    labels = list(range(len(pairs)))

    def find(i: int) -> int:
        while labels[i] != i:
            labels[i] = labels[labels[i]]
            i = labels[i]
        return i

    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            if find(a) == find(b):
                continue
            pa, pb = pairs[a], pairs[b]
            verdict = compare_sums(
                [(1, pa[0]), (1, pa[1])],
                [(1, pb[0]), (1, pb[1])],
                c,
                max_precision,
                exact_paths=exact_paths,
            )
            if verdict.is_equal:
                labels[find(a)] = find(b)
            elif not verdict.is_resolved:
                raise UnresolvedBruteForce(pa, pb)
    weights: Dict[int, int] = {}
    for i, p in enumerate(pairs):
        r = find(i)
        weights[r] = weights.get(r, 0) + _weight(p)
    energy = sum(w * w for w in weights.values())
    return energy, energy - (2 * N * N - N), len(weights)


class UnresolvedBruteForce(RuntimeError):
    def __init__(self, pa, pb):
        super().__init__(f"could not resolve {pa} vs {pb}")
        self.pa, self.pb = pa, pb


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _construction_exponent(coeffs: Sequence[int], n: int) -> AlgebraicLogExponent:
    """Strip (x-1) factors, isolate a root in (1,2), wrap as log_2(phi)."""
    p = polys.normalize(coeffs)
    while not polys.is_zero(p) and sum(p) == 0:
        p = polys.div_by_linear_root_one(p)
    if polys.degree(p) < 1:
        raise DegenerateConstruction(f"construction collapses at n={n}")
    lo, hi = Fraction(1), Fraction(2)
    sq = polys.squarefree_part(p)
    if polys.sign_at(sq, lo) == 0 or polys.sign_at(sq, hi) == 0:
        raise NoAdmissibleRoot(f"degenerate endpoint root at n={n}")
    if polys.count_roots(sq, lo, hi) == 0:
        raise NoAdmissibleRoot(f"no root in (1,2) at n={n}")
    blo, bhi = polys.isolate_in(p, lo, hi)
    return AlgebraicLogExponent(2, p, blo, bhi)


def construct_sporadic(n: int) -> SporadicSolution:
    """Quadruple (2^{2n}, 1, 2^{n+1}, 2^n) with x1^c + x2^c = x3^c + x4^c for
    c = log_2 of a root in (1,2) of x^{2n} - x^{n+1} - x^n + 1."""
    if n < 2:
        raise DegenerateConstruction("n must be >= 2 (n=1 collapses the polynomial)")
    coeffs = [0] * (2 * n + 1)
    coeffs[0] = 1
    coeffs[n] = -1
    coeffs[n + 1] = -1
    coeffs[2 * n] = 1
    c = _construction_exponent(coeffs, n)
    quad = (2 ** (2 * n), 1, 2 ** (n + 1), 2**n)
    verdict = compare_sums([(1, quad[0]), (1, quad[1])], [(1, quad[2]), (1, quad[3])], c)
    if not verdict.is_equal:
        raise NoAdmissibleRoot(f"constructed quadruple failed certification at n={n}: {verdict}")
    return SporadicSolution(n=n, c=c, quadruple=quad, kind="sporadic", verdict=verdict)


def construct_three_ap(n: int) -> SporadicSolution:
    """1, (2^{n+1})^c, (4^n)^c in arithmetic progression: the quadruple
    (4^n, 1, 2^{n+1}, 2^{n+1}) solves the energy equation for c = log_2 of a
    root in (1,2) of x^{2n} - 2x^{n+1} + 1."""
    if n < 2:
        raise DegenerateConstruction("n must be >= 2 (n=1 collapses the polynomial)")
    coeffs = [0] * (2 * n + 1)
    coeffs[0] = 1
    coeffs[n + 1] = -2
    coeffs[2 * n] = 1
    c = _construction_exponent(coeffs, n)
    quad = (4**n, 1, 2 ** (n + 1), 2 ** (n + 1))
    verdict = compare_sums([(1, quad[0]), (1, quad[1])], [(1, quad[2]), (1, quad[3])], c)
    if not verdict.is_equal:
        raise NoAdmissibleRoot(f"constructed progression failed certification at n={n}: {verdict}")
    return SporadicSolution(n=n, c=c, quadruple=quad, kind="three_ap", verdict=verdict)


def solution_exponent_bound(N: int, precision: int = 96) -> RealBall:
    """log 2 / log(N/(N-1)): above this exponent the energy equation has no
    nontrivial solution in [N]^4 (a solution with x1 > x3 forces
    c <= log 2 / log(x1/x3), maximized at x1/x3 = N/(N-1))."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if N == 2:
        return RealBall.exact_int(1, precision)
    from .realcore import ball_log_int

    p = precision + GUARD_BITS
    num = ball_log_int(2, p)
    den = RealBall.from_fraction(Fraction(N, N - 1), p).log()
    return num / den
