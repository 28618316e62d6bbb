"""The exponent lattice M and a bounded test of algebraic consistency.

A path is sent to its exponent vector in Z^Q1 modulo the lattice spanned by
differences of face vectors.  The model is algebraically consistent when this
map is a bijection between path classes and nonnegative lattice classes with
the right endpoint data; here both directions are checked on every word up
to a bound.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .intlinalg import hermite_rows, pivot_columns, reduce_mod, smith_normal_form
from .jacobi import DEFAULT_BUDGET, BudgetExceeded, EquivalenceOracle, Word
from .matchings import PerfectMatching
from .model import DimerModel
from .topology import HomologyLabeling, Vec

DEFAULT_BOUND = 6


@dataclass(frozen=True)
class MClass:
    coords: tuple[int, ...]  # canonical representative modulo the relation lattice
    endpoint: tuple[int, ...]  # d(x) in Z^Q0

    def __lt__(self, other: "MClass") -> bool:
        return (self.coords, self.endpoint) < (other.coords, other.endpoint)


@dataclass
class LatticeM:
    model: DimerModel
    relations: list[list[int]]  # Hermite basis of the face-difference lattice
    pivots: list[int]
    free_rank: int
    torsion: list[int]

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        return reduce_mod(list(x), self.relations, self.pivots)

    def d(self, x: Sequence[int]) -> tuple[int, ...]:
        m = self.model
        out = [0] * len(m.vertices)
        for a, k in enumerate(x):
            if k:
                out[m.head[a]] += k
                out[m.tail[a]] -= k
        return tuple(out)


def face_vector(model: DimerModel, face: int) -> list[int]:
    x = [0] * len(model.arrows)
    for a in model.cycles[face]:
        x[a] += 1
    return x


def build_lattice(model: DimerModel) -> LatticeM:
    n = len(model.arrows)
    c0 = face_vector(model, 0)
    gens = []
    for f in range(1, len(model.faces)):
        c = face_vector(model, f)
        gens.append([x - y for x, y in zip(c, c0)])
    hnf = hermite_rows(gens, n)
    if gens:
        snf = smith_normal_form(gens, n)
        rank, invs = snf.rank, snf.invariants
    else:
        rank, invs = 0, []
    if rank != len(hnf):
        raise AssertionError("Hermite and Smith ranks disagree")
    return LatticeM(model, hnf, pivot_columns(hnf), n - rank, [d for d in invs if d > 1])


def exponent(model: DimerModel, path: Sequence[int]) -> list[int]:
    x = [0] * len(model.arrows)
    for a in path:
        x[a] += 1
    return x


def class_of_exponent(lattice: LatticeM, x: Sequence[int]) -> MClass:
    if any(v < 0 for v in x):
        raise ValueError("exponent vectors are nonnegative")
    return MClass(lattice.reduce(x), lattice.d(x))


def class_of_path(lattice: LatticeM, path: Sequence[int]) -> MClass:
    return class_of_exponent(lattice, exponent(lattice.model, path))


def _endpoint_vector(model: DimerModel, i: int, j: int) -> tuple[int, ...]:
    out = [0] * len(model.vertices)
    out[i] += 1
    out[j] -= 1
    return tuple(out)


def enumerate_exponents(model: DimerModel, max_weight: int, weights: Optional[Sequence[int]] = None,
                        budget: int = DEFAULT_BUDGET) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Every x in N^Q1 of weight <= max_weight, bucketed by d(x)."""
    n = len(model.arrows)
    w = list(weights) if weights is not None else [1] * n
    out: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    count = 0
    x = [0] * n
    dv = [0] * len(model.vertices)

    def rec(a: int, left: int) -> None:
        nonlocal count
        if a == n:
            count += 1
            if count > budget:
                raise BudgetExceeded(f"more than {budget} exponent vectors")
            out.setdefault(tuple(dv), []).append(tuple(x))
            return
        k = 0
        while k * w[a] <= left:
            x[a] = k
            rec(a + 1, left - k * w[a])
            dv[model.head[a]] += 1
            dv[model.tail[a]] -= 1
            k += 1
        dv[model.head[a]] -= k
        dv[model.tail[a]] += k
        x[a] = 0

    rec(0, max_weight)
    return out


def enumerate_mplus(lattice: LatticeM, i: int, j: int, L: int,
                    weights: Optional[Sequence[int]] = None) -> list[MClass]:
    """Classes with a nonnegative representative x, d(x) = i - j, weight <= L."""
    buckets = enumerate_exponents(lattice.model, L, weights)
    xs = buckets.get(_endpoint_vector(lattice.model, i, j), [])
    return sorted({class_of_exponent(lattice, x) for x in xs})


@dataclass
class AlgebraicVerdict:
    bound: int
    surjective: bool
    injective: bool
    missing: list[tuple[int, int, tuple[int, ...]]] = field(default_factory=list)  # (head, tail, x)
    collisions: list[tuple[Word, Word]] = field(default_factory=list)
    table: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)  # (i, j) -> (#M+, #paths)
    exact: bool = True
    caveat: str = ""

    @property
    def consistent(self) -> bool:
        return self.surjective and self.injective


def check_algebraic_consistency_bounded(model: DimerModel, L: int = DEFAULT_BOUND,
                                        budget: int = DEFAULT_BUDGET,
                                        oracle: Optional[EquivalenceOracle] = None) -> AlgebraicVerdict:
    """Compare path classes with lattice classes on every word in the bounded universe.

    Injective: words with equal endpoints and equal lattice class are
    equivalent.  Surjective: every lattice class of weight within the bound
    with d(x) = h - t is realised by a path from t to h.
    """
    from .model import euler_characteristic

    lattice = build_lattice(model)
    if oracle is None or oracle.bound != L:
        oracle = EquivalenceOracle(model, L, budget)
    weights = oracle.weights
    nv = len(model.vertices)
    path_classes: dict[tuple[int, int], dict[MClass, Word]] = {}
    collisions = []
    for w in oracle.words:
        key = (model.head[w[-1]], model.tail[w[0]])
        c = class_of_path(lattice, w)
        seen = path_classes.setdefault(key, {})
        other = seen.get(c)
        if other is None:
            seen[c] = w
        elif not oracle.same(other, w):
            collisions.append((other, w))
    buckets = enumerate_exponents(model, oracle.max_weight, weights, budget)
    missing = []
    table = {}
    for i in range(nv):
        for j in range(nv):
            xs = buckets.get(_endpoint_vector(model, i, j), [])
            classes: dict[MClass, tuple[int, ...]] = {}
            for x in xs:
                if i == j and not any(x):
                    continue  # the trivial path
                classes.setdefault(class_of_exponent(lattice, x), x)
            realised = path_classes.get((i, j), {})
            for c, x in sorted(classes.items()):
                if c not in realised:
                    missing.append((i, j, x))
            table[(i, j)] = (len(classes), len(realised))
    chi = euler_characteristic(model)
    caveat = "" if chi == 0 else "algebraic consistency is a torus notion; reported for reference"
    collisions.sort(key=lambda pq: (len(pq[1]), pq[1], pq[0]))
    return AlgebraicVerdict(L, not missing, not collisions, missing, collisions, table, oracle.exact, caveat)


# ----------------------------------------------------------------------
# paths avoiding a matching in the cover

def avoiding_reach(model: DimerModel, labeling: HomologyLabeling, P: PerfectMatching, start: int,
                   max_len: int) -> set[tuple[int, Vec]]:
    """Lifts reachable from ``(start, 0)`` by paths of length <= max_len outside P."""
    seen = {(start, (0, 0)): 0}
    todo = deque([(start, (0, 0))])
    while todo:
        v, T = todo.popleft()
        dist = seen[(v, T)]
        if dist == max_len:
            continue
        for a in model.out_arrows[v]:
            if a in P:
                continue
            om = labeling.omega[a]
            nxt = (model.head[a], (T[0] + om[0], T[1] + om[1]))
            if nxt not in seen:
                seen[nxt] = dist + 1
                todo.append(nxt)
    return set(seen)


def unjoined_pairs(model: DimerModel, labeling: HomologyLabeling, matchings: list[PerfectMatching],
                    max_len: int, radius: int = 1) -> list[tuple[int, int, Vec]]:
    """Vertex-lift pairs in a (2r+1)^2 patch joined by no short path avoiding any matching."""
    nv = len(model.vertices)
    reach = {(v, k): avoiding_reach(model, labeling, P, v, max_len)
             for v in range(nv) for k, P in enumerate(matchings)}
    fails = []
    for v in range(nv):
        for w in range(nv):
            for x in range(-radius, radius + 1):
                for y in range(-radius, radius + 1):
                    if not any((w, (x, y)) in reach[(v, k)] for k in range(len(matchings))):
                        fails.append((v, w, (x, y)))
    return fails
