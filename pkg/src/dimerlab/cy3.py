"""The four-term complex of a Jacobi algebra, tensored with a vertex simple.

For a vertex ``v`` the complex ``C ⊗ S_v`` has terms (paths written in
traversal order, ``q`` always the part traversed last):

* degree 0: paths ``q`` starting at v;
* degree 1: pairs ``(q, b)`` with ``t(b) = v`` and q starting at ``h(b)``;
* degree 2: pairs ``(q, r_a)`` with ``h(a) = v`` and q starting at ``t(a)``;
* degree 3: paths ``q`` starting at v (one generator ``v*ell``).

Each basis element has a composite path (``b`` then ``q``, ``p+_a`` then
``q``, a face cycle at v then ``q``) and the differentials preserve its class,
so the complex splits into finite pieces, one per class.  A class of weight
``w`` only involves paths of weight at most ``w``, so each piece is computed
exactly by the rewriting oracle once its universe covers ``w``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .intlinalg import rank_q
from .jacobi import DEFAULT_BUDGET, EquivalenceOracle, Word, face_cycle_at
from .model import DimerModel

DEFAULT_WINDOW = 8
DEFAULT_SAFE = 5


@dataclass
class Component:
    """One class-homogeneous piece of the truncated complex."""

    key: Word  # canonical composite word; () for the trivial path at v
    weight: int
    terms: list[list]  # basis of degree 0..3 terms
    D1: list[list[int]]  # rows index degree 0, columns degree 1
    D2: list[list[int]]
    D3: list[list[int]]

    def ranks(self) -> tuple[int, int, int]:
        return rank_q(self.D1), rank_q(self.D2), rank_q(self.D3)

    def homology(self) -> tuple[int, int, int, int]:
        r1, r2, r3 = self.ranks()
        n0, n1, n2, n3 = (len(t) for t in self.terms)
        return (n0 - r1, n1 - r1 - r2, n2 - r2 - r3, n3 - r3)


@dataclass
class TruncatedComplex:
    model: DimerModel
    vertex: int
    bound: int  # length bound W of the oracle
    unit: int  # weight of one length step
    window: int  # bound * unit, the largest composite weight kept
    components: list[Component] = field(default_factory=list)
    exact_classes: bool = True
    caveat: str = ""

    def dimensions(self) -> tuple[int, int, int, int]:
        return tuple(sum(len(c.terms[k]) for c in self.components) for k in range(4))


def _weight(oracle: EquivalenceOracle, w: Word) -> int:
    return sum(oracle.weights[a] for a in w)


def _matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    if not A or not B or not B[0]:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def build_complex_component(model: DimerModel, v: int, W: int = DEFAULT_WINDOW,
                            budget: int = DEFAULT_BUDGET,
                            oracle: Optional[EquivalenceOracle] = None,
                            upto: Optional[int] = None) -> TruncatedComplex:
    """All class components at vertex ``v`` of weight within the window.

    ``W`` is a length bound; with unequal faces it is scaled by the smallest
    homogeneous weight, matching the oracle's universe.  ``upto`` (in length
    steps) keeps only the lighter components.
    """
    if W < model.max_face + 2:
        raise ValueError(f"window {W} is smaller than the largest face plus 2")
    if oracle is None or oracle.bound != W:
        oracle = EquivalenceOracle(model, W, budget)
    wt = oracle.weights
    unit = min(wt, default=1)
    top = oracle.max_weight if upto is None else min(oracle.max_weight, upto * unit)

    # path classes by starting vertex, with the trivial path first
    weight: dict[Word, int] = {(): 0}
    starts: dict[int, list[Word]] = {i: [()] for i in range(len(model.vertices))}
    for rep in sorted(oracle.classes(), key=lambda w: (len(w), w)):
        x = sum(wt[a] for a in rep)
        if x <= top:
            weight[rep] = x
            starts[model.tail[rep[0]]].append(rep)

    def cls(word: Word) -> Word:
        return oracle.canonical(word) if word else ()

    comps: dict[Word, list[list]] = {}

    def add(deg: int, composite: Word, item) -> None:
        comps.setdefault(composite, [[], [], [], []])[deg].append(item)

    for q in starts[v]:
        add(0, q, q)
    for b in model.out_arrows[v]:
        for q in starts[model.head[b]]:
            if wt[b] + weight[q] <= top:
                add(1, cls((b,) + q), (q, b))
    for a in model.in_arrows[v]:
        pp = model.complement(a, 1)
        wp = _weight(oracle, pp)
        for q in starts[model.tail[a]]:
            if wp + weight[q] <= top:
                add(2, cls(pp + q), (q, a))
    ell = face_cycle_at(model, next(f for f, c in enumerate(model.cycles)
                                    if any(model.tail[x] == v for x in c)), v)
    wl = _weight(oracle, ell)
    for q in starts[v]:
        if wl + weight[q] <= top:
            add(3, cls(ell + q), q)

    components = []
    for key in sorted(comps, key=lambda w: (weight[w], len(w), w)):
        terms = comps[key]
        idx = [{x: i for i, x in enumerate(t)} for t in terms]
        D1 = [[0] * len(terms[1]) for _ in terms[0]]
        for j, (q, b) in enumerate(terms[1]):
            D1[idx[0][key]][j] += 1
        D2 = [[0] * len(terms[2]) for _ in terms[1]]
        for j, (q, a) in enumerate(terms[2]):
            for sign in (1, -1):
                side = model.complement(a, sign)
                target = (cls(side[1:] + q), side[0])
                D2[idx[1][target]][j] += sign
        D3 = [[0] * len(terms[3]) for _ in terms[2]]
        for j, q in enumerate(terms[3]):
            for a in model.in_arrows[v]:
                target = (cls((a,) + q), a)
                D3[idx[2][target]][j] += 1
        comp = Component(key, weight[key], terms, D1, D2, D3)
        if any(any(r) for r in _matmul(D1, D2)) or any(any(r) for r in _matmul(D2, D3)):
            raise AssertionError(f"differentials do not compose to zero in component {key}")
        components.append(comp)
    caveat = "" if oracle.exact else "classes from a length-truncated oracle; pieces may be incomplete"
    return TruncatedComplex(model, v, W, unit, top, components, oracle.exact, caveat)


@dataclass
class ExactnessReport:
    safe_window: int
    ranks: dict[int, tuple[int, int, int, int]]  # weight -> (H0, H1, H2, H3) summed over pieces
    first_failure: Optional[tuple[int, int, Word]] = None  # (weight, position, component key)

    @property
    def exact(self) -> bool:
        return all(h1 == h2 == h3 == 0 for _, h1, h2, h3 in self.ranks.values())


def check_exactness(cx: TruncatedComplex, safe_window: int = DEFAULT_SAFE) -> ExactnessReport:
    """Homology ranks of the pieces within ``safe_window`` length steps.

    With an exact (graded) oracle every piece up to the window is complete;
    otherwise the top ``max_face`` degrees may be truncated and are refused.
    """
    limit_steps = cx.bound if cx.exact_classes else cx.bound - cx.model.max_face
    if safe_window > limit_steps:
        raise ValueError(f"safe window {safe_window} exceeds the trustworthy range {limit_steps}")
    limit = safe_window * cx.unit
    ranks: dict[int, list[int]] = {}
    first = None
    for comp in cx.components:
        if comp.weight > limit:
            continue
        h = comp.homology()
        acc = ranks.setdefault(comp.weight, [0, 0, 0, 0])
        for k in range(4):
            acc[k] += h[k]
        if first is None:
            for pos in (1, 2, 3):
                if h[pos]:
                    first = (comp.weight, pos, comp.key)
                    break
    return ExactnessReport(safe_window, {w: tuple(r) for w, r in sorted(ranks.items())}, first)


def check_model(model: DimerModel, W: int = DEFAULT_WINDOW, safe_window: int = DEFAULT_SAFE,
                budget: int = DEFAULT_BUDGET, oracle: Optional[EquivalenceOracle] = None) -> dict[int, ExactnessReport]:
    """Exactness report for every vertex simple."""
    if oracle is None or oracle.bound != W:
        oracle = EquivalenceOracle(model, W, budget)
    return {v: check_exactness(build_complex_component(model, v, W, budget, oracle, safe_window), safe_window)
            for v in range(len(model.vertices))}
