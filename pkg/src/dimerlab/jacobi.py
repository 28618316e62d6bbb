"""The Jacobi algebra as a bounded rewriting system.

Words are tuples of arrow indices in traversal order: ``(a, b)`` means "a,
then b".  The relation of arrow ``a`` swaps its two complements, the paths
``p+`` and ``p-`` with ``p+ a`` and ``p- a`` the positive and negative faces
through ``a``.  Equivalence is the union-find closure of these swaps over a
bounded universe of words; rewrites that would leave the universe are
dropped, so the closure can miss identifications but never invents one.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .lp import maximize_exact
from .model import DimerModel
from .topology import HomologyLabeling, path_class

Word = tuple[int, ...]
DEFAULT_BOUND = 8
DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PathWord:
    arrows: Word
    head: int
    tail: int

    def __len__(self) -> int:
        return len(self.arrows)

    @classmethod
    def of(cls, model: DimerModel, arrows: Sequence[int], vertex: Optional[int] = None) -> "PathWord":
        arrows = tuple(arrows)
        if not model.is_path(arrows):
            raise ValueError("arrow sequence is not composable")
        if not arrows:
            if vertex is None:
                raise ValueError("trivial path needs a vertex")
            return cls((), vertex, vertex)
        return cls(arrows, model.head[arrows[-1]], model.tail[arrows[0]])


def relation_table(model: DimerModel) -> dict[Word, list[Word]]:
    """Each complement side mapped to the sides it may be swapped with."""
    table: dict[Word, list[Word]] = {}
    for a in range(len(model.arrows)):
        p, q = model.complement(a, 1), model.complement(a, -1)
        table.setdefault(p, []).append(q)
        table.setdefault(q, []).append(p)
    for k in table:
        table[k] = sorted(set(table[k]))
    return table


def _neighbors(word: Word, table: dict[Word, list[Word]], lengths: Sequence[int]) -> list[Word]:
    out = []
    n = len(word)
    for i in range(n):
        for l in lengths:
            if i + l > n:
                break
            alts = table.get(word[i:i + l])
            if alts:
                for alt in alts:
                    out.append(word[:i] + alt + word[i + l:])
    return out


def rewrite_neighbors(model: DimerModel, path: Sequence[int]) -> list[Word]:
    """All words reachable from ``path`` by one relation swap."""
    table = relation_table(model)
    lengths = sorted({len(k) for k in table})
    return sorted(set(_neighbors(tuple(path), table, lengths)))


def homogeneous_weights(model: DimerModel) -> Optional[tuple[int, ...]]:
    """Positive integer arrow weights giving every face the same total, if any.

    Swaps preserve such a weight, so truncating by weight instead of length
    keeps every class of the truncated universe complete.  Chosen to
    maximise the smallest weight relative to the face total.
    """
    n = len(model.arrows)
    ncols = 2 * n + 1  # w_a, s_a (w_a - t), t
    A, b = [], []
    for cyc in model.cycles:
        row = [0] * ncols
        for a in cyc:
            row[a] += 1
        A.append(row)
        b.append(1)
    for a in range(n):
        row = [0] * ncols
        row[a], row[n + a], row[2 * n] = 1, -1, -1
        A.append(row)
        b.append(0)
    c = [0] * ncols
    c[2 * n] = 1
    res = maximize_exact(c, A, b)
    if res.status != "optimal" or res.x[2 * n] <= 0:
        return None
    w = [Fraction(x) for x in res.x[:n]]
    den = lcm(*(x.denominator for x in w))
    ints = [int(x * den) for x in w]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def word_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


class EquivalenceOracle:
    """Union-find closure of relation swaps over a finite universe of words.

    With ``graded`` (the default) the universe is every word of weight at
    most ``bound * min(weight)`` for homogeneous weights; swaps stay inside
    it, so classes are exact.  Without weights, or with ``graded=False``,
    it is every word of length <= ``bound`` and classes may be too fine
    when faces differ in size.  Trivial paths are not stored; each is its
    own class.
    """

    def __init__(self, model: DimerModel, bound: int = DEFAULT_BOUND, budget: int = DEFAULT_BUDGET,
                 graded: bool = True):
        self.model = model
        self.bound = bound
        self.budget = budget
        self.table = relation_table(model)
        self.lengths = sorted({len(k) for k in self.table})
        self.weights = homogeneous_weights(model) if graded and not model.uniform_faces else None
        if model.uniform_faces:
            self.weights = tuple(1 for _ in model.arrows)
        self.exact = self.weights is not None
        if self.weights is None:
            self.weights = tuple(1 for _ in model.arrows)
        self.max_weight = bound * min(self.weights, default=1)
        self._id: dict[Word, int] = {}
        self.words: list[Word] = []
        self._parent: list[int] = []
        self._build()

    # -- union-find ----------------------------------------------------
    def _find(self, i: int) -> int:
        p = self._parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def _union(self, i: int, j: int) -> None:
        ri, rj = self._find(i), self._find(j)
        if ri == rj:
            return
        # keep the least word as root so class keys are canonical
        if word_key(self.words[ri]) < word_key(self.words[rj]):
            self._parent[rj] = ri
        else:
            self._parent[ri] = rj

    def _build(self) -> None:
        m = self.model
        wt = self.weights
        top = self.max_weight
        level = [((a,), wt[a]) for a in range(len(m.arrows)) if wt[a] <= top]
        while level:
            if len(self.words) + len(level) > self.budget:
                raise BudgetExceeded(f"more than {self.budget} words in the universe")
            for w, _ in level:
                self._id[w] = len(self.words)
                self.words.append(w)
                self._parent.append(len(self._parent))
            level = [(w + (b,), x + wt[b]) for w, x in level
                     for b in m.out_arrows[m.head[w[-1]]] if x + wt[b] <= top]
        for i, w in enumerate(self.words):
            for nb in _neighbors(w, self.table, self.lengths):
                j = self._id.get(nb)
                if j is not None:
                    self._union(i, j)

    # -- queries -------------------------------------------------------
    def __contains__(self, word: Sequence[int]) -> bool:
        return tuple(word) in self._id

    def __len__(self) -> int:
        return len(self.words)

    def canonical(self, word: Sequence[int]) -> Word:
        """Least word (by length, then lexicographically) in the class."""
        w = tuple(word)
        if not w:
            return w
        i = self._id.get(w)
        if i is None:
            raise KeyError(f"word {w} lies outside the universe (bound {self.bound})")
        return self.words[self._find(i)]

    def same(self, p: Sequence[int], q: Sequence[int]) -> bool:
        p, q = tuple(p), tuple(q)
        if not p or not q:
            return p == q
        return self.canonical(p) == self.canonical(q)

    def classes(self) -> dict[Word, list[Word]]:
        out: dict[Word, list[Word]] = {}
        for i, w in enumerate(self.words):
            out.setdefault(self.words[self._find(i)], []).append(w)
        return out

    def trace(self, p: Sequence[int], q: Sequence[int]) -> Optional[list[Word]]:
        """A chain of single swaps from p to q inside the universe, if any."""
        p, q = tuple(p), tuple(q)
        prev: dict[Word, Optional[Word]] = {p: None}
        todo = deque([p])
        while todo:
            w = todo.popleft()
            if w == q:
                chain = [w]
                while prev[chain[-1]] is not None:
                    chain.append(prev[chain[-1]])
                return chain[::-1]
            for nb in _neighbors(w, self.table, self.lengths):
                if nb in self._id and nb not in prev:
                    prev[nb] = w
                    todo.append(nb)
        return None


def equivalence_classes(model: DimerModel, L: int = DEFAULT_BOUND,
                        budget: int = DEFAULT_BUDGET) -> dict[Word, list[Word]]:
    return EquivalenceOracle(model, L, budget).classes()


def face_cycle_at(model: DimerModel, face: int, vertex: int) -> Word:
    """The face cycle rotated to start (and end) at ``vertex``."""
    cyc = model.cycles[face]
    k = next(i for i, a in enumerate(cyc) if model.tail[a] == vertex)
    return cyc[k:] + cyc[:k]


# ----------------------------------------------------------------------
# cancellation

@dataclass
class CancellationWitness:
    arrow: int
    p: Word
    q: Word
    side: str  # "right": pa ~ qa (a traversed first); "left": ap ~ aq
    bound: int
    certified: bool  # True when p and q are provably inequivalent
    trace: list[Word] = field(default_factory=list)

    def words(self) -> tuple[Word, Word]:
        if self.side == "right":
            return (self.arrow,) + self.p, (self.arrow,) + self.q
        return self.p + (self.arrow,), self.q + (self.arrow,)

    def render(self, model: DimerModel) -> str:
        pa, qa = self.words()
        ids = lambda w: " ".join(model.ids(w)) or "(trivial)"
        lines = [f"{self.side} cancellation fails at arrow {model.arrows[self.arrow].id} (bound {self.bound})",
                 f"  p = {ids(self.p)}", f"  q = {ids(self.q)}",
                 f"  {ids(pa)}  ~  {ids(qa)}  but  p !~ q" + ("" if self.certified else " (within bound)")]
        if self.trace:
            lines.append("  trace: " + "  ->  ".join(ids(w) for w in self.trace))
        return "\n".join(lines)


def _find_witnesses(oracle: EquivalenceOracle) -> list[CancellationWitness]:
    m = oracle.model
    out = []
    for rep, members in sorted(oracle.classes().items(), key=lambda kv: word_key(kv[0])):
        for side in ("right", "left"):
            by_arrow: dict[int, dict[Word, Word]] = {}
            for w in sorted(members, key=word_key):
                a, rest = (w[0], w[1:]) if side == "right" else (w[-1], w[:-1])
                cls = oracle.canonical(rest) if rest else ("v", m.tail[w[0]] if side == "left" else m.head[w[0]])
                seen = by_arrow.setdefault(a, {})
                if cls not in seen:
                    seen[cls] = rest
            for a, reps in sorted(by_arrow.items()):
                if len(reps) > 1:
                    p, q = sorted(reps.values(), key=word_key)[:2]
                    out.append(CancellationWitness(a, p, q, side, oracle.bound, oracle.exact))
    return out


def cancellation_witness(model: DimerModel, L: int = DEFAULT_BOUND, budget: int = DEFAULT_BUDGET,
                         oracle: Optional[EquivalenceOracle] = None,
                         certified_only: bool = True) -> Optional[CancellationWitness]:
    """Smallest failure of left or right cancellation inside the bounded universe.

    A certified witness is a proof: ``pa ~ qa`` by an explicit swap chain
    and ``p !~ q`` because the universe holds every word equivalent to p.
    For an exact universe the reported bound is the length of ``pa``.
    """
    if oracle is None:
        oracle = EquivalenceOracle(model, L, budget)
    found = _find_witnesses(oracle)
    if not found:
        return None
    best = min(found, key=lambda w: (not w.certified, len(w.p) + 1, w.side != "right", w.arrow,
                                     word_key(w.p), word_key(w.q)))
    if certified_only and not best.certified:
        return None
    if oracle.exact:
        best.bound = len(best.p) + 1
    pa, qa = best.words()
    best.trace = oracle.trace(pa, qa) or []
    return best


def paths_equal_fast(model: DimerModel, labeling: HomologyLabeling, matching, p: Sequence[int],
                     q: Sequence[int], consistent: bool = False, start: Optional[int] = None) -> bool:
    """Equality in the algebra via (endpoints, translation, degree); needs cancellation."""
    if not consistent:
        raise ValueError("path classes decide equality only for models satisfying condition Z")
    return path_class(p, labeling, matching, start) == path_class(q, labeling, matching, start)


def all_words(model: DimerModel, max_len: int) -> Iterable[Word]:
    level: list[Word] = [(a,) for a in range(len(model.arrows))]
    for length in range(1, max_len + 1):
        yield from level
        if length < max_len:
            level = [w + (b,) for w in level for b in model.out_arrows[model.head[w[-1]]]]
