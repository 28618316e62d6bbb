"""Perfect matchings: enumeration, angle-selected matchings and their behaviour on zigzags."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .model import DimerModel
from .rcharge import TWO_PI, IsoradialEmbedding, epsilon_of_zigzag
from .topology import HomologyLabeling, Vec, cohomology_class
from .zigzag import ZigzagPath

ANGLE_SNAP = 1e-9


@dataclass(frozen=True)
class PerfectMatching:
    arrows: frozenset[int]

    def __contains__(self, arrow: int) -> bool:
        return arrow in self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def ids(self, model: DimerModel) -> list[str]:
        return sorted(model.arrows[a].id for a in self.arrows)

    def sort_key(self, model: DimerModel) -> tuple:
        return tuple(self.ids(model))


def is_perfect_matching(model: DimerModel, arrows: Iterable[int]) -> bool:
    s = set(arrows)
    return all(sum(1 for a in cyc if a in s) == 1 for cyc in model.cycles)


def enumerate_matchings(model: DimerModel) -> list[PerfectMatching]:
    """All perfect matchings, by exact cover of faces with arrows."""
    faces_of: list[list[int]] = [[] for _ in model.arrows]
    for f, cyc in enumerate(model.cycles):
        for a in cyc:
            faces_of[a].append(f)
    nf = len(model.faces)
    covered = [False] * nf
    chosen: list[int] = []
    out = []

    def free(a: int) -> bool:
        return not any(covered[f] for f in faces_of[a])

    def search() -> None:
        # branch on the uncovered face with fewest usable arrows
        best, best_opts = None, None
        for f in range(nf):
            if covered[f]:
                continue
            opts = [a for a in dict.fromkeys(model.cycles[f]) if free(a)]
            if best is None or len(opts) < len(best_opts):
                best, best_opts = f, opts
                if not opts:
                    return
        if best is None:
            out.append(PerfectMatching(frozenset(chosen)))
            return
        for a in best_opts:
            for f in faces_of[a]:
                covered[f] = True
            chosen.append(a)
            search()
            chosen.pop()
            for f in faces_of[a]:
                covered[f] = False

    search()
    out = [p for p in out if is_perfect_matching(model, p.arrows)]
    out.sort(key=lambda p: p.sort_key(model))
    return out


def deg_P(path: Sequence[int], matching) -> int:
    members = matching.arrows if isinstance(matching, PerfectMatching) else matching
    return sum(1 for a in path if a in members)


# ----------------------------------------------------------------------
# matchings from an embedding

def _in_arc(d: float, width: float, closed_start: bool) -> bool:
    """Is ``d`` in [0, width) (closed_start) or (0, width]?  Snaps near-ties."""
    d = d % TWO_PI
    if d > TWO_PI - ANGLE_SNAP:
        d = 0.0
    if abs(d) <= ANGLE_SNAP:
        return closed_start
    if abs(d - width) <= ANGLE_SNAP:
        return not closed_start
    return 0 < d < width


def matching_from_angle(model: DimerModel, emb: IsoradialEmbedding, theta: float, sign: int) -> PerfectMatching:
    """Arrows whose chord is hit by the ray in direction ``theta`` from its positive face center.

    ``sign=+1`` counts the tail endpoint and not the head; ``sign=-1`` the reverse.
    """
    chosen = set()
    for f, cyc in enumerate(model.cycles):
        if model.signs[f] < 0:
            continue
        angles = emb.corner_angles(f)
        for k, a in enumerate(cyc):
            # positive faces run clockwise: the arc of a goes from its tail angle downwards
            if _in_arc(angles[k] - theta, math.pi * emb.R[a], sign > 0):
                chosen.add(a)
    # the same set seen from negative faces in direction theta + pi
    dual = set()
    back = theta + math.pi
    for f, cyc in enumerate(model.cycles):
        if model.signs[f] > 0:
            continue
        angles = emb.corner_angles(f)
        for k, a in enumerate(cyc):
            # negative faces run counterclockwise; the tail is now the far end
            if _in_arc(back - angles[k], math.pi * emb.R[a], sign < 0):
                dual.add(a)
    if chosen != dual or not is_perfect_matching(model, chosen):
        raise AssertionError(f"angle {theta} does not select a perfect matching")
    return PerfectMatching(frozenset(chosen))


def check_zigzag_matching(model: DimerModel, emb: IsoradialEmbedding, z: ZigzagPath) -> bool:
    """Matching P at the zigzag's angle meets Z exactly in its odd positions.

    Also requires Z[0] and its companion from the opposite zigzag to be
    outside P.  Checked for every representative with the same parity.
    """
    theta = epsilon_of_zigzag(emb, z)
    P = matching_from_angle(model, emb, theta, z.parity)
    n = len(z.period)
    odd = {z.period[i] for i in range(1, n, 2)}
    hit = {a for a in z.period if a in P}
    if hit != odd:
        return False
    for i in range(0, n, 2):
        a = z.period[i]
        if a in P or model.sigma[-z.parity][a] in P:
            return False
    return True


def angle_sweep(model: DimerModel, emb: IsoradialEmbedding, samples: int = 360,
                sign: int = 1) -> list[PerfectMatching]:
    return [matching_from_angle(model, emb, TWO_PI * k / samples, sign) for k in range(samples)]


def is_local_exchange(model: DimerModel, P: PerfectMatching, Q: PerfectMatching) -> bool:
    """On each positive face the selected arrow stays or moves to a cyclic neighbour."""
    for f, cyc in enumerate(model.cycles):
        if model.signs[f] < 0:
            continue
        n = len(cyc)
        i = next(k for k, a in enumerate(cyc) if a in P)
        j = next(k for k, a in enumerate(cyc) if a in Q)
        if (j - i) % n not in (0, 1, n - 1):
            return False
    return True


# ----------------------------------------------------------------------
# height changes (toric diagram data)

def matching_class(labeling: HomologyLabeling, P: PerfectMatching, base: PerfectMatching) -> Vec:
    """Cohomology class of ``deg_P - deg_base``: the point of P in the toric diagram."""
    m = labeling.model
    vals = [int(a in P) - int(a in base) for a in range(len(m.arrows))]
    return cohomology_class(vals, labeling)


def translation_tally(labeling: HomologyLabeling, matchings: Optional[list[PerfectMatching]] = None) -> dict[Vec, int]:
    """Multiplicity of each class among all matchings, relative to the first one."""
    if matchings is None:
        matchings = enumerate_matchings(labeling.model)
    if not matchings:
        return {}
    base = matchings[0]
    c = Counter(matching_class(labeling, P, base) for P in matchings)
    return dict(sorted(c.items()))


# ----------------------------------------------------------------------
# cyclic paths with opposite translations

def cyclic_paths(model: DimerModel, max_len: int) -> Iterable[tuple[int, ...]]:
    """Closed paths of length 1..max_len, each listed once per starting vertex."""
    for v in range(len(model.vertices)):
        stack = [(a,) for a in reversed(model.out_arrows[v])]
        while stack:
            w = stack.pop()
            h = model.head[w[-1]]
            if h == v:
                yield w
            if len(w) < max_len:
                for a in reversed(model.out_arrows[h]):
                    stack.append(w + (a,))


def opposite_class_violations(model: DimerModel, labeling: HomologyLabeling, P: PerfectMatching,
                              max_len: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs of degree-0 cyclic paths with opposite nonzero translations."""
    zero: dict[Vec, tuple[int, ...]] = {}
    for w in cyclic_paths(model, max_len):
        if deg_P(w, P) != 0:
            continue
        x = y = 0
        for a in w:
            x += labeling.omega[a][0]
            y += labeling.omega[a][1]
        if (x, y) != (0, 0):
            zero.setdefault((x, y), w)
    out = []
    for t, w in sorted(zero.items()):
        opp = (-t[0], -t[1])
        if opp in zero and t < opp:
            out.append((w, zero[opp]))
    return out
