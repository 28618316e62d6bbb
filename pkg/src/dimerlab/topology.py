"""Integer homology labels for torus dimer models.

``omega`` assigns each arrow the deck translation picked up when the arrow is
lifted to the universal cover.  A lift of a vertex is a pair ``(v, T)`` with
``T`` in Z^2, and arrow ``a`` runs from ``(tail(a), T)`` to
``(head(a), T + omega(a))``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .intlinalg import integer_kernel, smith_normal_form, solve_q
from .model import DimerModel, euler_characteristic

Vec = tuple[int, int]


class UnsupportedSurface(ValueError):
    pass


@dataclass(frozen=True)
class HomologyLabeling:
    model: DimerModel
    omega: tuple[Vec, ...]  # indexed by arrow
    tree: tuple[int, ...]  # gauge arrows, omega == 0 there

    def __getitem__(self, arrow: int) -> Vec:
        return self.omega[arrow]

    def as_dict(self) -> dict[str, Vec]:
        return {a.id: self.omega[i] for i, a in enumerate(self.model.arrows)}

    def transformed(self, g: Sequence[Sequence[int]]) -> "HomologyLabeling":
        """Apply a 2x2 integer matrix (change of basis) to every label."""
        (p, q), (r, s) = g
        om = tuple((p * x + q * y, r * x + s * y) for x, y in self.omega)
        return HomologyLabeling(self.model, om, self.tree)


def bfs_tree(model: DimerModel) -> list[int]:
    """Arrows of an undirected BFS spanning tree rooted at the first vertex."""
    n = len(model.vertices)
    seen = {0}
    todo = deque([0])
    tree = []
    while todo:
        v = todo.popleft()
        incident = sorted(set(model.out_arrows[v]) | set(model.in_arrows[v]))
        for a in incident:
            w = model.head[a] if model.tail[a] == v else model.tail[a]
            if w not in seen:
                seen.add(w)
                tree.append(a)
                todo.append(w)
    if len(seen) != n:
        raise ValueError("quiver is not connected")
    return tree


def homology_labeling(model: DimerModel) -> HomologyLabeling:
    chi = euler_characteristic(model)
    if chi != 0:
        raise UnsupportedSurface(f"homology labels need a torus (chi = {chi})")
    tree = bfs_tree(model)
    tset = set(tree)
    free = [a for a in range(len(model.arrows)) if a not in tset]
    col = {a: j for j, a in enumerate(free)}
    F = []
    for cyc in model.cycles:
        row = [0] * len(free)
        for a in cyc:
            if a in col:
                row[col[a]] += 1
        F.append(row)
    K = integer_kernel(F, len(free))
    if len(K) != 2:
        raise AssertionError(f"face-closure kernel has rank {len(K)}, expected 2")
    omega = [(0, 0)] * len(model.arrows)
    for a, j in col.items():
        omega[a] = (K[0][j], K[1][j])
    return HomologyLabeling(model, tuple(omega), tuple(tree))


def translation_of_path(path: Iterable[int], labeling: HomologyLabeling) -> Vec:
    path = list(path)
    if not labeling.model.is_path(path):
        raise ValueError("arrow sequence is not composable")
    x = y = 0
    for a in path:
        dx, dy = labeling.omega[a]
        x += dx
        y += dy
    return (x, y)


def cohomology_class(values: Sequence[int], labeling: HomologyLabeling) -> Vec:
    """Coordinates of an integer 1-cocycle in the omega basis.

    ``values`` must sum to zero around every face; the result ``(s, t)``
    satisfies ``values == s*omega_x + t*omega_y + coboundary``.
    """
    m = labeling.model
    tree = set(labeling.tree)
    # vertex potential along the tree: phi(head) - phi(tail) = values on tree arrows
    phi = {0: 0}
    adj: dict[int, list[int]] = {}
    for a in tree:
        adj.setdefault(m.tail[a], []).append(a)
        adj.setdefault(m.head[a], []).append(a)
    todo = [0]
    while todo:
        v = todo.pop()
        for a in adj.get(v, ()):
            t, h = m.tail[a], m.head[a]
            if t == v and h not in phi:
                phi[h] = phi[v] + values[a]
                todo.append(h)
            elif h == v and t not in phi:
                phi[t] = phi[v] - values[a]
                todo.append(t)
    rows, rhs = [], []
    for a in range(len(m.arrows)):
        if a in tree:
            continue
        rows.append(list(labeling.omega[a]))
        rhs.append(values[a] - (phi[m.head[a]] - phi[m.tail[a]]))
    sol = solve_q(rows, rhs)
    if sol is None or any(x.denominator != 1 for x in sol):
        raise ValueError("values do not form an integer cocycle")
    return (int(sol[0]), int(sol[1]))


def basis_certificate(labeling: HomologyLabeling) -> dict:
    """Smith-form evidence that omega induces an isomorphism H1 -> Z^2.

    Contracting the gauge tree leaves one loop per free arrow, so the cycle
    space is Z^free and H1 is its quotient by the face lattice.  The map is
    an isomorphism iff omega kills every face, is onto (invariants 1, 1) and
    the face lattice is saturated of corank 2 (so it is the whole kernel).
    """
    m = labeling.model
    tree = set(labeling.tree)
    free = [a for a in range(len(m.arrows)) if a not in tree]
    faces = [[sum(1 for b in cyc if b == a) for a in free] for cyc in m.cycles]
    snf_faces = smith_normal_form(faces, len(free))
    om = [[labeling.omega[a][k] for a in free] for k in (0, 1)]
    snf_omega = smith_normal_form(om, len(free))
    closes = all(sum(r[j] * f[j] for j in range(len(free))) == 0 for f in faces for r in om)
    return {
        "free_arrows": len(free),
        "face_rank": snf_faces.rank,
        "face_invariants": snf_faces.invariants,
        "omega_invariants": snf_omega.invariants,
        "faces_close": closes,
        "ok": (closes and snf_faces.rank == len(free) - 2
               and all(d == 1 for d in snf_faces.invariants)
               and snf_omega.invariants == [1, 1]),
    }


@dataclass(frozen=True)
class PathClass:
    head: int
    tail: int
    translation: Vec
    degree: int


def path_class(path: Sequence[int], labeling: HomologyLabeling, matching, start: int | None = None) -> PathClass:
    """(head, tail, translation, degree) of a path.

    ``matching`` is any collection of arrow indices meeting every face once.
    The trivial path needs ``start`` to name its vertex.
    """
    m = labeling.model
    path = list(path)
    if not path:
        if start is None:
            raise ValueError("trivial path needs a vertex")
        return PathClass(start, start, (0, 0), 0)
    tr = translation_of_path(path, labeling)
    members = matching.arrows if hasattr(matching, "arrows") else matching
    deg = sum(1 for a in path if a in members)
    return PathClass(m.head[path[-1]], m.tail[path[0]], tr, deg)
