"""Consistent R-charges and embeddings with isoradial cycles.

Two independent routes to an R-charge: a linear program over the face and
vertex constraints, and the construction from zigzag directions.  Given a
charge, every face becomes a polygon inscribed in the unit circle with arrow
``a`` standing on an arc of ``pi*R[a]`` radians; positive faces run
clockwise, negative faces counterclockwise.
"""
from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .lp import maximize_exact, maximize_float
from .model import DimerModel, euler_characteristic
from .topology import HomologyLabeling, Vec
from .zigzag import ZigzagPath, check_condition_Z, enumerate_zigzags, zigzags_through

TWO_PI = 2 * math.pi
EXACT_LIMIT = 200  # arrows; above this the LP runs in floating point
FEASIBILITY_EPS = 1e-9


class RChargeError(ValueError):
    pass


@dataclass(frozen=True)
class RCharge:
    model: DimerModel
    values: tuple  # indexed by arrow; Fraction or float
    slack: object = None  # min_a R_a achieved by the LP, when known

    def __getitem__(self, arrow: int):
        return self.values[arrow]

    def as_dict(self) -> dict[str, object]:
        return {a.id: self.values[i] for i, a in enumerate(self.model.arrows)}

    def floats(self) -> list[float]:
        return [float(v) for v in self.values]


def uniform_charge(model: DimerModel, value) -> RCharge:
    return RCharge(model, tuple(value for _ in model.arrows))


# ----------------------------------------------------------------------
# checks

@dataclass
class RChargeReport:
    face_residuals: list
    vertex_residuals: list
    nonpositive: list[str]
    too_large: list[str]
    tol: float

    @property
    def ok(self) -> bool:
        return (not self.nonpositive and not self.too_large
                and all(abs(r) <= self.tol for r in self.face_residuals)
                and all(abs(r) <= self.tol for r in self.vertex_residuals))

    @property
    def max_residual(self) -> float:
        rs = [abs(r) for r in self.face_residuals + self.vertex_residuals]
        return float(max(rs)) if rs else 0.0


def face_sums(model: DimerModel, R: Sequence) -> list:
    return [sum(R[a] for a in cyc) for cyc in model.cycles]


def vertex_sums(model: DimerModel, R: Sequence) -> list:
    out = []
    for v in range(len(model.vertices)):
        s = sum(1 - R[a] for a in model.in_arrows[v]) + sum(1 - R[a] for a in model.out_arrows[v])
        out.append(s)
    return out


def verify_rcharge(model: DimerModel, R, tol: float = 1e-9) -> RChargeReport:
    vals = R.values if isinstance(R, RCharge) else tuple(R)
    faces = [s - 2 for s in face_sums(model, vals)]
    verts = [s - 2 for s in vertex_sums(model, vals)]
    nonpos = [model.arrows[a].id for a, r in enumerate(vals) if r <= 0]
    big = [model.arrows[a].id for a, r in enumerate(vals) if r >= 2]
    return RChargeReport(faces, verts, nonpos, big, tol)


# ----------------------------------------------------------------------
# LP route

@dataclass
class LPOutcome:
    status: str  # feasible | infeasible | degenerate
    t_star: object = None
    charge: Optional[RCharge] = None
    exact: bool = True


def rcharge_lp(model: DimerModel, exact: Optional[bool] = None) -> LPOutcome:
    """Maximise t subject to R1, R2, t <= R_a <= 2 - t.

    Variables are ``s_a = R_a - t >= 0``, ``t = tp - tm`` and slacks for the
    upper bounds.
    """
    n = len(model.arrows)
    ncols = 2 * n + 2
    TP, TM = n, n + 1
    A, b = [], []
    for cyc in model.cycles:
        row = [0] * ncols
        for a in cyc:
            row[a] += 1
        row[TP], row[TM] = len(cyc), -len(cyc)
        A.append(row)
        b.append(2)
    for v in range(len(model.vertices)):
        row = [0] * ncols
        ends = list(model.in_arrows[v]) + list(model.out_arrows[v])
        for a in ends:
            row[a] += 1
        row[TP], row[TM] = len(ends), -len(ends)
        A.append(row)
        b.append(len(ends) - 2)
    for a in range(n):
        row = [0] * ncols
        row[a] = 1
        row[TP], row[TM] = 2, -2
        row[n + 2 + a] = 1
        A.append(row)
        b.append(2)
    c = [0] * ncols
    c[TP], c[TM] = 1, -1
    if exact is None:
        exact = n <= EXACT_LIMIT
    res = maximize_exact(c, A, b) if exact else maximize_float(c, A, b)
    if res.status == "infeasible":
        return LPOutcome("infeasible", exact=exact)
    if res.status != "optimal":
        raise RChargeError(f"unexpected LP status {res.status}")
    t = res.x[TP] - res.x[TM]
    R = tuple(res.x[a] + t for a in range(n))
    positive = t > 0 if exact else t > FEASIBILITY_EPS
    if not positive:
        return LPOutcome("degenerate", t, None, exact)
    return LPOutcome("feasible", t, RCharge(model, R, t), exact)


def rcharge_feasible(model: DimerModel) -> Optional[RCharge]:
    return rcharge_lp(model).charge


# ----------------------------------------------------------------------
# zigzag route

def _plane_map(zigzags: list[ZigzagPath], balanced: bool) -> np.ndarray:
    """Linear map from homology coordinates to the plane.

    ``balanced`` whitens the zigzag directions (second moment becomes the
    identity), which makes the resulting charge independent of the
    GL(2,Z) choice of homology basis up to orientation.
    """
    if not balanced:
        return np.eye(2)
    H = np.array([z.homology for z in zigzags], dtype=float)
    S = H.T @ H
    w, V = np.linalg.eigh(S)
    if w.min() <= 0:
        return np.eye(2)
    return V @ np.diag(w ** -0.5) @ V.T


def zigzag_directions(model: DimerModel, labeling: HomologyLabeling, balanced: bool = True,
                      flip: bool = False) -> dict[int, tuple[float, float]]:
    """Unit plane direction for every arrow's zig (key +a) and zag (key -a-1) path."""
    zs = enumerate_zigzags(model, labeling)
    W = _plane_map(zs, balanced)
    if flip:
        W = np.diag([1.0, -1.0]) @ W
    out = {}
    for a in range(len(model.arrows)):
        zp, zm = zigzags_through(model, labeling, a)
        for key, z in ((a, zp), (-a - 1, zm)):
            v = W @ np.array(z.homology, dtype=float)
            norm = float(np.hypot(*v))
            out[key] = (float(v[0]) / norm, float(v[1]) / norm)
    return out


def _charge_from_directions(model, dirs) -> list[float]:
    R = []
    for a in range(len(model.arrows)):
        ep, em = dirs[a], dirs[-a - 1]
        # clockwise angle from e- to e+
        ang = (math.atan2(em[1], em[0]) - math.atan2(ep[1], ep[0])) % TWO_PI
        if ang < 1e-12 or ang > TWO_PI - 1e-12:
            raise AssertionError(f"zig and zag directions coincide at arrow {model.arrows[a].id}")
        R.append(ang / math.pi)
    return R


def rcharge_from_zigzags(model: DimerModel, labeling: HomologyLabeling, balanced: bool = True,
                         tol: float = 1e-9) -> RCharge:
    verdict = check_condition_Z(model, labeling)
    if verdict.status != "consistent":
        first = verdict.witnesses[0] if verdict.witnesses else None
        raise RChargeError(f"condition Z fails ({verdict.status}); first witness: {first}")
    for flip in (False, True):
        R = _charge_from_directions(model, zigzag_directions(model, labeling, balanced, flip))
        if all(abs(s - 2) <= tol for s in face_sums(model, R)):
            return RCharge(model, tuple(R))
    raise RChargeError("zigzag angles do not close up around faces in either orientation")


# ----------------------------------------------------------------------
# embedding

@dataclass
class IsoradialEmbedding:
    model: DimerModel
    R: tuple[float, ...]
    face_lift: list[Vec]  # translation of the tail of cycle[0] for the placed lift
    face_center: list[complex]
    face_phase: list[float]  # angle of the tail of cycle[0] seen from the center
    corners: dict = field(default_factory=dict)  # (vertex, T) -> complex, as placed
    base: list[complex] = field(default_factory=list)  # fitted position of (v, 0)
    tau: tuple[complex, complex] = (0j, 0j)
    residual: float = 0.0

    def rotation(self, face: int) -> int:
        return -1 if self.model.signs[face] > 0 else 1

    def corner_angles(self, face: int) -> list[float]:
        """Angle of the tail of each cycle arrow, seen from the face center."""
        cyc = self.model.cycles[face]
        rot = self.rotation(face)
        out = []
        phi = self.face_phase[face]
        for a in cyc:
            out.append(phi % TWO_PI)
            phi += rot * math.pi * self.R[a]
        return out

    def shift(self, T: Vec) -> complex:
        return T[0] * self.tau[0] + T[1] * self.tau[1]

    def position(self, v: int, T: Vec = (0, 0)) -> complex:
        return self.base[v] + self.shift(T)

    def center(self, face: int, T: Vec) -> complex:
        """Center of the lift of ``face`` whose first tail sits at translation T."""
        d = (T[0] - self.face_lift[face][0], T[1] - self.face_lift[face][1])
        return self.face_center[face] + self.shift(d)


def isoradial_embedding(model: DimerModel, labeling: HomologyLabeling, R, tol: float = 1e-9,
                        closure_tol: float = 1e-6) -> IsoradialEmbedding:
    vals = tuple(float(x) for x in (R.values if isinstance(R, RCharge) else R))
    report = verify_rcharge(model, vals, tol)
    if not report.ok:
        raise RChargeError(f"charge fails R1/R2 (max residual {report.max_residual:.3g})")
    if euler_characteristic(model) != 0:
        raise RChargeError("embeddings need a torus")
    nf = len(model.faces)
    prefix_tr = []
    for cyc in model.cycles:
        acc, x, y = [], 0, 0
        for a in cyc:
            acc.append((x, y))
            x += labeling.omega[a][0]
            y += labeling.omega[a][1]
        prefix_tr.append(acc)

    face_lift: list = [None] * nf
    center: list = [None] * nf
    phase: list = [None] * nf
    corners: dict = {}

    def place(f: int, T: Vec, C: complex, phi0: float) -> None:
        face_lift[f], center[f], phase[f] = T, C, phi0
        rot = -1 if model.signs[f] > 0 else 1
        phi = phi0
        for k, a in enumerate(model.cycles[f]):
            u = prefix_tr[f][k]
            key = (model.tail[a], (T[0] + u[0], T[1] + u[1]))
            corners.setdefault(key, []).append(C + cmath.exp(1j * phi))
            phi += rot * math.pi * vals[a]

    place(0, (0, 0), 0j, 0.0)
    todo = deque([0])
    while todo:
        f = todo.popleft()
        T = face_lift[f]
        rot = -1 if model.signs[f] > 0 else 1
        phi = phase[f]
        for k, a in enumerate(model.cycles[f]):
            P = center[f] + cmath.exp(1j * phi)
            Q = center[f] + cmath.exp(1j * (phi + rot * math.pi * vals[a]))
            phi += rot * math.pi * vals[a]
            g = model.face_of(a, -model.signs[f])
            if center[g] is not None:
                continue
            kg = model.position_in_face(a, -model.signs[f])
            u = prefix_tr[f][k]
            Ta = (T[0] + u[0], T[1] + u[1])
            ug = prefix_tr[g][kg]
            Tg = (Ta[0] - ug[0], Ta[1] - ug[1])
            rot_g = -rot
            w = cmath.exp(1j * rot_g * math.pi * vals[a])
            Cg = (Q - w * P) / (1 - w)
            phi_k = cmath.phase(P - Cg)
            phi0 = phi_k - rot_g * math.pi * sum(vals[b] for b in model.cycles[g][:kg])
            place(g, Tg, Cg, phi0)
            todo.append(g)

    # fit base positions and the period lattice
    nv = len(model.vertices)
    rows, rhs = [], []
    for (v, T), ps in sorted(corners.items()):
        for p in ps:
            row = [0.0] * (nv + 2)
            row[v] = 1.0
            row[nv], row[nv + 1] = T
            rows.append(row)
            rhs.append(p)
    A = np.array(rows)
    sol, *_ = np.linalg.lstsq(A, np.array(rhs, dtype=complex), rcond=None)
    fitted = A @ sol
    residual = float(np.max(np.abs(fitted - np.array(rhs)))) if rhs else 0.0
    emb = IsoradialEmbedding(model, vals, face_lift, center, phase, corners,
                             [complex(x) for x in sol[:nv]], (complex(sol[nv]), complex(sol[nv + 1])), residual)
    if residual > closure_tol:
        worst = int(np.argmax(np.abs(fitted - np.array(rhs))))
        v = int(np.argmax(A[worst][:nv]))
        raise RChargeError(f"embedding does not close up at vertex {model.vertices[v]} "
                           f"(residual {residual:.3g})")
    return emb


def vertex_angle_sums(emb: IsoradialEmbedding) -> list[float]:
    """Total polygon angle at each vertex (2*pi when the tiling is flat)."""
    m = emb.model
    out = [0.0] * len(m.vertices)
    for cyc in m.cycles:
        n = len(cyc)
        for k, a in enumerate(cyc):
            b = cyc[(k + 1) % n]
            out[m.head[a]] += math.pi / 2 * (2 - emb.R[a] - emb.R[b])
    return out


def epsilon_of_zigzag(emb: IsoradialEmbedding, z: ZigzagPath, tol: float = 1e-9) -> float:
    """Angle of ``head(Z[i])`` seen from the center of the positive face of ``Z[i+1]Z[i]``."""
    m = emb.model
    start = 0 if z.parity > 0 else 1
    angles = []
    for i in range(start, len(z.period), 2):
        a = z.period[i]
        f = m.face_of(a, 1)
        k = m.position_in_face(a, 1)
        cyc = m.cycles[f]
        angles.append(emb.corner_angles(f)[(k + 1) % len(cyc)])
    eps = angles[0]
    for x in angles[1:]:
        d = (x - eps + math.pi) % TWO_PI - math.pi
        if abs(d) > tol:
            raise AssertionError(f"epsilon depends on the representative ({x} vs {eps})")
    return eps % TWO_PI


def homology_angles(model: DimerModel, labeling: HomologyLabeling, balanced: bool = True) -> list[float]:
    """Plane angle of each enumerated zigzag's direction (same map as the charge)."""
    zs = enumerate_zigzags(model, labeling)
    W = _plane_map(zs, balanced)
    out = []
    for z in zs:
        v = W @ np.array(z.homology, dtype=float)
        out.append(math.atan2(v[1], v[0]) % TWO_PI)
    return out


# ----------------------------------------------------------------------
# SVG

def embedding_svg(emb: IsoradialEmbedding, circles: bool = False, scale: float = 40.0) -> str:
    m = emb.model
    segments = []
    for sx, sy in ((0, 0), (1, 0), (0, 1)):
        for f in range(len(m.faces)):
            if m.signs[f] < 0:
                continue
            C = emb.face_center[f] + emb.shift((sx, sy))
            angs = emb.corner_angles(f)
            pts = [C + cmath.exp(1j * t) for t in angs]
            for k, a in enumerate(m.cycles[f]):
                segments.append((m.arrows[a].id, pts[k], pts[(k + 1) % len(pts)], C))
    xs = [p.real for s in segments for p in s[1:3]] or [0.0]
    ys = [p.imag for s in segments for p in s[1:3]] or [0.0]
    x0, y0 = min(xs) - 1.5, min(ys) - 1.5
    w, h = max(xs) + 1.5 - x0, max(ys) + 1.5 - y0

    def pt(z: complex) -> str:
        return f"{(z.real - x0) * scale:.3f},{(h - (z.imag - y0)) * scale:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * scale:.1f}" height="{h * scale:.1f}">',
           '<defs><marker id="arr" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto">'
           '<path d="M0,0 L0,6 L7,3 z"/></marker></defs>']
    if circles:
        seen = set()
        for _, _, _, C in segments:
            key = (round(C.real, 6), round(C.imag, 6))
            if key in seen:
                continue
            seen.add(key)
            cx, cy = pt(C).split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="{scale:.3f}" fill="none" stroke="#bbb"/>')
    for name, p, q, _ in segments:
        (x1, y1), (x2, y2) = pt(p).split(","), pt(q).split(",")
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" '
                   f'marker-end="url(#arr)"><title>{name}</title></line>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def as_fraction_or_float(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return f"{x:.12g}"
