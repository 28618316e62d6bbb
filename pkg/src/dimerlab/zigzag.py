"""Zigzag paths and an exact decision procedure for condition Z on the torus.

Arrow instances in the universal cover are pairs ``(arrow, T)`` where ``T``
is the translation of the arrow's tail lift.  Along a zigzag ray the
instance at step ``i = i0 + k*n`` is ``(period[i0], u[i0] + k*h)``, so every
question about two rays meeting is a small linear Diophantine problem in
``(k, m)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .model import DimerModel, euler_characteristic
from .topology import HomologyLabeling, Vec


@dataclass(frozen=True)
class ZigzagPath:
    period: tuple[int, ...]
    parity: int  # +1: period[1]period[0] is a positive arc
    homology: Optional[Vec]
    translations: Optional[tuple[Vec, ...]]  # tail translation of period[i] relative to period[0]

    def __len__(self) -> int:
        return len(self.period)

    def arrow_at(self, i: int) -> int:
        return self.period[i % len(self.period)]

    def lift_at(self, i: int) -> tuple[int, Vec]:
        """Arrow instance at (possibly large) index ``i >= 0``."""
        n = len(self.period)
        k, i0 = divmod(i, n)
        ux, uy = self.translations[i0]
        hx, hy = self.homology
        return self.period[i0], (ux + k * hx, uy + k * hy)

    def sign_at(self, i: int) -> int:
        """Sign of the face holding the arc ``Z[i+1]Z[i]``."""
        return self.parity if i % 2 == 0 else -self.parity


def _cross(u: Vec, v: Vec) -> int:
    return u[0] * v[1] - u[1] * v[0]


def zigzag_from(model: DimerModel, labeling: Optional[HomologyLabeling], arrow: int, sign: int) -> ZigzagPath:
    """The zig (sign=+1) or zag (sign=-1) path with ``Z[0] = arrow``."""
    period = [arrow]
    s = sign
    a = arrow
    while True:
        a = model.sigma[s][a]
        s = -s
        if a == arrow and s == sign:
            break
        period.append(a)
    if labeling is None:
        return ZigzagPath(tuple(period), sign, None, None)
    us = []
    x = y = 0
    for b in period:
        us.append((x, y))
        dx, dy = labeling.omega[b]
        x += dx
        y += dy
    return ZigzagPath(tuple(period), sign, (x, y), tuple(us))


def enumerate_zigzags(model: DimerModel, labeling: Optional[HomologyLabeling]) -> list[ZigzagPath]:
    """All zigzag paths, each written as a zig path from its first zig arrow.

    The representative starts at the lowest-index arrow that begins a
    positive arc; output is sorted by that arrow.
    """
    seen: set[int] = set()
    out = []
    for a in range(len(model.arrows)):
        if a in seen:
            continue
        z = zigzag_from(model, labeling, a, 1)
        seen.update(z.period[0::2])
        out.append(z)
    return out


def zigzags_through(model: DimerModel, labeling: Optional[HomologyLabeling], arrow: int):
    return zigzag_from(model, labeling, arrow, 1), zigzag_from(model, labeling, arrow, -1)


# ----------------------------------------------------------------------
# Diophantine core

@dataclass
class Solutions:
    """Nonnegative solutions (k, m) of ``k*h1 - m*h2 = c``.

    ``points`` are isolated solutions, ``rays`` are families
    ``base + t*step`` (t >= 0), and ``quadrant`` means every (k, m) solves.
    """
    points: list[tuple[int, int]] = field(default_factory=list)
    rays: list[tuple[tuple[int, int], tuple[int, int]]] = field(default_factory=list)
    quadrant: bool = False

    def within(self, kmax: int, mmax: int) -> set[tuple[int, int]]:
        """All solutions with ``k < kmax`` and ``m < mmax``."""
        out = {(k, m) for k, m in self.points if k < kmax and m < mmax}
        for (k, m), (dk, dm) in self.rays:
            while k < kmax and m < mmax:
                out.add((k, m))
                k += dk
                m += dm
        if self.quadrant:
            out.update((k, m) for k in range(kmax) for m in range(mmax))
        return out

    @property
    def infinite(self) -> bool:
        return self.quadrant or bool(self.rays)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def solve_two_rays(c: Vec, h1: Vec, h2: Vec) -> Solutions:
    sol = Solutions()
    det = _cross(h1, h2)
    if det != 0:
        # k*h1 - m*h2 = c  (Cramer)
        k = Fraction(c[0] * h2[1] - c[1] * h2[0], det)
        m = Fraction(h1[1] * c[0] - h1[0] * c[1], det)
        if k.denominator == 1 and m.denominator == 1 and k >= 0 and m >= 0:
            sol.points.append((int(k), int(m)))
        return sol
    if h1 == (0, 0) and h2 == (0, 0):
        sol.quadrant = c == (0, 0)
        return sol
    g = h1 if h1 != (0, 0) else h2
    d = gcd(g[0], g[1])
    g = (g[0] // d, g[1] // d)
    if _cross(c, g) != 0:
        return sol
    gg = g[0] * g[0] + g[1] * g[1]
    alpha = (h1[0] * g[0] + h1[1] * g[1]) // gg
    beta = (h2[0] * g[0] + h2[1] * g[1]) // gg
    gamma_num = c[0] * g[0] + c[1] * g[1]
    if gamma_num % gg:
        return sol
    gamma = gamma_num // gg
    # alpha*k - beta*m = gamma
    if alpha == 0:
        if gamma % beta == 0 and -gamma // beta >= 0:
            sol.rays.append(((0, -gamma // beta), (1, 0)))
        return sol
    if beta == 0:
        if gamma % alpha == 0 and gamma // alpha >= 0:
            sol.rays.append(((gamma // alpha, 0), (0, 1)))
        return sol
    dd, x, y = _egcd(alpha, -beta)  # alpha*x + (-beta)*y = dd
    if gamma % dd:
        return sol
    k0, m0 = x * (gamma // dd), y * (gamma // dd)
    # general solution: k = k0 + t*sk, m = m0 + t*sm
    sk, sm = beta // dd, alpha // dd
    if sk < 0 or (sk == 0 and sm < 0):
        sk, sm = -sk, -sm
    if sk > 0 and sm > 0:
        t = max(_ceil_div(-k0, sk), _ceil_div(-m0, sm))
        sol.rays.append(((k0 + t * sk, m0 + t * sm), (sk, sm)))
    else:
        # sk > 0 > sm: k grows while m shrinks, finitely many
        t_lo = _ceil_div(-k0, sk)
        t_hi = m0 // (-sm)
        for t in range(t_lo, t_hi + 1):
            sol.points.append((k0 + t * sk, m0 + t * sm))
    return sol


# ----------------------------------------------------------------------
# intersections

@dataclass(frozen=True, order=True)
class RayIntersection:
    arrow: str
    i: int
    j: int
    translation: Vec
    infinite: bool = False


@dataclass(frozen=True, order=True)
class SelfIntersection:
    i: int
    i2: int
    translation: Vec
    note: str = ""


def self_intersections(z: ZigzagPath) -> list[SelfIntersection]:
    """Minimal representatives ``i < i2`` where the lifted path revisits an instance.

    Every hit comes in an infinite family (shift both indices by the
    period), so only the smallest member of each family is reported.
    """
    n = len(z.period)
    h = z.homology
    out = []
    if h == (0, 0):
        out.append(SelfIntersection(0, n, (0, 0), "zero homology: the lift closes up after one period"))
    for i0 in range(n):
        for i1 in range(i0 + 1, n):
            if z.period[i0] != z.period[i1]:
                continue
            du = (z.translations[i1][0] - z.translations[i0][0], z.translations[i1][1] - z.translations[i0][1])
            if h == (0, 0):
                if du == (0, 0):
                    out.append(SelfIntersection(i0, i1, z.translations[i0], "repeated lift"))
                continue
            # u0 + k*h = u1 + k1*h  <=>  du = (k - k1)*h
            if _cross(du, h) != 0:
                continue
            hh = h[0] * h[0] + h[1] * h[1]
            num = du[0] * h[0] + du[1] * h[1]
            if num % hh:
                continue
            lam = num // hh  # k - k1
            a, b = (i0 + lam * n, i1) if lam >= 0 else (i0, i1 - lam * n)
            lo, hi = min(a, b), max(a, b)
            out.append(SelfIntersection(lo, hi, z.lift_at(lo)[1], "repeated lift"))
    return sorted(set(out))


def _ray_solutions(zp: ZigzagPath, zm: ZigzagPath):
    """Yield (i0, j0, Solutions) for every pair of equal in-period arrows."""
    for i0, a in enumerate(zp.period):
        for j0, b in enumerate(zm.period):
            if a != b:
                continue
            u, v = zp.translations[i0], zm.translations[j0]
            c = (v[0] - u[0], v[1] - u[1])
            yield i0, j0, solve_two_rays(c, zp.homology, zm.homology)


def ray_intersections(model: DimerModel, labeling: HomologyLabeling, arrow: int) -> list[RayIntersection]:
    """Common lifted instances of the zig and zag rays from ``arrow`` with i, j > 0."""
    zp, zm = zigzags_through(model, labeling, arrow)
    np_, nm = len(zp), len(zm)
    out = []
    for i0, j0, sol in _ray_solutions(zp, zm):
        aid = model.arrows[zp.period[i0]].id
        for k, m in sol.points:
            i, j = i0 + k * np_, j0 + m * nm
            if i > 0 and j > 0:
                out.append(RayIntersection(aid, i, j, zp.lift_at(i)[1]))
        families = list(sol.rays)
        if sol.quadrant:
            families.append(((0, 0), (1, 1)))
        for (k, m), (dk, dm) in families:
            i, j = i0 + k * np_, j0 + m * nm
            di, dj = dk * np_, dm * nm
            if (i <= 0 and di == 0) or (j <= 0 and dj == 0):
                continue
            while i <= 0 or j <= 0:
                i, j = i + di, j + dj
            out.append(RayIntersection(aid, i, j, zp.lift_at(i)[1], infinite=True))
    return sorted(set(out))


def ray_intersections_window(model: DimerModel, labeling: HomologyLabeling, arrow: int,
                             periods: int = 8) -> set[tuple[int, int]]:
    """Every (i, j) with 0 < i < periods*n+, 0 < j < periods*n- from the exact solver."""
    zp, zm = zigzags_through(model, labeling, arrow)
    np_, nm = len(zp), len(zm)
    out = set()
    for i0, j0, sol in _ray_solutions(zp, zm):
        for k, m in sol.within(periods, periods):
            i, j = i0 + k * np_, j0 + m * nm
            if 0 < i < periods * np_ and 0 < j < periods * nm:
                out.add((i, j))
    return out


# ----------------------------------------------------------------------
# condition Z

@dataclass
class ZVerdict:
    status: str  # consistent | inconsistent | always-fails | unsupported
    witnesses: list[RayIntersection] = field(default_factory=list)
    self_intersections: dict[int, list[SelfIntersection]] = field(default_factory=dict)
    note: str = ""

    @property
    def consistent(self) -> Optional[bool]:
        if self.status == "consistent":
            return True
        if self.status in ("inconsistent", "always-fails"):
            return False
        return None


def check_condition_Z(model: DimerModel, labeling: Optional[HomologyLabeling] = None) -> ZVerdict:
    chi = euler_characteristic(model)
    if chi > 0:
        return ZVerdict("always-fails", note="positive Euler characteristic: the cover is the finite "
                        "quiver itself, so zig and zag rays meet repeatedly")
    if chi < 0:
        return ZVerdict("unsupported", note="hyperbolic universal cover: condition Z is not decided here")
    if labeling is None:
        from .topology import homology_labeling
        labeling = homology_labeling(model)
    witnesses = []
    for a in range(len(model.arrows)):
        witnesses.extend(ray_intersections(model, labeling, a))
    selfs = {}
    for idx, z in enumerate(enumerate_zigzags(model, labeling)):
        hits = self_intersections(z)
        if hits:
            selfs[idx] = hits
    witnesses.sort()
    ok = not witnesses and not selfs
    note = ""
    if selfs and not witnesses:
        # a self-intersecting zigzag should always produce a ray witness as well
        note = "self-intersection without ray witness"
    return ZVerdict("consistent" if ok else "inconsistent", witnesses, selfs, note)


def directions_span_plane(zigzags: list[ZigzagPath]) -> bool:
    """Every zigzag direction has another one strictly counterclockwise within pi."""
    hs = [z.homology for z in zigzags]
    return all(any(_cross(h, g) > 0 for g in hs) for h in hs)
