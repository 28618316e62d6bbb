"""Dimer models: quivers with positive and negative face cycles.

A model is stored in traversal order: a face ``[a, b, c]`` means ``a`` is
followed by ``b`` which is followed by ``c`` which closes up at the tail of
``a``.  Everything downstream works with integer indices into the file-order
tuples; string ids are only used at the boundary.
"""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

_ID = re.compile(r"^[A-Za-z0-9_]+$")


class ModelError(ValueError):
    """Raised for malformed model files."""


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Face:
    sign: int  # +1 or -1
    cycle: tuple[str, ...]


@dataclass(frozen=True)
class DimerModel:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    faces: tuple[Face, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    # -- integer views -------------------------------------------------
    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arrows)}

    @cached_property
    def tail(self) -> tuple[int, ...]:
        return tuple(self.vertex_index[a.tail] for a in self.arrows)

    @cached_property
    def head(self) -> tuple[int, ...]:
        return tuple(self.vertex_index[a.head] for a in self.arrows)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Face cycles as tuples of arrow indices."""
        return tuple(tuple(self.arrow_index[x] for x in f.cycle) for f in self.faces)

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return tuple(f.sign for f in self.faces)

    @cached_property
    def _face_of(self) -> dict[tuple[int, int], tuple[int, int]]:
        # (arrow, sign) -> (face, position); first occurrence wins
        out: dict[tuple[int, int], tuple[int, int]] = {}
        for fi, cyc in enumerate(self.cycles):
            for k, a in enumerate(cyc):
                out.setdefault((a, self.signs[fi]), (fi, k))
        return out

    def face_of(self, arrow: int, sign: int) -> int:
        """Index of the face of the given sign containing ``arrow``."""
        return self._face_of[(arrow, sign)][0]

    def position_in_face(self, arrow: int, sign: int) -> int:
        return self._face_of[(arrow, sign)][1]

    @cached_property
    def sigma(self) -> dict[int, tuple[int, ...]]:
        """``sigma[+1][a]`` is the arrow after ``a`` in its positive face."""
        out = {}
        for s in (1, -1):
            succ = [0] * len(self.arrows)
            for fi, cyc in enumerate(self.cycles):
                if self.signs[fi] != s:
                    continue
                for k, a in enumerate(cyc):
                    succ[a] = cyc[(k + 1) % len(cyc)]
            out[s] = tuple(succ)
        return out

    def complement(self, arrow: int, sign: int) -> tuple[int, ...]:
        """The path p with p·a a face of the given sign, in traversal order.

        It runs from ``head(a)`` back to ``tail(a)``.
        """
        fi, k = self._face_of[(arrow, sign)]
        cyc = self.cycles[fi]
        n = len(cyc)
        return tuple(cyc[(k + j) % n] for j in range(1, n))

    @cached_property
    def max_face(self) -> int:
        return max(len(c) for c in self.cycles)

    @cached_property
    def uniform_faces(self) -> bool:
        return len({len(c) for c in self.cycles}) == 1

    @cached_property
    def out_arrows(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for a, t in enumerate(self.tail):
            out[t].append(a)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_arrows(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for a, h in enumerate(self.head):
            out[h].append(a)
        return tuple(tuple(x) for x in out)

    # -- conveniences --------------------------------------------------
    def ids(self, arrows: Iterable[int]) -> list[str]:
        return [self.arrows[a].id for a in arrows]

    def indices(self, ids: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.arrow_index[x] for x in ids)

    def is_path(self, word: Iterable[int]) -> bool:
        word = list(word)
        return all(self.head[x] == self.tail[y] for x, y in zip(word, word[1:]))

    def __repr__(self) -> str:
        return (f"DimerModel({self.name!r}, |Q0|={len(self.vertices)}, "
                f"|Q1|={len(self.arrows)}, |Q2|={len(self.faces)})")


# ----------------------------------------------------------------------
# file format

def _check_id(value, what: str) -> str:
    if not isinstance(value, str) or not _ID.match(value):
        raise ModelError(f"{what}: invalid identifier {value!r}")
    return value


def model_from_dict(data: dict, source: str = "<dict>") -> DimerModel:
    if not isinstance(data, dict):
        raise ModelError(f"{source}: top level must be an object")
    for key in ("vertices", "arrows", "faces"):
        if key not in data:
            raise ModelError(f"{source}: missing key {key!r}")

    vertices = tuple(_check_id(v, f"{source}: vertices[{i}]") for i, v in enumerate(data["vertices"]))
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise ModelError(f"{source}: duplicate vertex {dup!r}")
    vset = set(vertices)

    arrows = []
    for i, rec in enumerate(data["arrows"]):
        ctx = f"{source}: arrows[{i}]"
        if not isinstance(rec, dict) or not {"id", "tail", "head"} <= rec.keys():
            raise ModelError(f"{ctx}: expected {{id, tail, head}}")
        arrow = Arrow(_check_id(rec["id"], ctx), _check_id(rec["tail"], ctx), _check_id(rec["head"], ctx))
        for end in (arrow.tail, arrow.head):
            if end not in vset:
                raise ModelError(f"{ctx}: dangling vertex reference {end!r}")
        arrows.append(arrow)
    ids = [a.id for a in arrows]
    if len(set(ids)) != len(ids):
        dup = next(x for x in ids if ids.count(x) > 1)
        raise ModelError(f"{source}: duplicate arrow {dup!r}")
    aset = set(ids)

    faces = []
    for i, rec in enumerate(data["faces"]):
        ctx = f"{source}: faces[{i}]"
        if not isinstance(rec, dict) or not {"sign", "cycle"} <= rec.keys():
            raise ModelError(f"{ctx}: expected {{sign, cycle}}")
        if rec["sign"] not in ("+", "-"):
            raise ModelError(f"{ctx}: sign must be '+' or '-', got {rec['sign']!r}")
        cycle = tuple(_check_id(x, ctx) for x in rec["cycle"])
        if len(cycle) < 3:
            raise ModelError(f"{ctx}: face length {len(cycle)} < 3")
        for x in cycle:
            if x not in aset:
                raise ModelError(f"{ctx}: dangling arrow reference {x!r}")
        faces.append(Face(1 if rec["sign"] == "+" else -1, cycle))

    meta = {k: v for k, v in data.items() if k not in ("name", "vertices", "arrows", "faces")}
    return DimerModel(str(data.get("name", "")), vertices, tuple(arrows), tuple(faces), meta)


def load_model(text: str, source: str = "<string>") -> DimerModel:
    """Parse model-file contents (JSON)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{source}: line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    return model_from_dict(data, source)


def read_model(path) -> DimerModel:
    with open(path, encoding="utf-8") as fh:
        return load_model(fh.read(), str(path))


def model_to_dict(model: DimerModel) -> dict:
    out = {"name": model.name}
    out.update(model.meta)
    out["vertices"] = list(model.vertices)
    out["arrows"] = [{"id": a.id, "tail": a.tail, "head": a.head} for a in model.arrows]
    out["faces"] = [{"sign": "+" if f.sign > 0 else "-", "cycle": list(f.cycle)} for f in model.faces]
    return out


def dumps(model: DimerModel) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"


# ----------------------------------------------------------------------
# validation

@dataclass
class AxiomResult:
    name: str
    ok: bool
    witness: str | None = None
    message: str = ""


@dataclass
class ValidationReport:
    results: list[AxiomResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.ok]

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def render(self) -> str:
        lines = []
        for r in self.results:
            status = "pass" if r.ok else "FAIL"
            extra = f"  witness={r.witness}: {r.message}" if not r.ok else ""
            lines.append(f"{r.name:<20} {status}{extra}")
        return "\n".join(lines)


def _check_chaining(m: DimerModel) -> AxiomResult:
    for fi, cyc in enumerate(m.cycles):
        for k, a in enumerate(cyc):
            b = cyc[(k + 1) % len(cyc)]
            if m.head[a] != m.tail[b]:
                return AxiomResult("chaining", False, f"face {fi}",
                                   f"head({m.arrows[a].id}) != tail({m.arrows[b].id})")
    for fi, cyc in enumerate(m.cycles):
        if len(cyc) < 3:
            return AxiomResult("chaining", False, f"face {fi}", "face length < 3")
    return AxiomResult("chaining", True)


def _check_do(m: DimerModel) -> AxiomResult:
    counts = {s: [0] * len(m.arrows) for s in (1, -1)}
    for fi, cyc in enumerate(m.cycles):
        for a in cyc:
            counts[m.signs[fi]][a] += 1
    for a in range(len(m.arrows)):
        for s in (1, -1):
            if counts[s][a] != 1:
                kind = "positive" if s > 0 else "negative"
                return AxiomResult("DO", False, m.arrows[a].id,
                                   f"arrow occurs {counts[s][a]} times in {kind} faces")
    return AxiomResult("DO", True)


def _check_disjoint(m: DimerModel) -> AxiomResult:
    def canon(cyc):
        k = min(range(len(cyc)), key=lambda i: cyc[i:] + cyc[:i])
        return cyc[k:] + cyc[:k]

    pos = {canon(c) for c, s in zip(m.cycles, m.signs) if s > 0}
    for fi, (c, s) in enumerate(zip(m.cycles, m.signs)):
        if s < 0 and canon(c) in pos:
            return AxiomResult("disjoint", False, f"face {fi}", "cycle is both positive and negative")
    return AxiomResult("disjoint", True)


def _check_dm(m: DimerModel) -> AxiomResult:
    # Corner-level link of each vertex: nodes are arrow ends at v, and each
    # face corner at v joins the incoming end of one arrow to the outgoing
    # end of the next.  The vertex is a manifold point iff this is connected.
    for v in range(len(m.vertices)):
        ends = [("in", a) for a in m.in_arrows[v]] + [("out", a) for a in m.out_arrows[v]]
        if not ends:
            return AxiomResult("DM", False, m.vertices[v], "isolated vertex")
        adj: dict = {e: [] for e in ends}
        for cyc in m.cycles:
            for k, a in enumerate(cyc):
                b = cyc[(k + 1) % len(cyc)]
                if m.head[a] == v:
                    adj[("in", a)].append(("out", b))
                    adj[("out", b)].append(("in", a))
        seen = {ends[0]}
        todo = [ends[0]]
        while todo:
            for nxt in adj[todo.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        if len(seen) != len(ends):
            return AxiomResult("DM", False, m.vertices[v], "vertex link is disconnected")
    return AxiomResult("DM", True)


def _check_strong(m: DimerModel) -> AxiomResult:
    n = len(m.vertices)
    if n == 0:
        return AxiomResult("strongly_connected", False, None, "no vertices")
    for forward in (True, False):
        seen = {0}
        todo = deque([0])
        while todo:
            v = todo.popleft()
            arrows = m.out_arrows[v] if forward else m.in_arrows[v]
            for a in arrows:
                w = m.head[a] if forward else m.tail[a]
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != n:
            missing = next(i for i in range(n) if i not in seen)
            direction = "reachable from" if forward else "able to reach"
            return AxiomResult("strongly_connected", False, m.vertices[missing],
                               f"vertex not {direction} {m.vertices[0]}")
    return AxiomResult("strongly_connected", True)


def validate(model: DimerModel) -> ValidationReport:
    results = [_check_chaining(model), _check_do(model), _check_disjoint(model)]
    # DM needs well-formed faces to be meaningful
    results.append(_check_dm(model) if results[0].ok else
                   AxiomResult("DM", False, None, "skipped: faces do not chain"))
    results.append(_check_strong(model))
    return ValidationReport(results)


def euler_characteristic(model: DimerModel) -> int:
    return len(model.vertices) - len(model.arrows) + len(model.faces)


def genus(model: DimerModel) -> int:
    chi = euler_characteristic(model)
    if chi % 2:
        raise ValueError(f"odd Euler characteristic {chi}")
    return (2 - chi) // 2


@dataclass(frozen=True)
class RotationMaps:
    sigma_plus: dict[str, str]
    sigma_minus: dict[str, str]


def successor_maps(model: DimerModel) -> RotationMaps:
    ids = [a.id for a in model.arrows]
    return RotationMaps(
        {ids[a]: ids[b] for a, b in enumerate(model.sigma[1])},
        {ids[a]: ids[b] for a, b in enumerate(model.sigma[-1])},
    )


def require_valid(model: DimerModel) -> None:
    report = validate(model)
    if not report.ok:
        bad = report.failures()[0]
        raise ModelError(f"{model.name}: {bad.name} fails ({bad.witness}: {bad.message})")
