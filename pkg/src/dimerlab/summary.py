"""Run every decider on a model and compare the verdicts.

On the torus cancellation, condition Z, existence of an R-charge and
algebraic consistency are equivalent, so all four computed answers must
agree.  On the sphere and on higher genus surfaces some properties are
impossible and are reported as "never"; the order and NCCR columns are
always derived from these rules, never computed.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import balgebra, cy3, jacobi
from .model import DimerModel, euler_characteristic, genus
from .rcharge import RChargeError, rcharge_from_zigzags, rcharge_lp, verify_rcharge
from .topology import homology_labeling
from .zigzag import check_condition_Z


@dataclass
class SummaryConfig:
    cancel_bound: int = jacobi.DEFAULT_BOUND
    algebraic_bound: int = balgebra.DEFAULT_BOUND
    cy3_window: int = 9
    budget: int = jacobi.DEFAULT_BUDGET
    cy3_budget: int = 2 * 10 ** 6  # the window shrinks until the universe fits
    tol: float = 1e-9


@dataclass
class Verdict:
    value: Optional[bool]  # None: not decided
    text: str
    derived: bool = False


@dataclass
class SummaryRow:
    name: str
    chi: int
    genus: int
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    agree: bool = True
    notes: list[str] = field(default_factory=list)
    center: Optional[str] = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["verdicts"] = {k: asdict(v) for k, v in self.verdicts.items()}
        return d


COLUMNS = ["cancellation", "condition_z", "rcharge_lp", "rcharge_zigzag", "algebraic", "cy3", "order", "nccr"]


def _cancellation(model: DimerModel, cfg: SummaryConfig, oracle) -> Verdict:
    w = jacobi.cancellation_witness(model, cfg.cancel_bound, cfg.budget, oracle=oracle)
    if w is None:
        return Verdict(True, f"no witness up to length {cfg.cancel_bound}")
    pa, qa = w.words()
    return Verdict(False, f"witness at length {w.bound}: {' '.join(model.ids(pa))} ~ {' '.join(model.ids(qa))}")


def _condition_z(model: DimerModel, labeling) -> Verdict:
    v = check_condition_Z(model, labeling)
    if v.status == "consistent":
        return Verdict(True, "holds")
    if v.status == "inconsistent":
        w = v.witnesses[0]
        fam = " (infinite family)" if w.infinite else ""
        return Verdict(False, f"fails: zig/zag meet at {w.arrow} i={w.i} j={w.j}{fam}")
    if v.status == "always-fails":
        return Verdict(False, "rays meet repeatedly in the finite cover")
    return Verdict(None, "unsupported (hyperbolic cover)")


def _rcharge_lp(model: DimerModel) -> Verdict:
    out = rcharge_lp(model)
    if out.status == "feasible":
        return Verdict(True, f"feasible, min R = {out.t_star}")
    if out.status == "degenerate":
        return Verdict(False, f"infeasible: best min R = {out.t_star}")
    return Verdict(False, "infeasible")


def _rcharge_zigzag(model: DimerModel, labeling, cfg: SummaryConfig) -> Verdict:
    if labeling is None:
        return Verdict(None, "not applicable off the torus")
    try:
        R = rcharge_from_zigzags(model, labeling)
    except RChargeError as exc:
        return Verdict(False, f"refused: {str(exc).split(';')[0]}")
    rep = verify_rcharge(model, R, cfg.tol)
    return Verdict(rep.ok, f"constructed, max residual {rep.max_residual:.1e}")


def _algebraic(model: DimerModel, cfg: SummaryConfig) -> Verdict:
    v = balgebra.check_algebraic_consistency_bounded(model, cfg.algebraic_bound, cfg.budget)
    if v.consistent:
        return Verdict(True, f"bijective up to length {cfg.algebraic_bound}")
    parts = []
    if not v.injective:
        p, q = v.collisions[0]
        parts.append(f"not injective ({' '.join(model.ids(p))} vs {' '.join(model.ids(q))})")
    if not v.surjective:
        parts.append(f"not surjective ({len(v.missing)} classes unrealised)")
    return Verdict(False, "; ".join(parts))


def _cy3(model: DimerModel, cfg: SummaryConfig, oracles: dict) -> Verdict:
    W = cfg.cy3_window
    while True:
        try:
            oracle = oracles.get(W) or jacobi.EquivalenceOracle(model, W, min(cfg.budget, cfg.cy3_budget))
            break
        except jacobi.BudgetExceeded:
            if W <= model.max_face + 2:
                raise
            W -= 1
    oracles[W] = oracle
    safe = W - model.max_face
    reports = cy3.check_model(model, W, safe, oracle=oracle)
    for v, rep in reports.items():
        if not rep.exact:
            deg, pos, _ = rep.first_failure
            return Verdict(False, f"H{pos} at degree {deg} (vertex {model.vertices[v]}, window {W}, safe {safe})")
    return Verdict(True, f"exact up to degree {safe} (window {W})")


def summarize(model: DimerModel, cfg: Optional[SummaryConfig] = None) -> SummaryRow:
    cfg = cfg or SummaryConfig()
    chi = euler_characteristic(model)
    row = SummaryRow(model.name, chi, genus(model), center=model.meta.get("center"))
    labeling = homology_labeling(model) if chi == 0 else None
    oracles: dict = {}
    oracles[cfg.cancel_bound] = jacobi.EquivalenceOracle(model, cfg.cancel_bound, cfg.budget)
    V = row.verdicts
    V["cancellation"] = _cancellation(model, cfg, oracles[cfg.cancel_bound])
    V["condition_z"] = _condition_z(model, labeling)
    V["rcharge_lp"] = _rcharge_lp(model)
    V["rcharge_zigzag"] = _rcharge_zigzag(model, labeling, cfg)
    V["algebraic"] = _algebraic(model, cfg)
    V["cy3"] = _cy3(model, cfg, oracles)
    canc = V["cancellation"].value

    def never(key: str, why: str) -> None:
        # a computed "yes" for an impossible property is a disagreement
        if V.get(key) is not None and V[key].value:
            row.agree = False
            row.notes.append(f"{key} computed as holding, but it can never hold here")
        old = V.get(key)
        V[key] = Verdict(False, f"never ({why})" + (f"; computed: {old.text}" if old else ""), derived=old is None)

    if chi == 0:
        core = [V[k].value for k in ("cancellation", "condition_z", "rcharge_lp", "rcharge_zigzag", "algebraic")]
        if len(set(core)) != 1:
            row.agree = False
            row.notes.append("torus equivalences disagree")
        common = V["condition_z"].value
        if common and V["cy3"].value is False:
            row.agree = False
            row.notes.append("condition Z holds but the complex is not exact")
        if not common and V["cy3"].value:
            row.notes.append("complex exact in the window although cancellation fails (bounded observation)")
        V["order"] = Verdict(common, "yes" if common else "no", derived=True)
        V["nccr"] = Verdict(common, "yes" if common else "no", derived=True)
    elif chi > 0:
        if canc != V["algebraic"].value:
            row.agree = False
            row.notes.append("cancellation and algebraic consistency disagree")
        never("rcharge_lp", "sphere")
        V["rcharge_zigzag"] = Verdict(False, "never (sphere)", derived=True)
        never("cy3", "sphere")
        V["condition_z"] = Verdict(False, "never (sphere): " + V["condition_z"].text)
        V["order"] = Verdict(canc, "yes" if canc else "no", derived=True)
        V["nccr"] = Verdict(False, "never (sphere)", derived=True)
    else:
        never("rcharge_lp", "higher genus")
        V["rcharge_zigzag"] = Verdict(False, "never (higher genus)", derived=True)
        never("algebraic", "higher genus")
        if canc and V["cy3"].value is False:
            row.agree = False
            row.notes.append("no cancellation witness but the complex is not exact")
        V["order"] = Verdict(False, "never (higher genus)", derived=True)
        V["nccr"] = Verdict(False, "never (higher genus)", derived=True)
        row.notes.append("condition Z equals cancellation here; only the bounded oracle is run")
    return row


def render_text(rows: list[SummaryRow], cfg: SummaryConfig) -> str:
    lines = [f"bounds: cancellation {cfg.cancel_bound}, algebraic {cfg.algebraic_bound}, "
             f"cy3 window {cfg.cy3_window}; derived verdicts marked *", ""]
    for row in rows:
        lines.append(f"{row.name}  (chi = {row.chi}, genus {row.genus})")
        for key in COLUMNS:
            v = row.verdicts[key]
            mark = "*" if v.derived else " "
            val = {True: "yes", False: "no", None: "?"}[v.value]
            lines.append(f"  {mark}{key:<15} {val:<4} {v.text}")
        if row.center:
            lines.append(f"   center: {row.center}")
        for n in row.notes:
            lines.append(f"   note: {n}")
        lines.append(f"   agreement: {'ok' if row.agree else 'DISAGREEMENT'}")
        lines.append("")
    return "\n".join(lines)


def render_json(rows: list[SummaryRow], cfg: SummaryConfig) -> str:
    return json.dumps({"config": asdict(cfg), "models": [r.as_dict() for r in rows]},
                      indent=2, sort_keys=True) + "\n"


def exit_code(rows: list[SummaryRow]) -> int:
    return 0 if all(r.agree for r in rows) else 2
