"""Command line interface: ``dimerlab <command> MODEL [options]``.

MODEL is a path to a model file or the name of a bundled corpus model.
Exit codes: 0 success, 1 invalid input, 2 verdict disagreement, 3 budget
exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Callable

from . import corpus
from .balgebra import build_lattice, check_algebraic_consistency_bounded
from .cy3 import build_complex_component, check_exactness
from .jacobi import BudgetExceeded, EquivalenceOracle, cancellation_witness
from .matchings import enumerate_matchings, translation_tally
from .model import DimerModel, ModelError, euler_characteristic, genus, read_model, validate
from .rcharge import (RChargeError, embedding_svg, epsilon_of_zigzag, isoradial_embedding,
                      rcharge_from_zigzags, rcharge_lp, verify_rcharge)
from .summary import SummaryConfig, exit_code, render_json, render_text, summarize
from .topology import UnsupportedSurface, basis_certificate, homology_labeling
from .zigzag import check_condition_Z, enumerate_zigzags

EXIT_OK, EXIT_INVALID, EXIT_DISAGREE, EXIT_BUDGET = 0, 1, 2, 3


class InvalidInput(Exception):
    pass


def load(name_or_path: str) -> DimerModel:
    if os.path.exists(name_or_path):
        model = read_model(name_or_path)
    elif name_or_path in corpus.names():
        model = corpus.load(name_or_path)
    else:
        raise InvalidInput(f"{name_or_path}: no such file or corpus model")
    report = validate(model)
    if not report.ok:
        raise InvalidInput(report.render())
    return model


def num(x) -> object:
    """JSON-friendly number: exact fractions as strings, floats rounded."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def labeling_or_fail(model: DimerModel):
    try:
        return homology_labeling(model)
    except UnsupportedSurface as exc:
        raise InvalidInput(str(exc)) from None


# ----------------------------------------------------------------------
# commands: each returns (data, text, exit code)

def cmd_validate(model: DimerModel, args):
    rep = validate(model)
    data = {"name": model.name, "ok": rep.ok,
            "axioms": [{"name": r.name, "ok": r.ok, "witness": r.witness, "message": r.message}
                       for r in rep.results]}
    return data, rep.render(), EXIT_OK if rep.ok else EXIT_INVALID


def cmd_info(model: DimerModel, args):
    chi = euler_characteristic(model)
    data = {"name": model.name, "vertices": len(model.vertices), "arrows": len(model.arrows),
            "faces": len(model.faces), "positive_faces": sum(1 for s in model.signs if s > 0),
            "chi": chi, "genus": genus(model),
            "sigma_plus": {model.arrows[a].id: model.arrows[b].id for a, b in enumerate(model.sigma[1])},
            "sigma_minus": {model.arrows[a].id: model.arrows[b].id for a, b in enumerate(model.sigma[-1])}}
    lines = [f"{model.name}: |Q0| = {data['vertices']}, |Q1| = {data['arrows']}, |Q2| = {data['faces']}",
             f"chi = {chi}, genus {data['genus']}"]
    if chi == 0:
        lab = homology_labeling(model)
        cert = basis_certificate(lab)
        data["omega"] = {k: list(v) for k, v in lab.as_dict().items()}
        data["gauge_tree"] = model.ids(lab.tree)
        data["certificate_ok"] = cert["ok"]
        lines.append("homology labels: " + ", ".join(f"{k}{v}" for k, v in lab.as_dict().items()))
        lines.append(f"basis certificate: {'ok' if cert['ok'] else 'FAILED'}")
    for key in ("center", "comment"):
        if key in model.meta:
            data[key] = model.meta[key]
            lines.append(f"{key}: {model.meta[key]}")
    return data, "\n".join(lines), EXIT_OK


def cmd_zigzag(model: DimerModel, args):
    chi = euler_characteristic(model)
    lab = homology_labeling(model) if chi == 0 else None
    zs = enumerate_zigzags(model, lab)
    verdict = check_condition_Z(model, lab)
    data = {"zigzags": [{"period": model.ids(z.period), "homology": list(z.homology) if z.homology else None}
                        for z in zs],
            "condition_z": verdict.status,
            "witnesses": [{"arrow": w.arrow, "i": w.i, "j": w.j, "translation": list(w.translation),
                           "infinite": w.infinite} for w in verdict.witnesses],
            "note": verdict.note}
    lines = [f"{len(zs)} zigzag paths"]
    for z in zs:
        h = f"  homology {z.homology}" if z.homology else ""
        lines.append(f"  ({' '.join(model.ids(z.period))}){h}")
    lines.append(f"condition Z: {verdict.status}")
    for w in verdict.witnesses[:args.limit]:
        fam = "  (infinite family, minimal member)" if w.infinite else ""
        lines.append(f"  arrow {w.arrow}: zig index {w.i} meets zag index {w.j} at translation {w.translation}{fam}")
    if len(verdict.witnesses) > args.limit:
        lines.append(f"  ... {len(verdict.witnesses) - args.limit} more")
    if verdict.note:
        lines.append(f"note: {verdict.note}")
    return data, "\n".join(lines), EXIT_OK


def cmd_rcharge(model: DimerModel, args):
    out = rcharge_lp(model)
    data = {"lp": {"status": out.status, "min_R": num(out.t_star), "exact": out.exact,
                   "charge": {k: num(v) for k, v in out.charge.as_dict().items()} if out.charge else None}}
    lines = [f"linear program: {out.status}" + (f", min R = {out.t_star}" if out.t_star is not None else "")]
    if out.charge:
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in out.charge.as_dict().items()))
    if euler_characteristic(model) == 0:
        lab = homology_labeling(model)
        try:
            R = rcharge_from_zigzags(model, lab)
            rep = verify_rcharge(model, R, args.tol)
            data["zigzag"] = {"charge": {k: num(v) for k, v in R.as_dict().items()}, "ok": rep.ok,
                              "max_residual": num(rep.max_residual)}
            lines.append(f"from zigzag directions: {'ok' if rep.ok else 'FAILED'} "
                         f"(max residual {rep.max_residual:.1e})")
            lines.append("  " + ", ".join(f"{k}={v:.6f}" for k, v in R.as_dict().items()))
        except RChargeError as exc:
            data["zigzag"] = {"refused": str(exc)}
            lines.append(f"from zigzag directions: refused ({exc})")
    return data, "\n".join(lines), EXIT_OK


def _charge_for_embedding(model, lab, source: str):
    if source == "zigzag":
        return rcharge_from_zigzags(model, lab)
    out = rcharge_lp(model)
    if out.charge is None:
        raise RChargeError("no consistent R-charge")
    return out.charge


def cmd_embed(model: DimerModel, args):
    lab = labeling_or_fail(model)
    try:
        emb = isoradial_embedding(model, lab, _charge_for_embedding(model, lab, args.charge), args.tol)
    except RChargeError as exc:
        raise InvalidInput(str(exc)) from None
    zs = enumerate_zigzags(model, lab)
    eps = [epsilon_of_zigzag(emb, z) for z in zs]
    data = {"tau": [[num(t.real), num(t.imag)] for t in emb.tau], "residual": num(emb.residual),
            "centers": [[num(c.real), num(c.imag)] for c in emb.face_center],
            "vertices": {model.vertices[v]: [num(p.real), num(p.imag)] for v, p in enumerate(emb.base)},
            "epsilon": [num(e) for e in eps]}
    lines = [f"periods: tau1 = {emb.tau[0].real:.6f}{emb.tau[0].imag:+.6f}i, "
             f"tau2 = {emb.tau[1].real:.6f}{emb.tau[1].imag:+.6f}i",
             f"closure residual {emb.residual:.1e}"]
    for z, e in zip(zs, eps):
        lines.append(f"  zigzag ({' '.join(model.ids(z.period))}): epsilon = {math.degrees(e):.4f} deg")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(embedding_svg(emb, circles=args.circles))
        lines.append(f"wrote {args.svg}")
    return data, "\n".join(lines), EXIT_OK


def cmd_matchings(model: DimerModel, args):
    ms = enumerate_matchings(model)
    data = {"count": len(ms), "matchings": [p.ids(model) for p in ms]}
    lines = [f"{len(ms)} perfect matchings"] + ["  {" + ", ".join(p.ids(model)) + "}" for p in ms]
    if args.tally and euler_characteristic(model) == 0:
        tally = translation_tally(homology_labeling(model), ms)
        data["tally"] = [[list(k), n] for k, n in tally.items()]
        lines.append("translation-class tally (relative to the first matching; not a verdict):")
        lines += [f"  {k}: {n}" for k, n in tally.items()]
    return data, "\n".join(lines), EXIT_OK


def cmd_balgebra(model: DimerModel, args):
    L = args.bound if args.bound is not None else 6
    lat = build_lattice(model)
    v = check_algebraic_consistency_bounded(model, L, args.budget)
    data = {"free_rank": lat.free_rank, "torsion": lat.torsion, "bound": L, "surjective": v.surjective,
            "injective": v.injective, "consistent": v.consistent,
            "table": [[model.vertices[i], model.vertices[j], a, b] for (i, j), (a, b) in sorted(v.table.items())]}
    lines = [f"M = Z^{len(model.arrows)} / face differences: free rank {lat.free_rank}, torsion {lat.torsion or 'none'}",
             f"bounded check at length {L}: {'consistent' if v.consistent else 'fails'}"
             f" (surjective {v.surjective}, injective {v.injective})",
             "  head tail  #M+ classes  #path classes"]
    for (i, j), (a, b) in sorted(v.table.items()):
        lines.append(f"  {model.vertices[i]:>4} {model.vertices[j]:>4}  {a:>11}  {b:>13}")
    if v.collisions:
        p, q = v.collisions[0]
        lines.append(f"injectivity witness: {' '.join(model.ids(p))} and {' '.join(model.ids(q))}")
    if v.missing:
        i, j, x = v.missing[0]
        mono = " ".join(f"{model.arrows[a].id}^{k}" for a, k in enumerate(x) if k)
        lines.append(f"surjectivity witness: {mono} from {model.vertices[j]} to {model.vertices[i]}")
    if v.caveat:
        lines.append(f"note: {v.caveat}")
    return data, "\n".join(lines), EXIT_OK


def cmd_cy3(model: DimerModel, args):
    W = args.bound if args.bound is not None else 8
    safe = args.safe if args.safe is not None else W - model.max_face
    oracle = EquivalenceOracle(model, W, args.budget)
    data = {"window": W, "safe": safe, "vertices": {}}
    lines = [f"window {W}, safe degrees <= {safe}; ranks (H0, H1, H2, H3) by degree"]
    exact = True
    for v in range(len(model.vertices)):
        rep = check_exactness(build_complex_component(model, v, W, args.budget, oracle, safe), safe)
        exact &= rep.exact
        data["vertices"][model.vertices[v]] = {str(d): list(r) for d, r in rep.ranks.items()}
        lines.append(f"vertex {model.vertices[v]}: {'exact' if rep.exact else 'NOT exact'}")
        for d, r in rep.ranks.items():
            lines.append(f"  degree {d}: {r}")
    data["exact"] = exact
    if not oracle.exact:
        lines.append("note: classes come from a length-truncated oracle")
    return data, "\n".join(lines), EXIT_OK


def cmd_cancel(model: DimerModel, args):
    L = args.bound if args.bound is not None else 8
    w = cancellation_witness(model, L, args.budget)
    if w is None:
        return ({"bound": L, "witness": None},
                f"no cancellation witness up to length {L} (bounded search; not a proof)", EXIT_OK)
    data = {"bound": w.bound, "witness": {"arrow": model.arrows[w.arrow].id, "side": w.side,
                                          "p": model.ids(w.p), "q": model.ids(w.q), "certified": w.certified,
                                          "trace": [model.ids(t) for t in w.trace]}}
    return data, w.render(model), EXIT_OK


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate, "info": cmd_info, "zigzag": cmd_zigzag, "rcharge": cmd_rcharge,
    "embed": cmd_embed, "matchings": cmd_matchings, "balgebra": cmd_balgebra, "cy3": cmd_cy3,
    "cancel": cmd_cancel,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dimerlab", description="Consistency checks for dimer models.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--budget", type=int, default=10 ** 7, help="word budget for bounded searches")
        p.add_argument("--bound", type=int, default=None, help="length bound or window")

    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("model")
        common(p)
        if name == "zigzag":
            p.add_argument("--limit", type=int, default=10, help="witnesses to print")
        if name == "embed":
            p.add_argument("--svg", default=None)
            p.add_argument("--circles", action="store_true")
            p.add_argument("--charge", choices=["lp", "zigzag"], default="lp")
        if name == "matchings":
            p.add_argument("--tally", action="store_true")
        if name == "cy3":
            p.add_argument("--safe", type=int, default=None)
    p = sub.add_parser("summary")
    p.add_argument("models", nargs="*", help="model files or corpus names (default: whole corpus)")
    common(p)
    p.add_argument("--algebraic-bound", type=int, default=None)
    p.add_argument("--window", type=int, default=None, help="CY-3 window")
    p.add_argument("--list-corpus", action="store_true")
    return ap


def cmd_summary(models: list[str] | None = None, cfg: SummaryConfig | None = None,
                fmt: str = "text") -> tuple[str, int]:
    """Summary table for the given models (default: whole corpus) and its exit code."""
    cfg = cfg or SummaryConfig()
    rows = [summarize(load(s), cfg) for s in (models or corpus.names())]
    text = render_json(rows, cfg) if fmt == "json" else render_text(rows, cfg)
    return text, exit_code(rows)


def _summary_from_args(args) -> tuple[str, int]:
    if args.list_corpus:
        return "\n".join(corpus.names()) + "\n", EXIT_OK
    cfg = SummaryConfig(tol=args.tol, budget=args.budget)
    if args.bound is not None:
        cfg.cancel_bound = args.bound
    if args.algebraic_bound is not None:
        cfg.algebraic_bound = args.algebraic_bound
    if args.window is not None:
        cfg.cy3_window = args.window
    return cmd_summary(args.models, cfg, args.format)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "summary":
            text, code = _summary_from_args(args)
            sys.stdout.write(text)
            return code
        try:
            model = load(args.model)
        except InvalidInput as exc:
            if args.command == "validate" and os.path.exists(args.model):
                model = read_model(args.model)
            else:
                raise exc
        data, text, code = COMMANDS[args.command](model, args)
        if args.format == "json":
            sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        else:
            sys.stdout.write(text + "\n")
        return code
    except (ModelError, InvalidInput) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
