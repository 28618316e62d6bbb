"""Model transformations used by the property tests."""
from __future__ import annotations

import random

from dimerlab.model import DimerModel, model_from_dict, model_to_dict

TORI = ["f0", "c3", "conifold", "c3_z3", "spp", "triangle_torus"]
CONSISTENT_TORI = ["f0", "c3", "conifold", "c3_z3", "spp"]


def relabel(model: DimerModel, seed: int) -> DimerModel:
    """Same model with renamed and reordered vertices, arrows and faces.

    Face cycles are also rotated to a random starting arrow.
    """
    rng = random.Random(seed)
    d = model_to_dict(model)
    vnames = {v: f"v{i}" for i, v in enumerate(rng.sample(d["vertices"], len(d["vertices"])))}
    ids = [a["id"] for a in d["arrows"]]
    anames = {a: f"x{i}" for i, a in enumerate(rng.sample(ids, len(ids)))}
    arrows = [{"id": anames[a["id"]], "tail": vnames[a["tail"]], "head": vnames[a["head"]]} for a in d["arrows"]]
    rng.shuffle(arrows)
    faces = []
    for f in d["faces"]:
        cyc = [anames[a] for a in f["cycle"]]
        k = rng.randrange(len(cyc))
        faces.append({"sign": f["sign"], "cycle": cyc[k:] + cyc[:k]})
    rng.shuffle(faces)
    verts = list(vnames.values())
    rng.shuffle(verts)
    return model_from_dict({"name": model.name, "vertices": verts, "arrows": arrows, "faces": faces})


def rename_map(model: DimerModel, other: DimerModel, seed: int) -> dict[str, str]:
    """Arrow id map produced by ``relabel(model, seed)``."""
    rng = random.Random(seed)
    d = model_to_dict(model)
    rng.sample(d["vertices"], len(d["vertices"]))
    ids = [a["id"] for a in d["arrows"]]
    return {a: f"x{i}" for i, a in enumerate(rng.sample(ids, len(ids)))}
