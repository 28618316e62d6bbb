"""Bundled example models and their expected verdicts."""
from __future__ import annotations

import json
from importlib import resources

from ..model import DimerModel, load_model


def _files():
    return resources.files(__name__)


def manifest() -> dict:
    return json.loads((_files() / "manifest.json").read_text(encoding="utf-8"))


def names() -> list[str]:
    return list(manifest()["order"])


def path(name: str):
    entry = manifest()["models"].get(name)
    if entry is None:
        raise KeyError(f"no corpus model named {name!r}")
    return _files() / entry["file"]


def load(name: str) -> DimerModel:
    p = path(name)
    return load_model(p.read_text(encoding="utf-8"), source=p.name)
