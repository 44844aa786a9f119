"""Named links as braid words."""

from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

from .braids import BraidWord, parse_braid

__all__ = ["load_registry", "lookup", "torus_braid"]

_ALIASES = {"T(2,4)": "torus(2,4)", "T(2,5)": "torus(2,5)", "t24": "torus(2,4)", "t25": "torus(2,5)"}


def load_registry(path: str | Path | None = None) -> dict:
    if path is None:
        text = resources.files("lmovkit").joinpath("data/links.json").read_text()
    else:
        text = Path(path).read_text()
    raw = json.loads(text)
    return {name: parse_braid(v["word"], v["strands"]) for name, v in raw.items()}


def torus_braid(p: int, q: int) -> BraidWord:
    """(sigma_1 ... sigma_(p-1))^q on p strands."""
    if p < 1:
        raise ValueError("torus link needs p >= 1")
    sign = 1 if q >= 0 else -1
    return BraidWord(p, tuple(sign * i for _ in range(abs(q)) for i in range(1, p)))


def lookup(name: str, registry: dict | None = None) -> BraidWord:
    reg = registry if registry is not None else load_registry()
    key = _ALIASES.get(name, name)
    if key in reg:
        return reg[key]
    m = re.fullmatch(r"(?:torus|T)\((\d+),\s*(-?\d+)\)", key)
    if m:
        return torus_braid(int(m.group(1)), int(m.group(2)))
    raise KeyError(f"unknown link {name!r}; known: {', '.join(sorted(reg))}")
