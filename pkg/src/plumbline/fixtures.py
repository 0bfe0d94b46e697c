"""Bundled data files and the four worked cases."""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from typing import Optional

DATA = resources.files("plumbline") / "data"


@dataclass(frozen=True)
class Case:
    """A knot whose mirror's branched double cover bounds the plumbing ``graph``."""

    name: str
    knot: str
    graph: str
    ball: Optional[str] = None


CASES = (
    Case("Y1", "8_20", "w1", "a1"),
    Case("Y2", "9_46", "w2"),
    Case("Y3", "10_137", "w3", "a3"),
    Case("Y4", "10_140", "w4"),
)


def data_path(name: str) -> str:
    return str(DATA / name)


def resolve_path(arg: str, suffix: str) -> str:
    """A real file path, or the bundled fixture of that name."""
    if os.path.exists(arg):
        return arg
    base = os.path.basename(arg)
    for cand in (base, base + suffix):
        p = DATA / cand
        if p.is_file():
            return str(p)
    return arg


def graph_path(name: str) -> str:
    return data_path(f"{name}.json")


def ball_path(name: str) -> str:
    return data_path(f"{name}.json")


def pd_path(name: str) -> str:
    return data_path(f"{name}.pd")


def kh_path(name: str) -> str:
    return data_path(f"{name}.kh.json")
