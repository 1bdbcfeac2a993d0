"""Loader for the published constants shipped in ``data/constants.yaml``."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

import yaml

from .arith import rat
from .curve import CurveQ, PointQ


@lru_cache(maxsize=1)
def load_constants() -> dict:
    text = resources.files("trident").joinpath("data/constants.yaml").read_text()
    return yaml.safe_load(text)


def point(entry) -> PointQ:
    if entry == "O":
        return PointQ()
    x, y = entry
    return PointQ(rat(x), rat(y))


def points(entries) -> list[PointQ]:
    return [point(e) for e in entries]


def curve(ainvs) -> CurveQ:
    return CurveQ(*(rat(a) for a in ainvs))


def rats(values):
    return [rat(v) for v in values]
