"""Named small 3-graphs and forbidden-family resolution.

Names: ``K3``..``K9``, ``K4-``, ``F32``, ``F7``, ``edge`` (a single 3-edge),
``SKs:<s>`` (suspension of the complete graph on ``s`` vertices) and
``FKs:<s>`` (co-spanned complete 3-graph on ``s`` vertices). A family spec is
a comma-separated list of names and/or paths to 3-graph files.
"""

from __future__ import annotations

import os
import re

from .constructions import cospan, suspension
from .hypergraph import ForbiddenFamily, InputError, TriSystem, complete, complete_pairgraph
from .steiner import FANO_EDGES

BUILTIN_NAMES = ("K3", "K4", "K5", "K6", "K7", "K8", "K9", "K4-", "F32", "F7", "edge", "SKs:<s>", "FKs:<s>")


def k4_minus() -> TriSystem:
    return TriSystem(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])


def f32() -> TriSystem:
    return TriSystem(5, [(0, 1, 2), (0, 1, 3), (0, 1, 4), (2, 3, 4)])


def fano_plane() -> TriSystem:
    return TriSystem(7, FANO_EDGES)


def single_edge() -> TriSystem:
    return TriSystem(3, [(0, 1, 2)])


def builtin(name: str) -> TriSystem:
    """Resolve one built-in name to its 3-graph."""
    m = re.fullmatch(r"K([3-9])", name)
    if m:
        return complete(int(m.group(1)))
    m = re.fullmatch(r"(SKs|FKs):(\d+)", name)
    if m:
        s = int(m.group(2))
        if m.group(1) == "SKs":
            if s < 2:
                raise InputError("SKs:<s> needs s >= 2")
            return suspension(complete_pairgraph(s))
        if s < 3:
            raise InputError("FKs:<s> needs s >= 3")
        return cospan(complete(s))
    table = {"K4-": k4_minus, "F32": f32, "F7": fano_plane, "edge": single_edge}
    if name in table:
        return table[name]()
    raise InputError(f"unknown family name {name!r}; built-ins: {', '.join(BUILTIN_NAMES)}")


def resolve_family(spec: str) -> ForbiddenFamily:
    """Family from a comma-separated list of built-in names or 3-graph files."""
    from .formats import read_trisystem

    members, names = [], []
    for item in (x.strip() for x in spec.split(",")):
        if not item:
            continue
        if os.path.exists(item):
            members.append(read_trisystem(item))
            names.append(os.path.basename(item))
        else:
            members.append(builtin(item))
            names.append(item)
    if not members:
        raise InputError("empty forbidden family")
    return ForbiddenFamily(tuple(members), tuple(names))
