"""Search kernels with a compiled core and a pure-Python fallback.

The compiled module is used when it imports and the host fits in a 64-bit
vertex mask. Set ``CODEGREE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _purepy

FOUND = _purepy.FOUND
INFEASIBLE = _purepy.INFEASIBLE
TIMEOUT = _purepy.TIMEOUT

_compiled = None
if os.environ.get("CODEGREE_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
MAX_COMPILED_VERTICES = 64


def backends():
    """Available kernel modules keyed by name."""
    out = {"python": _purepy}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def _pick(n):
    if _compiled is not None and n <= MAX_COMPILED_VERTICES:
        return _compiled
    return _purepy


def find_clique(nbr, n, s):
    return _pick(n).find_clique(nbr, n, s)


def find_embedding(nbr, n, plan):
    return _pick(n).find_embedding(nbr, n, plan)


def iter_embeddings(nbr, n, plan):
    return _purepy.iter_embeddings(nbr, n, plan)


def search_feasible(n_pairs, tri_pairs, copies_of, copy_triples, d, e, force_first, deadline):
    mod = _compiled if _compiled is not None else _purepy
    return mod.search_feasible(
        n_pairs, tri_pairs, copies_of, copy_triples, d, e, force_first, deadline
    )
