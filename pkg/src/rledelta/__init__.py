"""Substring-complexity delta from a run-length encoding, in O~(r) time."""

from ._kernels import BACKEND
from .dmn import (
    build_rem_lists,
    collect_dmn_roots,
    collect_explicit_d_nodes,
    compute_b_depths,
)
from .lca import LcaOracle, build_lca_oracle
from .oracle import naive_delta, naive_profile, quadratic_profile
from .rle import RleString, Run, decode, encode, from_runs, parse_rle, serialize_rle
from .rstree import MetaString, RSuffixTree, build_meta_string, build_rsuffix_tree
from .sweep import DeltaResult, build_events, compute_delta, delta_from_rle, full_profile

__all__ = [
    "BACKEND",
    "DeltaResult",
    "LcaOracle",
    "MetaString",
    "RSuffixTree",
    "RleString",
    "Run",
    "build_events",
    "build_lca_oracle",
    "build_meta_string",
    "build_rem_lists",
    "build_rsuffix_tree",
    "collect_dmn_roots",
    "collect_explicit_d_nodes",
    "compute_b_depths",
    "compute_delta",
    "decode",
    "delta_from_rle",
    "encode",
    "from_runs",
    "full_profile",
    "naive_delta",
    "naive_profile",
    "parse_rle",
    "quadratic_profile",
    "serialize_rle",
]

__version__ = "0.1.0"


def warmup() -> None:
    """Trigger JIT compilation of all kernels on a tiny input."""
    rle = encode("aabbbaabbaaa")
    delta_from_rle(rle)
    naive_delta("aabbbaabbaaa")
