"""Justification-tracking Boolean constraint store with intelligent backtracking search."""
from .core import EMPTY, Var
from .engine import BoolStore, ConsistentStoreError
from .cnf import CnfInstance, decode_model, encode, parse_dimacs, read_dimacs
from .search import STRATEGIES, SolveOutcome, cssp, solve

__all__ = [
    "EMPTY", "Var", "BoolStore", "ConsistentStoreError", "CnfInstance", "decode_model",
    "encode", "parse_dimacs", "read_dimacs", "STRATEGIES", "SolveOutcome", "cssp", "solve",
]
