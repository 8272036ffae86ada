"""DIMACS CNF reading and the clause encoding into ``neg``/``or`` chains."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .core import Var
from .engine import BoolStore

log = logging.getLogger(__name__)


class DimacsError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class CnfInstance:
    num_vars: int
    clauses: List[List[int]]
    name: str = ""

    @property
    def is_yes_instance(self) -> Optional[bool]:
        """Status encoded in an AIM-style file name, if any."""
        if "-yes" in self.name:
            return True
        if "-no-" in self.name:
            return False
        return None


def parse_dimacs(text: str, name: str = "") -> CnfInstance:
    num_vars = None
    declared = 0
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            # SATLIB trailer: "%" followed by a lone "0"
            break
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed problem line {line!r}", lineno)
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed problem line {line!r}", lineno) from None
            if num_vars < 0 or declared < 0:
                raise DimacsError("negative counts in problem line", lineno)
            continue
        if num_vars is None:
            raise DimacsError("clause data before the 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"not an integer: {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > num_vars:
                raise DimacsError(f"literal {lit} out of range 1..{num_vars}", lineno)
            else:
                current.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        clauses.append(current)
    if len(clauses) != declared:
        log.warning("%s: header declares %d clauses, found %d", name or "<input>", declared, len(clauses))
    return CnfInstance(num_vars, clauses, name)


def read_dimacs(path) -> CnfInstance:
    with open(path) as fh:
        text = fh.read()
    return parse_dimacs(text, os.path.basename(str(path)))


@dataclass
class Encoding:
    problem_vars: List[Var]
    neg_companion: Dict[int, Var] = field(default_factory=dict)
    chain_vars: List[Var] = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return len(self.problem_vars)


def encode(instance: CnfInstance, store: BoolStore) -> Encoding:
    """Add the clauses of ``instance`` to ``store`` with empty justifications.

    A clause ``t1 v ... v tk`` becomes ``or(t1,t2,R1), or(R1,t3,R2), ...,
    or(R(k-2),tk,1)``; a negative literal ``-j`` uses a companion ``Ej`` tied
    to ``Vj`` by one shared ``neg(Vj,Ej)``.  Unit clauses become
    ``or(t,t,1)`` and an empty clause ``or(0,0,1)``.
    """
    enc = Encoding([Var(f"V{j}") for j in range(1, instance.num_vars + 1)])
    for clause in instance.clauses:
        terms = []
        for lit in clause:
            v = enc.problem_vars[abs(lit) - 1]
            if lit > 0:
                terms.append(v)
                continue
            comp = enc.neg_companion.get(-lit)
            if comp is None:
                comp = enc.neg_companion[-lit] = Var(f"E{-lit}")
                store.add_neg(v, comp)
            terms.append(comp)
        if not terms:
            store.add_or(0, 0, 1)
        elif len(terms) == 1:
            store.add_or(terms[0], terms[0], 1)
        else:
            acc = terms[0]
            for t in terms[1:-1]:
                r = Var(f"R{len(enc.chain_vars) + 1}")
                enc.chain_vars.append(r)
                store.add_or(acc, t, r)
                acc = r
            store.add_or(acc, terms[-1], 1)
    return enc


def decode_model(enc: Encoding, store: BoolStore) -> Dict[int, int]:
    model = {}
    for j, v in enumerate(enc.problem_vars, 1):
        val = store.value(v)
        if val is None:
            raise RuntimeError(f"problem variable {v} is not bound to a constant")
        model[j] = val
    return model


def satisfies(clauses: List[List[int]], model: Dict[int, int]) -> bool:
    return all(any((model[abs(l)] == 1) == (l > 0) for l in c) for c in clauses)
