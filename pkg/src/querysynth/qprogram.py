"""Hybrid classical/quantum query programs and their exact simulation.

A program is a tree. Classical queries and xor gadgets branch on one
oracle call; a unitary block runs U_1, Q, U_2, ..., Q, U_{t+1} on its
own small register and branches on the standard-basis measurement
outcome. Phase oracle convention: Q negates the amplitude of basis
state s iff x_{label(s)} = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt

from .boolfun import (TruthTable, table_and, table_exact, table_or,
                      table_threshold)

__all__ = [
    "EPSILON",
    "Output",
    "ClassicalQuery",
    "XorQuery",
    "UnitaryBlock",
    "AxiomLeaf",
    "Matrix",
    "SimulationReport",
    "query_cost",
    "classify_level",
    "collect_axioms",
    "apply_oracle",
    "simulate",
    "xor_gadget",
    "elaborate_xor",
    "parity_program",
    "nae_program",
    "axiom_queries",
    "axiom_rep_table",
    "axiom_citation",
    "axiom_table",
    "program_to_json",
    "program_from_json",
]

EPSILON = 1e-9

CITE_EXACT_THRESHOLD = ("Ambainis, Iraids and Smotrovs 2013: exact quantum "
                        "query complexity of EXACT and threshold functions")
CITE_AND_OR = ("Beals, Buhrman, Cleve, Mosca and de Wolf 2001: n queries are "
               "necessary and sufficient for AND_n / OR_n")
CITE_THREE_BIT = ("Montanaro, Jozsa and Mitchison 2011: every 3-bit function "
                  "not isomorphic to AND_3 has exact quantum query complexity "
                  "at most two")
CITE_AND_OR_3 = ("Montanaro, Jozsa and Mitchison 2011: two exact queries "
                 "suffice for x1 AND (x2 OR x3)")


@dataclass(frozen=True, eq=False)
class Matrix:
    """Exact dyadic matrix: entries divided by sqrt(2)**norm_exp."""

    rows: tuple
    norm_exp: int = 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    def scale(self) -> float:
        return 2.0 ** (-self.norm_exp / 2.0)

    def apply(self, state):
        s = self.scale()
        return tuple(sum(r[c] * state[c] for c in range(len(state))) * s
                     for r in self.rows)

    def is_unitary(self, tol: float = EPSILON) -> bool:
        n = self.dim
        if any(len(r) != n for r in self.rows):
            return False
        s2 = 2.0 ** (-self.norm_exp)
        for a in range(n):
            for b in range(n):
                dot = sum(self.rows[a][c] * complex(self.rows[b][c]).conjugate()
                          for c in range(n)) * s2
                want = 1.0 if a == b else 0.0
                if abs(dot - want) > tol:
                    return False
        return True


@dataclass(frozen=True, eq=False)
class Output:
    bit: int


@dataclass(frozen=True, eq=False)
class ClassicalQuery:
    var: int
    child0: object
    child1: object


@dataclass(frozen=True, eq=False)
class XorQuery:
    """One-query gadget branching on x_i xor x_j."""

    i: int
    j: int
    child0: object
    child1: object


@dataclass(frozen=True, eq=False)
class UnitaryBlock:
    """labels[s] is the variable queried by basis state s (None: untouched).

    len(matrices) = t + 1 for t oracle calls; children[s] continues after
    measuring outcome s.
    """

    labels: tuple
    matrices: tuple
    children: tuple


@dataclass(frozen=True, eq=False)
class AxiomLeaf:
    """Literature-backed leaf: the residual function on `variables` is
    promised computable in `queries` exact queries."""

    class_id: str
    variables: tuple
    queries: int
    citation: str
    k: int | None = None

    @property
    def arity(self) -> int:
        return len(self.variables)


def query_cost(node) -> int:
    """Worst-case number of oracle calls along any path."""
    if isinstance(node, Output):
        return 0
    if isinstance(node, (ClassicalQuery, XorQuery)):
        return 1 + max(query_cost(node.child0), query_cost(node.child1))
    if isinstance(node, UnitaryBlock):
        t = len(node.matrices) - 1
        return t + max(query_cost(ch) for ch in node.children)
    if isinstance(node, AxiomLeaf):
        return node.queries
    raise TypeError("not a program node: %r" % (node,))


def classify_level(node) -> str:
    has_axiom = False
    has_quantum = False

    def walk(nd):
        nonlocal has_axiom, has_quantum
        if isinstance(nd, AxiomLeaf):
            has_axiom = True
        elif isinstance(nd, (XorQuery, UnitaryBlock)):
            has_quantum = True
            kids = ((nd.child0, nd.child1) if isinstance(nd, XorQuery)
                    else nd.children)
            for ch in kids:
                walk(ch)
        elif isinstance(nd, ClassicalQuery):
            walk(nd.child0)
            walk(nd.child1)

    walk(node)
    if has_axiom:
        return "CountCertified"
    if has_quantum:
        return "FullySimulated"
    return "ClassicalOnly"


def collect_axioms(node, path: str = "program"):
    """All (path, AxiomLeaf) pairs in the tree."""
    out = []
    if isinstance(node, AxiomLeaf):
        out.append((path, node))
    elif isinstance(node, (ClassicalQuery, XorQuery)):
        out.extend(collect_axioms(node.child0, path + ".child0"))
        out.extend(collect_axioms(node.child1, path + ".child1"))
    elif isinstance(node, UnitaryBlock):
        for s, ch in enumerate(node.children):
            out.extend(collect_axioms(ch, "%s.m%d" % (path, s)))
    return out


def max_var(node) -> int:
    if isinstance(node, Output):
        return 0
    if isinstance(node, ClassicalQuery):
        return max(node.var, max_var(node.child0), max_var(node.child1))
    if isinstance(node, XorQuery):
        return max(node.i, node.j, max_var(node.child0), max_var(node.child1))
    if isinstance(node, UnitaryBlock):
        labeled = [v for v in node.labels if v is not None]
        return max([*labeled, 0] + [max_var(ch) for ch in node.children])
    if isinstance(node, AxiomLeaf):
        return max(node.variables)
    raise TypeError("not a program node: %r" % (node,))


# ---------------------------------------------------------------------------
# gadgets and builders


def apply_oracle(state, labels, m: int):
    """Phase oracle: negate amplitude of basis s iff x_{labels[s]} = 1."""
    out = []
    for s, amp in enumerate(state):
        v = labels[s]
        if v is not None and (m >> (v - 1)) & 1:
            amp = -amp
        out.append(amp)
    return tuple(out)


_H_IN = Matrix(((1, 1), (-1, 1)), 1)    # maps |0> to (|0> - |1>)/sqrt(2)
_H_OUT = Matrix(((1, -1), (1, 1)), 1)   # sends (|0> -|1>)/sqrt(2) back to |0>


def xor_gadget(i: int, j: int, child0, child1) -> XorQuery:
    """One oracle call deciding x_i xor x_j exactly."""
    if i == j or i < 1 or j < 1:
        raise ValueError("xor gadget needs two distinct variables")
    return XorQuery(i, j, child0, child1)


_elab_cache: dict[tuple[int, int], tuple] = {}


def elaborate_xor(node: XorQuery) -> UnitaryBlock:
    """The unitary realization: prepare (|i> - |j>)/sqrt(2), query once,
    rotate back; outcome 0 means x_i = x_j."""
    key = (node.i, node.j)
    parts = _elab_cache.get(key)
    if parts is None:
        parts = ((node.i, node.j), (_H_IN, _H_OUT))
        _elab_cache[key] = parts
    labels, mats = parts
    return UnitaryBlock(labels, mats, (node.child0, node.child1))


def parity_program(n: int, invert: bool = False):
    """Exact parity of n bits with ceil(n/2) queries (xor gadget per pair)."""
    if n < 1:
        raise ValueError("parity needs arity >= 1")
    memo: dict = {}

    def fold(idx: int, acc: int):
        key = (idx, acc)
        got = memo.get(key)
        if got is not None:
            return got
        if idx > n:
            node = Output(acc ^ (1 if invert else 0))
        elif idx == n:
            node = ClassicalQuery(idx, fold(idx + 1, acc), fold(idx + 1, acc ^ 1))
        else:
            node = XorQuery(idx, idx + 1,
                            fold(idx + 2, acc), fold(idx + 2, acc ^ 1))
        memo[key] = node
        return node

    return fold(1, 0)


def nae_program(n: int, invert: bool = False):
    """Not-all-equal via the chain of neighbour xors, n-1 queries."""
    if n < 2:
        raise ValueError("not-all-equal needs arity >= 2")
    hit = Output(0 if invert else 1)
    node = Output(1 if invert else 0)
    for t in range(n - 1, 0, -1):
        node = XorQuery(t, t + 1, node, hit)
    return node


# ---------------------------------------------------------------------------
# simulation


@dataclass
class SimulationReport:
    exact: bool
    worst_wrong_amplitude: float
    queries_worst_case: int
    outcomes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "worstWrongAmplitude": self.worst_wrong_amplitude,
            "queriesWorstCase": self.queries_worst_case,
            "outcomes": {str(m): b for m, b in sorted(self.outcomes.items())},
        }


def _validate_blocks(node, path: str):
    if isinstance(node, AxiomLeaf):
        raise ValueError("not simulatable: axiom leaf at %s" % path)
    if isinstance(node, ClassicalQuery):
        _validate_blocks(node.child0, path + ".child0")
        _validate_blocks(node.child1, path + ".child1")
    elif isinstance(node, XorQuery):
        _validate_blocks(node.child0, path + ".child0")
        _validate_blocks(node.child1, path + ".child1")
    elif isinstance(node, UnitaryBlock):
        dim = len(node.labels)
        if len(node.children) != dim:
            raise ValueError("dimension mismatch at %s: %d children for "
                             "dimension %d" % (path, len(node.children), dim))
        if len(node.matrices) < 1:
            raise ValueError("unitary block at %s has no matrices" % path)
        for mat in node.matrices:
            if mat.dim != dim or any(len(r) != dim for r in mat.rows):
                raise ValueError("dimension mismatch in matrix at %s" % path)
            if not mat.is_unitary():
                raise ValueError("non-unitary block at %s" % path)
        for s, ch in enumerate(node.children):
            _validate_blocks(ch, "%s.m%d" % (path, s))


def _run(node, m: int):
    """All measurement branches for input m: (amplitude magnitude, output
    bit, queries used along the branch)."""
    if isinstance(node, Output):
        return ((1.0, node.bit, 0),)
    if isinstance(node, ClassicalQuery):
        child = node.child1 if (m >> (node.var - 1)) & 1 else node.child0
        return tuple((a, o, q + 1) for a, o, q in _run(child, m))
    if isinstance(node, XorQuery):
        node = elaborate_xor(node)
    # unitary block
    state = tuple(1.0 + 0.0j if s == 0 else 0.0j
                  for s in range(len(node.labels)))
    state = node.matrices[0].apply(state)
    for mat in node.matrices[1:]:
        state = apply_oracle(state, node.labels, m)
        state = mat.apply(state)
    t = len(node.matrices) - 1
    out = []
    for s, amp in enumerate(state):
        mag = abs(amp)
        if mag == 0.0:
            # branch taken with probability exactly zero; skipping it
            # cannot change the worst wrong amplitude or query count
            continue
        for a, o, q in _run(node.children[s], m):
            out.append((mag * a, o, q + t))
    return tuple(out)


def simulate(program, f: TruthTable) -> SimulationReport:
    """Run the program on every input of f; exact iff every measurement
    branch of weight above EPSILON yields f(x)."""
    mv = max_var(program)
    if mv > f.arity:
        raise ValueError("unbound variable x%d for arity %d" % (mv, f.arity))
    _validate_blocks(program, "program")
    worst_wrong = 0.0
    worst_queries = 0
    outcomes = {}
    for m in range(f.size):
        want = f.value(m)
        best_amp = -1.0
        best_out = 0
        for amp, o, q in _run(program, m):
            if o != want and amp > worst_wrong:
                worst_wrong = amp
            if amp > EPSILON and q > worst_queries:
                worst_queries = q
            if amp > best_amp:
                best_amp = amp
                best_out = o
        outcomes[m] = best_out
    return SimulationReport(worst_wrong <= EPSILON, worst_wrong,
                            worst_queries, outcomes)


# ---------------------------------------------------------------------------
# axiom table: the closed list of literature-backed leaves


def axiom_queries(class_id: str, n: int, k: int | None = None) -> int:
    if class_id == "exact":
        if k is None or not 0 <= k <= n:
            raise ValueError("exact-k needs 0 <= k <= n")
        return max(k, n - k)
    if class_id == "threshold":
        if k is None or not 1 <= k <= n:
            raise ValueError("threshold needs 1 <= k <= n")
        return max(k, n - k + 1)
    if class_id in ("and", "or"):
        return n
    if class_id == "and_or_3":
        if n != 3:
            raise ValueError("and_or_3 is a 3-variable class")
        return 2
    if class_id == "three_bit":
        if n != 3:
            raise ValueError("three_bit is a 3-variable class")
        return 2
    raise ValueError("unknown axiom class %r" % class_id)


def axiom_rep_table(class_id: str, n: int, k: int | None = None) -> TruthTable:
    if class_id == "exact":
        return table_exact(n, k)
    if class_id == "threshold":
        return table_threshold(n, k)
    if class_id == "and":
        return table_and(n)
    if class_id == "or":
        return table_or(n)
    if class_id == "and_or_3":
        return TruthTable(3, 0b10101000)
    if class_id == "three_bit":
        raise ValueError("three_bit is a family, not a single class "
                         "representative")
    raise ValueError("unknown axiom class %r" % class_id)


def axiom_citation(class_id: str) -> str:
    if class_id in ("exact", "threshold"):
        return CITE_EXACT_THRESHOLD
    if class_id in ("and", "or"):
        return CITE_AND_OR
    if class_id == "and_or_3":
        return CITE_AND_OR_3
    if class_id == "three_bit":
        return CITE_THREE_BIT
    raise ValueError("unknown axiom class %r" % class_id)


def axiom_table(max_arity: int = 5):
    """Concrete rows (class_id, n, k, queries, citation) up to max_arity."""
    rows = []
    for n in range(1, max_arity + 1):
        for k in range(0, n + 1):
            rows.append(("exact", n, k, axiom_queries("exact", n, k),
                         CITE_EXACT_THRESHOLD))
        for k in range(1, n + 1):
            rows.append(("threshold", n, k, axiom_queries("threshold", n, k),
                         CITE_EXACT_THRESHOLD))
        rows.append(("and", n, None, n, CITE_AND_OR))
        rows.append(("or", n, None, n, CITE_AND_OR))
    if max_arity >= 3:
        rows.append(("and_or_3", 3, None, 2, CITE_AND_OR_3))
        rows.append(("three_bit", 3, None, 2, CITE_THREE_BIT))
    return tuple(rows)


# ---------------------------------------------------------------------------
# serialization


def _matrix_to_json(mat: Matrix) -> dict:
    return {
        "normExp": mat.norm_exp,
        "rows": [[[complex(e).real, complex(e).imag] for e in row]
                 for row in mat.rows],
    }


def _matrix_from_json(obj) -> Matrix:
    rows = tuple(tuple(complex(re, im) if im else (int(re) if float(re).is_integer() else re)
                       for re, im in row)
                 for row in obj["rows"])
    return Matrix(rows, int(obj["normExp"]))


def program_to_json(node) -> dict:
    if isinstance(node, Output):
        return {"kind": "output", "bit": node.bit}
    if isinstance(node, ClassicalQuery):
        return {"kind": "cq", "var": node.var,
                "child0": program_to_json(node.child0),
                "child1": program_to_json(node.child1)}
    if isinstance(node, XorQuery):
        return {"kind": "xq", "i": node.i, "j": node.j,
                "child0": program_to_json(node.child0),
                "child1": program_to_json(node.child1)}
    if isinstance(node, UnitaryBlock):
        return {"kind": "ub",
                "labels": list(node.labels),
                "matrices": [_matrix_to_json(m) for m in node.matrices],
                "children": [program_to_json(ch) for ch in node.children]}
    if isinstance(node, AxiomLeaf):
        out = {"kind": "axiom", "class": node.class_id,
               "vars": list(node.variables), "queries": node.queries,
               "citation": node.citation}
        if node.k is not None:
            out["k"] = node.k
        return out
    raise TypeError("not a program node: %r" % (node,))


def program_from_json(obj) -> object:
    if not isinstance(obj, dict):
        raise ValueError("program node must be a JSON object")
    kind = obj.get("kind")
    if kind == "output":
        bit = obj["bit"]
        if bit not in (0, 1):
            raise ValueError("output bit must be 0 or 1")
        return Output(bit)
    if kind == "cq":
        return ClassicalQuery(int(obj["var"]),
                              program_from_json(obj["child0"]),
                              program_from_json(obj["child1"]))
    if kind == "xq":
        return XorQuery(int(obj["i"]), int(obj["j"]),
                        program_from_json(obj["child0"]),
                        program_from_json(obj["child1"]))
    if kind == "ub":
        labels = tuple(None if v is None else int(v) for v in obj["labels"])
        mats = tuple(_matrix_from_json(m) for m in obj["matrices"])
        children = tuple(program_from_json(ch) for ch in obj["children"])
        return UnitaryBlock(labels, mats, children)
    if kind == "axiom":
        return AxiomLeaf(obj["class"], tuple(int(v) for v in obj["vars"]),
                         int(obj["queries"]), obj["citation"],
                         obj.get("k"))
    raise ValueError("unknown program node kind %r" % kind)
