"""Relaxed integer program for categorical edge clustering, plus rounding.

The exact formulation has one binary variable per node-category pair (1 iff
the node is NOT given that category), one per edge (1 iff the edge is a
mistake), the per-node constraint that exactly one category is taken, and a
cover constraint tying each edge variable above its nodes' variables for the
edge's own category.  Relaxing to [0, 1] gives an LP whose optimum lower
bounds the clustering optimum; with two categories every basic optimum is
integral.  Two rounding schemes recover clusterings from fractional optima:
a deterministic half-threshold rule (factor 2) and a randomized
priority-permutation rule whose threshold tightens the factor to
min(2 - 1/k, 2 - 1/(r+1)).

Wildcard edges are supported for k = 2 only, encoded as one edge variable per
category; that charges every clustering a constant extra ``weight``, which is
subtracted back out of reported objectives.

Solving is delegated to HiGHS via scipy (reliable basic optimal solutions);
an external-solver escape hatch trades files in the text formats below.

LP text format (``write_lp_text``/``parse_lp_text``)::

    \\ comment
    Minimize
     obj: 2 xe0 + 1.5 xe1
    Subject To
     nd0: xn0c1 + xn0c2 = 1
     cv0: xn0c1 - xe0 <= 0
    Bounds
     0 <= xn0c1 <= 1
    End

Variables are ``xn{v}c{c}`` (node v not in category c) and ``xe{j}`` (edge
term j).  A solution file is one ``<name> <value>`` pair per line, ``#``
comments allowed, every variable present.

Environment: ``CATEC_LP_SOLVER`` set to ``embedded`` (default) or
``external:<path>``; the external command is invoked as
``<path> <lp-file> <solution-file>``.
"""

from __future__ import annotations

import os
import re
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.optimize
import scipy.sparse as sp

from .baselines import majority_labels
from .errors import (
    BadThreshold,
    InfeasibleLp,
    IterationLimit,
    ParseError,
    WildcardUnsupported,
    WrongCategoryCount,
)
from .hypergraph import WILDCARD, Clustering, LabeledHypergraph, clustering

FEASIBILITY_TOL = 1e-7
INTEGRALITY_TOL = 1e-7


@dataclass(frozen=True)
class LpInstance:
    """The relaxation in matrix form, with deterministic variable order.

    Variables: node-category variables first (node-major, category-minor),
    then one variable per edge term.  ``edge_terms`` lists (edge index,
    category) pairs; labeled edges contribute one term, wildcard edges (k=2)
    one term per category.  ``offset`` is the constant subtracted from the
    raw LP objective to express the clustering objective.
    """

    hypergraph: LabeledHypergraph
    edge_terms: tuple[tuple[int, int], ...]
    c: np.ndarray
    a_eq: sp.csr_matrix
    b_eq: np.ndarray
    a_ub: sp.csr_matrix
    b_ub: np.ndarray
    offset: float

    @property
    def node_var_count(self) -> int:
        return self.hypergraph.node_count * self.hypergraph.category_count

    @property
    def var_count(self) -> int:
        return self.node_var_count + len(self.edge_terms)

    def node_var(self, v: int, c: int) -> int:
        return v * self.hypergraph.category_count + (c - 1)

    def var_name(self, j: int) -> str:
        k = self.hypergraph.category_count
        if j < self.node_var_count:
            return f"xn{j // k}c{j % k + 1}"
        return f"xe{j - self.node_var_count}"


@dataclass(frozen=True)
class LpSolution:
    instance: LpInstance
    values: np.ndarray
    objective: float
    status: str
    is_integral: bool

    def node_values(self) -> np.ndarray:
        """(n, k) view of the node-category variable values."""
        h = self.instance.hypergraph
        return self.values[: self.instance.node_var_count].reshape(
            h.node_count, h.category_count
        )


def build_lp(h: LabeledHypergraph) -> LpInstance:
    """Assemble the relaxation for an instance.

    Wildcard edges are rejected for k > 2: the objective's monochromatic rule
    has no linear encoding there.
    """
    n, k = h.node_count, h.category_count
    if k < 2:
        raise WrongCategoryCount("relaxation needs at least 2 categories")
    terms: list[tuple[int, int]] = []
    offset = 0.0
    for idx, e in enumerate(h.edges):
        if e.label == WILDCARD:
            if k > 2:
                raise WildcardUnsupported("wildcard edges only supported for k = 2")
            terms.append((idx, 1))
            terms.append((idx, 2))
            offset += e.weight
        else:
            terms.append((idx, e.label))
    nv = n * k
    num_vars = nv + len(terms)

    c = np.zeros(num_vars)
    for t, (idx, _) in enumerate(terms):
        c[nv + t] = h.edges[idx].weight

    eq_rows = np.repeat(np.arange(n), k)
    eq_cols = np.arange(nv)
    a_eq = sp.csr_matrix(
        (np.ones(nv), (eq_rows, eq_cols)), shape=(n, num_vars)
    )
    b_eq = np.full(n, float(k - 1))

    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    row = 0
    for t, (idx, cat) in enumerate(terms):
        for v in h.edges[idx].nodes:
            rows.extend((row, row))
            cols.extend((v * k + (cat - 1), nv + t))
            vals.extend((1.0, -1.0))
            row += 1
    a_ub = sp.csr_matrix((vals, (rows, cols)), shape=(row, num_vars))
    b_ub = np.zeros(row)

    return LpInstance(h, tuple(terms), c, a_eq, b_eq, a_ub, b_ub, offset)


def _solve_embedded(lp: LpInstance) -> np.ndarray:
    res = scipy.optimize.linprog(
        lp.c,
        A_ub=lp.a_ub if lp.a_ub.shape[0] else None,
        b_ub=lp.b_ub if lp.a_ub.shape[0] else None,
        A_eq=lp.a_eq,
        b_eq=lp.b_eq,
        bounds=(0, 1),
        method="highs-ds",
    )
    if res.status == 1:
        raise IterationLimit(res.message)
    if res.status != 0:
        raise InfeasibleLp(res.message)
    return np.asarray(res.x)


def solve_lp(lp: LpInstance, solver: str | None = None) -> LpSolution:
    """Solve the relaxation to a basic optimum.

    ``solver`` is ``embedded`` (default), or ``external:<path>`` to shell out
    via the LP text format; unset falls back to the CATEC_LP_SOLVER
    environment variable.
    """
    solver = solver or os.environ.get("CATEC_LP_SOLVER", "embedded")
    if solver == "embedded":
        values = _solve_embedded(lp)
    elif solver.startswith("external:"):
        values = _solve_external(lp, solver.split(":", 1)[1])
    else:
        raise ValueError(f"unknown LP solver {solver!r}")
    objective = float(lp.c @ values) - lp.offset
    integral = bool(
        np.all(np.minimum(np.abs(values), np.abs(values - 1.0)) <= INTEGRALITY_TOL)
    )
    return LpSolution(lp, values, objective, "optimal", integral)


def lower_bound(sol: LpSolution) -> float:
    """LP optimum: a certified lower bound on the clustering optimum."""
    return sol.objective


def theorem_threshold(k: int, r: int) -> float:
    """Rounding threshold attaining min(2 - 1/k, 2 - 1/(r+1)) in expectation.

    The category-count bound wins iff k <= r + 1; both branches stay inside
    [1/2, 2/3].
    """
    if k < 2 or r < 2:
        raise ValueError("need k >= 2 and r >= 2")
    if k <= r + 1:
        return k / (2 * k - 1)
    return (r + 1) / (2 * r + 1)


def approx_bound(k: int, r: int) -> float:
    return min(2 - 1 / k, 2 - 1 / (r + 1))


def _fallback_labels(lp: LpInstance) -> np.ndarray:
    # unassigned nodes take their majority-vote category: never worse than an
    # arbitrary pick, and deterministic
    return majority_labels(lp.hypergraph)


def round_deterministic(sol: LpSolution) -> Clustering:
    """Half-threshold rounding: at worst twice the LP lower bound.

    A node takes the category whose variable is strictly below 1/2 (feasible
    solutions admit at most one); nodes with none fall back to their
    majority-vote label.
    """
    x = sol.node_values()
    fallback = _fallback_labels(sol.instance)
    labels = np.empty(x.shape[0], dtype=np.int64)
    for v in range(x.shape[0]):
        winners = np.flatnonzero(x[v] < 0.5)
        labels[v] = winners[0] + 1 if winners.size else fallback[v]
    return clustering(labels)


def round_randomized(sol: LpSolution, t: float, rng: np.random.Generator) -> Clustering:
    """Priority-permutation rounding with threshold ``t`` in [1/2, 2/3].

    Categories are processed in a uniform random priority order; a category
    claims every still-unassigned node whose variable is below ``t``.
    Leftover nodes fall back to their majority-vote label.
    """
    if not (0.5 - 1e-12 <= t <= 2 / 3 + 1e-12):
        raise BadThreshold(f"threshold {t} outside [1/2, 2/3]")
    h = sol.instance.hypergraph
    x = sol.node_values()
    labels = np.zeros(h.node_count, dtype=np.int64)
    for cat in rng.permutation(h.category_count) + 1:
        wanted = (x[:, cat - 1] < t) & (labels == 0)
        labels[wanted] = cat
    leftover = labels == 0
    if leftover.any():
        labels[leftover] = _fallback_labels(sol.instance)[leftover]
    return clustering(labels)


# --- text interchange -------------------------------------------------------


def write_lp_text(lp: LpInstance) -> str:
    """Serialize the instance in the documented LP text grammar."""
    out = ["\\ catec-lp v1", "Minimize"]
    obj = " + ".join(
        f"{lp.c[j]:.17g} {lp.var_name(j)}"
        for j in range(lp.var_count)
        if lp.c[j] != 0
    )
    out.append(f" obj: {obj if obj else '0 ' + lp.var_name(0)}")
    out.append("Subject To")
    k = lp.hypergraph.category_count
    for v in range(lp.hypergraph.node_count):
        lhs = " + ".join(f"xn{v}c{c}" for c in range(1, k + 1))
        out.append(f" nd{v}: {lhs} = {k - 1}")
    row = 0
    for t, (idx, cat) in enumerate(lp.edge_terms):
        for v in lp.hypergraph.edges[idx].nodes:
            out.append(f" cv{row}: xn{v}c{cat} - xe{t} <= 0")
            row += 1
    out.append("Bounds")
    for j in range(lp.var_count):
        out.append(f" 0 <= {lp.var_name(j)} <= 1")
    out.append("End")
    return "\n".join(out) + "\n"


_TERM_RE = re.compile(r"([+-])?\s*(\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)?\s*([A-Za-z]\w*)")


def _parse_linear(expr: str) -> dict[str, float]:
    coeffs: dict[str, float] = {}
    pos = 0
    expr = expr.strip()
    while pos < len(expr):
        m = _TERM_RE.match(expr, pos)
        if m is None:
            raise ParseError(f"bad linear expression near {expr[pos:pos+20]!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        coeffs[m.group(3)] = coeffs.get(m.group(3), 0.0) + sign * coef
        pos = m.end()
        while pos < len(expr) and expr[pos] in " \t":
            pos += 1
    return coeffs


def parse_lp_text(text: str):
    """Parse the grammar back into (c, a_eq, b_eq, a_ub, b_ub, names).

    Supports exactly the subset ``write_lp_text`` emits; bounds must be
    [0, 1].  Intended for round-trip checks and external solver shims.
    """
    section = None
    names: dict[str, int] = {}
    obj: dict[str, float] = {}
    eqs: list[tuple[dict[str, float], float]] = []
    ubs: list[tuple[dict[str, float], float]] = []

    def var(name: str) -> int:
        if name not in names:
            names[name] = len(names)
        return names[name]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("\\")[0].strip()
        if not line:
            continue
        low = line.lower()
        if low in ("minimize", "subject to", "bounds", "end"):
            section = low
            continue
        if section == "minimize":
            _, _, expr = line.partition(":")
            obj = _parse_linear(expr)
            for name in obj:
                var(name)
        elif section == "subject to":
            _, _, body = line.partition(":")
            if "<=" in body:
                lhs, rhs = body.split("<=")
                ubs.append((_parse_linear(lhs), float(rhs)))
                target = ubs[-1][0]
            elif "=" in body:
                lhs, rhs = body.split("=")
                eqs.append((_parse_linear(lhs), float(rhs)))
                target = eqs[-1][0]
            else:
                raise ParseError("constraint without relation", lineno)
            for name in target:
                var(name)
        elif section == "bounds":
            m = re.match(r"0\s*<=\s*(\w+)\s*<=\s*1$", line)
            if m is None:
                raise ParseError("only bounds of the form 0 <= x <= 1", lineno)
            var(m.group(1))
        elif section == "end":
            raise ParseError("content after End", lineno)
        else:
            raise ParseError("content before Minimize", lineno)

    num = len(names)
    c = np.zeros(num)
    for name, coef in obj.items():
        c[names[name]] = coef

    def matrix(rows):
        data = sp.lil_matrix((len(rows), num))
        rhs = np.zeros(len(rows))
        for i, (coeffs, b) in enumerate(rows):
            for name, coef in coeffs.items():
                data[i, names[name]] = coef
            rhs[i] = b
        return data.tocsr(), rhs

    a_eq, b_eq = matrix(eqs)
    a_ub, b_ub = matrix(ubs)
    return c, a_eq, b_eq, a_ub, b_ub, names


def parse_solution_values(lp: LpInstance, text: str) -> np.ndarray:
    """Read a ``<name> <value>`` solution file back into variable order."""
    seen: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#")[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected '<name> <value>'", lineno)
        seen[parts[0]] = float(parts[1])
    values = np.zeros(lp.var_count)
    for j in range(lp.var_count):
        name = lp.var_name(j)
        if name not in seen:
            raise ParseError(f"solution missing variable {name}")
        values[j] = seen[name]
    return values


def _solve_external(lp: LpInstance, command: str) -> np.ndarray:
    with tempfile.TemporaryDirectory(prefix="catec-lp-") as tmp:
        lp_path = Path(tmp) / "instance.lp"
        sol_path = Path(tmp) / "solution.txt"
        lp_path.write_text(write_lp_text(lp))
        subprocess.run([command, str(lp_path), str(sol_path)], check=True)
        return parse_solution_values(lp, sol_path.read_text())
