"""Brute-force exact optima for constant dimension codes at desk scale.

A maximum code is a maximum clique in the compatibility graph over all
l-dimensional subspaces, with an edge wherever the dimension distance is at
least 2*delta.  Branch and bound explores vertices in enumeration order, so
results (including the witness) are bit-reproducible: the reported witness
is the lexicographically least maximum clique in that order.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Optional

from .bounds import (
    CodeParams,
    gaussian_binomial,
    johnson_i_bound,
    johnson_ii_bound,
    singleton_bound,
    wxs_bound,
)
from .code import ConstantDimensionCode, dual_code, min_distance, new_code
from .errors import BudgetExceeded
from .field import field_from_order
from .steiner import is_steiner_structure
from .subspace import enumerate_subspaces, intersect_dim, vector_encodings

DEFAULT_SEARCH_BUDGET = 10 ** 4

# Above this subspace cardinality the adjacency test falls back to rank
# computations instead of point-set intersections.
_POINTSET_LIMIT = 10 ** 5


@dataclass(frozen=True)
class SearchResult:
    params: CodeParams
    optimum: int
    witness: ConstantDimensionCode
    all_optima_steiner: Optional[bool]
    optima_count: Optional[int]
    nodes_explored: int
    elapsed: float

    def to_json(self) -> dict:
        from .code import code_to_json

        return {
            "params": self.params.to_json(),
            "optimum": self.optimum,
            "all_optima_steiner": self.all_optima_steiner,
            "optima_count": self.optima_count,
            "nodes_explored": self.nodes_explored,
            "elapsed": self.elapsed,
            "witness": code_to_json(self.witness),
        }


def _build_graph(spec, params: CodeParams, budget: int):
    """Vertices in enumeration order plus adjacency bitmasks."""
    q, n, l, delta = params.q, params.n, params.l, params.delta
    count = gaussian_binomial(n, l, q)
    if count > budget:
        raise BudgetExceeded(
            f"[{n} choose {l}]_{q} = {count} exceeds the search budget {budget}"
        )
    vertices = list(enumerate_subspaces(spec, n, l, budget=budget))
    nv = len(vertices)
    max_common = l - delta  # edge iff dim(X /\ Y) <= l - delta
    adj = [0] * nv
    if q ** l <= _POINTSET_LIMIT:
        max_points = q ** max_common - 1
        sets = [vector_encodings(v) for v in vertices]
        for i in range(nv):
            si = sets[i]
            for j in range(i + 1, nv):
                if len(si & sets[j]) <= max_points:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
    else:
        for i in range(nv):
            vi = vertices[i]
            for j in range(i + 1, nv):
                if intersect_dim(vi, vertices[j]) <= max_common:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
    return vertices, adj


def _color_bound(cand: int, adj: list[int]) -> int:
    """Greedy coloring of the candidate set; clique size <= number of colors."""
    classes: list[int] = []
    while cand:
        v = (cand & -cand).bit_length() - 1
        cand &= cand - 1
        av = adj[v]
        for idx, cls in enumerate(classes):
            if cls & av == 0:
                classes[idx] = cls | (1 << v)
                break
        else:
            classes.append(1 << v)
    return len(classes)


class _Stop(Exception):
    pass


def _max_clique_value(adj: list[int], nv: int, lower: int, upper: Optional[int]):
    """Maximum clique size by branch and bound with color-order branching.

    Returns (value, nodes).  lower must be a size for which a clique is
    known to exist; upper, when given, allows stopping as soon as it is met.
    """
    best = lower
    nodes = 0

    def expand(cand: int, rsize: int) -> None:
        nonlocal best, nodes
        nodes += 1
        classes: list[int] = []
        colored: list[tuple[int, int]] = []  # (color, vertex), colors ascending
        work = cand
        while work:
            v = (work & -work).bit_length() - 1
            work &= work - 1
            av = adj[v]
            for ci, cls in enumerate(classes):
                if cls & av == 0:
                    classes[ci] = cls | (1 << v)
                    colored.append((ci + 1, v))
                    break
            else:
                classes.append(1 << v)
                colored.append((len(classes), v))
        colored.sort()
        for color, v in reversed(colored):
            if rsize + color <= best:
                return
            cand &= ~(1 << v)
            nxt = cand & adj[v]
            if nxt:
                expand(nxt, rsize + 1)
            elif rsize + 1 > best:
                best = rsize + 1
                if upper is not None and best >= upper:
                    raise _Stop

    try:
        expand((1 << nv) - 1, 0)
    except _Stop:
        pass
    return best, nodes


def _lex_clique_of_size(adj: list[int], nv: int, target: int):
    """The lexicographically least clique of the given size; returns (clique, nodes).

    Vertices are explored in ascending order, so the first clique reached is
    the least one; pruning uses popcount and greedy-coloring bounds against
    the known target.
    """
    if target == 0:
        return [], 0
    nodes = 0
    stack: list[int] = []

    def expand(cand: int) -> None:
        nonlocal nodes
        nodes += 1
        rsize = len(stack)
        if rsize + _color_bound(cand, adj) < target:
            return
        while cand:
            if rsize + cand.bit_count() < target:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            stack.append(v)
            if rsize + 1 == target:
                raise _Stop
            nxt = cand & adj[v]
            if nxt:
                expand(nxt)
            stack.pop()

    try:
        expand((1 << nv) - 1)
    except _Stop:
        return stack, nodes
    raise AssertionError("no clique of the certified optimum size found")


def brute_force_optimum(
    params: CodeParams,
    enumerate_all_optima: bool = False,
    budget: int = DEFAULT_SEARCH_BUDGET,
    use_bounds: bool = True,
) -> SearchResult:
    """Exact maximum code size by deterministic branch and bound.

    With use_bounds the search seeds its lower bound from the spread size
    when (n, delta, l) = (kl, l, l) (such a clique always exists, so ties at
    that size are still explored and the witness contract holds) and stops
    as soon as the incumbent meets the best upper bound.  use_bounds=False
    runs the search unassisted; both modes return identical results.
    """
    start = time.perf_counter()
    spec = field_from_order(params.q)
    vertices, adj = _build_graph(spec, params, budget)
    nv = len(vertices)

    global_ub = None
    lower = 0
    if use_bounds:
        candidates = [singleton_bound(params), wxs_bound(params)[0], johnson_ii_bound(params)]
        ji = johnson_i_bound(params)
        if ji is not None:
            candidates.append(ji)
        global_ub = min(candidates)
        if params.delta == params.l and params.n % params.l == 0 and params.n // params.l >= 2:
            q = params.q
            spread_size = (q ** params.n - 1) // (q ** params.l - 1)
            lower = spread_size - 1  # a clique of this size + 1 always exists

    sys.setrecursionlimit(max(sys.getrecursionlimit(), nv + 100))
    optimum, nodes_value = _max_clique_value(adj, nv, lower, global_ub)
    best_clique, nodes_witness = _lex_clique_of_size(adj, nv, optimum)
    nodes = nodes_value + nodes_witness

    witness = new_code(spec, params.n, params.l, [vertices[i] for i in best_clique])
    assert witness.size == optimum
    if witness.size >= 2:
        assert min_distance(witness) >= 2 * params.delta

    all_steiner: Optional[bool] = None
    optima_count: Optional[int] = None
    if enumerate_all_optima:
        all_steiner, optima_count = _check_all_optima(
            spec, params, vertices, adj, optimum
        )

    elapsed = time.perf_counter() - start
    return SearchResult(
        params=params,
        optimum=optimum,
        witness=witness,
        all_optima_steiner=all_steiner,
        optima_count=optima_count,
        nodes_explored=nodes,
        elapsed=elapsed,
    )


def _check_all_optima(spec, params: CodeParams, vertices, adj, optimum: int):
    """Enumerate every maximum clique; test each for the Steiner property."""
    t = params.l - params.delta + 1
    all_steiner = True
    count = 0
    stack: list[int] = []

    def walk(cand: int) -> None:
        nonlocal all_steiner, count
        rsize = len(stack)
        if rsize == optimum:
            code = new_code(spec, params.n, params.l, [vertices[i] for i in stack])
            count += 1
            if not is_steiner_structure(code, t).is_steiner:
                all_steiner = False
            return
        if rsize + _color_bound(cand, adj) < optimum:
            return
        while cand:
            if rsize + cand.bit_count() < optimum:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            stack.append(v)
            walk(cand & adj[v])
            stack.pop()

    walk((1 << len(vertices)) - 1)
    return all_steiner, count


def verify_duality(params: CodeParams, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Check A_q[n, 2d, l] == A_q[n, 2d, n-l] by exhaustive search of both.

    Also validates that the dual of each witness is a legitimate witness for
    the other orientation (right dimension, same size, distance preserved).
    """
    dual_params = CodeParams(params.q, params.n, params.delta, params.n - params.l)
    r1 = brute_force_optimum(params, budget=budget)
    r2 = brute_force_optimum(dual_params, budget=budget)
    if r1.optimum != r2.optimum:
        return False
    for res, other in ((r1, dual_params), (r2, params)):
        d = dual_code(res.witness)
        if d.l != other.l or d.size != res.optimum:
            return False
        if d.size >= 2 and min_distance(d) < 2 * other.delta:
            return False
    return True
