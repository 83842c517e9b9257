"""Hypergraph equalization and the hardness reduction.

A step on a hyperedge increments every member vertex.  Deciding whether a
hypergraph assignment can be equalized is NP-complete (perfect matching
in hypergraphs reduces to it), so the solver here is a bounded exhaustive
search: it scans candidate targets beta up to a cap and backtracks over
edge multiplicities.  Results are "infeasible within cap" rather than
unconditional, except in two cases with a genuine proof: a vertex in no
edge freezes its weight forever, and a divisibility obstruction can rule
out every integer target at once.

reduce_pm_to_equate realizes the hardness direction: three fresh
vertices p, q, r with weight 1, chained by edges {p,q} and {q,r}, force
any equalized target to be exactly 1, which turns the original edges
into an exact-cover problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .core import Hypergraph, IncrementPlan, Weights, apply_plan, check_weights, is_uniform
from .errors import BudgetError, InstanceError

MAX_EDGES = 16
PM_LIMIT = 24


def default_beta_cap(H: Hypergraph, w: Sequence[int]) -> int:
    """n * max(w) * largest edge size, floored at max(w).  Purely a search
    bound; no finite cap is complete for every hypergraph."""
    tw = check_weights(w, H.n)
    maxw = max(tw, default=0)
    maxsize = max((len(e) for e in H.edges), default=0)
    return max(maxw, H.n * maxw * maxsize)


@dataclass(frozen=True)
class HyperEquateResult:
    """Smallest target within the cap, or the reason none exists.

    reason is None (feasible), "beta_cap" (nothing in [max w, cap] works;
    larger targets remain possible), "divisibility" (no integer target at
    all can satisfy the step-size arithmetic), or "frozen_vertex" (an
    edgeless vertex pins the target to an impossible value; the vertex is
    reported)."""

    cap: int
    beta: Optional[int] = None
    plan: Optional[IncrementPlan] = None
    reason: Optional[str] = None
    frozen: Optional[int] = None

    @property
    def feasible(self) -> bool:
        return self.beta is not None

    def to_jsonable(self, host: Hypergraph) -> dict:
        cert: Optional[dict] = None
        if not self.feasible:
            if self.reason == "frozen_vertex":
                cert = {"type": "frozen_vertex", "vertex": self.frozen}
            elif self.reason == "divisibility":
                cert = {"type": "divisibility"}
            else:
                cert = {"type": "beta_cap", "cap": self.cap}
        return {
            "equatable": self.feasible,
            "beta": self.beta,
            "plan": self.plan.to_jsonable(host) if self.plan is not None else None,
            "certificate": cert,
        }


def _backtrack(H: Hypergraph, w: Weights, beta: int) -> Optional[IncrementPlan]:
    """Exhaustive multiplicity search at one target.  Edges are processed
    largest first; a vertex's residual demand must hit zero by the time
    its last edge is assigned."""
    order = sorted(range(H.m), key=lambda i: (-len(H.edges[i]), H.edges[i], i))
    residual = [beta - x for x in w]
    if any(r < 0 for r in residual):
        return None
    last_pos = [-1] * H.n
    for pos, i in enumerate(order):
        for v in H.edges[i]:
            last_pos[v] = pos
    if any(residual[v] > 0 and last_pos[v] == -1 for v in range(H.n)):
        return None
    counts = [0] * H.m

    def rec(pos: int) -> bool:
        if pos == H.m:
            return all(r == 0 for r in residual)
        i = order[pos]
        members = H.edges[i]
        cap = min(residual[v] for v in members)
        for x in range(cap + 1):
            for v in members:
                residual[v] -= x
            if all(residual[v] == 0 for v in members if last_pos[v] == pos):
                counts[i] = x
                if rec(pos + 1):
                    return True
                counts[i] = 0
            for v in members:
                residual[v] += x
        return False

    if not rec(0):
        return None
    return IncrementPlan(tuple((i, c) for i, c in enumerate(counts) if c))


def hyper_equate(
    H: Hypergraph,
    w: Sequence[int],
    beta_cap: Optional[int] = None,
    *,
    max_edges: int = MAX_EDGES,
) -> HyperEquateResult:
    """Smallest equalizable target in [max w, cap] by exhaustive search.

    Already-uniform weights short-circuit.  Edgeless (frozen) vertices
    pin the target to their common weight or prove infeasibility.  Each
    candidate target must satisfy the divisibility constraint: the total
    added weight n*beta - sum(w) has to be a sum of edge sizes, so it
    must be a multiple of their gcd.
    """
    tw = check_weights(w, H.n)
    if H.m > max_edges:
        raise BudgetError("edge budget exceeded", edges=H.m, limit=max_edges)
    maxw = max(tw, default=0)
    cap = default_beta_cap(H, tw) if beta_cap is None else beta_cap
    if cap < maxw:
        raise InstanceError(f"beta cap {cap} below max weight {maxw}")
    uni = is_uniform(tw)
    if uni is not None:
        return HyperEquateResult(cap, beta=uni, plan=IncrementPlan.empty())
    frozen = [v for v in range(H.n) if not H.incident(v)]
    if frozen:
        f0 = frozen[0]
        for v in frozen[1:]:
            if tw[v] != tw[f0]:
                return HyperEquateResult(cap, reason="frozen_vertex", frozen=v)
        if tw[f0] < maxw:
            return HyperEquateResult(cap, reason="frozen_vertex", frozen=f0)
        candidates = [tw[f0]] if tw[f0] <= cap else []
    else:
        candidates = list(range(maxw, cap + 1))
    total = sum(tw)
    g = gcd(*(len(e) for e in H.edges)) if H.edges else 0
    if g:
        viable = [beta for beta in candidates if (H.n * beta - total) % g == 0]
    else:
        # no edges at all: only an already-uniform w is equalizable,
        # which was handled above
        viable = []
    if not viable:
        # unconditional when either no integer target solves
        # n*beta = sum(w) (mod g), or a frozen vertex pins the one
        # possible target and that target fails the arithmetic
        if candidates and (frozen or total % gcd(H.n, g) != 0):
            return HyperEquateResult(cap, reason="divisibility")
        return HyperEquateResult(cap, reason="beta_cap")
    for beta in viable:
        plan = _backtrack(H, tw, beta)
        if plan is not None:
            if apply_plan(H, tw, plan) != (beta,) * H.n:
                raise RuntimeError("backtracking plan failed replay check")
            return HyperEquateResult(cap, beta=beta, plan=plan)
    return HyperEquateResult(cap, reason="beta_cap")


@dataclass(frozen=True)
class ReductionOutput:
    """Equalization instance encoding a hypergraph perfect-matching
    question; gadget vertex ids are (p, q, r) = (n, n+1, n+2)."""

    hypergraph: Hypergraph
    weights: Weights
    new_vertex_ids: tuple[int, int, int]


def reduce_pm_to_equate(H: Hypergraph) -> ReductionOutput:
    """Append the three-vertex gadget: p, q, r with weight 1 and edges
    {p,q}, {q,r}; original vertices keep weight 0 and original edges are
    untouched.  The output is equalizable iff H has a perfect matching,
    and then only at target 1 with both gadget edges unused."""
    n = H.n
    p, q, r = n, n + 1, n + 2
    reduced = Hypergraph(n + 3, H.edges + ((p, q), (q, r)))
    weights = (0,) * n + (1, 1, 1)
    return ReductionOutput(reduced, weights, (p, q, r))


def hyper_perfect_matching(
    H: Hypergraph, *, limit: int = PM_LIMIT
) -> Optional[tuple[int, ...]]:
    """Exact cover of the vertex set by pairwise-disjoint edges, found by
    backtracking that always branches on the lowest uncovered vertex.
    Returns sorted edge indices, or None.  Failed cover states are
    memoized, which keeps repeated structure from exploding."""
    if H.n > limit:
        raise BudgetError("vertex budget exceeded", n=H.n, limit=limit)
    if H.n == 0:
        return ()
    masks = []
    for e in H.edges:
        m = 0
        for v in e:
            m |= 1 << v
        masks.append(m)
    by_vertex: list[list[int]] = [[] for _ in range(H.n)]
    for i, m in enumerate(masks):
        for v in H.edges[i]:
            by_vertex[v].append(i)
    if any(not lst for lst in by_vertex):
        return None
    full = (1 << H.n) - 1
    dead: set[int] = set()
    chosen: list[int] = []

    def rec(covered: int) -> bool:
        if covered == full:
            return True
        if covered in dead:
            return False
        v = ((~covered) & -(~covered)).bit_length() - 1
        for i in by_vertex[v]:
            if masks[i] & covered:
                continue
            chosen.append(i)
            if rec(covered | masks[i]):
                return True
            chosen.pop()
        dead.add(covered)
        return False

    if rec(0):
        return tuple(sorted(chosen))
    return None
