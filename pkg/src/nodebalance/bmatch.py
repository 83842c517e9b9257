"""Perfect b-matching: decide existence, construct a solution, certify
infeasibility.

A perfect b-matching assigns a non-negative integer multiplicity x_e to
every edge so that the multiplicities around each vertex v sum to exactly
b(v).  Existence is characterized by a Tutte-style subset condition: a
perfect b-matching exists iff for every vertex subset U (including the
empty set)

    sum_{x in U} b(x)  >=  sum_{x in I(U)} b(x) + S(G-U)

where I(U) is the set of vertices isolated by deleting U and S(G-U)
counts the non-singleton components of G-U whose total b is odd.  A
subset violating the inequality is a self-contained infeasibility
certificate; its deficiency (right side minus left side) is at least 1.

Three engines share that certificate contract:

- bipartite graphs: integer max flow (exact at any size here);
- small general graphs: full subset enumeration for the decision, and
  vertex-splitting expansion plus blossom matching for construction;
- larger general graphs: an exact integer-programming backend (HiGHS via
  scipy) with a deficiency-set extraction in the spirit of the
  Gallai-Edmonds decomposition.

Every witness, no matter which engine produced it, is re-verified against
the subset definition before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import matching
from .core import Graph, IncrementPlan, apply_plan
from .errors import BudgetError, InstanceError, WitnessUnavailableError

# hard budgets for the expansion construction
MAX_SUM_B = 50_000
MAX_EDGE_COPIES = 5_000_000
# default cap for full subset enumeration (2^n subsets)
ENUM_LIMIT = 20

# dispatch thresholds: below these the blossom expansion is used for
# construction, and subset work replaces flow / integer programming
_FAST_SUM_B = 80
_FAST_EDGE_COPIES = 400
_SUBSET_SIDE = 10
_DECIDE_ENUM_N = 9


def check_bvector(b: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a demand vector: length n, non-negative integers."""
    tb = tuple(b)
    if len(tb) != n:
        raise InstanceError(f"expected {n} demands, got {len(tb)}")
    for v, x in enumerate(tb):
        if isinstance(x, bool) or not isinstance(x, int):
            raise InstanceError(f"demand of vertex {v} is not an int: {x!r}")
        if x < 0:
            raise InstanceError(f"demand of vertex {v} is negative: {x}")
    return tb


def _check_subset(U: Iterable[int], n: int) -> tuple[int, ...]:
    tu = tuple(sorted(set(U)))
    if tu and (tu[0] < 0 or tu[-1] >= n):
        raise InstanceError(f"subset {tu} out of range for n={n}")
    return tu


def isolated_vertices(G: Graph, U: Iterable[int]) -> tuple[int, ...]:
    """I(U): vertices outside U whose neighbors all lie inside U.  With
    U empty this is the set of isolated vertices of G itself."""
    tu = set(_check_subset(U, G.n))
    return tuple(
        v
        for v in range(G.n)
        if v not in tu and all(u in tu for u in G.neighbors(v))
    )


def _components_minus(G: Graph, removed: set[int]) -> list[list[int]]:
    seen = set(removed)
    comps = []
    for s in range(G.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for u in G.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def s_count(G: Graph, U: Iterable[int], b: Iterable[int]) -> int:
    """S(G-U): number of components of G-U that have at least two vertices
    and odd total b."""
    tu = set(_check_subset(U, G.n))
    tb = check_bvector(b, G.n)
    return sum(
        1
        for comp in _components_minus(G, tu)
        if len(comp) >= 2 and sum(tb[v] for v in comp) % 2 == 1
    )


def tutte_deficiency(G: Graph, U: Iterable[int], b: Iterable[int]) -> int:
    """sum_{I(U)} b + S(G-U) - sum_U b.  Positive means U certifies that no
    perfect b-matching exists."""
    tu = _check_subset(U, G.n)
    tb = check_bvector(b, G.n)
    iso = isolated_vertices(G, tu)
    return sum(tb[v] for v in iso) + s_count(G, tu, tb) - sum(tb[v] for v in tu)


@dataclass(frozen=True)
class ViolatingSet:
    """A subset U with positive deficiency; all fields recomputable from
    (G, U, b) via isolated_vertices / s_count / tutte_deficiency."""

    U: tuple[int, ...]
    isolated: tuple[int, ...]
    s_count: int
    deficiency: int

    def to_jsonable(self) -> dict:
        return {
            "type": "tutte",
            "U": list(self.U),
            "isolated": list(self.isolated),
            "s_count": self.s_count,
            "deficiency": self.deficiency,
        }


def violating_set(G: Graph, U: Iterable[int], b: Iterable[int]) -> ViolatingSet:
    """Build the certificate at U, recomputing every field from the
    definition.  Raises if U does not actually violate the condition."""
    tu = _check_subset(U, G.n)
    tb = check_bvector(b, G.n)
    iso = isolated_vertices(G, tu)
    s = s_count(G, tu, tb)
    d = sum(tb[v] for v in iso) + s - sum(tb[v] for v in tu)
    if d < 1:
        raise InstanceError(f"subset {tu} has deficiency {d}, not a violation")
    return ViolatingSet(tu, iso, s, d)


@dataclass(frozen=True)
class BMatchOutcome:
    """Either a constructed plan (feasible) or a verified certificate."""

    plan: Optional[IncrementPlan] = None
    witness: Optional[ViolatingSet] = None

    def __post_init__(self) -> None:
        if (self.plan is None) == (self.witness is None):
            raise InstanceError("exactly one of plan/witness must be set")

    @property
    def feasible(self) -> bool:
        return self.plan is not None


def _neighbor_masks(G: Graph) -> list[int]:
    masks = [0] * G.n
    for u, v in G.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _subset_stats(nbr: Sequence[int], all_mask: int, b: Sequence[int], umask: int):
    """(isolated mask, S count) of the graph minus the vertices in umask."""
    rem = all_mask & ~umask
    iso = 0
    s_cnt = 0
    remaining = rem
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            f = frontier
            while f:
                lsb = f & -f
                nxt |= nbr[lsb.bit_length() - 1]
                f ^= lsb
            nxt &= rem & ~comp
            comp |= nxt
            frontier = nxt
        remaining &= ~comp
        if comp & (comp - 1) == 0:
            iso |= comp
        else:
            tot = 0
            c = comp
            while c:
                lsb = c & -c
                tot += b[lsb.bit_length() - 1]
                c ^= lsb
            s_cnt += tot & 1
    return iso, s_cnt


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        lsb = mask & -mask
        out.append(lsb.bit_length() - 1)
        mask ^= lsb
    return out


def check_tutte_enumeration(
    G: Graph, b: Iterable[int], *, limit: int = ENUM_LIMIT
) -> Optional[ViolatingSet]:
    """Evaluate the subset condition over all 2^n subsets in canonical
    order (by size, then lexicographically).  Returns None when every
    subset satisfies the condition (a perfect b-matching exists), else the
    violating set of maximum deficiency, ties broken by canonical order.
    """
    tb = check_bvector(b, G.n)
    if G.n > limit:
        raise BudgetError("enumeration limit exceeded", n=G.n, limit=limit)
    nbr = _neighbor_masks(G)
    all_mask = (1 << G.n) - 1
    best: Optional[ViolatingSet] = None
    for size in range(G.n + 1):
        for combo in combinations(range(G.n), size):
            umask = 0
            for v in combo:
                umask |= 1 << v
            iso, s = _subset_stats(nbr, all_mask, tb, umask)
            d = sum(tb[v] for v in _bits(iso)) + s - sum(tb[v] for v in combo)
            if d >= 1 and (best is None or d > best.deficiency):
                best = ViolatingSet(combo, tuple(_bits(iso)), s, d)
    return best


def expand_graph(
    G: Graph,
    b: Iterable[int],
    *,
    max_sum_b: int = MAX_SUM_B,
    max_edge_copies: int = MAX_EDGE_COPIES,
) -> tuple[Graph, tuple[int, ...]]:
    """Vertex-splitting expansion: b(v) copies of each vertex, and for each
    edge {u,v} an edge between every copy of u and every copy of v.  A
    perfect b-matching of G corresponds exactly to a perfect matching of
    the expansion.  Returns (expanded graph, copy_of) with copy_of[i] the
    original vertex of copy i.
    """
    tb = check_bvector(b, G.n)
    sum_b = sum(tb)
    edge_copies = sum(tb[u] * tb[v] for u, v in G.edges)
    if sum_b > max_sum_b or edge_copies > max_edge_copies:
        raise BudgetError(
            "expansion budget exceeded", sum_b=sum_b, edge_copies=edge_copies
        )
    first = [0] * (G.n + 1)
    for v in range(G.n):
        first[v + 1] = first[v] + tb[v]
    copy_of = tuple(v for v in range(G.n) for _ in range(tb[v]))
    edges = []
    for u, v in G.edges:
        for i in range(first[u], first[u + 1]):
            for j in range(first[v], first[v + 1]):
                edges.append((i, j))
    return Graph(sum_b, tuple(edges)), copy_of


def solve_bmatching_expansion(
    G: Graph,
    b: Iterable[int],
    *,
    max_sum_b: int = MAX_SUM_B,
    max_edge_copies: int = MAX_EDGE_COPIES,
) -> Optional[IncrementPlan]:
    """Construct a perfect b-matching by maximum matching on the expansion,
    or return None if the expansion has no perfect matching."""
    expanded, copy_of = expand_graph(
        G, b, max_sum_b=max_sum_b, max_edge_copies=max_edge_copies
    )
    match = matching.maximum_matching([expanded.neighbors(v) for v in range(expanded.n)])
    if any(m == -1 for m in match):
        return None
    counts: dict[tuple[int, int], int] = {}
    for i, j in enumerate(match):
        if i < j:
            u, v = copy_of[i], copy_of[j]
            key = (min(u, v), max(u, v))
            counts[key] = counts.get(key, 0) + 1
    return IncrementPlan(tuple(counts.items()))


def verify_plan_perfect(G: Graph, b: Iterable[int], plan: IncrementPlan) -> bool:
    """True iff the plan's multiplicities sum to exactly b(v) at every
    vertex."""
    tb = check_bvector(b, G.n)
    return apply_plan(G, (0,) * G.n, plan) == tb


def _two_color(G: Graph) -> Optional[list[int]]:
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in G.neighbors(v):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return None
    return color


class BMatchEngine:
    """Reusable per-graph solver.  Graph-only structure (coloring,
    adjacency masks, incidence) is computed once; decide() and outcome()
    can then be called for many demand vectors, which is what the binary
    search over targets does."""

    def __init__(self, G: Graph):
        self.G = G
        self.n = G.n
        self.colors = _two_color(G)
        self.nbr = _neighbor_masks(G)
        self.all_mask = (1 << G.n) - 1
        if self.colors is not None:
            side0 = [v for v in range(G.n) if self.colors[v] == 0]
            side1 = [v for v in range(G.n) if self.colors[v] == 1]
            self.sides = (side0, side1)
            small = 0 if len(side0) <= len(side1) else 1
            self.small_side = small
            sm = self.sides[small]
            pos = {v: i for i, v in enumerate(self.sides[1 - small])}
            # neighborhood of each small-side vertex as a mask over the
            # other side's index space
            self.small_nbr = [
                sum(1 << pos[u] for u in G.neighbors(v)) for v in sm
            ]
        self._milp_matrix = None

    # ---- decision -------------------------------------------------

    def decide(self, b: Sequence[int]) -> tuple[bool, Optional[ViolatingSet]]:
        """(feasible, certificate).  The certificate is always verified
        against the subset definition before being returned."""
        if all(x == 0 for x in b):
            return True, None
        if self.colors is not None:
            return self._decide_bipartite(b)
        if self.n <= _DECIDE_ENUM_N:
            vs = self._enum_worst(b)
            return (vs is None), vs
        vs = self._try_certificate(b, ())
        if vs is not None:
            return False, vs
        if self._milp_feasible(b):
            return True, None
        return False, self._witness_large(b)

    def _try_certificate(
        self, b: Sequence[int], U: Iterable[int]
    ) -> Optional[ViolatingSet]:
        try:
            return violating_set(self.G, U, b)
        except InstanceError:
            return None

    def _enum_worst(self, b: Sequence[int]) -> Optional[ViolatingSet]:
        best = None
        best_d = 0
        for size in range(self.n + 1):
            for combo in combinations(range(self.n), size):
                umask = 0
                bu = 0
                for v in combo:
                    umask |= 1 << v
                    bu += b[v]
                iso, s = _subset_stats(self.nbr, self.all_mask, b, umask)
                d = s - bu
                m = iso
                while m:
                    lsb = m & -m
                    d += b[lsb.bit_length() - 1]
                    m ^= lsb
                if d >= 1 and d > best_d:
                    best = ViolatingSet(combo, tuple(_bits(iso)), s, d)
                    best_d = d
        return best

    def _decide_bipartite(self, b: Sequence[int]) -> tuple[bool, Optional[ViolatingSet]]:
        side0, side1 = self.sides
        t0 = sum(b[v] for v in side0)
        t1 = sum(b[v] for v in side1)
        if t0 != t1:
            # the whole smaller-sum side is a violating set: deleting it
            # isolates the entire other side
            U = side0 if t0 < t1 else side1
            return False, violating_set(self.G, U, b)
        sm = self.sides[self.small_side]
        other = self.sides[1 - self.small_side]
        k = len(sm)
        if k <= _SUBSET_SIDE:
            # transportation feasibility: equal totals plus, for every
            # subset X of one side, b(X) <= b(N(X))
            bx = [0] * (1 << k)
            nx = [0] * (1 << k)
            for mask in range(1, 1 << k):
                lsb = mask & -mask
                i = lsb.bit_length() - 1
                rest = mask ^ lsb
                bx[mask] = bx[rest] + b[sm[i]]
                nx[mask] = nx[rest] | self.small_nbr[i]
            worst_mask = 0
            worst_gap = 0
            for mask in range(1, 1 << k):
                bn = 0
                m = nx[mask]
                while m:
                    lsb = m & -m
                    bn += b[other[lsb.bit_length() - 1]]
                    m ^= lsb
                gap = bx[mask] - bn
                if gap > worst_gap:
                    worst_gap = gap
                    worst_mask = mask
            if worst_gap == 0:
                return True, None
            U = sorted(other[i] for i in _bits(nx[worst_mask]))
            return False, violating_set(self.G, U, b)
        return self._decide_bipartite_flow(b)

    def _build_flow(self, b: Sequence[int]):
        side0, side1 = self.sides
        s, t = self.n, self.n + 1
        net = matching.Dinic(self.n + 2)
        inf = sum(b) + 1
        for v in side0:
            net.add_edge(s, v, b[v])
        for v in side1:
            net.add_edge(v, t, b[v])
        mid = {}
        for u, v in self.G.edges:
            if self.colors[u] == 1:
                u, v = v, u
            mid[(min(u, v), max(u, v))] = net.add_edge(u, v, inf)
        return net, mid, s, t

    def _decide_bipartite_flow(self, b: Sequence[int]) -> tuple[bool, Optional[ViolatingSet]]:
        side0, _ = self.sides
        net, _, s, t = self._build_flow(b)
        flow = net.max_flow(s, t)
        if flow == sum(b[v] for v in side0):
            return True, None
        # min-cut argument: the reachable part X of the pushing side has
        # b(X) > b(N(X)); U = N(X) is then a violating set
        reach = net.residual_reachable(s)
        X = [v for v in side0 if reach[v]]
        U = sorted({u for v in X for u in self.G.neighbors(v)})
        return False, violating_set(self.G, U, b)

    # ---- construction ---------------------------------------------

    def construct(self, b: Sequence[int]) -> IncrementPlan:
        """Build a plan for a demand vector already decided feasible."""
        if all(x == 0 for x in b):
            return IncrementPlan.empty()
        if self.colors is not None:
            side0, _ = self.sides
            net, mid, s, t = self._build_flow(b)
            flow = net.max_flow(s, t)
            if flow != sum(b[v] for v in side0):
                raise RuntimeError("flow construction disagrees with decision")
            entries = []
            for edge, eid in mid.items():
                x = net.edge_flow(eid)
                if x:
                    entries.append((edge, x))
            return IncrementPlan(tuple(entries))
        sum_b = sum(b)
        edge_copies = sum(b[u] * b[v] for u, v in self.G.edges)
        if sum_b <= _FAST_SUM_B and edge_copies <= _FAST_EDGE_COPIES:
            plan = solve_bmatching_expansion(self.G, b)
            if plan is None:
                raise RuntimeError("expansion construction disagrees with decision")
            return plan
        return self._milp_construct(b)

    def outcome(self, b: Sequence[int]) -> BMatchOutcome:
        feasible, vs = self.decide(b)
        if not feasible:
            return BMatchOutcome(witness=vs)
        plan = self.construct(b)
        if not verify_plan_perfect(self.G, b, plan):
            raise RuntimeError("constructed plan failed verification")
        return BMatchOutcome(plan=plan)

    # ---- integer-programming backend ------------------------------

    def _matrix(self):
        if self._milp_matrix is None:
            import numpy as np

            m = self.G.m
            A = np.zeros((self.n, m))
            for j, (u, v) in enumerate(self.G.edges):
                A[u, j] = 1.0
                A[v, j] = 1.0
            self._milp_matrix = A
        return self._milp_matrix

    def _milp(self, b: Sequence[int], maximize: bool):
        import numpy as np
        from scipy.optimize import Bounds, LinearConstraint, milp

        A = self._matrix()
        m = self.G.m
        tb = np.asarray(b, dtype=float)
        ub = np.array(
            [min(b[u], b[v]) for u, v in self.G.edges], dtype=float
        )
        if maximize:
            cons = LinearConstraint(A, -np.inf, tb)
            c = -np.ones(m)
        else:
            cons = LinearConstraint(A, tb, tb)
            c = np.zeros(m)
        res = milp(
            c=c,
            constraints=cons,
            integrality=np.ones(m),
            bounds=Bounds(0, ub),
        )
        return res

    def _milp_feasible(self, b: Sequence[int]) -> bool:
        if self.G.m == 0:
            # only the all-zero demand is satisfiable without edges, and
            # that case never reaches the solver
            return False
        res = self._milp(b, maximize=False)
        if res.status == 0:
            return True
        if res.status == 2:
            return False
        raise RuntimeError(f"integer solver failed: {res.message}")

    def _milp_construct(self, b: Sequence[int]) -> IncrementPlan:
        res = self._milp(b, maximize=False)
        if res.status != 0:
            raise RuntimeError("solver construction disagrees with decision")
        entries = []
        for j, (u, v) in enumerate(self.G.edges):
            x = round(res.x[j])
            if x:
                entries.append(((u, v), x))
        return IncrementPlan(tuple(entries))

    def _max_value(self, b: Sequence[int]) -> int:
        """Maximum total multiplicity subject to per-vertex sums <= b."""
        if self.G.m == 0:
            return 0
        res = self._milp(b, maximize=True)
        if res.status != 0:
            raise RuntimeError(f"integer solver failed: {res.message}")
        return round(-res.fun)

    def _witness_large(self, b: Sequence[int]) -> ViolatingSet:
        """Certificate extraction for the integer-programming path.

        A vertex v with b(v) > 0 is deficiency-critical when lowering its
        demand by one does not lower the maximum b-matching value (some
        maximum b-matching already leaves a unit of v unmatched); this is
        the demand-vector analogue of the vertices missed by some maximum
        matching.  Taking U = (neighbors of critical vertices that are not
        themselves critical and have positive demand) plus all zero-demand
        vertices yields a violating set; re-verified before returning.
        """
        nu = self._max_value(b)
        critical = []
        for v in range(self.n):
            if b[v] == 0:
                continue
            b2 = list(b)
            b2[v] -= 1
            if self._max_value(b2) == nu:
                critical.append(v)
        crit = set(critical)
        U = {v for v in range(self.n) if b[v] == 0}
        for v in critical:
            for u in self.G.neighbors(v):
                if u not in crit and b[u] > 0:
                    U.add(u)
        vs = self._try_certificate(b, sorted(U))
        if vs is not None:
            return vs
        if self.n <= ENUM_LIMIT:
            vs = check_tutte_enumeration(self.G, b)
            if vs is not None:
                return vs
            raise RuntimeError("engines disagree on feasibility")
        raise WitnessUnavailableError(
            f"infeasible but no certificate extracted (n={self.n})"
        )


def decide_perfect_bmatching(G: Graph, b: Iterable[int]) -> bool:
    """Yes/no decision without constructing a plan.  Use BMatchEngine.decide
    for the certificate, or perfect_bmatching for the full outcome."""
    tb = check_bvector(b, G.n)
    return BMatchEngine(G).decide(tb)[0]


def perfect_bmatching(G: Graph, b: Iterable[int]) -> BMatchOutcome:
    """Full interface: a verified plan when feasible, else a verified
    violating set.  Raises WitnessUnavailableError only when infeasibility
    was established but no certificate could be extracted and the graph is
    too large for enumeration."""
    tb = check_bvector(b, G.n)
    return BMatchEngine(G).outcome(tb)
