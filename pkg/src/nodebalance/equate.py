"""Minimum uniform target: decide whether the weights can be equalized by
edge increments, and find the smallest achievable common value with its
plan.

With target beta, every vertex v needs exactly b(v) = beta - w(v)
increments, so feasibility at beta is exactly perfect b-matching
feasibility.  Each step raises the total weight by 2, which pins
n*beta = sum(w) (mod 2) and restricts beta to at most two parities; per
parity the feasible targets form an interval, because every vertex subset
contributes one constraint linear in beta.  The search binary-searches
each admissible parity class inside [max w, n*max w], using the violating
set returned by an infeasible probe to cut the interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .bmatch import BMatchEngine, ViolatingSet, verify_plan_perfect
from .core import Graph, IncrementPlan, check_weights, is_uniform
from .errors import InstanceError

PARITIES = ("even", "odd")


def _parity_bit(parity: str) -> int:
    if parity not in PARITIES:
        raise InstanceError(f"parity must be 'even' or 'odd', got {parity!r}")
    return 0 if parity == "even" else 1


def _align_up(x: int, parity: str) -> int:
    return x if x % 2 == _parity_bit(parity) else x + 1


def _align_down(x: int, parity: str) -> int:
    return x if x % 2 == _parity_bit(parity) else x - 1


def admissible_parities(G: Graph, w: Sequence[int]) -> tuple[str, ...]:
    """Parities of beta compatible with n*beta = sum(w) (mod 2).

    Odd n: exactly one parity.  Even n: both if sum(w) is even, none
    otherwise (each step preserves total-weight parity, so no uniform
    target of any parity can be reached).
    """
    tw = check_weights(w, G.n)
    if G.n < 1:
        raise InstanceError("parity analysis needs at least one vertex")
    total = sum(tw)
    if G.n % 2 == 1:
        return ("even",) if total % 2 == 0 else ("odd",)
    return PARITIES if total % 2 == 0 else ()


@dataclass(frozen=True)
class BoundCase:
    """How one subset constraint restricts beta within a parity class.

    kind "at_least"/"at_most" carry the parity-aligned threshold beta;
    "always"/"never" are the constant cases (slope zero).
    """

    kind: str
    beta: Optional[int] = None


def constraint_bound(
    u_size: int,
    isolated_size: int,
    u_weight: int,
    isolated_weight: int,
    s_odd: int,
    parity: str,
) -> BoundCase:
    """Classify the subset condition at U for b(v) = beta - w(v).

    Substituting gives s*beta >= c with slope s = |U| - |I(U)| and
    constant c = w(U) - w(I(U)) + S.  Positive slope lower-bounds beta,
    negative slope upper-bounds it, zero slope is satisfied always or
    never.  S must have been computed at a probe of the given parity (it
    is parity-invariant within the class).
    """
    s = u_size - isolated_size
    c = u_weight - isolated_weight + s_odd
    if s == 0:
        return BoundCase("always") if c <= 0 else BoundCase("never")
    if s > 0:
        return BoundCase("at_least", _align_up(-(-c // s), parity))
    return BoundCase("at_most", _align_down(c // s, parity))


@dataclass(frozen=True)
class ParityOutcome:
    """Result of one parity-class search: smallest feasible beta with its
    plan, or absent with the last certificate seen."""

    beta: Optional[int] = None
    plan: Optional[IncrementPlan] = None
    certificate: Optional[ViolatingSet] = None


def _classify(cert: ViolatingSet, w: Sequence[int], parity: str) -> BoundCase:
    return constraint_bound(
        len(cert.U),
        len(cert.isolated),
        sum(w[v] for v in cert.U),
        sum(w[v] for v in cert.isolated),
        cert.s_count,
        parity,
    )


def _finish(
    eng: BMatchEngine, w: Sequence[int], beta: int
) -> IncrementPlan:
    b = tuple(beta - x for x in w)
    plan = eng.construct(b)
    if not verify_plan_perfect(eng.G, b, plan):
        raise RuntimeError("constructed plan failed verification")
    return plan


def _linear_scan(
    eng: BMatchEngine, w: Sequence[int], parity: str, alpha: int, gamma: int
) -> ParityOutcome:
    # fallback used only if a certificate ever failed to tighten the
    # interval; probes every target of the parity, so it terminates
    # regardless of certificate quality
    last = None
    for beta in range(alpha, gamma + 1, 2):
        ok, cert = eng.decide(tuple(beta - x for x in w))
        if ok:
            return ParityOutcome(beta, _finish(eng, w, beta), None)
        last = cert
    return ParityOutcome(None, None, last)


def min_beta_for_parity(
    G: Graph,
    w: Sequence[int],
    parity: str,
    *,
    engine: Optional[BMatchEngine] = None,
) -> ParityOutcome:
    """Binary search for the smallest feasible beta of one parity within
    [max w, n*max w].

    A feasible probe records beta and continues below it; an infeasible
    probe classifies its violating set via constraint_bound and cuts the
    interval (a "never" constraint ends the search immediately).  The
    certificate of the last failing probe is reported when no beta is
    found.  Note the search window itself: targets outside [max w,
    n*max w] are never probed, which is sound for minimality because any
    equatable instance has a feasible beta in that window.
    """
    tw = check_weights(w, G.n)
    if parity not in admissible_parities(G, tw):
        raise InstanceError(f"parity {parity!r} not admissible for this instance")
    eng = engine if engine is not None else BMatchEngine(G)
    maxw = max(tw)
    alpha0 = _align_up(maxw, parity)
    gamma0 = _align_down(G.n * maxw, parity)
    alpha, gamma = alpha0, gamma0
    best: Optional[int] = None
    last_cert: Optional[ViolatingSet] = None
    while alpha <= gamma:
        mid = (alpha + gamma) // 2
        if mid % 2 != _parity_bit(parity):
            mid -= 1
        if mid < alpha:
            mid = alpha
        ok, cert = eng.decide(tuple(mid - x for x in tw))
        if ok:
            best = mid
            gamma = mid - 2
            continue
        last_cert = cert
        case = _classify(cert, tw, parity)
        if case.kind == "never":
            return ParityOutcome(None, None, cert)
        if case.kind == "at_least" and case.beta > mid:
            alpha = max(alpha, case.beta)
        elif case.kind == "at_most" and case.beta < mid:
            gamma = min(gamma, case.beta)
        else:
            return _linear_scan(eng, tw, parity, alpha0, gamma0)
    if best is None:
        return ParityOutcome(None, None, last_cert)
    return ParityOutcome(best, _finish(eng, tw, best), None)


@dataclass(frozen=True)
class EquateResult:
    """Decision plus either (beta, plan) or the infeasibility evidence.

    reason is None when feasible, "parity" when no target parity exists,
    "certificate" when every admissible parity search failed; in the last
    case certificates maps each searched parity to its violating set.
    """

    beta: Optional[int] = None
    plan: Optional[IncrementPlan] = None
    reason: Optional[str] = None
    certificates: Mapping[str, ViolatingSet] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.beta is not None

    def certificate_jsonable(self) -> Optional[dict]:
        if self.feasible:
            return None
        if self.reason == "parity":
            return {"type": "parity"}
        certs = {p: vs.to_jsonable() for p, vs in self.certificates.items()}
        if len(certs) == 1:
            ((p, d),) = certs.items()
            return {"type": "tutte", "parity": p, **{k: v for k, v in d.items() if k != "type"}}
        return {"type": "tutte_per_parity", **certs}

    def to_jsonable(self, host) -> dict:
        return {
            "equatable": self.feasible,
            "beta": self.beta,
            "plan": self.plan.to_jsonable(host) if self.plan is not None else None,
            "certificate": self.certificate_jsonable(),
        }


def equate(G: Graph, w: Sequence[int]) -> EquateResult:
    """Smallest uniform target over all admissible parities.

    Already-uniform weights short-circuit to their current value with an
    empty plan (no smaller target is possible, since beta >= max w).  The
    returned plan always has total multiplicity (n*beta - sum w) / 2, so
    minimizing beta also minimizes the number of steps.
    """
    tw = check_weights(w, G.n)
    uni = is_uniform(tw)
    if uni is not None:
        return EquateResult(beta=uni, plan=IncrementPlan.empty())
    parities = admissible_parities(G, tw)
    if not parities:
        return EquateResult(reason="parity")
    eng = BMatchEngine(G)
    outcomes = {p: min_beta_for_parity(G, tw, p, engine=eng) for p in parities}
    found = [(r.beta, p) for p, r in outcomes.items() if r.beta is not None]
    if not found:
        certs = {
            p: r.certificate
            for p, r in outcomes.items()
            if r.certificate is not None
        }
        return EquateResult(reason="certificate", certificates=certs)
    beta, parity = min(found)
    plan = outcomes[parity].plan
    assert plan is not None
    if 2 * plan.total_steps != G.n * beta - sum(tw):
        raise RuntimeError("plan size does not match the target identity")
    return EquateResult(beta=beta, plan=plan)
