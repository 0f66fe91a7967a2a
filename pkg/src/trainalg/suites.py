"""Seeded verification suites.

Every trial draws its data from ``random.Random(f"{suite}:{trial_seed}")``
with ``trial_seed = seed * 100_000 + index``, so a single trial can be
replayed from the report alone.  A failing trial is shrunk by regenerating
it from the same seed with a smaller support cap, then a smaller entry
height, keeping the smallest inputs that still fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .groups import (
    FiniteSupportOperator,
    GroupElement,
    PairDescriptor,
    pair_preset,
    random_element,
)
from .relations import LAMBDA_SAMPLES, char_function, relation_compose
from .repharness import (
    CHARACTER_TOL,
    SPHERICAL_TOL,
    SphericalParams,
    TensorRep,
    TruncationError,
    spherical_character_check,
    spherical_phi,
    theta_weak_limit_check,
    verify_repcat,
)
from .train import (
    DoubleCoset,
    Verdict,
    block_product,
    center_witness,
    commutativity_witness,
    coset_compose,
    coset_eq,
    coset_invariants,
    embedded_theta,
    group_to_mantle,
    involution,
    mantle_compose,
    psi,
    random_stabilizer,
    shift,
    unit,
    unit_lambda,
    unit_mu,
)

__all__ = ["SuiteConfig", "SUITES", "SuiteReport", "TrialResult", "run_suite", "trial_rng"]


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    trials: int = 20
    seed: int = 0
    max_support: int = 3
    max_index: int = 2
    height: int = 2
    n: int = 10
    d: int = 2
    model: str = "truncated"
    pair: str | None = None

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {sorted(SUITES)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 1 <= self.max_support <= 6:
            raise ValueError("max_support must lie in [1, 6]")
        if not 0 <= self.max_index <= 3:
            raise ValueError("max_index must lie in [0, 3]")
        if not 1 <= self.height <= 5:
            raise ValueError("height must lie in [1, 5]")
        if not 0 <= self.d <= 3 or not 1 <= self.n <= 40:
            raise ValueError("need 0 <= d <= 3 and 1 <= n <= 40")
        if self.d == 3 and self.n > 12:
            raise ValueError("d = 3 is limited to n <= 12")


@dataclass
class TrialResult:
    index: int
    seed: int
    passed: bool
    detail: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def to_json(self):
        out = {"trial": self.index, "seed": self.seed, "pass": self.passed, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteReport:
    config: SuiteConfig
    checks: str
    trials: list[TrialResult]

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.trials)

    def to_json(self):
        c = self.config
        return {
            "suite": c.suite,
            "checks": self.checks,
            "seed": c.seed,
            "trials": c.trials,
            "config": {"max_support": c.max_support, "max_index": c.max_index,
                       "height": c.height, "n": c.n, "d": c.d, "model": c.model,
                       "pair": c.pair},
            "pass": self.passed,
            "failures": sum(not t.passed for t in self.trials),
            "results": [t.to_json() for t in self.trials],
        }


def trial_rng(suite: str, trial_seed: int) -> random.Random:
    return random.Random(f"{suite}:{trial_seed}")


# ---------------------------------------------------------------------------
# helpers


def _coset(pair, beta, alpha, support, rng, height) -> DoubleCoset:
    return DoubleCoset(pair, tuple(beta), tuple(alpha),
                       random_element(pair.G, rng.randint(1, support), rng, height))


def _index(pair, rng, top) -> tuple[int, ...]:
    return tuple(rng.randint(0, top) for _ in range(pair.index_arity))


def _cjson(c: DoubleCoset):
    return c.to_json()


def _gjson(g: GroupElement):
    return g.to_json()


def _pair(cfg: SuiteConfig, default: str) -> PairDescriptor:
    return pair_preset(cfg.pair or default)


# Each suite is (checks, generate, check).  ``generate(rng, cfg, support,
# height)`` returns a case dict; ``check(case, cfg)`` returns (ok, detail).
# Cases keep live objects under "objs" and JSON under "json".


def _gen_compose(rng, cfg, support, height):
    pair = pair_preset("GL_R/O")
    a = rng.randint(0, cfg.max_index)
    g = _coset(pair, (a,), (a,), support, rng, height)
    h = _coset(pair, (a,), (a,), support, rng, height)
    return {"objs": (g, h, a), "json": {"g": _cjson(g), "h": _cjson(h), "alpha": a}}


def _check_compose(case, cfg):
    g, h, a = case["objs"]
    gh = coset_compose(g, h)
    bp = block_product(g.rep.ops[0].core, h.rep.ops[0].core, a, a, a)
    expected = FiniteSupportOperator(g.pair.G, bp)
    return gh.rep.ops[0] == expected, {"support": gh.rep.support}


def _gen_triple(rng, cfg, support, height):
    pair = _pair(cfg, "GL_R/O")
    a, b, c, d = (_index(pair, rng, cfg.max_index) for _ in range(4))
    f = _coset(pair, d, c, support, rng, height)
    g = _coset(pair, c, b, support, rng, height)
    h = _coset(pair, b, a, support, rng, height)
    return {"objs": (f, g, h), "json": {"f": _cjson(f), "g": _cjson(g), "h": _cjson(h)}}


def _check_associativity(case, cfg):
    f, g, h = case["objs"]
    left = coset_compose(coset_compose(f, g), h)
    right = coset_compose(f, coset_compose(g, h))
    same_chi = all(char_function(left, lam) == char_function(right, lam) for lam in LAMBDA_SAMPLES)
    verdict = coset_eq(left, right).verdict
    return same_chi and verdict != Verdict.DISTINCT, {"verdict": verdict.value}


def _gen_repind(rng, cfg, support, height):
    pair = _pair(cfg, "GL_R/O")
    a, b = _index(pair, rng, cfg.max_index), _index(pair, rng, cfg.max_index)
    g = _coset(pair, b, a, support, rng, height)
    u = random_stabilizer(pair, b, rng.randint(1, support), rng)
    v = random_stabilizer(pair, a, rng.randint(1, support), rng)
    g2 = DoubleCoset(pair, b, a, u @ g.rep @ v)
    return {"objs": (g, g2), "json": {"g": _cjson(g), "u": _gjson(u), "v": _gjson(v)}}


def _check_repind(case, cfg):
    g, g2 = case["objs"]
    r = max(g.rows, g2.rows)
    return coset_invariants(g, r) == coset_invariants(g2, r), {}


def _gen_pair(rng, cfg, support, height):
    pair = _pair(cfg, "GL_R/O")
    a, b, c = (_index(pair, rng, cfg.max_index) for _ in range(3))
    g = _coset(pair, c, b, support, rng, height)
    h = _coset(pair, b, a, support, rng, height)
    return {"objs": (g, h), "json": {"g": _cjson(g), "h": _cjson(h)}}


def _check_chi(case, cfg):
    g, h = case["objs"]
    gh = coset_compose(g, h)
    dims, mult = True, True
    for lam in LAMBDA_SAMPLES:
        r = char_function(gh, lam)
        dims &= 2 * r.dim == r.dom_dim + r.cod_dim
        mult &= r == relation_compose(char_function(g, lam), char_function(h, lam))
    return dims and mult, {"half_dimension": dims, "multiplicative": mult}


def _gen_level0(rng, cfg, support, height):
    pair = pair_preset(cfg.pair) if cfg.pair else pair_preset(rng.choice(["GL_R/O", "GL_R^2/O"]))
    z = (0,) * pair.index_arity
    g = _coset(pair, z, z, support, rng, height)
    h = _coset(pair, z, z, support, rng, height)
    return {"objs": (g, h), "json": {"g": _cjson(g), "h": _cjson(h)}}


def _check_commutativity(case, cfg):
    g, h = case["objs"]
    try:
        J = commutativity_witness(g, h)
    except RuntimeError as exc:
        return False, {"error": str(exc)}
    return True, {"pair": g.pair.name, "J": _gjson(J)}


def _gen_central(rng, cfg, support, height):
    pair = pair_preset("GL_R/O")
    a = rng.randint(0, cfg.max_index)
    g = random_element(pair.G, rng.randint(1, support), rng, height)
    h = shift(random_element(pair.G, rng.randint(1, support), rng, height), pair, (a,))
    return {"objs": (pair, g, h, a), "json": {"g": _gjson(g), "h": _gjson(h), "alpha": a}}


def _check_central(case, cfg):
    pair, g, h, a = case["objs"]
    bound = max(g.support, h.support, 1)
    m = center_witness(g, h, (a,), pair)
    t = embedded_theta(pair, (a,), m)
    c = t @ h @ t
    exact = g @ c == c @ g
    gc, hc = DoubleCoset(pair, (a,), (a,), g), DoubleCoset(pair, (a,), (a,), h)
    verdict = coset_eq(coset_compose(gc, hc), coset_compose(hc, gc)).verdict
    ok = m <= bound and exact and verdict == Verdict.EQUAL_BY_WITNESS
    return ok, {"m": m, "bound": bound, "verdict": verdict.value}


def _gen_ordered(rng, cfg, support, height):
    top = max(cfg.max_index, 1)
    a, b, c = sorted(rng.randint(0, top) for _ in range(3))
    return {"objs": (a, b, c), "json": {"alpha": a, "beta": b, "gamma": c}}


def _check_ordered(case, cfg):
    pair = _pair(cfg, "GL_R/O")
    a, b, c = case["objs"]
    w = Verdict.EQUAL_BY_WITNESS
    lam_ab, mu_ba = unit_lambda(pair, a, b), unit_mu(pair, b, a)
    p = psi(pair, a, b)
    checks = {
        "mu_lambda_unit": coset_eq(coset_compose(mu_ba, lam_ab), unit(pair, a)).verdict == w,
        "lambda_chain": coset_eq(coset_compose(unit_lambda(pair, b, c), lam_ab),
                                 unit_lambda(pair, a, c)).verdict == w,
        "mu_chain": coset_eq(coset_compose(mu_ba, unit_mu(pair, c, b)),
                             unit_mu(pair, c, a)).verdict == w,
        "psi_idempotent": coset_eq(coset_compose(p, p), p).verdict == w,
        "psi_selfadjoint": coset_eq(involution(p), p).verdict == w,
    }
    return all(checks.values()), checks


def _gen_mantle(rng, cfg, support, height):
    pair = pair_preset("GL_R/O")
    g = random_element(pair.G, rng.randint(1, support), rng, height)
    h = random_element(pair.G, rng.randint(1, support), rng, height)
    return {"objs": (g, h), "json": {"g": _gjson(g), "h": _gjson(h)}}


def _check_mantle(case, cfg):
    g, h = case["objs"]
    lhs = mantle_compose(group_to_mantle(g), group_to_mantle(h))
    rhs = group_to_mantle(g @ h)
    return lhs == rhs, {"exact": lhs == rhs}


def _gen_repcat(rng, cfg, support, height):
    pair = pair_preset("GL_R/O")
    top = min(cfg.max_index, 1) if cfg.d >= 2 else cfg.max_index
    a, b, c = (rng.randint(0, top) for _ in range(3))
    g = _coset(pair, (c,), (b,), support, rng, height)
    h = _coset(pair, (b,), (a,), support, rng, height)
    return {"objs": (g, h), "json": {"g": _cjson(g), "h": _cjson(h)}}


def _check_repcat(case, cfg):
    g, h = case["objs"]
    try:
        r = verify_repcat(g, h, TensorRep(cfg.n, cfg.d), cfg.model)
    except TruncationError as exc:
        return False, {"error": str(exc), "min_n": exc.min_n}
    return r.passed, r.to_json()


def _gen_theta(rng, cfg, support, height):
    top = min(cfg.max_index, 1)
    a = rng.randint(0, top)
    mmax = (cfg.n - a) // 2
    return {"objs": (a, mmax), "json": {"alpha": a, "m_range": [1, mmax]}}


def _check_theta(case, cfg):
    a, mmax = case["objs"]
    if mmax < 1:
        return False, {"error": "n too small for any m"}
    r = theta_weak_limit_check(TensorRep(cfg.n, cfg.d), a, range(1, mmax + 1), cfg.model)
    return r.passed, r.to_json()


def _gen_spherical(rng, cfg, support, height):
    pair = pair_preset("GL_R/O")
    g = random_element(pair.G, rng.randint(1, support), rng, height)
    h = random_element(pair.G, rng.randint(1, support), rng, height)
    params = SphericalParams(tuple(round(rng.uniform(-2, 2), 3) for _ in range(rng.randint(0, 3))),
                             round(rng.uniform(-1, 1), 3), rng.randint(0, 1))
    return {"objs": (params, g, h),
            "json": {"g": _gjson(g), "h": _gjson(h),
                     "params": {"s": list(params.s), "a": params.a, "sigma": params.sigma}}}


def _check_spherical(case, cfg):
    params, g, h = case["objs"]
    ok = spherical_character_check(params, g, h, CHARACTER_TOL)
    ident = spherical_phi(params, GroupElement.identity(g.group)) == 1
    return ok and ident, {"character": ok, "identity_is_one": ident, "tol": CHARACTER_TOL,
                          "phi_tol": SPHERICAL_TOL}


SUITES: dict[str, tuple[str, Callable, Callable]] = {
    "compose": ("stabilized product of double cosets matches the explicit 3x3 block layout",
                _gen_compose, _check_compose),
    "associativity": ("product of double cosets is associative (characteristic samples and coset equality)",
                      _gen_triple, _check_associativity),
    "representative_independence": ("invariants do not depend on the chosen representative",
                                    _gen_repind, _check_repind),
    "chi_multiplicativity": ("characteristic function turns products into relation composition, half-dimensional",
                             _gen_pair, _check_chi),
    "commutativity": ("level-0 double cosets of a pure pair commute via an explicit block swap",
                      _gen_level0, _check_commutativity),
    "centrality": ("elements fixing the first alpha coordinates become central after a Theta twist",
                   _gen_central, _check_central),
    "ordered_category": ("unit morphisms compose as an ordered category; psi is a self-adjoint idempotent",
                         _gen_ordered, _check_ordered),
    "mantle": ("placing group elements on the fixed half of the coordinates is multiplicative",
               _gen_mantle, _check_mantle),
    "repcat": ("compressed tensor representation is multiplicative on double cosets",
               _gen_repcat, _check_repcat),
    "theta_limit": ("compressions of rho(Theta_m) to fixed vectors stabilize at the identity",
                    _gen_theta, _check_theta),
    "spherical": ("closed-form spherical function is a character on disjoint supports",
                  _gen_spherical, _check_spherical),
}


def _shrink(suite, gen, check, cfg, trial_seed, case):
    best = case
    for support in range(1, cfg.max_support + 1):
        for height in range(1, cfg.height + 1):
            cand = gen(trial_rng(suite, trial_seed), cfg, support, height)
            ok, _ = check(cand, cfg)
            if not ok:
                return cand
    return best


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    checks, gen, check = SUITES[cfg.suite]
    out = []
    for i in range(cfg.trials):
        trial_seed = cfg.seed * 100_000 + i
        case = gen(trial_rng(cfg.suite, trial_seed), cfg, cfg.max_support, cfg.height)
        ok, detail = check(case, cfg)
        res = TrialResult(i, trial_seed, bool(ok), detail)
        if not ok:
            small = _shrink(cfg.suite, gen, check, cfg, trial_seed, case)
            res.counterexample = small["json"]
        out.append(res)
    return SuiteReport(cfg, checks, out)
