"""The named verification suites.  Each suite turns a SuiteConfig into a list of Checks."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor

from ..cind import (
    INF, ZERO, act, appC_verify, canonical_param, decide_isomorphism, decomp_evidence, elementary,
    hecke_apply, image_solve, invariance_report, iwahori_character, iwahori_exponent,
    ks_invariant_dim, packet, reduced_pair_rank, span_pair, v_inf, v_zero,
)
from ..group import GMat, alpha, beta, diag, generators, s_prime
from ..group.tree import ball
from ..group.words import alphabet as named_alphabet, appc_alphabet, word_enum
from ..pseries import (
    constant_one, generation_check, identity_suite, make_basis, seulquo_haar_check, sp_invariants,
)
from ..weights import SmoothCharacter, mu, omega_pow
from .cache import Cache, quotient_ctx
from .config import SuiteConfig
from .report import Check, Report


class Budget:
    """Wall-clock allowance shared by the checks of one run."""

    def __init__(self, seconds: float | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.exhausted = False

    def expired(self) -> bool:
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.exhausted = True
        return self.exhausted


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.perf_counter() - self.t0) * 1000)


def _check(name: str, ok: bool, details: str, ms: int, bounded: bool = False) -> Check:
    """Exact checks pass or fail; bounded checks that succeed are only evidence."""
    if not ok:
        return Check(name, "fail", details, ms)
    return Check(name, "evidence-only" if bounded else "pass", details, ms)


def _random_elementary(rng: random.Random, p: int, r: int, parity: int, radius: int, k: int):
    verts = [v for v in ball(p, radius) if v.distance % 2 == parity]
    v = rng.choice(sorted(verts, key=lambda x: x.sort_key()))
    w = [rng.randrange(p) for _ in range(r + 1)]
    if not any(w):
        w[rng.randrange(r + 1)] = 1
    return elementary(v.rep(), w, r, k)


def _random_K(rng: random.Random, p: int) -> GMat:
    while True:
        a, b, c, d = (rng.randint(-12, 12) for _ in range(4))
        if (a * d - b * c) % p:
            return GMat(p, a, b, c, d)


# -- cind-core ------------------------------------------------------------------------

def suite_cind_core(cfg: SuiteConfig, cache: Cache | None, budget: Budget) -> list[Check]:
    p, k = cfg.p, cfg.k
    out = []
    for r in cfg.r_values():
        if budget.expired():
            break
        rng = random.Random(f"{cfg.seed}:cind-core:{p}:{r}")
        with _Timer() as t:
            flips = True
            for parity in (0, 1):
                for _ in range(cfg.samples):
                    f = _random_elementary(rng, p, r, parity, cfg.depth, k)
                    flips &= all(v.distance % 2 != parity for v in hecke_apply(f).support)
        out.append(_check(f"cind-core/parity-exchange[r={r}]", flips,
                          f"{cfg.samples} elementary functions per parity, radius <= {cfg.depth}", t.ms))
        with _Timer() as t:
            ok = True
            for g in [_random_K(rng, p) for _ in range(10)] + [alpha(p), beta(p), diag(p, p, 1)]:
                f = _random_elementary(rng, p, r, rng.randrange(2), 2, k)
                ok &= act(g, hecke_apply(f)) == hecke_apply(act(g, f))
                ok &= hecke_apply(f, "tau") == hecke_apply(hecke_apply(f))
        out.append(_check(f"cind-core/G-equivariance[r={r}]", ok,
                          "T(g f) = g T(f) for 10 random g in K and alpha, beta, diag(p,1); tau = T^2", t.ms))
        with _Timer() as t:
            ctx = quotient_ctx(cache, p, r, cfg.lam_value(), cfg.depth, cfg.slack, k)
            rank = reduced_pair_rank(ctx)
        out.append(_check(f"cind-core/pair-independence[r={r}]", rank == 2,
                          f"rank of reduced (v_inf, v_zero) = {rank}; depth {cfg.depth}, slack {cfg.slack}, "
                          f"quotient dim {ctx.dim}", t.ms))
    return out


# -- supersingular -------------------------------------------------------------------

def _invariance_checks(ctx, r: int, side: str, cfg: SuiteConfig) -> Check:
    p = cfg.p
    gens = generators("I1", p)
    names = ["u(1)", "l(p)", "t(1+p)", "diag(1+p,1)"]
    v = v_inf(p, r, cfg.k) if side == INF else v_zero(p, r, cfg.k)
    with _Timer() as t:
        rep = invariance_report(ctx, v, gens, names)
    ok = all(e.status in ("exact_fixed", "fixed_mod_image") for e in rep)
    details = "; ".join(f"{e.generator}: {e.status}" + (f" (bound {e.bound})" if e.bound is not None else "")
                        for e in rep)
    return _check(f"supersingular/invariance[r={r},{side}]", ok, details, t.ms)


def suite_supersingular(cfg: SuiteConfig, cache: Cache | None, budget: Budget) -> list[Check]:
    p, k = cfg.p, cfg.k
    lam = cfg.lam_value()
    alph = named_alphabet(cfg.alphabet, p)
    out = []
    for r in cfg.r_values():
        if budget.expired():
            break
        ctx = quotient_ctx(cache, p, r, lam, cfg.depth, cfg.slack, k)
        bounds = f"depth {cfg.depth}, slack {cfg.slack}, L = {cfg.word_len}, alphabet {cfg.alphabet}"
        with _Timer() as t:
            pair = span_pair(ctx, alph, cfg.word_len)
        out.append(_check(
            f"supersingular/rescle[r={r}]", pair.trivial_intersection,
            f"dims inf {pair.rank_inf}, zero {pair.rank_zero}, sum {pair.rank_sum}; {bounds}", t.ms, bounded=True))
        with _Timer() as t:
            rng = random.Random(f"{cfg.seed}:decomp:{p}:{r}")
            inside = decomp_evidence(ctx, pair, cfg.samples, cfg.depth - 1, rng)
        out.append(_check(
            f"supersingular/decomp-evidence[r={r}]", inside == cfg.samples,
            f"{inside}/{cfg.samples} random classes supported in B_{cfg.depth - 1} lie in the span sum "
            f"(dim {pair.rank_sum} of {ctx.dim}); {bounds}", t.ms, bounded=True))
        for side in (INF, ZERO):
            out.append(_invariance_checks(ctx, r, side, cfg))
            with _Timer() as t:
                c = iwahori_character(v_inf(p, r, k) if side == INF else v_zero(p, r, k))
            want = iwahori_exponent(p, r, side)
            out.append(_check(f"supersingular/iwahori-character[r={r},{side}]", c == want,
                              f"t(l) acts by l^{c}; expected exponent {want} mod {p - 1}", t.ms))
        if r == 0:
            out += _ks_separation(ctx, cfg)
    return out


def _ks_separation(ctx, cfg: SuiteConfig) -> list[Check]:
    p, k = cfg.p, cfg.k
    sp = s_prime(p)
    with _Timer() as t:
        fixed = act(sp, v_inf(p, 0, k)) == v_inf(p, 0, k)
    out = [_check("supersingular/KS-fixes-v_inf[r=0]", fixed, "s' = (1 1; -1 0) fixes v_{0,inf} exactly", t.ms)]
    top = cfg.depth + cfg.slack
    with _Timer() as t:
        diff = act(sp, v_zero(p, 0, k)) - v_zero(p, 0, k)
        found = next((b for b in range(top + 1) if image_solve(diff, ctx.lam, b) is not None), None)
    out.append(_check("supersingular/KS-moves-v_zero[r=0]", found is None,
                      f"s' v_(0,0) - v_(0,0) has no T-preimage supported in B_b for b <= {top}"
                      + ("" if found is None else f"; preimage found at bound {found}"), t.ms, bounded=True))
    return out


# -- principal series ----------------------------------------------------------------

def _default_unramified(cfg: SuiteConfig) -> list[SmoothCharacter]:
    """Five values of η(p) including -1 (so Λ = -1), nontrivial ones first."""
    q = cfg.p ** cfg.k
    vals = [cfg.p - 1] + [v for v in range(2, q) if v != cfg.p - 1][:3] + [1]
    return [mu(cfg.p, cfg.k, v) for v in vals]


def _pseries_checks(eta: SmoothCharacter, cfg: SuiteConfig, prefix: str, names) -> list[Check]:
    tag = eta.literal()
    out = []
    with _Timer() as t:
        results = identity_suite(eta)
    for res in results:
        if names(res.name):
            detail = ", ".join(f"{k}={v}" for k, v in sorted(res.detail.items()))
            out.append(_check(f"{prefix}/{res.name}[{tag}]", res.passed, detail, t.ms // max(len(results), 1)))
    out.append(_generation(eta, cfg, prefix))
    return out


def _generation(eta: SmoothCharacter, cfg: SuiteConfig, prefix: str) -> Check:
    alph = named_alphabet("SL2_default", eta.p)
    L = max(cfg.word_len, 30)
    with _Timer() as t:
        if eta.trivial:
            rep = generation_check(eta, [constant_one(eta)], alph, L, cfg.window)
            ok = rep.span_dim == 1 and bool(rep.constants_line_fixed)
        else:
            seeds = ([make_basis("phi0", eta)] if eta.unramified
                     else [make_basis("ell1", eta), make_basis("ell2", eta)])
            rep = generation_check(eta, seeds, alph, L, cfg.window)
            ok = rep.fills
    details = (f"span {rep.span_dim}/{rep.window_dim} in window {tuple(cfg.window)} "
               f"(working window +1, {rep.mode}, {rep.rounds} rounds of at most {L}, skipped {rep.skipped})")
    return _check(f"{prefix}/generation[{eta.literal()}]", ok, details, t.ms, bounded=True)


def suite_pseries_unramified(cfg: SuiteConfig, cache, budget: Budget) -> list[Check]:
    etas = [cfg.character()] if cfg.eta else _default_unramified(cfg)
    out = []
    for eta in etas:
        if budget.expired():
            break
        if not eta.unramified:
            continue
        out += _pseries_checks(eta, cfg, "pseries-unramified", lambda n: (
            n.startswith(("lemtech", "dcpf", "phi0", "actionI:"))))
    return out


def suite_pseries_ramified(cfg: SuiteConfig, cache, budget: Budget) -> list[Check]:
    if cfg.eta:
        etas = [cfg.character()]
    else:
        exps = [cfg.a] if cfg.a is not None else range(1, cfg.p - 1)
        etas = [omega_pow(cfg.p, cfg.k, a) for a in exps]
    out = []
    for eta in etas:
        if budget.expired():
            break
        if eta.unramified:
            continue
        out += _pseries_checks(eta, cfg, "pseries-ramified", lambda n: (
            n.startswith(("techramphi", "cleramphi", "ellcond", "actionell1"))))
    return out


# -- Steinberg and the ladder --------------------------------------------------------

def suite_steinberg(cfg: SuiteConfig, cache, budget: Budget) -> list[Check]:
    p = cfg.p
    out = []
    for N in (2, 3):
        with _Timer() as t:
            res = sp_invariants(p, N)
        out.append(_check(f"steinberg/invariants[N={N}]", res.ind_dim == 2 and res.sp_dim == 1,
                          f"I_S(1)-fixed dim {res.ind_dim} in the P^1 model, {res.sp_dim} after quotient by constants",
                          t.ms))
    with _Timer() as t:
        ladder = {r.name: r for r in seulquo_haar_check(p, 4)}
    for m in range(1, 4):
        out.append(_check(f"steinberg/ladder[level={m}]", ladder[f"ladder-{m}"].passed,
                          f"1_(p^{m} Z_p) = sum_j u(j p^{m}) 1_(p^{m + 1} Z_p)", t.ms))
    printed = ladder["beta0-swap (printed)"]
    out.append(_check("steinberg/beta0-swap", ladder["beta0-swap (sum over l(jp))"].passed,
                      "sum_j l(jp) beta0 1_O0 = 1_Oinf; beta0 1_O0 alone equals 1_(v<=-2): "
                      f"{printed.detail['beta0*1_O0_is_v<=-2']}", t.ms))
    out.append(_check("steinberg/no-haar-conclusion", all(ladder[f"ladder-{m}"].passed for m in range(4)),
                      f"an invariant functional gives l(1_(p^m Z_p)) = p l(1_(p^(m+1) Z_p)); q mod p = {p % p}",
                      t.ms))
    return out


# -- isomorphisms --------------------------------------------------------------------

def suite_isomorphism_table(cfg: SuiteConfig, cache, budget: Budget) -> list[Check]:
    p, k = cfg.p, cfg.k
    params = [(r, z) for z in (INF, ZERO) for r in range(p)]
    with _Timer() as t:
        computed = {}
        for r, z in params:
            computed[(r, z)] = iwahori_character(v_inf(p, r, k) if z == INF else v_zero(p, r, k))
    exp_ok = all(computed[x] == iwahori_exponent(p, *x) for x in params)
    out = [_check("isomorphism-table/exponents", exp_ok,
                  "computed Iwahori characters agree with r and -r mod p-1", t.ms)]
    with _Timer() as t:
        bad = []
        for left in params:
            for right in params:
                verdict, crit = decide_isomorphism(p, *left, *right)
                same_inv = (computed[left] == computed[right]
                            and ks_invariant_dim(p, *left) == ks_invariant_dim(p, *right))
                consistent = (verdict == "isomorphic") == same_inv
                if crit == "iwahori_exponent":
                    consistent &= computed[left] != computed[right]
                if crit == "KS_invariants":
                    consistent &= ks_invariant_dim(p, *left) != ks_invariant_dim(p, *right)
                if not consistent:
                    bad.append(f"{left} vs {right}")
    n = len(params)
    out.append(_check("isomorphism-table/table", not bad,
                      f"{n}x{n} table cross-checked against exponents and K_S-invariant dimensions"
                      + (f"; inconsistent: {', '.join(bad)}" if bad else ""), t.ms))
    with _Timer() as t:
        sym = all(packet(p, r) == packet(p, p - 1 - r) for r in range(p))
        mid = len(packet(p, (p - 1) // 2)) == 1
    out.append(_check("isomorphism-table/packets", sym and mid,
                      f"packet(r) = packet(p-1-r) for all r; |packet({(p - 1) // 2})| = 1", t.ms))
    return out


# -- router ------------------------------------------------------------------------

def suite_appendix_c(cfg: SuiteConfig, cache, budget: Budget) -> list[Check]:
    p, k = cfg.p, cfg.k
    words = word_enum(appc_alphabet(p), cfg.word_len)
    out = []
    for r in cfg.r_values():
        if budget.expired():
            break
        with _Timer() as t:
            total = ok = 0
            for g in words:
                for mono in ("x^r", "y^r"):
                    total += 1
                    ok += appC_verify(g, mono, r, k)
        out.append(_check(f"appendix-c/rewrite[r={r}]", ok == total,
                          f"{ok}/{total} rewritings of [g, x^r], [g, y^r] verified, words of length <= {cfg.word_len}",
                          t.ms))
    return out


SUITE_FUNCS = {
    "cind-core": suite_cind_core,
    "supersingular": suite_supersingular,
    "pseries-unramified": suite_pseries_unramified,
    "pseries-ramified": suite_pseries_ramified,
    "steinberg": suite_steinberg,
    "isomorphism-table": suite_isomorphism_table,
    "appendix-c": suite_appendix_c,
}


def _run_one(name: str, cfg: SuiteConfig, cache_dir: str | None, budget_s: float | None):
    cache = Cache(cache_dir) if cache_dir is not None else None
    budget = Budget(budget_s)
    checks = SUITE_FUNCS[name](cfg, cache, budget)
    return checks, (cache.hits if cache else 0), budget.exhausted


def run_suite(cfg: SuiteConfig, cache_dir: str | None = None, jobs: int = 1,
              time_budget: float | None = None) -> Report:
    """Run every suite named in the config; checks from all suites land in one report."""
    cfg.validate()
    names = list(cfg.suites)
    report = Report("+".join(names), cfg.echo())
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, names, [cfg] * len(names), [cache_dir] * len(names),
                                    [time_budget] * len(names)))
    else:
        results = [_run_one(n, cfg, cache_dir, time_budget) for n in names]
    for checks, hits, exhausted in results:
        report.checks += checks
        report.cache_hits += hits
        report.incomplete |= exhausted
    return report
