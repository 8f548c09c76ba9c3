"""Acceptance checks, runnable from pytest or from ``vmlab verify``.

Each check builds its own seeded random corpus, evaluates one identity or
inequality at a fixed tolerance, and returns a :class:`Outcome`.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .counterexamples import (KotheExampleConfig, kothe_dual_witnesses,
                              kothe_example, pettis_example)
from .dunford import (SimpleFunction, approximation_defect, average_scalar,
                      averaging, bochner_norm, dunford_norm,
                      indefinite_integral, pair, power_map_gap, sv_profile,
                      zfp_ui_modulus)
from .normed import SpaceDescriptor
from .space import (DiscreteProbabilitySpace, enumerate_partitions,
                    is_refinement, lp_norm)
from .summing import (LinearOperator, dual_sphere, pi_p_lower,
                      pietsch_lp_upper, primal_directions,
                      verify_composition_bound, verify_measure_bound)
from .thickness import ThicknessInstance, thickness_norm_bound, thickness_radius
from .variation import VectorMeasure, holder_coefficients, p_semivariation, p_variation

__all__ = ["Outcome", "CRITERIA", "run_criteria", "random_space",
           "random_function", "variation_corpus",
           "PETTIS_DEFECT_FLOOR"]

PETTIS_DEFECT_FLOOR = 0.9
QS = (1.0, 2.0, math.inf)
PS = (1.0, 1.5, 2.0, 3.0)


@dataclass
class Outcome:
    key: str
    title: str
    passed: bool
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.key}: {self.title} ({self.seconds:.2f}s) {self.detail}"


def random_space(rng, n) -> DiscreteProbabilitySpace:
    m = rng.dirichlet(np.ones(n)) + 1e-3
    return DiscreteProbabilitySpace(m / m.sum())


def random_function(rng, space, desc, zero_rows=True) -> SimpleFunction:
    vals = rng.standard_normal((space.n, desc.dim)) * rng.uniform(0.2, 3.0)
    if zero_rows and space.n > 1 and rng.random() < 0.2:
        vals[rng.integers(space.n)] = 0.0
    return SimpleFunction(space, desc, vals)


def variation_corpus(seed=20240, count=200):
    """(f, p) pairs with n <= 10, d <= 5, q in {1, 2, inf}, p in {1, 1.5, 2, 3}."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, 11))
        d = int(rng.integers(1, 6))
        q = QS[rng.integers(len(QS))]
        p = PS[rng.integers(len(PS))]
        sp = random_space(rng, n)
        out.append((random_function(rng, sp, SpaceDescriptor(d, q)), p))
    return out


def check_pettis_signature():
    f = pettis_example(6)
    sv = sv_profile(f, 2)
    deltas = [4.0 ** -n for n in range(1, 7)]
    eta = zfp_ui_modulus(f, 2, deltas)
    dn = dunford_norm(f, 2)
    bn = bochner_norm(f, 2)
    ok = (len(sv) == 6 and np.all(np.abs(sv - 1) <= 1e-9)
          and all(abs(v - 1) <= 1e-9 for v in eta.values)
          and abs(dn.value - 1) <= 1e-6 and abs(bn - math.sqrt(6)) <= 1e-9)
    return ok, {"sv_max_err": float(np.abs(sv - 1).max()),
                "eta_max_err": max(abs(v - 1) for v in eta.values),
                "dunford": dn.value, "bochner": bn}, 5.0


def check_variation_identity():
    worst_id, worst_brute, brute_count = 0.0, 0.0, 0
    ok = True
    for f, p in variation_corpus():
        nu = indefinite_integral(f)
        fin = p_variation(nu, p, "finest")
        bn = bochner_norm(f, p)
        rel = abs(fin - bn) / max(bn, 1e-300) if fin != bn else 0.0
        worst_id = max(worst_id, rel)
        ok &= rel <= 1e-9
        if f.space.n <= 8:
            br = p_variation(nu, p, "brute")
            worst_brute = max(worst_brute, abs(br - fin))
            ok &= abs(br - fin) <= 1e-9
            brute_count += 1
    return ok, {"max_rel_identity": worst_id, "max_brute_gap": worst_brute,
                "brute_instances": brute_count}, 60.0


def check_holder_dual():
    worst, count, feas = 0.0, 0, 0.0
    ok = True
    for f, p in variation_corpus():
        if f.space.n > 8:
            continue
        nu = indefinite_integral(f)
        hd = p_variation(nu, p, "holder_dual")
        fin = p_variation(nu, p, "finest")
        br = p_variation(nu, p, "brute")
        gap = max(abs(hd - fin), abs(hd - br))
        worst = max(worst, gap)
        ok &= gap <= 1e-9
        # the maximizing coefficients at the finest partition lie in B_{L^p'}
        a = np.atleast_1d(f.codomain.norm(nu.atom_values))
        alpha = holder_coefficients(a, f.space.masses, p)
        norm_alpha = lp_norm(f.space, alpha, math.inf if p == 1 else p / (p - 1))
        feas = max(feas, norm_alpha - 1)
        ok &= norm_alpha <= 1 + 1e-12
        count += 1
    return ok, {"max_gap": worst, "instances": count, "max_alpha_excess": feas}, None


def check_semivariation_equals_dunford():
    rng = np.random.default_rng(4404)
    worst, ok = 0.0, True
    for k in range(100):
        if k % 3 == 2:
            q, p = 2.0, 2.0
        else:
            q, p = (1.0, math.inf)[k % 3], PS[rng.integers(len(PS))]
        n = int(rng.integers(1, 9))
        d = int(rng.integers(1, 6))
        f = random_function(rng, random_space(rng, n), SpaceDescriptor(d, q))
        sv = p_semivariation(indefinite_integral(f), p)
        dn = dunford_norm(f, p)
        ok &= sv.exact and dn.exact
        worst = max(worst, abs(sv.value - dn.value))
        ok &= abs(sv.value - dn.value) <= 1e-6
    return ok, {"max_gap": worst}, None


def check_identity_summing():
    lows, ups = {}, {}
    ok = True
    for d in range(1, 7):
        D = SpaceDescriptor(d, 2.0)
        low = pi_p_lower(LinearOperator.identity(D), 2).value
        lows[d] = low
        ok &= low >= math.sqrt(d) - 1e-9
    for d in (2, 3):
        D = SpaceDescriptor(d, 2.0)
        u = LinearOperator.identity(D)
        sphere = dual_sphere(D, 1000)
        tests = primal_directions(D, 64)
        assert len(sphere) >= 1000 and len(tests) >= 64
        cert = pietsch_lp_upper(u, 2, sphere, tests)
        ups[d] = cert.constant
        ok &= cert.constant <= 1.05 * math.sqrt(d) and cert.violation(u) <= 1e-9
    return ok, {"lower": lows, "upper": ups}, 60.0


def _random_operator(rng):
    dx, dy = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    X = SpaceDescriptor(dx, QS[rng.integers(3)])
    Y = SpaceDescriptor(dy, QS[rng.integers(3)])
    return LinearOperator(X, Y, rng.standard_normal((dy, dx)))


def check_composition():
    rng = np.random.default_rng(6606)
    worst_f, worst_m, ok = math.inf, math.inf, True
    for _ in range(100):
        u = _random_operator(rng)
        p = PS[rng.integers(4)]
        f = random_function(rng, random_space(rng, int(rng.integers(1, 6))), u.domain)
        tests = np.concatenate([f.space.masses[:, None] ** (1 / p) * f.values,
                                primal_directions(u.domain, 16)])
        cert = pietsch_lp_upper(u, p, dual_sphere(u.domain, 200), tests)
        rep = verify_composition_bound(u, f, p, cert)
        worst_f = min(worst_f, rep.slack)
        ok &= rep.holds and rep.slack >= -1e-9
    for _ in range(100):
        u = _random_operator(rng)
        p = PS[rng.integers(4)]
        sp = random_space(rng, int(rng.integers(1, 6)))
        nu = VectorMeasure(sp, u.domain, rng.standard_normal((sp.n, u.domain.dim)))
        scaled = nu.atom_values / sp.masses[:, None] ** (1 - 1 / p)
        tests = np.concatenate([scaled, primal_directions(u.domain, 16)])
        cert = pietsch_lp_upper(u, p, dual_sphere(u.domain, 200), tests)
        rep = verify_measure_bound(u, nu, p, cert)
        worst_m = min(worst_m, rep.slack)
        ok &= rep.holds and rep.slack >= -1e-9
    return ok, {"min_slack_function": worst_f, "min_slack_measure": worst_m}, None


def _random_partition(rng, n):
    labels = rng.integers(0, int(rng.integers(1, n + 1)), size=n)
    from .space import Partition
    groups = {}
    for i, k in enumerate(labels):
        groups.setdefault(int(k), []).append(i)
    return Partition(groups.values(), n)


def check_approximation(defect_floor=PETTIS_DEFECT_FLOOR):
    rng = np.random.default_rng(7707)
    worst, checked, ok = 0.0, 0, True
    for _ in range(50):
        n = int(rng.integers(2, 7))
        d = int(rng.integers(1, 4))
        sp = random_space(rng, n)
        P0 = _random_partition(rng, n)
        block_vals = rng.standard_normal((len(P0), d))
        f = SimpleFunction(sp, SpaceDescriptor(d, QS[rng.integers(3)]), block_vals[P0.labels()])
        p = PS[rng.integers(4)]
        for P in enumerate_partitions(n):
            if is_refinement(P, P0):
                dfx = approximation_defect(f, P, p)
                worst = max(worst, dfx)
                ok &= dfx <= 1e-12
                checked += 1
    f3 = pettis_example(3)
    pettis_defect = approximation_defect(f3, f3.space.coarsest(), 2)
    ok &= pettis_defect >= defect_floor
    return ok, {"max_defect_on_refinements": worst, "refinements_checked": checked,
                "pettis_N3_coarsest_defect": pettis_defect}, None


def check_averaging_contracts():
    rng = np.random.default_rng(8808)
    errs = {"linearity": 0.0, "idempotence": 0.0, "contraction": -math.inf, "commutation": 0.0}
    for _ in range(100):
        n = int(rng.integers(1, 9))
        d = int(rng.integers(1, 4))
        sp = random_space(rng, n)
        P = _random_partition(rng, n)
        desc = SpaceDescriptor(d, QS[rng.integers(3)])
        f = random_function(rng, sp, desc)
        xs = rng.standard_normal(d)
        p = float(rng.uniform(1, 5))
        g, h = rng.standard_normal(n), rng.standard_normal(n)
        a, b = rng.standard_normal(2)
        lin = average_scalar(sp, a * g + b * h, P) - (a * average_scalar(sp, g, P) + b * average_scalar(sp, h, P))
        Ug = average_scalar(sp, g, P)
        errs["linearity"] = max(errs["linearity"], float(np.abs(lin).max()))
        errs["idempotence"] = max(errs["idempotence"], float(np.abs(average_scalar(sp, Ug, P) - Ug).max()))
        errs["contraction"] = max(errs["contraction"], lp_norm(sp, Ug, p) - lp_norm(sp, g, p))
        com = pair(averaging(f, P), xs) - average_scalar(sp, pair(f, xs), P)
        errs["commutation"] = max(errs["commutation"], float(np.abs(com).max()))
    ok = all(v <= 1e-12 for v in errs.values())
    return ok, errs, None


def check_power_continuity():
    rng = np.random.default_rng(9909)
    worst = -math.inf
    for _ in range(500):
        n = int(rng.integers(1, 12))
        sp = random_space(rng, n)
        p = float(rng.choice([1.0, rng.uniform(1, 6)]))
        g = rng.standard_normal(n) * rng.uniform(0.1, 4)
        h = g + rng.standard_normal(n) * 10.0 ** rng.uniform(-6, 0)
        lhs, rhs = power_map_gap(sp, g, h, p)
        worst = max(worst, lhs - rhs)
    return worst <= 1e-9, {"max_excess": worst}, None


def check_thickness():
    D = SpaceDescriptor(2, 2.0)
    inst = ThicknessInstance(D, [[1, 0], [-1, 0], [0, 1], [0, -1]])
    r = thickness_radius(inst)
    ok = r.exact and abs(r.lower - 1 / math.sqrt(2)) <= 1e-9
    rng = np.random.default_rng(10010)
    worst = -math.inf
    for _ in range(100):
        sp = random_space(rng, int(rng.integers(1, 8)))
        f = random_function(rng, sp, D)
        p = PS[rng.integers(4)]
        level = max(lp_norm(sp, pair(f, g), p) for g in inst.gamma)
        dn = dunford_norm(f, p).value
        worst = max(worst, dn - math.sqrt(2) * level)
        rep = thickness_norm_bound(f, inst, p, radius=r)
        ok &= rep.holds and dn <= math.sqrt(2) * level + 1e-9
    return ok, {"radius": r.lower, "max_excess": worst}, None


def check_kothe():
    rng = np.random.default_rng(11011)
    worst_img, worst_dn, ok = 0.0, 0.0, True
    for p in (1.5, 2.0, 3.0):
        for _ in range(3):
            cfg = KotheExampleConfig(p, tuple(random_space(rng, 4).masses))
            phi = kothe_example(cfg)
            for i, g in enumerate(kothe_dual_witnesses(cfg)):
                img = pair(phi, g)
                off = np.delete(img, i)
                ok &= bool(np.all(off == 0.0)) and img[i] != 0
                worst_img = max(worst_img, abs(lp_norm(phi.space, img, p) - 1))
            dn = dunford_norm(phi, p).value
            worst_dn = max(worst_dn, abs(dn - 1))
    ok &= worst_img <= 1e-12 and worst_dn <= 1e-6
    return ok, {"max_image_norm_err": worst_img, "max_dunford_err": worst_dn}, None


CRITERIA = {
    "1": ("Pettis counterexample signature", check_pettis_signature),
    "2": ("p-variation equals Bochner norm; brute force agrees", check_variation_identity),
    "3": ("Hoelder-dual coefficient form agrees", check_holder_dual),
    "4": ("p-semivariation equals Dunford norm", check_semivariation_equals_dunford),
    "5": ("pi_2 of the Euclidean identity", check_identity_summing),
    "6": ("composition with p-summing operators", check_composition),
    "7": ("approximation by partition averages", check_approximation),
    "8": ("averaging operator contracts", check_averaging_contracts),
    "9": ("|h|^p continuity bound", check_power_continuity),
    "10": ("norming-set bound on the Dunford norm", check_thickness),
    "11": ("Koethe-space example", check_kothe),
}


def run_criterion(key: str) -> Outcome:
    title, fn = CRITERIA[key]
    t0 = time.perf_counter()
    passed, detail, budget = fn()
    dt = time.perf_counter() - t0
    if budget is not None:
        detail["budget_seconds"] = budget
        passed = passed and dt < budget
    return Outcome(key, title, bool(passed), dt, detail)


def run_criteria(keys=None) -> list:
    keys = list(CRITERIA) if keys in (None, "all") else list(keys)
    return [run_criterion(k) for k in keys]
