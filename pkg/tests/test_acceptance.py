"""One test per acceptance criterion; each records a pass/fail line for the summary."""
import random
from fractions import Fraction

import mpmath

from sunadacheck.covers import (LiftLabels, check_surjective, degree_multiset, evaluate,
                                lift_orbit_partition, preimage_components, sunada_degree_check,
                                verify_involution_compat)
from sunadacheck.enumeration import find_trace_matches
from sunadacheck.exact_linalg import calibrate_metric, hyperbolic_length, trace_invariant, word_matrix
from sunadacheck.geodesic_oracle import geodesic_self_intersections
from sunadacheck.group_core import is_almost_conjugate, is_conjugate_subgroup, subgroup_generated
from sunadacheck.intersections import (CALIBRATED_RIBBON, component_simplicity, lift_crossings,
                                       self_intersection_number)
from sunadacheck.words import SUBSURFACE, CyclicWord, Word, cyclic_reduce, free_reduce, letter_inverse


def lifts_of_alpha(G, rho_sub, alpha_sub):
    L = subgroup_generated([evaluate(rho_sub, alpha_sub)], G)
    labels = LiftLabels(L)
    return L, labels, lift_crossings(alpha_sub, rho_sub, L, CALIBRATED_RIBBON, labels)


def test_criterion_01_gassmann_certificate(acceptance, G, H, K):
    cert = is_almost_conjugate(H, K)
    conj, _ = is_conjugate_subgroup(H, K)
    ok = (G.order == 32 and cert.almost_conjugate and not conj
          and sum(size for _, size, _, _ in cert.table) == 32)
    acceptance(1, "Gassmann certificate, H and K not conjugate", ok, f"{len(cert.table)} classes")
    assert ok


def test_criterion_02_surjectivity(acceptance, rho):
    surjective, order = check_surjective(rho)
    ok = surjective and order == 32
    acceptance(2, "rho is surjective", ok, f"generated order {order}")
    assert ok


def test_criterion_03_lift_decomposition(acceptance, cfg, rho, H, K, alpha):
    t_alpha = cfg.tau()(alpha)
    found = {(S.name, name): degree_multiset(preimage_components(rho, S, w))
             for S in (H, K) for name, w in (("alpha", alpha), ("tau(alpha)", t_alpha))}
    ok = all(d == (1, 1, 2, 2, 2) for d in found.values())
    acceptance(3, "lift degrees {1,1,2,2,2} for alpha and tau(alpha) over H and K", ok)
    assert ok


def test_criterion_04_orbit_partitions(acceptance, G, H, K, rho, alpha):
    L = subgroup_generated([evaluate(rho, alpha)], G)
    labels = LiftLabels(L)
    ph, pk = lift_orbit_partition(H, L, labels), lift_orbit_partition(K, L, labels)
    ok = (ph.sizes() == pk.sizes() == (2, 2, 4, 4, 4)
          and {(1, 9), (5, 13)} <= set(ph.gamma_orbits)
          and {(1, 13), (5, 9)} <= set(pk.gamma_orbits)
          and ph.is_partition() and pk.is_partition())
    acceptance(4, "H and K orbit partitions on the 16 lifts", ok, "printed K list corrected: gamma_12 for gamma_10")
    assert ok


def test_criterion_05_involution_compatibility(acceptance, cfg, rho, H, K):
    rep = verify_involution_compat(rho, cfg.tau(), {"H": H, "K": K}, exhaustive_length=4,
                                   random_words=10_000, seed=0)
    ok = rep.compatible and rep.membership_ok and all(rep.preserves.values())
    acceptance(5, "involution lifts to M_H and M_K", ok,
               f"phi = {rep.phi_kind}; (j,k)->(j,-k) intertwines: {rep.psi_matches}; {rep.membership_checked} words")
    assert ok


def test_criterion_06_trace_reproduction(acceptance, cfg, alpha_sub):
    _, chosen = calibrate_metric()
    m = cfg.metric()
    tr = word_matrix(m, alpha_sub).trace
    with mpmath.workprec(128):
        err = abs(hyperbolic_length(m, Word((("b", 1),)), 128) - 2 * mpmath.log(4))
        ok = chosen is not None and tr == Fraction(109505, 2048) and err < mpmath.mpf("1e-30")
    acceptance(6, "tr(alpha) = 109505/2048 exactly, l(b) = 2 ln 4", ok, f"tr = {tr}")
    assert ok


def test_criterion_07_trace_uniqueness(acceptance, cfg, candidates, alpha_sub):
    target = cyclic_reduce(alpha_sub, SUBSURFACE)
    t_inv = cyclic_reduce(cfg.tau_sub()(alpha_sub).inverse(), SUBSURFACE)
    rep = find_trace_matches(candidates, cfg.metric(), target)
    got = {cls[0].unoriented_key() for cls in rep.classes}
    ok = got == {target.unoriented_key(), t_inv.unoriented_key()} and rep.discriminating
    counts = candidates.counts()
    acceptance(7, "only alpha and tau(alpha)^-1 match the trace", ok,
               f"{counts['closed_set_cyclic_words']} cyclic / {counts['closed_set_linear_words']} linear words "
               f"vs reference 4320")
    assert ok


def test_criterion_08_crossing_facts(acceptance, G, rho_sub, alpha_sub):
    _, _, cr = lifts_of_alpha(G, rho_sub, alpha_sub)
    e = G.element
    ok = (cr.crosses(e(1, 0), e(3, 0)) and cr.crosses(e(1, 4), e(3, 4))
          and not cr.crosses(e(1, 0), e(3, 4)) and not cr.crosses(e(1, 4), e(3, 0))
          and not cr.self_crossing)
    acceptance(8, "gamma1-gamma9 and gamma5-gamma13 cross, gamma1-gamma13 and gamma5-gamma9 do not; "
                  "16 lifts simple", ok)
    assert ok


def test_criterion_09_simplicity_verdicts(acceptance, G, H, K, rho_sub, alpha_sub, report):
    L, labels, cr = lifts_of_alpha(G, rho_sub, alpha_sub)
    verdicts = {}
    for S in (H, K):
        part = lift_orbit_partition(S, L, labels)
        verdicts[S.name] = component_simplicity(part, cr, preimage_components(rho_sub, S, alpha_sub)).by_name()
    vh, vk = verdicts["H"], verdicts["K"]
    v = report.verdict
    ok = (not vh["beta1"].simple and not vh["beta2"].simple and vk["beta1"].simple and vk["beta2"].simple
          and "not simple iso-length spectral" in v["statement"] and v["witness_length"] is not None)
    acceptance(9, "beta1, beta2 nonsimple in M_H and simple in M_K; verdict emitted", ok,
               f"witness length {v['witness_length']}")
    assert ok


def test_criterion_10_property_suites(acceptance, G, cfg, rho, rho_sub, H, K, alpha_sub):
    rng = random.Random(10)
    results = {}

    checked, bad = sunada_degree_check(rho, H, K, 4)
    results["sunada"] = checked == sum(8 ** k for k in range(5)) and not bad

    m = cfg.metric()
    inv_ok = True
    for _ in range(1000):
        w = Word(tuple((rng.choice("abx"), rng.choice((1, -1))) for _ in range(rng.randint(1, 12))))
        t = trace_invariant(m, w)
        k = rng.randrange(len(w))
        scaled = m.scaled({g: Fraction(rng.randint(1, 7), rng.randint(1, 7)) for g in "abx"})
        inv_ok &= (trace_invariant(m, Word(w.letters[k:] + w.letters[:k])) == t
                   and trace_invariant(m, w.inverse()) == t and trace_invariant(scaled, w) == t)
    results["trace_invariance"] = inv_ok

    _, labels, cr = lifts_of_alpha(G, rho_sub, alpha_sub)
    reps = labels.space.representatives
    results["equivariance"] = all(cr.crosses(g * a, g * b) == cr.crosses(a, b)
                                  for a in reps for b in reps if a != b for g in G)

    conf_ok = True
    for _ in range(1000):
        w = [(rng.choice("ab"), rng.choice((1, -1))) for _ in range(rng.randrange(20))]
        while True:
            spots = [i for i in range(len(w) - 1) if w[i + 1] == letter_inverse(w[i])]
            if not spots:
                break
            i = rng.choice(spots)
            del w[i:i + 2]
        conf_ok &= tuple(w) == free_reduce(Word(tuple(w))).letters
    results["confluence"] = conf_ok

    corpus, seen = [], set()
    while len(corpus) < 24:
        w = Word(tuple((rng.choice("abx"), rng.choice((1, -1))) for _ in range(rng.randint(2, 8))))
        if not (w.is_reduced() and w.is_cyclically_reduced()):
            continue
        c = CyclicWord(w.letters, SUBSURFACE)
        if c.is_primitive() and c not in seen:
            seen.add(c)
            corpus.append(w)
    results["oracle"] = all(self_intersection_number(w) == geodesic_self_intersections(w) for w in corpus)

    ok = all(results.values())
    acceptance(10, "property suites", ok, ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in results.items()))
    assert ok
