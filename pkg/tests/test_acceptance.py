"""Exit criteria.  Each test records one PASS/FAIL line, printed in the
pytest terminal summary."""
import itertools
import time

import numpy as np

from delayh2.oracle import OracleConfig, fir_truncated_optimum
from delayh2.pattern import (
    FAMILIES,
    chain_pattern,
    family_pattern,
    full_pattern,
    n_step_pattern,
)
from delayh2.plants import chain_plant, random_plant, sweep_plant
from delayh2.riccati import (
    control_dare,
    control_residual,
    estimation_dare,
    estimation_residual,
)
from delayh2.spectral import factorize, q_delayed
from delayh2.statespace import evalz, h2_norm, markov, series
from delayh2.synthesis import stationarity_residual, synthesize

ACCEPTANCE_LINES = []

SEED = 2012


def record(num, ok, text):
    ACCEPTANCE_LINES.append(f'[{num}] {"PASS" if ok else "FAIL"} {text}')
    assert ok, text


def random_instances(count, seed=SEED):
    rng = np.random.default_rng(seed)
    return [(random_plant(rng), n_step_pattern([1, 1], [1, 1], 2)) for _ in range(count)]


def fixtures():
    chain = chain_plant()
    sweep = sweep_plant()
    return [('chain', chain, chain_pattern([1] * 3, [1] * 3)),
            ('sweep/tri N=3', sweep, family_pattern('tri', [1, 1], [1, 1], 3)),
            ('sweep/di N=5', sweep, family_pattern('di', [1, 1], [1, 1], 5))]


def test_criterion_1_chain_norms():
    t0 = time.perf_counter()
    r = synthesize(chain_plant(), chain_pattern([1] * 3, [1] * 3))
    elapsed = time.perf_counter() - t0
    errs = (abs(r.norm_decentralized - 2.1082), abs(r.norm_centralized - 2.0853),
            abs(r.norm_delayed - 2.1780))
    ok = max(errs) <= 1e-3 and elapsed < 5.0
    record(1, ok, f'chain norms dec={r.norm_decentralized:.5f} cen={r.norm_centralized:.5f} '
                  f'del={r.norm_delayed:.5f} (tol 1e-3), {elapsed:.2f}s (< 5s)')


def test_criterion_2_oracle_agreement():
    t0 = time.perf_counter()
    cases = [(chain_plant(), chain_pattern([1] * 3, [1] * 3))] + random_instances(10)
    worst = 0.0
    for plant, pat in cases:
        assert plant.n <= 4
        syn = synthesize(plant, pat).norm_decentralized
        orc = fir_truncated_optimum(plant, pat, OracleConfig(60, 200)).norm
        worst = max(worst, abs(orc - syn))
    elapsed = time.perf_counter() - t0
    record(2, worst <= 1e-3 and elapsed < 60.0,
           f'oracle (M=60,H=200) vs synthesis on chain + 10 random: max |diff| = {worst:.2e} '
           f'(tol 1e-3), {elapsed:.1f}s (< 60s)')


def test_criterion_3_sweep_reproduction():
    plant = sweep_plant()
    _, _, fs = factorize(plant)
    norms = {(f, N): synthesize(plant, family_pattern(f, [1, 1], [1, 1], N)).norm_decentralized
             for f in FAMILIES for N in range(1, 9)}
    mono = all(norms[f, N] <= norms[f, N + 1] + 1e-9 for f in FAMILIES for N in range(1, 8))
    order = all(norms[a, N] <= norms[b, N] + 1e-9
                for N in range(1, 9) for a, b in itertools.pairwise(FAMILIES))
    qn = max(abs(norms['pure-delay', N] - h2_norm(plant.closed_loop(q_delayed(fs, N))))
             for N in range(1, 9))
    record(3, mono and order and qn <= 1e-10,
           f'sweep N=1..8: monotone={mono}, tri<=di<=low<=pure-delay={order}, '
           f'pure-delay vs Q_N max diff {qn:.1e} (tol 1e-10)')


def test_criterion_4_spectral_identities():
    thetas = 2 * np.pi * np.arange(64) / 64
    left = right = inv = 0.0
    for plant in (chain_plant(), sweep_plant()):
        _, _, fs = factorize(plant)
        for th in thetas:
            z = np.exp(1j * th)
            P12, P21 = evalz(plant.P12, z), evalz(plant.P21, z)
            Li, Ri = evalz(fs.W_L_inv, z), evalz(fs.W_R_inv, z)
            left = max(left, np.linalg.norm(P12.conj().T @ P12 - Li.conj().T @ Li))
            right = max(right, np.linalg.norm(P21 @ P21.conj().T - Ri @ Ri.conj().T))
        for W, Wi in ((fs.W_L, fs.W_L_inv), (fs.W_R, fs.W_R_inv)):
            mk = markov(series(W, Wi), 20)
            mk[0] -= np.eye(mk.shape[1])
            inv = max(inv, np.max(np.abs(mk)))
    record(4, left <= 1e-8 and right <= 1e-8 and inv <= 1e-9,
           f'factorizations: left {left:.1e}, right {right:.1e} (tol 1e-8); '
           f'W W^-1 Markov {inv:.1e} (tol 1e-9)')


def test_criterion_5_cost_decomposition():
    worst = 0.0
    cases = [(p, pat) for _, p, pat in fixtures()] + random_instances(20, SEED + 1)
    for plant, pat in cases:
        r = synthesize(plant, pat)
        worst = max(worst, abs(r.norm_decentralized ** 2 - r.norm_delayed ** 2
                               - (r.G_norm_sq + 2 * r.G_T_inner)))
    record(5, worst <= 1e-8, f'cost decomposition on fixtures + 20 random: max error '
                             f'{worst:.1e} (tol 1e-8)')


def test_criterion_6_stationarity():
    worst_star = worst_zero = 0.0
    for _, plant, pat in fixtures():
        r = synthesize(plant, pat)
        worst_star = max(worst_star, stationarity_residual(plant, r.Q_star, pat, trials=100))
        worst_zero = max(worst_zero, stationarity_residual(plant, r.Q_centralized, trials=100))
    record(6, worst_star <= 1e-7 and worst_zero <= 1e-7,
           f'stationarity over 100 directions: Q* {worst_star:.1e}, Q0 {worst_zero:.1e} '
           f'(tol 1e-7)')


def test_criterion_7_qp_well_posed():
    cases = [(p, pat) for _, p, pat in fixtures()] + random_instances(20, SEED + 2)
    min_eig = min(np.linalg.eigvalsh(synthesize(p, pat).qp.hessian)[0] for p, pat in cases)
    gap = 0.0
    for plant in (chain_plant(), sweep_plant()):
        _, p2, _, q2 = plant.dims
        r = synthesize(plant, full_pattern([1] * p2, [1] * q2, 3))
        gap = max(gap, abs(r.norm_decentralized - r.norm_centralized))
    record(7, min_eig > 0 and gap <= 1e-8,
           f'min Hessian eigenvalue {min_eig:.2e} (> 0); full-mask vs centralized '
           f'{gap:.1e} (tol 1e-8)')


def test_criterion_8_riccati():
    rng = np.random.default_rng(SEED + 3)
    res = dual = 0.0
    for _ in range(20):
        p = random_plant(rng)
        cs, es = control_dare(p), estimation_dare(p)
        res = max(res, control_residual(p, cs.X) / (1 + np.linalg.norm(cs.X)),
                  estimation_residual(p, es.Y) / (1 + np.linalg.norm(es.Y)))
        d = control_dare(p.dual())
        dual = max(dual, np.max(np.abs(d.X - es.Y)), np.max(np.abs(d.K.T - es.L)))
    record(8, res <= 1e-9 and dual <= 1e-9,
           f'Riccati relative residual {res:.1e}, duality {dual:.1e} (tol 1e-9) on 20 '
           f'random plants')
