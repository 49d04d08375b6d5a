"""``delay-h2`` command line: synthesize, sweep, check.

Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 numerical failure.
"""
import argparse
import csv
import io as _io
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .errors import NumericalError, ValidationError
from .numerics import spectral_radius
from .oracle import OracleConfig, fir_truncated_optimum
from .pattern import (
    FAMILIES,
    family_pattern,
    full_pattern,
    is_quadratically_invariant,
    n_step_pattern,
)
from .statespace import evalz, fir_to_ss, h2_norm, markov, series
from .synthesis import (
    DEFAULT_SEED,
    SynthesisResult,
    feedback_closed_loop,
    pattern_violation,
    plant_delay_matrix,
    random_feasible_direction,
    recover_feedback,
    stationarity_residual,
    synthesize,
)

PATTERN_NAMES = FAMILIES + ('n-step', 'full')


def _blocks(text, total):
    if text is None:
        return [1] * total
    sizes = [int(s) for s in text.split(',') if s.strip()]
    if sum(sizes) != total:
        raise ValidationError(f'block sizes {sizes} do not sum to {total}')
    return sizes


def _pattern_from_args(args, plant):
    _, p2, _, q2 = plant.dims
    name = args.pattern
    if name in PATTERN_NAMES:
        if args.N is None:
            raise ValidationError(f'--pattern {name} needs --N')
        u, y = _blocks(args.u_blocks, p2), _blocks(args.y_blocks, q2)
        if name == 'n-step':
            return n_step_pattern(u, y, args.N)
        if name == 'full':
            return full_pattern(u, y, args.N)
        return family_pattern(name, u, y, args.N)
    if name is None:
        raise ValidationError('a pattern file or name is required (--pattern)')
    return io.load_pattern(name)


def _oracle_config(text):
    kw = {'M': 60, 'H': 200}
    for part in filter(None, (text or '').split(',')):
        key, _, val = part.partition('=')
        if key not in kw:
            raise ValidationError(f'unknown oracle option {key!r} (use M=..,H=..)')
        kw[key] = int(val)
    return OracleConfig(fir_length=kw['M'], cost_horizon=kw['H'])


def plant_digest(plant):
    p1, p2, q1, q2 = plant.dims
    return {'n': plant.n, 'p1': p1, 'p2': p2, 'q1': q1, 'q2': q2,
            'spectral_radius': spectral_radius(plant.A)}


def build_report(plant, pattern, res: SynthesisResult, seed, trials, oracle=None):
    qi = bool(is_quadratically_invariant(pattern, plant_delay_matrix(plant, pattern)))
    report = {
        'plant': plant_digest(plant),
        'pattern': dict(pattern.to_dict(), free_variables=pattern.free_count()),
        'norms': {'centralized': res.norm_centralized,
                  'delayed': res.norm_delayed,
                  'decentralized': res.norm_decentralized},
        'decomposition_value': res.decomposition_value,
        'quadratically_invariant': qi,
        'stationarity_residual': stationarity_residual(plant, res.Q_star, pattern,
                                                       trials=trials, seed=seed),
        'seed': seed,
    }
    if oracle is not None:
        report['norms']['oracle'] = oracle.norm
    return report


def _realization(G):
    return {'A': G.A, 'B': G.B, 'C': G.C, 'D': G.D}


def cmd_synthesize(args):
    plant = io.load_plant(args.plant)
    pattern = _pattern_from_args(args, plant)
    t0 = time.perf_counter()
    res = synthesize(plant, pattern)
    oracle = None
    if args.oracle is not None:
        oracle = fir_truncated_optimum(plant, pattern, _oracle_config(args.oracle))
    report = build_report(plant, pattern, res, args.seed, args.trials, oracle)
    if args.timing:
        report['timing_seconds'] = time.perf_counter() - t0
    if not report['quadratically_invariant']:
        print('warning: pattern is not quadratically invariant; the recovered '
              'feedback may violate the delay constraint', file=sys.stderr)
    text = io.dumps_deterministic(report)
    print(text)
    if args.out:
        doc = {'report': report, 'Q_star': _realization(res.Q_star),
               'V_star': res.V_star.coefficients}
        Path(args.out).write_text(io.dumps_deterministic(doc) + '\n')
    return 0


def _parse_range(text):
    lo, sep, hi = text.partition(':')
    lo = int(lo)
    hi = int(hi) if sep else lo
    if lo < 1 or hi < lo:
        raise ValidationError(f'bad N range {text!r}')
    return list(range(lo, hi + 1))


def sweep_rows(plant, families, Ns, u_blocks, y_blocks, jobs=1):
    """``(family, N, norm)`` rows in family-then-N order."""
    tasks = [(f, N) for f in families for N in Ns]

    def run(task):
        f, N = task
        return synthesize(plant, family_pattern(f, u_blocks, y_blocks, N)).norm_decentralized

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        norms = list(pool.map(run, tasks))
    return [(f, N, v) for (f, N), v in zip(tasks, norms)]


def format_csv(rows):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator='\n')
    w.writerow(['family', 'N', 'norm'])
    for f, N, v in rows:
        w.writerow([f, N, f'{v:.12g}'])
    return buf.getvalue()


def cmd_sweep(args):
    plant = io.load_plant(args.plant)
    _, p2, _, q2 = plant.dims
    families = [f.strip() for f in args.families.split(',') if f.strip()]
    for f in families:
        if f not in FAMILIES:
            raise ValidationError(f'unknown family {f!r}; choose from {FAMILIES}')
    rows = sweep_rows(plant, families, _parse_range(args.N),
                      _blocks(args.u_blocks, p2), _blocks(args.y_blocks, q2), args.jobs)
    text = format_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def run_checks(plant, pattern, tol=1e-7, seed=DEFAULT_SEED, trials=100, perturb=0.0):
    """Run the invariant suite; returns a list of ``(name, value, limit, ok)``."""
    res = synthesize(plant, pattern)
    fs = res.factors
    thetas = 2 * np.pi * np.arange(64) / 64
    left = right = 0.0
    for th in thetas:
        z = np.exp(1j * th)
        P12, P21 = evalz(plant.P12, z), evalz(plant.P21, z)
        Li, Ri = evalz(fs.W_L_inv, z), evalz(fs.W_R_inv, z)
        left = max(left, np.linalg.norm(P12.conj().T @ P12 - Li.conj().T @ Li))
        right = max(right, np.linalg.norm(P21 @ P21.conj().T - Ri @ Ri.conj().T))
    _, p2, _, q2 = plant.dims
    inv_err = 0.0
    for W, Wi, k in ((fs.W_L, fs.W_L_inv, p2), (fs.W_R, fs.W_R_inv, q2)):
        mk = markov(series(W, Wi), 20)
        mk[0] -= np.eye(k)
        inv_err = max(inv_err, float(np.max(np.abs(mk))))
    decomp = abs(res.norm_decentralized ** 2 - res.norm_delayed ** 2 - res.decomposition_value)
    Q = res.Q_star
    if perturb:
        d = random_feasible_direction(pattern, np.random.default_rng(seed + 1))
        Q = Q + fir_to_ss(d * perturb)
    stat = stationarity_residual(plant, Q, pattern, trials=trials, seed=seed)
    slack = 1e-9
    sandwich = (res.norm_centralized <= res.norm_decentralized + slack
                and res.norm_decentralized <= res.norm_delayed + slack)
    hmin = float(np.linalg.eigvalsh(res.qp.hessian)[0]) if res.qp.size else np.inf
    checks = [
        ('left_factorization', left, 1e-8),
        ('right_factorization', right, 1e-8),
        ('factor_inverse_markov', inv_err, 1e-9),
        ('cost_decomposition', decomp, 1e-8),
        ('feasibility', pattern_violation(res.Q_star, pattern), 1e-9),
        ('stationarity', stat, tol),
    ]
    out = [(name, float(v), lim, bool(v <= lim)) for name, v, lim in checks]
    out.append(('norm_sandwich', float(res.norm_decentralized), None, sandwich))
    out.append(('hessian_positive', hmin, None, bool(hmin > 0)))
    qi = is_quadratically_invariant(pattern, plant_delay_matrix(plant, pattern))
    if qi:
        K = recover_feedback(res.Q_star, plant)
        lft = abs(h2_norm(feedback_closed_loop(plant, K)) - res.norm_decentralized)
        out.append(('feedback_equivalence', lft, 1e-8, bool(lft <= 1e-8)))
    return out


def cmd_check(args):
    plant = io.load_plant(args.plant)
    pattern = _pattern_from_args(args, plant)
    results = run_checks(plant, pattern, tol=args.tol, seed=args.seed,
                         trials=args.trials, perturb=args.perturb)
    failed = []
    for name, val, lim, ok in results:
        bound = '' if lim is None else f' (limit {lim:.1e})'
        print(f'{"PASS" if ok else "FAIL"} {name}: {val:.3e}{bound}')
        if not ok:
            failed.append(name)
    if failed:
        print(f'failed: {", ".join(failed)}', file=sys.stderr)
        return 1
    return 0


def _add_common(p, pattern=True):
    p.add_argument('plant', help='plant JSON file (or a bundled fixture name)')
    if pattern:
        p.add_argument('--pattern', help=f'pattern JSON file or one of {PATTERN_NAMES}')
        p.add_argument('--N', type=int, help='delay horizon for named patterns')
    p.add_argument('--u-blocks', help='comma-separated control block sizes (default: unit)')
    p.add_argument('--y-blocks', help='comma-separated measurement block sizes (default: unit)')
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--tol', type=float, default=1e-7, help='stationarity tolerance')
    p.add_argument('--trials', type=int, default=100, help='random stationarity directions')


def make_parser():
    parser = argparse.ArgumentParser(prog='delay-h2', description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('synthesize', help='solve one decentralized model matching problem')
    _add_common(p)
    p.add_argument('--oracle', nargs='?', const='', default=None, metavar='M=60,H=200',
                   help='also run the brute-force FIR oracle')
    p.add_argument('--out', help='write report, Q* realization and V* coefficients here')
    p.add_argument('--timing', action='store_true', help='include wall-clock time')
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser('sweep', help='norms of pattern families over a range of N')
    _add_common(p, pattern=False)
    p.add_argument('--families', default=','.join(FAMILIES))
    p.add_argument('--N', default='1:8', help='range lo:hi (inclusive)')
    p.add_argument('--jobs', type=int, default=1)
    p.add_argument('--out', help='CSV output path (default: stdout)')
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser('check', help='run the invariant suite on one problem')
    _add_common(p)
    p.add_argument('--perturb', type=float, default=0.0,
                   help='perturb Q* along a feasible direction before the stationarity check')
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f'numerical failure: {exc}', file=sys.stderr)
        return 3


if __name__ == '__main__':
    sys.exit(main())
