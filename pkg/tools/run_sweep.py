import os
import sys
import csv
import math
from datetime import datetime

# Asegurar import del paquete
BASE_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if BASE_DIR not in sys.path:
    sys.path.insert(0, BASE_DIR)

from enriched_fixedpoint.contraction import affine, specialize, verify
from enriched_fixedpoint.errors import InvalidSpecError, IterationOverflowError
from enriched_fixedpoint.solver import observed_ratio, solve
from enriched_fixedpoint.space import euclidean, vector

CLASSICS = ['kannan', 'chatterjea', 'reich', 'bianchini', 'ciric-max', 'banach']
ALPHAS = [0.05, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49, 0.6, 0.9]
PROBLEMS = {
    # nombre: (aplicación, b, u0)
    '6-u': (affine(-1.0, 6.0), 1.0, 100.0),
    '-2u': (affine(-2.0), 5 / 4, 1.0),
}


def params_for(classic, alpha):
    # reich usa tres pesos iguales con suma alpha
    if classic == 'reich':
        return (alpha / 3, alpha / 3, alpha / 3)
    return alpha


def run_case(classic, alpha, problem, seed=42, samples=2000):
    mapping, b, u0 = PROBLEMS[problem]
    row = {'classic': classic, 'alpha': alpha, 'problem': problem, 'b': b}
    try:
        template = specialize(classic, params_for(classic, alpha), b)
    except InvalidSpecError:
        return {**row, 'k': '', 'valid': False, 'verify': '', 'iterations': '',
                'observed_ratio': '', 'fixed_point': ''}
    space = euclidean(1, 'sup')
    spec = template.bind(space, mapping, name=f'{classic}-{alpha}-{problem}')
    report = verify(spec, seed=seed, n_pairs=samples)
    try:
        result = solve(spec, vector(space, [u0]))
        iterations = result.iterations
        ratio = observed_ratio(result.trace)
        fixed = result.fixed_point[0]
    except IterationOverflowError:
        iterations, ratio, fixed = '', '', ''
    return {**row, 'k': template.k, 'valid': True, 'verify': report.verdict.value,
            'iterations': iterations, 'observed_ratio': '' if isinstance(ratio, float) and math.isnan(ratio) else ratio,
            'fixed_point': fixed}


def run_sweep(out_dir='sweep_logs', filename=None, seed=42, samples=2000):
    os.makedirs(out_dir, exist_ok=True)
    if filename:
        csv_path = os.path.join(out_dir, filename)
    else:
        ts = datetime.now().strftime('%Y%m%d_%H%M%S')
        csv_path = os.path.join(out_dir, f'sweep_{ts}.csv')

    fields = ['classic', 'alpha', 'problem', 'b', 'k', 'valid', 'verify', 'iterations',
              'observed_ratio', 'fixed_point']
    with open(csv_path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=fields)
        writer.writeheader()
        for classic in CLASSICS:
            for alpha in ALPHAS:
                for problem in PROBLEMS:
                    row = run_case(classic, alpha, problem, seed=seed, samples=samples)
                    writer.writerow(row)
                    k = f"{row['k']:.4f}" if row['valid'] else 'k>=1'
                    print(f"[{classic:10s}] alpha={alpha:<5} {problem:4s} k={k:8s} "
                          f"verify={row['verify'] or '-':20s} iters={row['iterations']}")
    print(f"[OK] Log CSV: {csv_path}")
    return csv_path


if __name__ == '__main__':
    import argparse
    p = argparse.ArgumentParser(description='Barrido de contracciones clásicas enriquecidas')
    p.add_argument('--seed', type=int, default=42)
    p.add_argument('--samples', type=int, default=2000)
    p.add_argument('--out-dir', type=str, default='sweep_logs')
    p.add_argument('--out', type=str, default=None, help='Nombre archivo salida (opcional)')
    args = p.parse_args()

    run_sweep(out_dir=args.out_dir, filename=args.out, seed=args.seed, samples=args.samples)
