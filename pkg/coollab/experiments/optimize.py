"""
Максимизация Y(λ) = |Σ_k λ_k e^{2iθ_k}|² по симплексу весов

Y(λ) = λᵀAλ, A = ccᵀ + ssᵀ, c = cos 2θ, s = sin 2θ; A неотрицательно
определена, поэтому максимум по симплексу достигается в вершине и равен 1.
Оптимизатор нужен для проверки этого утверждения и наибольшего Q_1.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..exceptions import InvalidInput
from ..spectral import RngSeed
from ..utils.fields_checker import check_choice

logger = logging.getLogger('Experiments.Optimize')

METHODS = ['grid', 'projected_gradient']
GRID_LIMIT = 8


@dataclass(frozen=True)
class OptimizerResult:
    best_weights: Tuple[float, ...]
    best_value: float
    iterations: int
    converged: bool


def project_on_simplex(v: np.ndarray) -> np.ndarray:
    """Евклидова проекция на {w >= 0, Σ w = 1} сортировкой"""
    n = v.shape[0]
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    k = np.arange(1, n + 1)
    rho = k[u + (1 - css) / k > 0][-1]
    w = np.maximum(v + (1 - css[rho - 1]) / rho, 0.0)
    return w / w.sum()


def simplex_lattice(n: int, steps: int) -> np.ndarray:
    """Все точки симплекса с координатами, кратными 1/steps (звёзды и черты)"""
    if n == 1:
        return np.ones((1, 1))
    count = math.comb(steps + n - 1, n - 1)
    bars = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(steps + n - 1), n - 1)),
                       dtype=np.int32, count=count * (n - 1)).reshape(count, n - 1)
    edges = np.hstack([np.full((count, 1), -1, dtype=np.int32), bars,
                       np.full((count, 1), steps + n - 1, dtype=np.int32)])
    return (np.diff(edges, axis=1) - 1) / steps


def _quadratic(thetas: np.ndarray) -> np.ndarray:
    c, s = np.cos(2 * thetas), np.sin(2 * thetas)
    return np.outer(c, c) + np.outer(s, s)


def _grid(thetas: np.ndarray) -> OptimizerResult:
    n = thetas.shape[0]
    if n > GRID_LIMIT:
        raise InvalidInput(f'Перебор по сетке доступен для N <= {GRID_LIMIT}, получено N = {n}; '
                           f'используйте projected_gradient')
    lattice = simplex_lattice(n, 100 if n <= 3 else 20)
    phases = np.exp(2j * thetas)
    values = np.abs(lattice @ phases) ** 2
    best = int(np.argmax(values))
    return OptimizerResult(best_weights=tuple(lattice[best]), best_value=float(min(values[best], 1.0)),
                           iterations=lattice.shape[0], converged=True)


def _projected_gradient(thetas: np.ndarray, budget: int, seed: RngSeed, starts: int) -> OptimizerResult:
    n = thetas.shape[0]
    a = _quadratic(thetas)
    step = 1.0 / (2 * max(np.linalg.eigvalsh(a)[-1], 1e-12))
    rng = seed.generator()
    initial = [np.full(n, 1.0 / n)] + [rng.dirichlet(np.ones(n)) for _ in range(starts - 1)]
    per_start = max(1, budget // len(initial))

    best_w, best_value, iterations, converged = initial[0], -1.0, 0, False
    for w in initial:
        done = False
        for _ in range(per_start):
            iterations += 1
            w_next = project_on_simplex(w + step * 2 * (a @ w))
            moved = np.abs(w_next - w).max()
            w = w_next
            if moved < 1e-12:
                done = True
                break
        value = float(w @ a @ w)
        if value > best_value:
            best_w, best_value, converged = w, value, done
    logger.debug('Projected gradient: N=%d, Y=%r after %d iterations', n, best_value, iterations)
    return OptimizerResult(best_weights=tuple(float(x) for x in best_w), best_value=min(best_value, 1.0),
                           iterations=iterations, converged=converged)


def maximize_y(thetas: Sequence[float], method: str = 'grid', budget: int = 1000,
               seed: RngSeed = RngSeed(0), starts: int = 8) -> OptimizerResult:
    """
    Наибольшее Y по весам λ при фиксированных углах

    :param thetas: углы θ_k, N >= 1
    :param method: grid (N <= 8) или projected_gradient
    :param budget: число итераций градиентного метода на все старты
    :param seed: зерно случайных стартов
    :param starts: число стартов, первый - равномерные веса
    :return: :obj:`OptimizerResult`
    :raise: :obj:`InvalidInput`
    """
    method = check_choice(method, METHODS, 'method')
    arr = np.asarray(thetas, dtype=float)
    if arr.ndim != 1 or arr.shape[0] < 1 or not np.all(np.isfinite(arr)):
        raise InvalidInput('Нужен непустой список конечных углов θ')
    if budget < 1 or starts < 1:
        raise InvalidInput('budget и starts должны быть >= 1')
    if method == 'grid':
        return _grid(arr)
    return _projected_gradient(arr, budget, seed, starts)


def maximize_q1(thetas: Sequence[float], p1: float, method: str = 'grid', budget: int = 1000,
                seed: RngSeed = RngSeed(0)) -> OptimizerResult:
    """Наибольшее Q_1 = (1 + (2P_1 - 1)√Y) / 2 двухуровневой системы"""
    if not 0.5 <= p1 <= 1:
        raise InvalidInput(f'P_1 должно лежать в [0.5, 1], получено {p1}')
    result = maximize_y(thetas, method, budget, seed)
    q1 = (1 + (2 * p1 - 1) * math.sqrt(result.best_value)) / 2
    return OptimizerResult(best_weights=result.best_weights, best_value=q1,
                           iterations=result.iterations, converged=result.converged)
