import math
import operator
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..exceptions import InvalidInput
from ..spectral import TOLERANCES, SeedLike, as_generator, random_simplex_weights


@dataclass(frozen=True)
class NoiseEnsemble:
    """
    Реализации шума θ_k с вероятностями λ_k

    :param thetas: углы в радианах
    :param lambdas: неотрицательные веса с суммой 1
    """
    thetas: Tuple[float, ...]
    lambdas: Tuple[float, ...]

    def __post_init__(self):
        thetas = tuple(float(t) for t in self.thetas)
        lambdas = tuple(float(w) for w in self.lambdas)
        if not thetas or len(thetas) != len(lambdas):
            raise InvalidInput(f'Ансамбль: {len(thetas)} углов и {len(lambdas)} весов, нужно поровну и >= 1')
        if not all(math.isfinite(t) for t in thetas):
            raise InvalidInput('Ансамбль содержит не конечные углы')
        if any(not (w >= 0) for w in lambdas):
            raise InvalidInput(f'Отрицательные веса в ансамбле: {lambdas}')
        if abs(math.fsum(lambdas) - 1) > TOLERANCES.simplex:
            raise InvalidInput(f'Сумма весов ансамбля {math.fsum(lambdas):.15g} отличается от 1')
        object.__setattr__(self, 'thetas', thetas)
        object.__setattr__(self, 'lambdas', lambdas)

    def __len__(self) -> int:
        return len(self.thetas)

    @property
    def theta_array(self) -> np.ndarray:
        return np.array(self.thetas)

    @property
    def lambda_array(self) -> np.ndarray:
        return np.array(self.lambdas)

    @classmethod
    def uniform(cls, thetas: Sequence[float]) -> 'NoiseEnsemble':
        n = len(thetas)
        return cls(tuple(thetas), (1.0 / n,) * n)

    @classmethod
    def random(cls, n: int, seed: SeedLike, low: float = 0.0, high: float = 2 * math.pi) -> 'NoiseEnsemble':
        """θ_k равномерно на [low, high), λ из плоского распределения Дирихле"""
        n = operator.index(n)
        rng = as_generator(seed)
        lambdas = random_simplex_weights(n, rng)
        thetas = rng.uniform(low, high, size=n)
        return cls(tuple(thetas), tuple(lambdas))
