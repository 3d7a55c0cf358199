import math
from typing import Tuple

import numpy as np

from ..channels.unitary import RandomUnitaryChannel, UnitaryRealization
from ..exceptions import InvalidInput
from .ensemble import NoiseEnsemble


def two_level_kraus(theta: float) -> UnitaryRealization:
    """[[cos θ, i sin θ], [i sin θ, cos θ]]"""
    c, s = math.cos(theta), math.sin(theta)
    return UnitaryRealization(np.array([[c, 1j * s], [1j * s, c]]))


def two_level_channel(ens: NoiseEnsemble) -> RandomUnitaryChannel:
    return RandomUnitaryChannel(tuple((w, two_level_kraus(t)) for t, w in zip(ens.thetas, ens.lambdas)))


def auxiliary_y(ens: NoiseEnsemble) -> float:
    """
    Y = (Σ λ_k cos 2θ_k)² + (Σ λ_k sin 2θ_k)²

    Квадрат модуля среднего фазора; 0 <= Y <= 1, Y = 1 когда все θ_k равны.
    """
    phasor = np.dot(ens.lambda_array, np.exp(2j * ens.theta_array))
    return min(float(abs(phasor) ** 2), 1.0)


def two_level_closed_form(ens: NoiseEnsemble, p1: float) -> Tuple[float, float]:
    """
    Заселённости (Q_1, Q_2) = ((1 ± X) / 2), X = (2 p1 - 1) √Y

    :param ens: ансамбль шума
    :param p1: большая начальная заселённость, 0.5 <= p1 <= 1
    """
    if not 0.5 <= p1 <= 1:
        raise InvalidInput(f'Заселённость p1 должна лежать в [0.5, 1], получено {p1}')
    x = (2 * p1 - 1) * math.sqrt(auxiliary_y(ens))
    return (1 + x) / 2, (1 - x) / 2
