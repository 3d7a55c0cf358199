import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from ..channels.unitary import RandomUnitaryChannel, UnitaryRealization
from ..utils.fields_checker import check_choice
from .ensemble import NoiseEnsemble

logger = logging.getLogger('Models.Stirap')

# Fixed angles of the scatter figure: cos α = √(1/3) for noisy θ, cos θ = √(7/10) for noisy α
FIGURE1_ALPHA = math.acos(math.sqrt(1 / 3))
FIGURE1_THETA = math.acos(math.sqrt(7 / 10))


class NoisyParameter(str, Enum):
    THETA = 'theta'
    ALPHA = 'alpha'


@dataclass(frozen=True)
class StirapParams:
    theta: float
    alpha: float
    noisy: NoisyParameter = NoisyParameter.THETA

    def __post_init__(self):
        noisy = getattr(self.noisy, 'value', self.noisy)
        noisy = check_choice(noisy, [x.value for x in NoisyParameter], 'noisy')
        object.__setattr__(self, 'noisy', NoisyParameter(noisy))


def figure1_params(noisy: Union[NoisyParameter, str]) -> StirapParams:
    """Стандартные параметры диаграммы рассеяния: один угол фиксирован, второй шумит"""
    return StirapParams(theta=FIGURE1_THETA, alpha=FIGURE1_ALPHA, noisy=noisy)


def stirap_unitary(theta: float, alpha: float) -> UnitaryRealization:
    """
    U(θ, α) для обратного проектирования STIRAP

    |0⟩ переводится в cos θ|0⟩ - sin θ|2⟩ при α = 0.
    """
    ct, st = math.cos(theta), math.sin(theta)
    ca, sa = math.cos(alpha), math.sin(alpha)
    return UnitaryRealization(np.array([[ct * ca, ct * sa, -st],
                                        [-sa, ca, 0.0],
                                        [st * ca, st * sa, ct]]))


def stirap_channel(params: StirapParams, ens: NoiseEnsemble) -> RandomUnitaryChannel:
    if params.noisy is NoisyParameter.THETA:
        unitaries = [stirap_unitary(t, params.alpha) for t in ens.thetas]
    else:
        unitaries = [stirap_unitary(params.theta, a) for a in ens.thetas]
    logger.debug('STIRAP channel with noisy %s, %d realizations', params.noisy.value, len(ens))
    return RandomUnitaryChannel(tuple(zip(ens.lambdas, unitaries)))
