import logging
from typing import Any, Dict, Tuple, Union

from ..base import BaseLab
from ..channels.unitary import RandomUnitaryChannel
from ..exceptions import InvalidInput
from ..utils.fields_checker import check_choice
from .ensemble import NoiseEnsemble
from .resonator import BlockState, MRParams, mr_apply, mr_channel, mr_closed_form, random_block_state
from .stirap import StirapParams, figure1_params, stirap_channel
from .two_level import auxiliary_y, two_level_channel, two_level_closed_form

logger = logging.getLogger('Models')

MODELS = ['two_level', 'mr', 'stirap']

Params = Union[None, MRParams, StirapParams]


def model_from_payload(payload: Dict[str, Any]) -> Tuple[str, Params, NoiseEnsemble]:
    """
    Разбор конфигурации модели

    {"model": "two_level" | "mr" | "stirap", "params": {...}, "ensemble": {"thetas": [...], "lambdas": [...]}}
    """
    if not isinstance(payload, dict):
        raise InvalidInput('Конфигурация модели должна быть объектом с полем "model"')
    model = check_choice(payload.get('model', ''), MODELS, 'model')
    params = payload.get('params') or {}
    ensemble = payload.get('ensemble') or {}
    try:
        thetas = ensemble['thetas']
        lambdas = ensemble.get('lambdas') or [1.0 / len(thetas)] * len(thetas)
        ens = NoiseEnsemble(tuple(thetas), tuple(lambdas))
        if model == 'mr':
            return model, MRParams(**params), ens
        if model == 'stirap':
            return model, StirapParams(**params), ens
    except (KeyError, TypeError, ZeroDivisionError) as e:
        raise InvalidInput(f'Неверная конфигурация модели {model}: {e!r}')
    return model, None, ens


def model_to_payload(model: str, params: Params, ens: NoiseEnsemble) -> Dict[str, Any]:
    if isinstance(params, MRParams):
        params_payload = {'omega_m': params.omega_m, 'delta': params.delta, 'g': params.g, 'n_max': params.n_max}
    elif isinstance(params, StirapParams):
        params_payload = {'theta': params.theta, 'alpha': params.alpha, 'noisy': params.noisy.value}
    else:
        params_payload = {}
    return {'model': model, 'params': params_payload,
            'ensemble': {'thetas': list(ens.thetas), 'lambdas': list(ens.lambdas)}}


def build_model_channel(payload: Dict[str, Any]) -> RandomUnitaryChannel:
    model, params, ens = model_from_payload(payload)
    if model == 'mr':
        return mr_channel(ens, params)
    if model == 'stirap':
        return stirap_channel(params, ens)
    return two_level_channel(ens)


class ModelsApi:
    def __init__(self, base: BaseLab):
        """
        Физические модели шума

        two_level - вращения двухуровневой системы и величина Y

        resonator - блоки одетых состояний резонатора и Y_n

        stirap - шумящий пропагатор U(θ, α)
        """
        self._base = base

    def ensemble(self, n: int, stream_id: int = 0) -> NoiseEnsemble:
        return NoiseEnsemble.random(n, self._base.stream(stream_id))

    def two_level(self, ens: NoiseEnsemble) -> RandomUnitaryChannel:
        return two_level_channel(ens)

    def two_level_populations(self, ens: NoiseEnsemble, p1: float) -> Tuple[float, float, float]:
        """
        Величина Y и замкнутая форма (Q_1, Q_2)

        :return: (Y, Q_1, Q_2)
        """
        return (auxiliary_y(ens), *two_level_closed_form(ens, p1))

    def resonator(self, ens: NoiseEnsemble, params: MRParams, state: BlockState = None, stream_id: int = 0):
        if state is None:
            state = random_block_state(params.n_max, self._base.stream(stream_id))
        return mr_apply(ens, state, params), mr_closed_form(ens, state, params)

    def stirap(self, ens: NoiseEnsemble, params: StirapParams = None, noisy: str = 'theta') -> RandomUnitaryChannel:
        return stirap_channel(params or figure1_params(noisy), ens)

    def from_payload(self, payload: Dict[str, Any]) -> RandomUnitaryChannel:
        return build_model_channel(payload)
