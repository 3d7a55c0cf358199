import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from ..exceptions import ConfigError, InvalidInput
from ..spectral import RngSeed
from ..utils.fields_checker import check_choice
from ..utils.serialization import read_json

logger = logging.getLogger('Experiments.Config')

EXPERIMENT_MODELS = ['stirap', 'random_unitary', 'quantum_channels']


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Параметры эксперимента

    :param seed: главное зерно; испытание i получает поток (seed, i)
    :param points: число испытаний (начальных состояний)
    :param realizations: число реализаций шума N в канале диаграммы рассеяния
    :param dims: размерности для проверки теоремы
    :param model: stirap, random_unitary или quantum_channels
    :param noisy: шумящий угол STIRAP - theta или alpha
    :param theta: неподвижный θ вместо стандартного значения
    :param alpha: неподвижный α вместо стандартного значения
    :param max_realizations: наибольшее число хааровских реализаций в проверке теоремы
    :param pure_every: каждое pure_every-е испытание начинается с чистого состояния (0 - никогда)
    :param tolerance: допуск нарушения Q_1 <= P_1
    :param output_path: путь отчёта
    :param workers: число рабочих потоков
    """
    seed: RngSeed = RngSeed(0)
    points: int = 200
    realizations: int = 100
    dims: Tuple[int, ...] = (2, 3, 4, 5, 6)
    model: str = 'stirap'
    noisy: str = 'theta'
    theta: Optional[float] = None
    alpha: Optional[float] = None
    max_realizations: int = 8
    pure_every: int = 10
    tolerance: float = 1e-9
    output_path: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        seed = self.seed if isinstance(self.seed, RngSeed) else _seed_from_payload(self.seed)
        object.__setattr__(self, 'seed', seed)
        object.__setattr__(self, 'dims', tuple(int(d) for d in self.dims))
        try:
            check_choice(self.model, EXPERIMENT_MODELS, 'model')
            check_choice(self.noisy, ['theta', 'alpha'], 'noisy')
        except InvalidInput as e:
            raise ConfigError(str(e))
        if self.points < 1:
            raise ConfigError(f'points должно быть >= 1, получено {self.points}')
        if self.realizations < 1 or self.max_realizations < 1:
            raise ConfigError('realizations и max_realizations должны быть >= 1')
        if not (self.tolerance > 0 and math.isfinite(self.tolerance)):
            raise ConfigError(f'tolerance должен быть > 0, получено {self.tolerance}')
        if self.workers < 1 or self.pure_every < 0:
            raise ConfigError('workers должно быть >= 1, pure_every >= 0')

    def check_dims(self):
        if not self.dims or any(d < 2 for d in self.dims):
            raise ConfigError(f'dims должен быть непустым, каждая размерность >= 2: {self.dims}')

    def with_overrides(self, **overrides) -> 'ExperimentConfig':
        """Флаги командной строки поверх файла; None не переопределяет"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if isinstance(changes.get('seed'), int):
            changes['seed'] = RngSeed(changes['seed'])
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> 'ExperimentConfig':
        if not isinstance(payload, dict):
            raise ConfigError('Конфигурация эксперимента должна быть JSON-объектом')
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(payload) - known
        if unknown:
            raise ConfigError(f'Неизвестные поля конфигурации: {sorted(unknown)}')
        try:
            return cls(**payload)
        except TypeError as e:
            raise ConfigError(f'Неверная конфигурация: {e}')

    @classmethod
    def from_file(cls, path: str) -> 'ExperimentConfig':
        logger.debug('Loading experiment config from %s', path)
        return cls.from_payload(read_json(path))

    def to_payload(self) -> Dict[str, Any]:
        payload = dataclasses.asdict(self)
        payload['seed'] = {'seed': self.seed.seed, 'stream_id': self.seed.stream_id}
        payload['dims'] = list(self.dims)
        return payload


def _seed_from_payload(value) -> RngSeed:
    try:
        if isinstance(value, dict):
            return RngSeed(value['seed'], value.get('stream_id', 0))
        return RngSeed(value)
    except (KeyError, TypeError, InvalidInput) as e:
        raise ConfigError(f'Неверное зерно {value!r}: {e}')
