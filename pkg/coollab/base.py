import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, TypeVar

from environs import Env, EnvError

from .exceptions import ConfigError
from .spectral import TOLERANCES, RngSeed, Tolerances

logger = logging.getLogger('base')

T = TypeVar('T')


@dataclass(frozen=True)
class Settings:
    seed: int = 0
    workers: int = 1
    log_level: int = logging.WARNING

    @classmethod
    def from_env(cls) -> 'Settings':
        """
        Настройки из переменных окружения

        COOLLAB_SEED - зерно по умолчанию

        COOLLAB_WORKERS - число рабочих потоков для экспериментов

        COOLLAB_LOG_LEVEL - уровень логирования CLI
        """
        env = Env()
        try:
            with env.prefixed('COOLLAB_'):
                return cls(seed=env.int('SEED', 0),
                           workers=env.int('WORKERS', 1),
                           log_level=env.log_level('LOG_LEVEL', logging.WARNING))
        except EnvError as e:
            raise ConfigError(f'Неверная переменная окружения: {e}')


class BaseLab:

    def __init__(
            self,
            seed: Optional[int] = None,
            workers: Optional[int] = None,
            tolerances: Tolerances = TOLERANCES,
            settings: Optional[Settings] = None,
    ):
        """
        Общее состояние лаборатории: зерно, допуски и пул потоков

        :param seed: главное зерно, по умолчанию COOLLAB_SEED
        :param workers: число потоков, по умолчанию COOLLAB_WORKERS
        :param tolerances: допуски :obj:`Tolerances`
        :param settings: готовые настройки вместо чтения окружения
        """
        self.settings = settings or Settings.from_env()
        self.seed = RngSeed(self.settings.seed if seed is None else seed)
        self.workers = self.settings.workers if workers is None else workers
        if self.workers < 1:
            raise ConfigError(f'Число потоков должно быть >= 1, получено {self.workers}')
        self.tol = tolerances
        self._executor: Optional[ThreadPoolExecutor] = None

    def stream(self, stream_id: int) -> RngSeed:
        return RngSeed(self.seed.seed, stream_id)

    def _get_executor(self) -> ThreadPoolExecutor:
        if self._executor is None:
            self._executor = ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix='coollab')
        return self._executor

    async def map_trials(self, fn: Callable[[int], T], count: int) -> List[T]:
        """
        Выполнить fn(0), …, fn(count - 1) в пуле потоков

        Результаты упорядочены по номеру испытания, поэтому не зависят от числа потоков.
        """
        return await map_trials(fn, count, self._get_executor(), self.workers)

    async def close(self):
        """
        Close worker pool
        """
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None


def _chunks(count: int, parts: int) -> Sequence[range]:
    size = max(1, -(-count // parts))
    return [range(start, min(start + size, count)) for start in range(0, count, size)]


async def map_trials(fn: Callable[[int], T], count: int,
                     executor: Optional[ThreadPoolExecutor] = None, workers: int = 1) -> List[T]:
    loop = asyncio.get_running_loop()
    chunks = _chunks(count, workers * 4)
    logger.debug('Running %d trials in %d chunks on %d workers', count, len(chunks), workers)
    parts = await asyncio.gather(
        *(loop.run_in_executor(executor, lambda r=r: [fn(i) for i in r]) for r in chunks))
    return [item for part in parts for item in part]
