from typing import Optional

from .base import BaseLab, Settings
from .channels.base import ChannelsApi
from .experiments.base import ExperimentsApi
from .models.base import ModelsApi


class CoolLab:
    def __init__(self, seed: Optional[int] = None, workers: Optional[int] = None,
                 settings: Optional[Settings] = None):
        """
        Лаборатория проверки невозможности охлаждения

        lab = CoolLab(seed=7, workers=4)

        Доступные разделы:

        channels - каналы, эволюция и сертификаты

        models - физические модели шума

        experiments - серии испытаний и оптимизация

        :param seed: главное зерно, по умолчанию COOLLAB_SEED
        :param workers: число потоков, по умолчанию COOLLAB_WORKERS
        :param settings: готовые настройки вместо переменных окружения
        """
        self._base = BaseLab(seed=seed, workers=workers, settings=settings)
        self.channels = ChannelsApi(self._base)
        self.models = ModelsApi(self._base)
        self.experiments = ExperimentsApi(self._base)

    @property
    def seed(self):
        return self._base.seed

    async def close(self):
        return await self._base.close()

    async def __aenter__(self) -> 'CoolLab':
        return self

    async def __aexit__(self, *exc):
        await self.close()
