from typing import List, Optional, Sequence

from ..base import BaseLab
from ..spectral import RngSeed
from .config import ExperimentConfig
from .optimize import OptimizerResult, maximize_q1, maximize_y
from .report import ScatterRecord, SweepReport
from .sweeps import run_figure1, run_quantum_channel_sweep, run_theorem_sweep


class ExperimentsApi:
    def __init__(self, base: BaseLab):
        """
        Численные эксперименты

        figure1 - рассеяние (P_1, Q_1) для STIRAP

        theorem_sweep - случайно-унитарные каналы

        quantum_channel_sweep - стандартные кубитные каналы

        optimize - максимизация Y по весам
        """
        self._base = base

    def config(self, cfg: Optional[ExperimentConfig] = None, **overrides) -> ExperimentConfig:
        """Конфигурация с зерном и числом потоков лаборатории"""
        if cfg is None:
            cfg = ExperimentConfig(seed=self._base.seed, workers=self._base.workers)
        return cfg.with_overrides(**overrides)

    async def figure1(self, cfg: Optional[ExperimentConfig] = None, **overrides) -> List[ScatterRecord]:
        return await run_figure1(self.config(cfg, model='stirap', **overrides), self._base._get_executor())

    async def theorem_sweep(self, cfg: Optional[ExperimentConfig] = None, **overrides) -> SweepReport:
        return await run_theorem_sweep(self.config(cfg, model='random_unitary', **overrides),
                                       self._base._get_executor())

    async def quantum_channel_sweep(self, cfg: Optional[ExperimentConfig] = None, **overrides) -> SweepReport:
        return await run_quantum_channel_sweep(self.config(cfg, model='quantum_channels', **overrides),
                                               self._base._get_executor())

    def optimize(self, thetas: Sequence[float], method: str = 'grid', budget: int = 1000,
                 stream_id: int = 0) -> OptimizerResult:
        return maximize_y(thetas, method, budget, self._base.stream(stream_id))

    def optimize_q1(self, thetas: Sequence[float], p1: float, method: str = 'grid',
                    budget: int = 1000) -> OptimizerResult:
        return maximize_q1(thetas, p1, method, budget, RngSeed(self._base.seed.seed))
