"""
Серии испытаний

Испытание i использует собственный поток RngSeed(seed, i), поэтому
результаты не зависят от числа потоков и порядка выполнения.
"""
import dataclasses
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, TypeVar

from ..base import map_trials
from ..channels.certificates import certify, theorem_check
from ..channels.kraus import StandardKind, amplitude_damping, apply_kraus, standard_channel
from ..channels.unitary import apply_random_unitary, random_channel
from ..exceptions import ConfigError
from ..models.ensemble import NoiseEnsemble
from ..models.stirap import FIGURE1_ALPHA, FIGURE1_THETA, StirapParams, stirap_channel
from ..spectral import (TOLERANCES, TemperatureSpec, Tolerances, random_density_matrix, random_pure_state,
                        temperature_monotonicity_check, temperature_slack)
from .config import ExperimentConfig
from .report import DimSummary, ScatterRecord, SweepReport

logger = logging.getLogger('Experiments.Sweeps')

T = TypeVar('T')

AMPLITUDE_DAMPING = 'amplitude_damping'
CHANNEL_KINDS = [k.value for k in StandardKind] + [AMPLITUDE_DAMPING]

# equal gaps on both sides of the evolution
UNIT_GAP = TemperatureSpec(omega=1.0)


@dataclass(frozen=True)
class TrialOutcome:
    """
    Результат одного испытания серии

    :param checked: входит ли испытание в подсчёт нарушений
    :param temperature_checked: проводилась ли проверка температуры
    """
    record: ScatterRecord
    dim: int
    realizations: int
    passed: bool
    per_index_passed: bool
    checked: bool = True
    temperature_checked: bool = False
    temperature_passed: bool = True
    cooling_witness: bool = False
    kind: str = ''


def _tolerances(cfg: ExperimentConfig) -> Tolerances:
    return dataclasses.replace(TOLERANCES, theorem=cfg.tolerance)


def _is_pure_trial(cfg: ExperimentConfig, index: int) -> bool:
    return cfg.pure_every > 0 and index % cfg.pure_every == cfg.pure_every - 1


def stirap_params(cfg: ExperimentConfig) -> StirapParams:
    theta = FIGURE1_THETA if cfg.theta is None else cfg.theta
    alpha = FIGURE1_ALPHA if cfg.alpha is None else cfg.alpha
    return StirapParams(theta=theta, alpha=alpha, noisy=cfg.noisy)


def figure1_trial(cfg: ExperimentConfig, index: int) -> ScatterRecord:
    """Случайное состояние трёхуровневой системы, затем веса λ, затем шумящие углы"""
    seed = cfg.seed.for_trial(index)
    rng = seed.generator()
    rho_i = random_density_matrix(3, rng)
    ens = NoiseEnsemble.random(cfg.realizations, rng)
    rho_f = apply_random_unitary(stirap_channel(stirap_params(cfg), ens), rho_i)
    report = theorem_check(rho_i, rho_f, _tolerances(cfg))
    return ScatterRecord(p1=report.p1, q1=report.q1, model=f'stirap-{cfg.noisy}', trial_index=index, seed=seed)


def theorem_trial(cfg: ExperimentConfig, index: int) -> TrialOutcome:
    """
    Хааровский случайно-унитарный канал на случайном состоянии

    Каждое pure_every-е состояние чистое. Для двух уровней с P_1, Q_1 >= ½
    дополнительно проверяется рост эффективной температуры.
    """
    tol = _tolerances(cfg)
    seed = cfg.seed.for_trial(index)
    rng = seed.generator()
    dim = int(rng.choice(cfg.dims))
    realizations = int(rng.integers(1, cfg.max_realizations + 1))
    ch = random_channel(dim, realizations, rng)
    rho_i = random_pure_state(dim, rng) if _is_pure_trial(cfg, index) else random_density_matrix(dim, rng)
    report = theorem_check(rho_i, apply_random_unitary(ch, rho_i, tol), tol)

    temperature_checked, temperature_passed = False, True
    if dim == 2 and report.p1 > 0.5 and report.q1 >= 0.5:
        # raw Q_1; the theorem tolerance is mapped onto the temperature axis
        slack = temperature_slack(report.p1, cfg.tolerance, UNIT_GAP, tol)
        check_tol = dataclasses.replace(tol, temperature=max(tol.temperature, slack))
        temperature_checked = True
        temperature_passed = temperature_monotonicity_check(report.p1, report.q1, UNIT_GAP, UNIT_GAP,
                                                            check_tol).passed

    record = ScatterRecord(p1=report.p1, q1=report.q1, model='random_unitary', trial_index=index, seed=seed)
    return TrialOutcome(record=record, dim=dim, realizations=realizations, passed=report.passed,
                        per_index_passed=all(report.per_index), temperature_checked=temperature_checked,
                        temperature_passed=temperature_passed)


def channel_trial(cfg: ExperimentConfig, index: int) -> TrialOutcome:
    """
    Стандартный кубитный канал с параметром p ~ U[0, 1]

    Виды каналов чередуются по номеру испытания. Нарушения считаются только для
    каналов, у которых сертификат исключает охлаждение.
    """
    tol = _tolerances(cfg)
    seed = cfg.seed.for_trial(index)
    rng = seed.generator()
    kind = CHANNEL_KINDS[index % len(CHANNEL_KINDS)]
    p = float(rng.uniform(0.0, 1.0))
    ch = amplitude_damping(p) if kind == AMPLITUDE_DAMPING else standard_channel(kind, p)
    cert = certify(ch, tol)
    rho_i = random_pure_state(2, rng) if _is_pure_trial(cfg, index) else random_density_matrix(2, rng)
    report = theorem_check(rho_i, apply_kraus(ch, rho_i, tol), tol)

    record = ScatterRecord(p1=report.p1, q1=report.q1, model=kind, trial_index=index, seed=seed)
    return TrialOutcome(record=record, dim=2, realizations=len(ch.ops), passed=report.passed,
                        per_index_passed=all(report.per_index), checked=cert.cooling_impossible,
                        cooling_witness=kind == AMPLITUDE_DAMPING and not report.passed, kind=kind)


def summarize(model: str, outcomes: Sequence[TrialOutcome]) -> SweepReport:
    checked = [o for o in outcomes if o.checked]
    by_dim: Dict[int, List[TrialOutcome]] = {}
    for o in checked:
        by_dim.setdefault(o.dim, []).append(o)
    per_dim = tuple(
        DimSummary(dim=dim, trials=len(group), violations=sum(not o.passed for o in group),
                   worst_margin=min(o.record.margin for o in group))
        for dim, group in sorted(by_dim.items()))
    return SweepReport(
        model=model,
        trials=len(outcomes),
        violations=sum(not o.passed for o in checked),
        index_violations=sum(not o.per_index_passed for o in checked),
        temperature_checks=sum(o.temperature_checked for o in outcomes),
        temperature_violations=sum(not o.temperature_passed for o in outcomes),
        cooling_witnesses=sum(o.cooling_witness for o in outcomes),
        worst_margin=min((o.record.margin for o in checked), default=math.inf),
        per_dim=per_dim,
        records=tuple(o.record for o in outcomes),
    )


async def _run(cfg: ExperimentConfig, trial: Callable[[ExperimentConfig, int], T],
               executor: Optional[ThreadPoolExecutor]) -> List[T]:
    fn = partial(trial, cfg)
    if executor is not None:
        return await map_trials(fn, cfg.points, executor, cfg.workers)
    with ThreadPoolExecutor(max_workers=cfg.workers, thread_name_prefix='coollab') as pool:
        return await map_trials(fn, cfg.points, pool, cfg.workers)


def _log_report(report: SweepReport):
    if report.violations:
        logger.warning('%s: %d of %d trials violate Q1 <= P1 (worst margin %r)',
                       report.model, report.violations, report.trials, report.worst_margin)
    else:
        logger.info('%s: %d trials, worst margin %r', report.model, report.trials, report.worst_margin)


async def run_figure1(cfg: ExperimentConfig, executor: Optional[ThreadPoolExecutor] = None) -> List[ScatterRecord]:
    """
    Рассеяние (P_1, Q_1) для STIRAP с шумом одного угла

    :param cfg: :obj:`ExperimentConfig`, используются points, realizations, noisy, theta, alpha
    :param executor: общий пул потоков; по умолчанию создаётся пул на cfg.workers
    :return: записи по номеру испытания
    """
    records = await _run(cfg, figure1_trial, executor)
    violations = sum(r.q1 > r.p1 + cfg.tolerance for r in records)
    if violations:
        logger.warning('Scatter run: %d of %d points above the diagonal', violations, len(records))
    return records


async def run_theorem_sweep(cfg: ExperimentConfig, executor: Optional[ThreadPoolExecutor] = None) -> SweepReport:
    """
    Проверка Q_1 <= P_1 на хааровских случайно-унитарных каналах

    :raise: :obj:`ConfigError` при пустом dims или размерности < 2
    """
    cfg.check_dims()
    report = summarize('random_unitary', await _run(cfg, theorem_trial, executor))
    _log_report(report)
    return report


async def run_quantum_channel_sweep(cfg: ExperimentConfig,
                                    executor: Optional[ThreadPoolExecutor] = None) -> SweepReport:
    """
    Стандартные кубитные каналы и затухание амплитуды

    Нарушения учитываются для сертифицированных каналов; испытания затухания
    амплитуды с Q_1 > P_1 считаются свидетелями охлаждения.

    :raise: :obj:`ConfigError` если points меньше числа видов каналов
    """
    if cfg.points < len(CHANNEL_KINDS):
        raise ConfigError(f'Для серии каналов нужно points >= {len(CHANNEL_KINDS)}, '
                          f'иначе затухание амплитуды не встретится; получено {cfg.points}')
    report = summarize('quantum_channels', await _run(cfg, channel_trial, executor))
    _log_report(report)
    if report.cooling_witnesses == 0:
        logger.warning('No cooling witness among %d amplitude-damping trials',
                       sum(r.model == AMPLITUDE_DAMPING for r in report.records))
    return report


SWEEPS = {'random_unitary': run_theorem_sweep, 'quantum_channels': run_quantum_channel_sweep}


async def run_sweep(cfg: ExperimentConfig, executor: Optional[ThreadPoolExecutor] = None) -> SweepReport:
    if cfg.model not in SWEEPS:
        raise ConfigError(f'Для серии нужна модель random_unitary или quantum_channels, получено {cfg.model}')
    return await SWEEPS[cfg.model](cfg, executor)
