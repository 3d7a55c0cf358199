"""
Отчёты экспериментов

CSV: заголовок ``trial,model,p1,q1,margin,seed``, числа в формате .17g,
зерно записывается как ``seed:stream_id``. JSON повторяет структуру отчёта.
"""
import csv
import io
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple, Union

from ..exceptions import InvalidInput, ReportError
from ..spectral import TOLERANCES, RngSeed
from ..utils.fields_checker import check_choice
from ..utils.serialization import decode_float, dumps, encode_float, fmt17, read_json, write_text

logger = logging.getLogger('Experiments.Report')

CSV_HEADER = ['trial', 'model', 'p1', 'q1', 'margin', 'seed']
REPORT_FORMATS = ['csv', 'json']
WITNESS_MODELS = ('quantum_channels',)


@dataclass(frozen=True)
class ScatterRecord:
    """Точка рассеяния (P_1, Q_1) одного испытания"""
    p1: float
    q1: float
    model: str
    trial_index: int
    seed: RngSeed

    def __post_init__(self):
        eps = TOLERANCES.spectrum
        for name in ('p1', 'q1'):
            value = float(getattr(self, name))
            if not -eps <= value <= 1 + eps:
                raise InvalidInput(f'{name} = {value} вне [0, 1]')
            object.__setattr__(self, name, value)

    @property
    def margin(self) -> float:
        return self.p1 - self.q1


@dataclass(frozen=True)
class DimSummary:
    dim: int
    trials: int
    violations: int
    worst_margin: float


@dataclass(frozen=True)
class SweepReport:
    """
    Итог серии испытаний

    :param violations: испытания с Q_1 > P_1 + tolerance среди проверяемых
    :param index_violations: испытания, где какое-либо Q_m > P_1 + tolerance
    :param temperature_checks: испытания с проверкой эффективной температуры
    :param temperature_violations: испытания, где температура уменьшилась
    :param cooling_witnesses: испытания канала затухания амплитуды с Q_1 > P_1;
        для моделей из WITNESS_MODELS без свидетеля серия не пройдена
    :param worst_margin: наименьшее P_1 - Q_1, ``math.inf`` если проверяемых испытаний нет
    """
    model: str
    trials: int
    violations: int
    index_violations: int
    temperature_checks: int
    temperature_violations: int
    cooling_witnesses: int
    worst_margin: float
    per_dim: Tuple[DimSummary, ...]
    records: Tuple[ScatterRecord, ...]

    @property
    def passed(self) -> bool:
        if self.violations or self.index_violations or self.temperature_violations:
            return False
        # the quantum-channel sweep must contain at least one cooling witness
        return self.model not in WITNESS_MODELS or self.cooling_witnesses > 0


Report = Union[Sequence[ScatterRecord], SweepReport]


def _record_row(r: ScatterRecord) -> List[str]:
    return [str(r.trial_index), r.model, fmt17(r.p1), fmt17(r.q1), fmt17(r.margin),
            f'{r.seed.seed}:{r.seed.stream_id}']


def _record_payload(r: ScatterRecord) -> Dict[str, Any]:
    return {'trial': r.trial_index, 'model': r.model, 'p1': r.p1, 'q1': r.q1, 'margin': r.margin,
            'seed': {'seed': r.seed.seed, 'stream_id': r.seed.stream_id}}


def report_to_payload(report: Report) -> Dict[str, Any]:
    if not isinstance(report, SweepReport):
        return {'records': [_record_payload(r) for r in report]}
    return {
        'model': report.model,
        'trials': report.trials,
        'violations': report.violations,
        'index_violations': report.index_violations,
        'temperature_checks': report.temperature_checks,
        'temperature_violations': report.temperature_violations,
        'cooling_witnesses': report.cooling_witnesses,
        'worst_margin': encode_float(report.worst_margin),
        'pass': report.passed,
        'per_dim': [{'dim': s.dim, 'trials': s.trials, 'violations': s.violations,
                     'worst_margin': encode_float(s.worst_margin)} for s in report.per_dim],
        'records': [_record_payload(r) for r in report.records],
    }


def render_report(report: Report, fmt: str = 'csv') -> str:
    fmt = check_choice(fmt, REPORT_FORMATS, 'format')
    if fmt == 'json':
        return dumps(report_to_payload(report))
    records = report.records if isinstance(report, SweepReport) else report
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    writer.writerows(_record_row(r) for r in records)
    return buffer.getvalue()


def emit_report(report: Report, path: str, fmt: str = 'csv'):
    """
    Записать отчёт в файл

    :param report: список :obj:`ScatterRecord` или :obj:`SweepReport`
    :param path: путь файла
    :param fmt: csv или json
    :raise: :obj:`ReportError` при ошибке записи
    """
    write_text(path, render_report(report, fmt))
    logger.info('Report written to %s', path)


def _record_from_payload(payload: Dict[str, Any]) -> ScatterRecord:
    seed = payload['seed']
    return ScatterRecord(p1=payload['p1'], q1=payload['q1'], model=payload['model'],
                         trial_index=payload['trial'], seed=RngSeed(seed['seed'], seed['stream_id']))


def read_report(path: str) -> Report:
    """Прочитать JSON-отчёт, записанный :func:`emit_report`"""
    payload = read_json(path)
    try:
        records = tuple(_record_from_payload(r) for r in payload['records'])
        if 'model' not in payload:
            return list(records)
        per_dim = tuple(DimSummary(dim=s['dim'], trials=s['trials'], violations=s['violations'],
                                   worst_margin=decode_float(s['worst_margin'])) for s in payload['per_dim'])
        return SweepReport(model=payload['model'], trials=payload['trials'], violations=payload['violations'],
                           index_violations=payload['index_violations'],
                           temperature_checks=payload['temperature_checks'],
                           temperature_violations=payload['temperature_violations'],
                           cooling_witnesses=payload['cooling_witnesses'],
                           worst_margin=decode_float(payload['worst_margin']),
                           per_dim=per_dim, records=records)
    except (KeyError, TypeError, InvalidInput) as e:
        raise ReportError(f'{path}: неверная структура отчёта: {e!r}')


def margin_by_bin(records: Sequence[ScatterRecord], bins: int = 10) -> List[Tuple[float, float, int, float]]:
    """
    Наименьший запас P_1 - Q_1 по интервалам P_1

    :return: список (начало, конец, число точек, наименьший запас); пустые интервалы дают inf
    """
    if bins < 1:
        raise InvalidInput(f'Число интервалов должно быть >= 1, получено {bins}')
    counts = [0] * bins
    worst = [math.inf] * bins
    for r in records:
        b = min(max(int(r.p1 * bins), 0), bins - 1)
        counts[b] += 1
        worst[b] = min(worst[b], r.margin)
    return [(b / bins, (b + 1) / bins, counts[b], worst[b]) for b in range(bins)]
