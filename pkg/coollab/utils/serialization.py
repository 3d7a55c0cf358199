"""
JSON-представление матриц, состояний, каналов и моделей

Матрица: {"dim": d, "re": [[...]], "im": [[...]]} построчно.
Канал: {"kind": "random_unitary" | "kraus", "dim": d, "ops": [{"weight": w, "re": ..., "im": ...}, ...]}.
Модель: {"model": "two_level" | "mr" | "stirap", "params": {...}, "ensemble": {"thetas": [...], "lambdas": [...]}}.
"""
import json
import logging
import math
from typing import Any, Dict, Union

import numpy as np
import ujson

from coollab.channels.certificates import ChannelCertificate, TheoremReport
from coollab.channels.kraus import KrausChannel
from coollab.channels.unitary import RandomUnitaryChannel, UnitaryRealization
from coollab.exceptions import InvalidInput, ParseError, ReportError
from coollab.spectral import TOLERANCES, ComplexMatrix, DensityMatrix, SortedSpectrum, TemperatureReport, Tolerances
from coollab.utils.fields_checker import check_choice

logger = logging.getLogger('utils/serialization')

CHANNEL_KINDS = ['random_unitary', 'kraus']


def fmt17(x: float) -> str:
    return format(float(x), '.17g')


def encode_float(x: float) -> Union[float, str]:
    # JSON has no infinity; temperatures use the marker "inf"
    if math.isinf(x):
        return 'inf' if x > 0 else '-inf'
    return float(x)


def decode_float(x: Union[float, str]) -> float:
    if isinstance(x, str):
        if x in ('inf', '-inf'):
            return float(x)
        raise InvalidInput(f'Ожидалось число, получено "{x}"')
    return float(x)


class _Float17:
    __slots__ = ('value',)

    def __init__(self, value: float):
        self.value = value

    def __json__(self) -> str:
        # ujson inserts the returned text as is
        text = fmt17(self.value)
        return text if any(c in text for c in '.e') else text + '.0'


def _with_float17(payload: Any) -> Any:
    if isinstance(payload, float):
        if math.isnan(payload):
            raise InvalidInput('NaN не представим в JSON')
        return encode_float(payload) if math.isinf(payload) else _Float17(payload)
    if isinstance(payload, dict):
        return {k: _with_float17(v) for k, v in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_with_float17(v) for v in payload]
    return payload


def dumps(payload: Any) -> str:
    """JSON через ujson; числа с плавающей точкой записываются с 17 значащими цифрами"""
    return ujson.dumps(_with_float17(payload), indent=2, escape_forward_slashes=False, ensure_ascii=False)


def loads(text: Union[str, bytes], source: str = '<input>') -> Any:
    """
    Разбор JSON через ujson

    :raise: :obj:`ParseError` со смещением в байтах
    """
    try:
        return ujson.loads(text)
    except ValueError as e:
        offset = _error_offset(text)
        raise ParseError(f'{source}: неверный JSON около байта {offset}: {e}', offset=offset, source=source)


def _error_offset(text: Union[str, bytes]) -> int:
    # ujson reports no position; the stdlib decoder is only used to locate it
    raw = text if isinstance(text, bytes) else text.encode('utf-8')
    try:
        json.loads(raw)
    except json.JSONDecodeError as e:
        return len(e.doc[:e.pos].encode('utf-8')) if isinstance(e.doc, str) else e.pos
    except ValueError:
        pass
    return len(raw)


def read_json(path: str) -> Any:
    try:
        with open(path, 'rb') as f:
            raw = f.read()
    except OSError as e:
        raise ReportError(f'Не удалось прочитать {path}: {e}')
    return loads(raw, source=path)


def write_text(path: str, text: str):
    try:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as e:
        raise ReportError(f'Не удалось записать {path}: {e}')


def matrix_to_payload(m: ComplexMatrix) -> Dict[str, Any]:
    payload = {'dim': int(m.shape[0]), 're': np.real(m).tolist(), 'im': np.imag(m).tolist()}
    if m.shape[0] != m.shape[1]:
        payload['cols'] = int(m.shape[1])
    return payload


def matrix_from_payload(payload: Dict[str, Any]) -> np.ndarray:
    try:
        re = np.asarray(payload['re'], dtype=float)
        im = np.asarray(payload.get('im', np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInput(f'Неверное описание матрицы: {e!r}')
    if re.ndim != 2 or re.shape != im.shape:
        raise InvalidInput(f'Части re и im имеют разные или неверные формы: {re.shape}, {im.shape}')
    if 'dim' in payload and payload['dim'] != re.shape[0]:
        raise InvalidInput(f'Поле dim = {payload["dim"]} не совпадает с числом строк {re.shape[0]}')
    return re + 1j * im


def state_to_payload(rho: DensityMatrix) -> Dict[str, Any]:
    return matrix_to_payload(rho.mat)


def state_from_payload(payload: Dict[str, Any], tol: Tolerances = TOLERANCES) -> DensityMatrix:
    return DensityMatrix(matrix_from_payload(payload), tol=tol)


def channel_to_payload(ch: Union[RandomUnitaryChannel, KrausChannel]) -> Dict[str, Any]:
    if isinstance(ch, RandomUnitaryChannel):
        ops = [{'weight': w, **matrix_to_payload(u.k)} for w, u in ch.realizations]
        return {'kind': 'random_unitary', 'dim': ch.dim, 'ops': ops}
    return {'kind': 'kraus', 'dim': ch.dim_in, 'ops': [matrix_to_payload(e) for e in ch.ops]}


def channel_from_payload(payload: Dict[str, Any], strict: bool = True,
                         tol: Tolerances = TOLERANCES) -> Union[RandomUnitaryChannel, KrausChannel]:
    """
    Канал из JSON

    :param strict: проверять полноту Крауса при создании
    """
    if not isinstance(payload, dict) or 'ops' not in payload:
        raise InvalidInput('Описание канала должно содержать поле "ops"')
    kind = check_choice(payload.get('kind', 'kraus'), CHANNEL_KINDS, 'kind')
    ops = payload['ops']
    if not isinstance(ops, list) or not ops:
        raise InvalidInput('Поле "ops" должно быть непустым списком')
    matrices = [matrix_from_payload(op) for op in ops]
    if 'dim' in payload and any(m.shape[1] != payload['dim'] for m in matrices):
        raise InvalidInput(f'Операторы не соответствуют размерности dim = {payload["dim"]}')
    if kind == 'random_unitary':
        weights = [float(op.get('weight', 1.0 / len(ops))) for op in ops]
        return RandomUnitaryChannel.from_pairs(weights, [UnitaryRealization(m, tol) for m in matrices], tol)
    weights = [op.get('weight') for op in ops]
    if any(w is not None for w in weights):
        matrices = [m * math.sqrt(float(1.0 if w is None else w)) for m, w in zip(matrices, weights)]
    return KrausChannel(tuple(matrices), strict=strict, tol=tol)


def spectrum_to_payload(spectrum: SortedSpectrum):
    return list(spectrum.probs)


def certificate_to_payload(cert: ChannelCertificate) -> Dict[str, Any]:
    payload = {
        'cptp_defect': encode_float(cert.cptp_defect),
        'unital_defect': encode_float(cert.unital_defect),
        'is_mixed_unitary': cert.is_mixed_unitary,
        'row_sums': list(cert.row_sums),
        'cooling_impossible': cert.cooling_impossible,
        'witness': None,
    }
    if cert.witness is not None:
        payload['witness'] = {'state': state_to_payload(cert.witness.state),
                              'before': spectrum_to_payload(cert.witness.before),
                              'after': spectrum_to_payload(cert.witness.after)}
    return payload


def theorem_report_to_payload(report: TheoremReport) -> Dict[str, Any]:
    return {'p1': report.p1, 'q1': report.q1, 'margin': report.margin, 'pass': report.passed,
            'per_index': list(report.per_index)}


def temperature_report_to_payload(report: TemperatureReport) -> Dict[str, Any]:
    return {'t_i': encode_float(report.t_i), 't_f': encode_float(report.t_f), 'bound': encode_float(report.bound),
            'equal_gaps': report.equal_gaps, 'pass': report.passed}
