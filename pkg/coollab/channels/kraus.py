import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np

from ..exceptions import DimensionMismatch, InvalidInput, RejectedChannel
from ..spectral import TOLERANCES, ComplexMatrix, DensityMatrix, Tolerances, as_matrix, dagger, hermitize
from ..utils.fields_checker import check_choice

logger = logging.getLogger('Channels.Kraus')

IDENTITY = as_matrix(np.eye(2))
SIGMA_X = as_matrix([[0, 1], [1, 0]])
SIGMA_Y = as_matrix([[0, -1j], [1j, 0]])
SIGMA_Z = as_matrix([[1, 0], [0, -1]])


class StandardKind(str, Enum):
    BIT_FLIP = 'bit_flip'
    PHASE_FLIP = 'phase_flip'
    BIT_PHASE_FLIP = 'bit_phase_flip'
    DEPOLARIZING = 'depolarizing'


def cptp_defect(ops: Sequence[ComplexMatrix]) -> float:
    """max |Σ E†E - I| по элементам"""
    dim_in = ops[0].shape[1]
    total = sum(dagger(e) @ e for e in ops)
    return float(np.abs(total - np.eye(dim_in)).max())


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """
    Канал в представлении Крауса ρ ↦ Σ E ρ E†

    По умолчанию при создании проверяется полнота Σ E†E = I. Для приёма
    произвольных наборов (сертификат, валидация файлов) используется strict=False.

    :param ops: операторы размера dim_out × dim_in
    :param strict: проверять CPTP при создании
    """
    ops: Tuple[ComplexMatrix, ...]
    strict: bool = True
    tol: Tolerances = field(default=TOLERANCES, repr=False)

    def __post_init__(self):
        if len(self.ops) == 0:
            raise InvalidInput('Пустой список операторов Крауса')
        ops = tuple(as_matrix(e) for e in self.ops)
        shape = ops[0].shape
        for i, e in enumerate(ops):
            if e.shape != shape:
                raise InvalidInput(f'Оператор {i} имеет форму {e.shape}, ожидалась {shape}')
        object.__setattr__(self, 'ops', ops)
        if self.strict and self.cptp_defect > self.tol.cptp:
            raise RejectedChannel(f'Нарушена полнота Σ E†E = I: дефект {self.cptp_defect:.3e}')

    @property
    def dim_in(self) -> int:
        return self.ops[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.ops[0].shape[0]

    @property
    def cptp_defect(self) -> float:
        return cptp_defect(self.ops)

    def stacked(self) -> np.ndarray:
        return np.stack(self.ops)


def apply_kraus(ch: KrausChannel, rho: DensityMatrix, tol: Tolerances = TOLERANCES) -> DensityMatrix:
    """
    Действие канала Σ E ρ E†

    :raise: :obj:`DimensionMismatch`, :obj:`RejectedChannel` если дефект CPTP выше допуска
    """
    if ch.dim_in != rho.dim:
        raise DimensionMismatch(f'Размерность канала {ch.dim_in} не совпадает с размерностью состояния {rho.dim}')
    defect = ch.cptp_defect
    if defect > tol.cptp:
        raise RejectedChannel(f'Канал не сохраняет след: дефект {defect:.3e} > {tol.cptp:.1e}')
    ops = ch.stacked()
    out = np.einsum('lij,jk,lmk->im', ops, rho.mat, ops.conj())
    # |tr(Σ E†E - I)ρ| <= dim · max-entry defect
    return DensityMatrix(hermitize(out), tol=tol.for_outputs(rho.dim * defect + 1e-14))


def standard_channel(kind: Union[StandardKind, str], p: float) -> KrausChannel:
    """
    Стандартные кубитные каналы

    bit_flip {√p I, √(1-p) σx}, phase_flip {√p I, √(1-p) σz},
    bit_phase_flip {√p I, √(1-p) σy}, depolarizing {√(1-3p/4) I, √p σx/2, √p σy/2, √p σz/2}

    :param kind: тип канала
    :param p: параметр из [0, 1]
    """
    kind = StandardKind(check_choice(getattr(kind, 'value', kind), [k.value for k in StandardKind], 'kind'))
    if not 0 <= p <= 1:
        raise InvalidInput(f'Параметр p должен лежать в [0, 1], получено {p}')
    if kind is StandardKind.DEPOLARIZING:
        ops = (np.sqrt(1 - 3 * p / 4) * IDENTITY, np.sqrt(p) * SIGMA_X / 2,
               np.sqrt(p) * SIGMA_Y / 2, np.sqrt(p) * SIGMA_Z / 2)
    else:
        flip = {StandardKind.BIT_FLIP: SIGMA_X,
                StandardKind.PHASE_FLIP: SIGMA_Z,
                StandardKind.BIT_PHASE_FLIP: SIGMA_Y}[kind]
        ops = (np.sqrt(p) * IDENTITY, np.sqrt(1 - p) * flip)
    logger.debug('Standard channel %s with p=%r', kind.value, p)
    return KrausChannel(ops)


def amplitude_damping(gamma: float) -> KrausChannel:
    # Negative control: non-unital, does cool.
    if not 0 <= gamma <= 1:
        raise InvalidInput(f'Параметр gamma должен лежать в [0, 1], получено {gamma}')
    return KrausChannel((np.array([[1, 0], [0, np.sqrt(1 - gamma)]]),
                         np.array([[0, np.sqrt(gamma)], [0, 0]])))
