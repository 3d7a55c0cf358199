import logging
from typing import Sequence, Tuple, Union

from ..base import BaseLab
from ..spectral import DensityMatrix
from .certificates import ChannelCertificate, TheoremReport, certify, theorem_check
from .kraus import KrausChannel, StandardKind, amplitude_damping, apply_kraus, standard_channel
from .unitary import (HamiltonianSegment, RandomUnitaryChannel, UnitaryRealization, apply_random_unitary,
                      propagator, random_channel, to_kraus)

logger = logging.getLogger('Channels')

Channel = Union[RandomUnitaryChannel, KrausChannel]


class ChannelsApi:
    def __init__(self, base: BaseLab):
        """
        Алгебра каналов с допусками лаборатории

        apply, evolve - действие канала и проверка Q_1 <= P_1

        certify - сертификат CPTP / унитальности / условия на суммы строк
        """
        self._base = base

    def apply(self, ch: Channel, rho: DensityMatrix) -> DensityMatrix:
        if isinstance(ch, RandomUnitaryChannel):
            return apply_random_unitary(ch, rho, self._base.tol)
        return apply_kraus(ch, rho, self._base.tol)

    def evolve(self, ch: Channel, rho: DensityMatrix) -> Tuple[DensityMatrix, TheoremReport]:
        rho_f = self.apply(ch, rho)
        return rho_f, theorem_check(rho, rho_f, self._base.tol)

    def certify(self, ch: Channel) -> ChannelCertificate:
        if isinstance(ch, RandomUnitaryChannel):
            ch = to_kraus(ch)
        return certify(ch, self._base.tol)

    def standard(self, kind: Union[StandardKind, str], p: float) -> KrausChannel:
        return standard_channel(kind, p)

    def amplitude_damping(self, gamma: float) -> KrausChannel:
        return amplitude_damping(gamma)

    def random(self, dim: int, realizations: int, stream_id: int = 0) -> RandomUnitaryChannel:
        """
        Случайный канал из потока (seed лаборатории, stream_id)

        :param dim: размерность
        :param realizations: число хааровских реализаций
        :param stream_id: номер потока
        """
        return random_channel(dim, realizations, self._base.stream(stream_id))

    def propagator(self, segments: Sequence[HamiltonianSegment], dim: int = None) -> UnitaryRealization:
        return propagator(segments, dim, self._base.tol)
