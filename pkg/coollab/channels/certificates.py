import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..exceptions import DimensionMismatch
from ..spectral import TOLERANCES, DensityMatrix, SortedSpectrum, Tolerances, dagger, sorted_spectrum
from .kraus import KrausChannel, apply_kraus

logger = logging.getLogger('Channels.Certificates')


@dataclass(frozen=True)
class Witness:
    state: DensityMatrix
    before: SortedSpectrum
    after: SortedSpectrum


@dataclass(frozen=True)
class ChannelCertificate:
    """
    Свойства канала и достаточное условие невозможности охлаждения

    row_sums[m] = Σ_{λ,n} |E_λ[m, n]|² в вычислительном базисе. Для другого базиса
    операторы нужно предварительно повернуть: E ↦ V E W†.
    """
    cptp_defect: float
    unital_defect: float
    is_mixed_unitary: bool
    row_sums: Tuple[float, ...]
    cooling_impossible: bool
    witness: Optional[Witness] = None


@dataclass(frozen=True)
class TheoremReport:
    p1: float
    q1: float
    margin: float
    passed: bool
    per_index: Tuple[bool, ...]
    before: SortedSpectrum
    after: SortedSpectrum


def certify(ch: KrausChannel, tol: Tolerances = TOLERANCES) -> ChannelCertificate:
    """
    Сертификат канала Крауса

    Если охлаждение не исключено и канал сохраняет след, прикладывается
    свидетель I/d: диагональ образа равна row_sums/d, поэтому Q_1 > 1/d = P_1.

    :param ch: :obj:`KrausChannel`, допускается strict=False
    :return: :obj:`ChannelCertificate`
    """
    ops = ch.stacked()
    cptp_defect = ch.cptp_defect
    if ch.dim_in == ch.dim_out:
        unital_defect = float(np.abs(np.einsum('lij,lkj->ik', ops, ops.conj()) - np.eye(ch.dim_out)).max())
    else:
        unital_defect = float('inf')

    is_mixed_unitary = ch.dim_in == ch.dim_out
    for e in ch.ops:
        gram = dagger(e) @ e
        scale = np.trace(gram).real / ch.dim_in
        if scale < -tol.unitary or np.abs(gram - scale * np.eye(ch.dim_in)).max() > tol.unitary:
            is_mixed_unitary = False
            break

    row_sums = tuple(float(s) for s in (np.abs(ops) ** 2).sum(axis=(0, 2)))
    cooling_impossible = max(row_sums) <= 1 + tol.row_sum

    witness = None
    if not cooling_impossible and ch.dim_in == ch.dim_out and cptp_defect <= tol.cptp:
        state = DensityMatrix.maximally_mixed(ch.dim_in)
        witness = Witness(state=state, before=sorted_spectrum(state, tol),
                          after=sorted_spectrum(apply_kraus(ch, state, tol), tol))
    logger.debug('Certificate: cptp=%.3e unital=%.3e mixed_unitary=%s row_sums=%s',
                  cptp_defect, unital_defect, is_mixed_unitary, row_sums)
    return ChannelCertificate(cptp_defect=cptp_defect, unital_defect=unital_defect,
                              is_mixed_unitary=is_mixed_unitary, row_sums=row_sums,
                              cooling_impossible=cooling_impossible, witness=witness)


def theorem_check(rho_i: DensityMatrix, rho_f: DensityMatrix, tol: Tolerances = TOLERANCES) -> TheoremReport:
    """
    Проверка неравенства Q_m <= P_1 для всех m

    :param rho_i: начальное состояние
    :param rho_f: конечное состояние
    :return: :obj:`TheoremReport` с p1, q1, margin = p1 - q1 и pass = q1 <= p1 + tol.theorem
    """
    if rho_i.dim != rho_f.dim:
        raise DimensionMismatch(f'Размерности состояний различаются: {rho_i.dim} и {rho_f.dim}')
    before = sorted_spectrum(rho_i, tol)
    after = sorted_spectrum(rho_f, tol)
    p1, q1 = before.largest, after.largest
    per_index = tuple(q <= p1 + tol.theorem for q in after)
    passed = q1 <= p1 + tol.theorem
    if not passed:
        logger.warning('Largest eigenvalue increased: P1=%r Q1=%r', p1, q1)
    return TheoremReport(p1=p1, q1=q1, margin=p1 - q1, passed=passed, per_index=per_index,
                         before=before, after=after)
