import logging
import math
import operator
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np

from ..exceptions import DimensionMismatch, InvalidInput
from ..spectral import (TOLERANCES, ComplexMatrix, DensityMatrix, SeedLike, Tolerances, as_generator, as_matrix, dagger,
                        haar_unitary_matrix, hermiticity_defect, hermitize, random_simplex_weights)
from .kraus import KrausChannel

logger = logging.getLogger('Channels.Unitary')


def unitarity_defect(m: ComplexMatrix) -> float:
    return float(np.abs(dagger(m) @ m - np.eye(m.shape[1])).max())


@dataclass(frozen=True, eq=False)
class UnitaryRealization:
    """Пропагатор K(λ) одной реализации шума"""
    k: ComplexMatrix
    tol: Tolerances = field(default=TOLERANCES, repr=False)

    def __post_init__(self):
        k = as_matrix(self.k, square=True)
        defect = unitarity_defect(k)
        if defect > self.tol.unitary:
            raise InvalidInput(f'Матрица не унитарна: дефект {defect:.3e} > {self.tol.unitary:.1e}')
        object.__setattr__(self, 'k', k)

    @property
    def dim(self) -> int:
        return self.k.shape[0]

    @property
    def defect(self) -> float:
        return unitarity_defect(self.k)


@dataclass(frozen=True, eq=False)
class RandomUnitaryChannel:
    """
    Случайно-унитарный канал ρ ↦ Σ w_λ K_λ ρ K_λ†

    :param realizations: пары (вес |p_λ|², :obj:`UnitaryRealization`)
    """
    realizations: Tuple[Tuple[float, UnitaryRealization], ...]
    tol: Tolerances = field(default=TOLERANCES, repr=False)

    def __post_init__(self):
        realizations = tuple((float(w), u) for w, u in self.realizations)
        if not realizations:
            raise InvalidInput('Канал без реализаций')
        dim = realizations[0][1].dim
        for i, (w, u) in enumerate(realizations):
            if not (w >= 0 and math.isfinite(w)):
                raise InvalidInput(f'Вес реализации {i} отрицателен или не конечен: {w}')
            if u.dim != dim:
                raise DimensionMismatch(f'Реализация {i} имеет размерность {u.dim}, ожидалась {dim}')
        total = math.fsum(w for w, _ in realizations)
        if abs(total - 1) > self.tol.simplex:
            raise InvalidInput(f'Сумма весов {total:.15g} отличается от 1')
        object.__setattr__(self, 'realizations', realizations)

    @classmethod
    def from_pairs(cls, weights: Sequence[float], unitaries: Iterable[ComplexMatrix],
                   tol: Tolerances = TOLERANCES) -> 'RandomUnitaryChannel':
        unitaries = [u if isinstance(u, UnitaryRealization) else UnitaryRealization(u, tol) for u in unitaries]
        if len(unitaries) != len(weights):
            raise InvalidInput(f'Число весов {len(weights)} не совпадает с числом унитарных {len(unitaries)}')
        return cls(tuple(zip(weights, unitaries)), tol)

    @classmethod
    def identity(cls, dim: int) -> 'RandomUnitaryChannel':
        return cls(((1.0, UnitaryRealization(np.eye(dim))),))

    @property
    def dim(self) -> int:
        return self.realizations[0][1].dim

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.realizations])

    def stacked(self) -> np.ndarray:
        return np.stack([u.k for _, u in self.realizations])


@dataclass(frozen=True, eq=False)
class HamiltonianSegment:
    """Кусочно-постоянный гамильтониан H на интервале duration (ħ = 1)"""
    h: ComplexMatrix
    duration: float
    tol: Tolerances = field(default=TOLERANCES, repr=False)

    def __post_init__(self):
        h = as_matrix(self.h, square=True)
        defect = hermiticity_defect(h)
        if defect > self.tol.herm:
            raise InvalidInput(f'Гамильтониан не эрмитов: дефект {defect:.3e}')
        if not (self.duration >= 0 and math.isfinite(self.duration)):
            raise InvalidInput(f'Длительность должна быть >= 0, получено {self.duration}')
        object.__setattr__(self, 'h', h)
        object.__setattr__(self, 'duration', float(self.duration))


def apply_random_unitary(ch: RandomUnitaryChannel, rho: DensityMatrix,
                         tol: Tolerances = TOLERANCES) -> DensityMatrix:
    """
    Усреднение по реализациям шума Σ w K ρ K†

    :raise: :obj:`DimensionMismatch`
    """
    if ch.dim != rho.dim:
        raise DimensionMismatch(f'Размерность канала {ch.dim} не совпадает с размерностью состояния {rho.dim}')
    ks = ch.stacked()
    out = np.einsum('l,lij,jk,lmk->im', ch.weights, ks, rho.mat, ks.conj())
    return DensityMatrix(hermitize(out), tol=tol.for_outputs(rho.dim * tol.unitary + tol.simplex))


def to_kraus(ch: RandomUnitaryChannel) -> KrausChannel:
    return KrausChannel(tuple(math.sqrt(w) * u.k for w, u in ch.realizations), tol=ch.tol)


def propagator(segments: Sequence[HamiltonianSegment], dim: int = None,
               tol: Tolerances = TOLERANCES) -> UnitaryRealization:
    """
    Упорядоченная по времени экспонента для кусочно-постоянного H

    Произведение exp(-i H_j t_j), последний сегмент слева; каждая экспонента
    считается через спектральное разложение.

    :param segments: сегменты в хронологическом порядке
    :param dim: размерность для пустого списка (по умолчанию 1)
    """
    if not segments:
        return UnitaryRealization(np.eye(dim or 1), tol)
    size = segments[0].h.shape[0]
    u = np.eye(size, dtype=np.complex128)
    for i, seg in enumerate(segments):
        if seg.h.shape[0] != size:
            raise DimensionMismatch(f'Сегмент {i} имеет размерность {seg.h.shape[0]}, ожидалась {size}')
        vals, vecs = np.linalg.eigh(hermitize(seg.h))
        step = (vecs * np.exp(-1j * vals * seg.duration)) @ dagger(vecs)
        u = step @ u
    return UnitaryRealization(u, tol)


def haar_random_unitary(dim: int, seed: SeedLike) -> UnitaryRealization:
    dim = operator.index(dim)
    if dim < 1:
        raise InvalidInput(f'Размерность должна быть >= 1, получено {dim}')
    return UnitaryRealization(haar_unitary_matrix(dim, seed))


def random_channel(dim: int, realizations: int, seed: SeedLike) -> RandomUnitaryChannel:
    """Хааровские реализации с весами из плоского распределения Дирихле"""
    rng = as_generator(seed)
    weights = random_simplex_weights(realizations, rng)
    unitaries = [haar_random_unitary(dim, rng) for _ in range(realizations)]
    return RandomUnitaryChannel.from_pairs(weights, unitaries)
