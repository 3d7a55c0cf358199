import logging
import math
import operator
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from .exceptions import InvalidInput, InvalidState

logger = logging.getLogger('spectral')

ComplexMatrix = np.ndarray


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-12
    trace: float = 1e-12
    eig_clamp: float = 1e-10
    unitary: float = 1e-10
    cptp: float = 1e-10
    row_sum: float = 1e-10
    theorem: float = 1e-9
    simplex: float = 1e-12
    reconstruction: float = 1e-10
    temperature: float = 1e-12
    spectrum: float = 1e-10
    output_trace: float = 1e-10

    def for_outputs(self, slack: float = 0.0) -> 'Tolerances':
        """
        Допуски для состояний, полученных действием канала

        :param slack: допустимый уход следа из-за дефекта принятого канала
        """
        return replace(self, trace=max(self.trace, self.output_trace, slack))


TOLERANCES = Tolerances()


def as_matrix(m, square: bool = False) -> ComplexMatrix:
    """
    Приводит вход к неизменяемой комплексной матрице complex128

    :param m: массив, вложенные списки или np.ndarray
    :param square: требовать квадратную матрицу
    :return: read-only копия
    :raise: :obj:`InvalidInput` при неверной форме или NaN/Inf
    """
    try:
        arr = np.array(m, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InvalidInput(f'Не удалось привести к комплексной матрице: {e}')
    if arr.ndim != 2 or 0 in arr.shape:
        raise InvalidInput(f'Ожидалась двумерная непустая матрица, получена форма {arr.shape}')
    if square and arr.shape[0] != arr.shape[1]:
        raise InvalidInput(f'Ожидалась квадратная матрица, получена форма {arr.shape}')
    if not np.all(np.isfinite(arr)):
        raise InvalidInput('Матрица содержит NaN или Inf')
    arr.setflags(write=False)
    return arr


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    return m.conj().T


def hermiticity_defect(m: ComplexMatrix) -> float:
    return float(np.abs(m - dagger(m)).max())


def hermitize(m: ComplexMatrix) -> ComplexMatrix:
    return (m + dagger(m)) / 2


def check_state(mat: ComplexMatrix, tol: Tolerances = TOLERANCES):
    defect = hermiticity_defect(mat)
    if defect > tol.herm:
        raise InvalidState(f'Матрица плотности не эрмитова: дефект {defect:.3e} > {tol.herm:.1e}')
    trace = np.trace(mat)
    if abs(trace - 1) > tol.trace:
        raise InvalidState(f'След матрицы плотности {trace.real:.15g} отличается от 1')
    smallest = float(np.linalg.eigvalsh(hermitize(mat))[0])
    if smallest < -tol.eig_clamp:
        raise InvalidState(f'Отрицательное собственное значение {smallest:.3e}')


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Эрмитова неотрицательная матрица с единичным следом (ρ_i, ρ_f)

    Проверяется при создании; после создания неизменяема.
    """
    mat: ComplexMatrix
    tol: Tolerances = field(default=TOLERANCES, repr=False)

    def __post_init__(self):
        mat = as_matrix(self.mat, square=True)
        check_state(mat, self.tol)
        object.__setattr__(self, 'mat', mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.diagonal(self.mat)).copy()

    @classmethod
    def from_diagonal(cls, probs: Sequence[float]) -> 'DensityMatrix':
        return cls(np.diag(np.asarray(probs, dtype=np.complex128)))

    @classmethod
    def maximally_mixed(cls, dim: int) -> 'DensityMatrix':
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    @classmethod
    def pure(cls, vector: Sequence[complex]) -> 'DensityMatrix':
        v = np.asarray(vector, dtype=np.complex128)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))


@dataclass(frozen=True)
class SortedSpectrum:
    """Собственные значения по убыванию: P_1 ≥ P_2 ≥ … или Q_1 ≥ Q_2 ≥ …"""
    probs: Tuple[float, ...]
    eps: float = field(default=TOLERANCES.spectrum, repr=False, compare=False)

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        eps = self.eps
        if not probs:
            raise InvalidState('Пустой спектр')
        if any(a < b for a, b in zip(probs, probs[1:])):
            raise InvalidState(f'Спектр не упорядочен по убыванию: {probs}')
        if probs[-1] < -eps or probs[0] > 1 + eps:
            raise InvalidState(f'Собственные значения вне [0, 1]: {probs}')
        if abs(math.fsum(probs) - 1) > eps:
            raise InvalidState(f'Сумма спектра {math.fsum(probs):.15g} отличается от 1')
        object.__setattr__(self, 'probs', probs)

    @property
    def largest(self) -> float:
        return self.probs[0]

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, index: int) -> float:
        return self.probs[index]

    def __iter__(self) -> Iterator[float]:
        return iter(self.probs)


@dataclass(frozen=True)
class TemperatureSpec:
    omega: float
    k_b: float = 1.0

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise InvalidInput(f'Энергетическая щель должна быть > 0, получено {self.omega}')
        if not (self.k_b > 0 and math.isfinite(self.k_b)):
            raise InvalidInput(f'Постоянная Больцмана должна быть > 0, получено {self.k_b}')


@dataclass(frozen=True)
class RngSeed:
    """
    Зерно генератора и номер потока

    Каждый потребитель получает собственный генератор из пары (seed, stream_id),
    общий изменяемый генератор нигде не используется.
    """
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ('seed', 'stream_id'):
            value = operator.index(getattr(self, name))
            if not 0 <= value < 2 ** 64:
                raise InvalidInput(f'{name} должен быть 64-битным беззнаковым целым, получено {value}')
            object.__setattr__(self, name, value)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed, self.stream_id])))

    def for_trial(self, index: int) -> 'RngSeed':
        return RngSeed(self.seed, index)


SeedLike = Union[RngSeed, np.random.Generator, int]


def as_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, RngSeed):
        return seed.generator()
    return RngSeed(seed).generator()


def sorted_spectrum(rho: Union[DensityMatrix, ComplexMatrix], tol: Tolerances = TOLERANCES) -> SortedSpectrum:
    """
    Спектр состояния по убыванию

    Значения в [-eig_clamp, 0) обнуляются.

    :param rho: :obj:`DensityMatrix` или эрмитова матрица
    :param tol: допуски
    :return: :obj:`SortedSpectrum`
    :raise: :obj:`InvalidState` если матрица не эрмитова
    """
    eps = tol.spectrum
    if isinstance(rho, DensityMatrix):
        mat = rho.mat
        eps = max(eps, rho.tol.trace)
    else:
        mat = as_matrix(rho, square=True)
        defect = hermiticity_defect(mat)
        if defect > tol.herm:
            raise InvalidState(f'Матрица не эрмитова: дефект {defect:.3e}')
    vals = np.linalg.eigvalsh(hermitize(mat))[::-1]
    if vals[-1] < -tol.eig_clamp:
        raise InvalidState(f'Отрицательное собственное значение {vals[-1]:.3e}')
    vals = np.where(vals < 0, 0.0, vals)
    return SortedSpectrum(tuple(vals), eps=eps)


def diagonalize_hermitian(m, tol: Tolerances = TOLERANCES) -> Tuple[np.ndarray, ComplexMatrix]:
    """
    Спектральное разложение m = V·diag(vals)·V†

    :param m: квадратная эрмитова матрица
    :return: (собственные значения по убыванию, унитарная V)
    :raise: :obj:`InvalidInput`
    """
    mat = as_matrix(m)
    if mat.shape[0] != mat.shape[1]:
        raise InvalidInput(f'Ожидалась квадратная матрица, получена форма {mat.shape}')
    defect = hermiticity_defect(mat)
    if defect > tol.herm:
        raise InvalidInput(f'Матрица не эрмитова: дефект {defect:.3e}')
    vals, vecs = linalg.eigh(hermitize(mat))
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def reconstruction_defect(m: ComplexMatrix, vals: np.ndarray, vecs: ComplexMatrix) -> float:
    return float(np.abs((vecs * vals) @ dagger(vecs) - m).max())


def haar_unitary_matrix(dim: int, seed: SeedLike) -> ComplexMatrix:
    """Гауссова матрица, QR и фиксация фаз: у R положительная диагональ"""
    rng = as_generator(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density_matrix(dim: int, seed: SeedLike) -> DensityMatrix:
    """
    Случайное состояние: спектр из плоского распределения Дирихле, базис по мере Хаара

    :param dim: размерность, не меньше 2
    :param seed: :obj:`RngSeed` или генератор
    """
    dim = operator.index(dim)
    if dim < 2:
        raise InvalidInput(f'Размерность состояния должна быть >= 2, получено {dim}')
    rng = as_generator(seed)
    probs = rng.dirichlet(np.ones(dim))
    v = haar_unitary_matrix(dim, rng)
    return DensityMatrix(hermitize((v * probs) @ dagger(v)))


def random_pure_state(dim: int, seed: SeedLike) -> DensityMatrix:
    dim = operator.index(dim)
    if dim < 1:
        raise InvalidInput(f'Размерность состояния должна быть >= 1, получено {dim}')
    return DensityMatrix.pure(haar_unitary_matrix(dim, seed)[:, 0])


def random_simplex_weights(n: int, seed: SeedLike) -> np.ndarray:
    n = operator.index(n)
    if n < 1:
        raise InvalidInput(f'Число весов должно быть >= 1, получено {n}')
    if n == 1:
        return np.ones(1)
    w = as_generator(seed).dirichlet(np.ones(n))
    return w / w.sum()


def effective_temperature(p1: float, spec: TemperatureSpec, tol: Tolerances = TOLERANCES) -> float:
    """
    Температура Гиббса двухуровневой системы по заселённости основного уровня

    T = ω / (k_B · ln(p1 / (1 - p1)))

    :param p1: большая из двух заселённостей, 0.5 <= p1 <= 1
    :param spec: :obj:`TemperatureSpec`
    :return: температура; ``math.inf`` при p1 = 0.5, 0 при p1 = 1
    :raise: :obj:`InvalidInput`
    """
    if not (0.5 - tol.temperature <= p1 <= 1 + tol.temperature):
        raise InvalidInput(f'Заселённость p1 должна лежать в [0.5, 1], получено {p1}')
    p1 = min(max(float(p1), 0.5), 1.0)
    if p1 == 0.5:
        return math.inf
    if p1 == 1.0:
        return 0.0
    return spec.omega / (spec.k_b * math.log(p1 / (1 - p1)))


def temperature_slack(p1: float, dp: float, spec: TemperatureSpec, tol: Tolerances = TOLERANCES) -> float:
    """
    Насколько может упасть T при росте заселённости p1 на dp: T(p1) - T(p1 + dp)

    :return: ``math.inf`` при p1 = 0.5
    """
    t = effective_temperature(p1, spec, tol)
    if math.isinf(t):
        return math.inf
    return t - effective_temperature(min(p1 + dp, 1.0), spec, tol)


@dataclass(frozen=True)
class TemperatureReport:
    t_i: float
    t_f: float
    bound: float
    equal_gaps: bool
    passed: bool


def temperature_monotonicity_check(p1_i: float, q1_f: float,
                                   spec_i: TemperatureSpec, spec_f: TemperatureSpec,
                                   tol: Tolerances = TOLERANCES) -> TemperatureReport:
    """
    Проверка T_f >= T_i при равных щелях

    При разных щелях вместо T_i сравнивается с границей (ω_f/k_f)/(ω_i/k_i)·T_i,
    которая следует из Q_1 <= P_1.
    """
    t_i = effective_temperature(p1_i, spec_i, tol)
    t_f = effective_temperature(q1_f, spec_f, tol)
    equal_gaps = spec_i.omega == spec_f.omega and spec_i.k_b == spec_f.k_b
    if equal_gaps:
        bound = t_i
    else:
        bound = t_i * (spec_f.omega / spec_f.k_b) / (spec_i.omega / spec_i.k_b)
    passed = t_f >= bound - tol.temperature
    if not passed:
        logger.warning('Temperature decreased: T_i=%r T_f=%r bound=%r', t_i, t_f, bound)
    return TemperatureReport(t_i=t_i, t_f=t_f, bound=bound, equal_gaps=equal_gaps, passed=passed)
