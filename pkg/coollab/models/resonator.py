"""
Механический резонатор, связанный с потоковым кубитом

H = ω_m a†a + Δσ_z/2 + g(aσ_+ + a†σ_-) распадается на блоки 2×2 в базисе
{|n-1, e⟩, |n, g⟩}; одетые состояния |n+⟩ = cos α_n|n-1, e⟩ + sin α_n|n, g⟩,
|n-⟩ = sin α_n|n-1, e⟩ - cos α_n|n, g⟩, tan 2α_n = 2g√n / (Δ - ω_m).
Классический шум H_I = θ_k a†a действует на каждый блок независимо; сектор
|0, g⟩ не меняется. Блоки BlockState записаны в одетом базисе.

Поправки к печатным формулам: во внедиагональном элементе E_{k,n} стоит
cos α sin α (в печатном виде cos²α sin²α, что нарушает унитарность), а μ^(1)
содержит множитель ½ (иначе Σ_j (μ^(j))² != 1).
"""
import logging
import math
import operator
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..channels.unitary import RandomUnitaryChannel, UnitaryRealization
from ..exceptions import DimensionMismatch, InvalidInput, InvalidState
from ..spectral import TOLERANCES, ComplexMatrix, DensityMatrix, SeedLike, as_generator, as_matrix, dagger, hermitize
from .ensemble import NoiseEnsemble

logger = logging.getLogger('Models.Resonator')


@dataclass(frozen=True)
class MRParams:
    omega_m: float
    delta: float
    g: float
    n_max: int

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.omega_m, self.delta, self.g)):
            raise InvalidInput('Параметры резонатора должны быть конечными')
        if self.g < 0:
            raise InvalidInput(f'Константа связи g должна быть >= 0, получено {self.g}')
        n_max = operator.index(self.n_max)
        if n_max < 1:
            raise InvalidInput(f'Обрезка n_max должна быть >= 1, получено {n_max}')
        object.__setattr__(self, 'n_max', n_max)

    @property
    def dim(self) -> int:
        return 1 + 2 * self.n_max


@dataclass(frozen=True, eq=False)
class BlockState:
    """
    Блочно-диагональное состояние: заселённость p0 сектора |0, g⟩ и блоки n = 1..n_max

    :param p0: заселённость |0, g⟩
    :param blocks: эрмитовы блоки 2×2 в одетом базисе, след блока равен P_n
    """
    p0: float
    blocks: Tuple[ComplexMatrix, ...]

    def __post_init__(self):
        blocks = tuple(as_matrix(b, square=True) for b in self.blocks)
        eps = TOLERANCES.eig_clamp
        if not blocks:
            raise InvalidState('Состояние без блоков')
        if self.p0 < -eps:
            raise InvalidState(f'Отрицательная заселённость p0 = {self.p0}')
        for n, b in enumerate(blocks, start=1):
            if b.shape != (2, 2):
                raise InvalidState(f'Блок {n} имеет форму {b.shape}, ожидалась (2, 2)')
            if np.abs(b - dagger(b)).max() > TOLERANCES.herm:
                raise InvalidState(f'Блок {n} не эрмитов')
            if np.linalg.eigvalsh(hermitize(b))[0] < -eps:
                raise InvalidState(f'Блок {n} не неотрицателен')
        total = self.p0 + sum(np.trace(b).real for b in blocks)
        if abs(total - 1) > eps:
            raise InvalidState(f'Полная заселённость {total:.15g} отличается от 1')
        object.__setattr__(self, 'p0', float(self.p0))
        object.__setattr__(self, 'blocks', blocks)

    @property
    def n_max(self) -> int:
        return len(self.blocks)

    @property
    def block_traces(self) -> Tuple[float, ...]:
        return tuple(float(np.trace(b).real) for b in self.blocks)

    def to_density_matrix(self) -> DensityMatrix:
        return DensityMatrix(linalg.block_diag(np.array([[self.p0]]), *self.blocks))

    @classmethod
    def from_density_matrix(cls, rho: DensityMatrix, n_max: int) -> 'BlockState':
        """Обратное к to_density_matrix; элементы вне блоков должны быть нулевыми"""
        if rho.dim != 1 + 2 * n_max:
            raise DimensionMismatch(f'Размерность {rho.dim} не соответствует n_max = {n_max}')
        mask = linalg.block_diag(np.ones((1, 1)), *([np.ones((2, 2))] * n_max)).astype(bool)
        if np.abs(rho.mat[~mask]).max(initial=0.0) > TOLERANCES.herm:
            raise InvalidState('Состояние не блочно-диагонально')
        blocks = tuple(rho.mat[1 + 2 * i:3 + 2 * i, 1 + 2 * i:3 + 2 * i] for i in range(n_max))
        return cls(float(rho.mat[0, 0].real), blocks)


def random_block_state(n_max: int, seed: SeedLike) -> BlockState:
    """Случайные заселённости секторов (Дирихле) и диагональные блоки"""
    rng = as_generator(seed)
    sectors = rng.dirichlet(np.ones(1 + n_max))
    split = rng.uniform(0.0, 1.0, size=n_max)
    blocks = tuple(np.diag([p * u, p * (1 - u)]) for p, u in zip(sectors[1:], split))
    return BlockState(float(sectors[0]), blocks)


def dressed_angle(n: int, p: MRParams) -> float:
    # atan2 stays continuous through resonance delta == omega_m
    return 0.5 * math.atan2(2 * p.g * math.sqrt(n), p.delta - p.omega_m)


def mr_block_hamiltonian(n: int, p: MRParams) -> ComplexMatrix:
    """Блок H в голом базисе {|n-1, e⟩, |n, g⟩}"""
    coupling = p.g * math.sqrt(n)
    return as_matrix([[p.omega_m * (n - 1) + p.delta / 2, coupling],
                      [coupling, p.omega_m * n - p.delta / 2]])


def mr_dressed_energies(n: int, p: MRParams) -> Tuple[float, float]:
    """(ε_n^+, ε_n^-) = ω_m(n - ½) ± ½√((Δ - ω_m)² + 4g²n)"""
    split = 0.5 * math.sqrt((p.delta - p.omega_m) ** 2 + 4 * p.g ** 2 * n)
    center = p.omega_m * (n - 0.5)
    return center + split, center - split


def mr_ground_energy(p: MRParams) -> float:
    return -p.delta / 2


def mr_block_kraus(n: int, theta: float, p: MRParams) -> ComplexMatrix:
    """
    Блок E_{k,n} в одетом базисе

    E¹¹ = e^{-iθ(n-1)}(c² + e^{-iθ}s²), E²² = e^{-iθ(n-1)}(s² + e^{-iθ}c²),
    E¹² = E²¹ = e^{-iθ(n-1)}(1 - e^{-iθ})·c·s
    """
    if n < 1:
        raise InvalidInput(f'Номер блока должен быть >= 1, получено {n}')
    alpha = dressed_angle(n, p)
    c, s = math.cos(alpha), math.sin(alpha)
    phase = np.exp(-1j * theta * (n - 1))
    shift = np.exp(-1j * theta)
    off = phase * (1 - shift) * c * s
    return as_matrix([[phase * (c * c + shift * s * s), off],
                      [off, phase * (s * s + shift * c * c)]])


def mr_block_kraus_bare(n: int, theta: float, p: MRParams) -> ComplexMatrix:
    """Тот же блок через R·exp(-iθ a†a)·R, R = [[c, s], [s, -c]]"""
    alpha = dressed_angle(n, p)
    c, s = math.cos(alpha), math.sin(alpha)
    r = np.array([[c, s], [s, -c]])
    dephasing = np.diag([np.exp(-1j * theta * (n - 1)), np.exp(-1j * theta * n)])
    return as_matrix(r @ dephasing @ r)


def _check_truncation(state: BlockState, p: MRParams):
    if state.n_max != p.n_max:
        raise DimensionMismatch(f'Обрезка состояния {state.n_max} не совпадает с n_max = {p.n_max}')


def mr_apply(ens: NoiseEnsemble, state: BlockState, p: MRParams) -> BlockState:
    """
    Усреднение по ансамблю для каждого блока

    Сектор n = 0 и следы блоков P_n сохраняются.
    """
    _check_truncation(state, p)
    weights = ens.lambda_array
    blocks: List[ComplexMatrix] = []
    for n, block in enumerate(state.blocks, start=1):
        ks = np.stack([mr_block_kraus(n, t, p) for t in ens.thetas])
        out = np.einsum('l,lij,jk,lmk->im', weights, ks, block, ks.conj())
        blocks.append(hermitize(out))
    return BlockState(state.p0, tuple(blocks))


def mr_mu(n: int, theta: float, p: MRParams) -> Tuple[float, float, float]:
    """
    μ^(1) = (1 - cos θ)·sin 4α / 2, μ^(2) = sin θ · sin 2α, μ^(3) = 1 - 2 sin²(θ/2) sin² 2α
    """
    alpha = dressed_angle(n, p)
    mu1 = (1 - math.cos(theta)) * math.sin(4 * alpha) / 2
    mu2 = math.sin(theta) * math.sin(2 * alpha)
    mu3 = 1 - 2 * math.sin(theta / 2) ** 2 * math.sin(2 * alpha) ** 2
    return mu1, mu2, mu3


def mr_yn(ens: NoiseEnsemble, n: int, p: MRParams) -> float:
    """Y_n = Σ_j (Σ_k λ_k μ^(j)_{kn})²"""
    mus = np.array([mr_mu(n, t, p) for t in ens.thetas])
    averaged = ens.lambda_array @ mus
    return min(float(np.dot(averaged, averaged)), 1.0)


def mr_closed_form(ens: NoiseEnsemble, state: BlockState, p: MRParams) -> Tuple[Tuple[float, float], ...]:
    """
    Заселённости блоков (P_n ± X_n) / 2, X_n = |P_1n - P_2n|·√Y_n

    Формула верна только для диагональных начальных блоков.
    """
    _check_truncation(state, p)
    result = []
    for n, block in enumerate(state.blocks, start=1):
        if abs(block[0, 1]) > TOLERANCES.herm:
            raise InvalidInput(f'Блок {n} не диагонален: замкнутая формула неприменима')
        p1n, p2n = block[0, 0].real, block[1, 1].real
        x = abs(p1n - p2n) * math.sqrt(mr_yn(ens, n, p))
        result.append(((p1n + p2n + x) / 2, (p1n + p2n - x) / 2))
    return tuple(result)


def mr_channel(ens: NoiseEnsemble, p: MRParams) -> RandomUnitaryChannel:
    """
    Блочная модель как случайно-унитарный канал размерности 1 + 2·n_max

    Индекс 0 - |0, g⟩, далее пары (|n+⟩, |n-⟩).
    """
    realizations = []
    for theta, weight in zip(ens.thetas, ens.lambdas):
        blocks: Sequence[ComplexMatrix] = [mr_block_kraus(n, theta, p) for n in range(1, p.n_max + 1)]
        realizations.append((weight, UnitaryRealization(linalg.block_diag(np.ones((1, 1)), *blocks))))
    logger.debug('Resonator channel: n_max=%d, %d realizations', p.n_max, len(realizations))
    return RandomUnitaryChannel(tuple(realizations))
