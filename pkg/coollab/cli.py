"""
Командная строка coollab

Коды выхода: 0 - проверка пройдена, 1 - отрицательный физический результат
(охлаждение возможно или неравенство нарушено), 2 - ошибка ввода или работы.
Stdout содержит только JSON/CSV, диагностика идёт в stderr.
"""
import argparse
import asyncio
import logging
import sys
from dataclasses import replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from . import __version__
from .base import Settings
from .channels.certificates import certify, theorem_check
from .channels.kraus import KrausChannel, apply_kraus
from .channels.unitary import RandomUnitaryChannel, apply_random_unitary, to_kraus
from .exceptions import ConfigError, CoolLabError, InvalidInput
from .experiments.config import EXPERIMENT_MODELS, ExperimentConfig
from .experiments.optimize import METHODS, maximize_q1, maximize_y
from .experiments.report import REPORT_FORMATS, emit_report, render_report, report_to_payload
from .experiments.sweeps import run_figure1, run_quantum_channel_sweep, run_sweep, run_theorem_sweep
from .models.base import build_model_channel
from .models.ensemble import NoiseEnsemble
from .models.resonator import MRParams, mr_apply, mr_closed_form, random_block_state
from .models.two_level import two_level_channel, two_level_closed_form
from .spectral import (TOLERANCES, DensityMatrix, RngSeed, TemperatureSpec, effective_temperature, sorted_spectrum,
                       temperature_monotonicity_check)
from .utils.serialization import (certificate_to_payload, channel_from_payload, dumps, encode_float, read_json,
                                  state_from_payload, state_to_payload, temperature_report_to_payload,
                                  theorem_report_to_payload, write_text)

logger = logging.getLogger('cli')

EXIT_PASS, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2
LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']

Channel = Union[RandomUnitaryChannel, KrausChannel]


def _emit(payload: Any):
    sys.stdout.write(dumps(payload) + '\n')


def _load_channel(path: str, strict: bool = True) -> Channel:
    payload = read_json(path)
    if isinstance(payload, dict) and 'model' in payload:
        return build_model_channel(payload)
    return channel_from_payload(payload, strict=strict)


def _experiment_config(args: argparse.Namespace, settings: Settings, **extra) -> ExperimentConfig:
    cfg = ExperimentConfig.from_file(args.config) if args.config else ExperimentConfig(seed=RngSeed(settings.seed))
    overrides = dict(seed=args.seed, workers=args.workers, output_path=getattr(args, 'out', None))
    overrides.update(extra)
    return cfg.with_overrides(**overrides)


def cmd_certify(args: argparse.Namespace, settings: Settings) -> int:
    ch = _load_channel(args.channel, strict=False)
    if isinstance(ch, RandomUnitaryChannel):
        ch = to_kraus(ch)
    cert = certify(ch, replace(TOLERANCES, cptp=args.tol))
    _emit(certificate_to_payload(cert))
    if cert.cptp_defect > args.tol:
        logger.error('Channel is not trace preserving: defect %.3e > %.1e', cert.cptp_defect, args.tol)
        return EXIT_ERROR
    return EXIT_PASS if cert.cooling_impossible else EXIT_NEGATIVE


def cmd_evolve(args: argparse.Namespace, settings: Settings) -> int:
    ch = _load_channel(args.channel)
    rho_i = state_from_payload(read_json(args.state))
    rho_f = apply_random_unitary(ch, rho_i) if isinstance(ch, RandomUnitaryChannel) else apply_kraus(ch, rho_i)
    report = theorem_check(rho_i, rho_f)
    if args.out:
        write_text(args.out, dumps(state_to_payload(rho_f)))
    _emit(theorem_report_to_payload(report))
    return EXIT_PASS if report.passed else EXIT_NEGATIVE


def cmd_figure1(args: argparse.Namespace, settings: Settings) -> int:
    cfg = _experiment_config(args, settings, model='stirap', points=args.points,
                             realizations=args.realizations, noisy=args.noisy)
    records = asyncio.run(run_figure1(cfg))
    if cfg.output_path:
        emit_report(records, cfg.output_path, args.format)
    else:
        sys.stdout.write(render_report(records, args.format))
    violations = sum(r.q1 > r.p1 + cfg.tolerance for r in records)
    return EXIT_PASS if violations == 0 else EXIT_NEGATIVE


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    cfg = _experiment_config(args, settings, model=args.model, points=args.points)
    if cfg.model == 'stirap':
        cfg = cfg.with_overrides(model='random_unitary')
    report = asyncio.run(run_sweep(cfg))
    if cfg.output_path:
        emit_report(report, cfg.output_path, args.format)
    summary = report_to_payload(report)
    summary.pop('records')
    _emit(summary)
    return EXIT_PASS if report.passed else EXIT_NEGATIVE


def cmd_temperature(args: argparse.Namespace, settings: Settings) -> int:
    spec = TemperatureSpec(omega=args.omega, k_b=args.k_b)
    if args.q1 is None:
        _emit({'p1': args.p1, 'temperature': encode_float(effective_temperature(args.p1, spec))})
        return EXIT_PASS
    spec_f = TemperatureSpec(omega=args.omega_f or args.omega, k_b=args.k_b)
    report = temperature_monotonicity_check(args.p1, args.q1, spec, spec_f)
    _emit(temperature_report_to_payload(report))
    return EXIT_PASS if report.passed else EXIT_NEGATIVE


def _parse_thetas(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(',') if x.strip()]
    except ValueError as e:
        raise InvalidInput(f'Неверный список углов "{text}": {e}')


def cmd_optimize(args: argparse.Namespace, settings: Settings) -> int:
    thetas = _parse_thetas(args.thetas)
    seed = RngSeed(settings.seed if args.seed is None else args.seed)
    if args.p1 is None:
        result = maximize_y(thetas, args.method, args.budget, seed)
    else:
        result = maximize_q1(thetas, args.p1, args.method, args.budget, seed)
    _emit({'best_weights': list(result.best_weights), 'best_value': result.best_value,
           'iterations': result.iterations, 'converged': result.converged})
    return EXIT_PASS


def _closed_form_checks(seed: RngSeed, draws: int) -> Dict[str, bool]:
    rng = seed.generator()
    two_level_ok, mr_ok = True, True
    params = MRParams(omega_m=1.0, delta=1.3, g=0.2, n_max=3)
    for _ in range(draws):
        ens = NoiseEnsemble.random(int(rng.integers(1, 9)), rng)
        p1 = float(rng.uniform(0.5, 1.0))
        rho_f = apply_random_unitary(two_level_channel(ens), DensityMatrix.from_diagonal([p1, 1 - p1]))
        direct = sorted_spectrum(rho_f).probs
        two_level_ok &= bool(np.allclose(direct, two_level_closed_form(ens, p1), rtol=0, atol=1e-10))

        state = random_block_state(params.n_max, rng)
        evolved = mr_apply(ens, state, params)
        for block, expected in zip(evolved.blocks, mr_closed_form(ens, state, params)):
            mr_ok &= bool(np.allclose(np.linalg.eigvalsh(block)[::-1], expected, rtol=0, atol=1e-10))
    return {'two_level_closed_form': two_level_ok, 'mr_closed_form': mr_ok}


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    base = _experiment_config(args, settings, points=args.points)

    async def battery():
        theorem = await run_theorem_sweep(base.with_overrides(model='random_unitary'))
        channels = await run_quantum_channel_sweep(base.with_overrides(model='quantum_channels'))
        figures = {}
        for noisy in ('theta', 'alpha'):
            cfg = base.with_overrides(model='stirap', noisy=noisy, points=min(base.points, 200))
            records = await run_figure1(cfg)
            figures[noisy] = all(r.q1 <= r.p1 + cfg.tolerance for r in records)
        return theorem, channels, figures

    theorem, channels, figures = asyncio.run(battery())
    checks = {
        'theorem_sweep': theorem.passed,
        'quantum_channel_sweep': channels.passed,
        'cooling_witness': channels.cooling_witnesses > 0,
        'figure1_theta': figures['theta'],
        'figure1_alpha': figures['alpha'],
    }
    checks.update(_closed_form_checks(base.seed.for_trial(base.points), args.draws))
    passed = all(checks.values())
    _emit({'checks': checks, 'worst_margin': encode_float(theorem.worst_margin),
           'trials': theorem.trials, 'pass': passed})
    return EXIT_PASS if passed else EXIT_NEGATIVE


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='главное зерно (по умолчанию COOLLAB_SEED)')
    common.add_argument('--workers', type=int, default=None, help='число рабочих потоков')
    common.add_argument('--log-level', choices=LOG_LEVELS, default=None, help='уровень логирования в stderr')
    common.add_argument('--config', default=None, help='JSON-файл ExperimentConfig')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog='coollab', description='Проверка невозможности охлаждения '
                                                                 'случайно-унитарными каналами')
    parser.add_argument('--version', action='version', version=f'coollab {__version__}')
    verbs = parser.add_subparsers(dest='verb', required=True)

    p = verbs.add_parser('certify', parents=[common], help='сертификат канала')
    p.add_argument('channel', help='JSON канала или конфигурации модели')
    p.add_argument('--tol', type=float, default=TOLERANCES.cptp, help='допуск полноты Крауса')
    p.set_defaults(handler=cmd_certify)

    p = verbs.add_parser('evolve', parents=[common], help='эволюция состояния и проверка Q_1 <= P_1')
    p.add_argument('channel')
    p.add_argument('state')
    p.add_argument('--out', default=None, help='файл конечного состояния')
    p.set_defaults(handler=cmd_evolve)

    p = verbs.add_parser('figure1', parents=[common], help='рассеяние (P_1, Q_1) для STIRAP')
    p.add_argument('--points', type=int, default=None)
    p.add_argument('--realizations', type=int, default=None)
    p.add_argument('--noisy', choices=['theta', 'alpha'], default=None)
    p.add_argument('--out', default=None)
    p.add_argument('--format', choices=REPORT_FORMATS, default='csv')
    p.set_defaults(handler=cmd_figure1)

    p = verbs.add_parser('sweep', parents=[common], help='серия испытаний теоремы')
    p.add_argument('--model', choices=[m for m in EXPERIMENT_MODELS if m != 'stirap'], default=None)
    p.add_argument('--points', type=int, default=None)
    p.add_argument('--out', default=None)
    p.add_argument('--format', choices=REPORT_FORMATS, default='json')
    p.set_defaults(handler=cmd_sweep)

    p = verbs.add_parser('temperature', parents=[common], help='эффективная температура двухуровневой системы')
    p.add_argument('--omega', type=float, required=True)
    p.add_argument('--p1', type=float, required=True)
    p.add_argument('--q1', type=float, default=None, help='конечная заселённость для проверки T_f >= T_i')
    p.add_argument('--omega-f', type=float, default=None, help='конечная щель, по умолчанию равна --omega')
    p.add_argument('--k-b', type=float, default=1.0)
    p.set_defaults(handler=cmd_temperature)

    p = verbs.add_parser('optimize', parents=[common], help='максимум Y по весам λ')
    p.add_argument('--thetas', required=True, help='углы через запятую')
    p.add_argument('--method', choices=METHODS, default='grid')
    p.add_argument('--budget', type=int, default=1000)
    p.add_argument('--p1', type=float, default=None, help='максимизировать Q_1 вместо Y')
    p.set_defaults(handler=cmd_optimize)

    p = verbs.add_parser('verify', parents=[common], help='полный набор проверок')
    p.add_argument('--points', type=int, default=1000)
    p.add_argument('--draws', type=int, default=100, help='число проверок замкнутых формул')
    p.set_defaults(handler=cmd_verify)
    return parser


def _configure_logging(level: Optional[str], settings: Settings):
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level) if level else settings.log_level,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s', force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors and 0 on --help
        return EXIT_PASS if e.code == 0 else EXIT_ERROR
    handler: Callable[[argparse.Namespace, Settings], int] = args.handler
    try:
        settings = Settings.from_env()
        _configure_logging(args.log_level, settings)
        if args.workers is not None and args.workers < 1:
            raise ConfigError(f'--workers должно быть >= 1, получено {args.workers}')
        return handler(args, settings)
    except CoolLabError as e:
        logger.error('%s', e)
    except OSError as e:
        logger.error('I/O error: %s', e)
    except Exception:
        logger.exception('Unexpected error')
    return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
