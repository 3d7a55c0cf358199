from .base import ExperimentsApi
from .config import EXPERIMENT_MODELS, ExperimentConfig
from .optimize import OptimizerResult, maximize_q1, maximize_y, project_on_simplex, simplex_lattice
from .report import (DimSummary, ScatterRecord, SweepReport, emit_report, margin_by_bin, read_report,
                     render_report, report_to_payload)
from .sweeps import (TrialOutcome, channel_trial, figure1_trial, run_figure1, run_quantum_channel_sweep,
                     run_sweep, run_theorem_sweep, theorem_trial)

__all__ = (
    'ExperimentsApi', 'ExperimentConfig', 'EXPERIMENT_MODELS',
    'OptimizerResult', 'maximize_y', 'maximize_q1', 'project_on_simplex', 'simplex_lattice',
    'ScatterRecord', 'SweepReport', 'DimSummary', 'emit_report', 'render_report', 'read_report',
    'report_to_payload', 'margin_by_bin',
    'TrialOutcome', 'figure1_trial', 'theorem_trial', 'channel_trial',
    'run_figure1', 'run_theorem_sweep', 'run_quantum_channel_sweep', 'run_sweep',
)
