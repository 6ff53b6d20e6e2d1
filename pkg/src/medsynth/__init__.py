"""Generate synthetic medical tables with text-generation models and audit them.

The stages, in pipeline order: :mod:`~medsynth.dataprofile`,
:mod:`~medsynth.promptforge`, :mod:`~medsynth.genclient`,
:mod:`~medsynth.recordgate`, then the evaluators :mod:`~medsynth.fidelity`,
:mod:`~medsynth.privacyaudit` and :mod:`~medsynth.mlutility`, with
:mod:`~medsynth.scoreboard` aggregating and :mod:`~medsynth.pipeline`
driving the whole chain.
"""

__version__ = "0.1.0"

from .dataprofile import DataProfile, DataProfiler, build_profile
from .exceptions import (BackendError, ConfigError, DegenerateLabelError, EmptyGenerationError,
                         FormatError, InfeasibleRulesError, InsufficientDataError, MedSynthError,
                         SchemaError, TemplateError, UndefinedMetricError)
from .recordgate import RecordGate
from .rules import load_rules
from .table import ColumnSchema, DatasetTable, load_csv, load_schema

__all__ = [
    "__version__", "DataProfile", "DataProfiler", "build_profile", "RecordGate", "load_rules",
    "ColumnSchema", "DatasetTable", "load_csv", "load_schema",
    "BackendError", "ConfigError", "DegenerateLabelError", "EmptyGenerationError", "FormatError",
    "InfeasibleRulesError", "InsufficientDataError", "MedSynthError", "SchemaError",
    "TemplateError", "UndefinedMetricError",
]
