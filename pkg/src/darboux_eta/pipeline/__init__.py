"""Construction fixtures, job configurations and the blueprint pipeline."""

from .blueprint import (
    BlueprintInput,
    Check,
    PipelineReport,
    StageFailure,
    StageResult,
    contact_factor,
    contact_matrix_check,
    forms_proportional,
    implicitize,
    matrix_matches,
    run_blueprint,
    translate_form,
)
from .config import ConfigError, JobConfig, load_config, parse_config
from .fixtures import ConstructionFixture, FixtureError, Substitution, fixture_ids, load_fixture

__all__ = [
    "BlueprintInput",
    "Check",
    "ConfigError",
    "ConstructionFixture",
    "FixtureError",
    "JobConfig",
    "PipelineReport",
    "StageFailure",
    "StageResult",
    "Substitution",
    "contact_factor",
    "contact_matrix_check",
    "fixture_ids",
    "forms_proportional",
    "implicitize",
    "load_config",
    "load_fixture",
    "matrix_matches",
    "parse_config",
    "run_blueprint",
    "translate_form",
]
