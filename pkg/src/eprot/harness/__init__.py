from eprot.stats import (
    ChiSquareResult,
    FrequencyResult,
    chi_square,
    chi_square_uniform,
    frequency_test,
    uniformity_test,
)
from eprot.harness.transcript import (
    SchemaError,
    Transcript,
    deserialize_transcript,
    serialize_transcript,
)
from eprot.harness.runner import RunConfig, StatsReport, run_trials

__all__ = [
    "ChiSquareResult",
    "FrequencyResult",
    "RunConfig",
    "SchemaError",
    "StatsReport",
    "Transcript",
    "chi_square",
    "chi_square_uniform",
    "deserialize_transcript",
    "frequency_test",
    "run_trials",
    "serialize_transcript",
    "uniformity_test",
]
