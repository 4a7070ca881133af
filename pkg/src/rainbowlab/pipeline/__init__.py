from rainbowlab.pipeline.run import (
    PipelineConfig,
    PipelineResult,
    degree_hypothesis_check,
    lifted_degree_check,
    run_pipeline,
)

__all__ = [
    "PipelineConfig",
    "PipelineResult",
    "degree_hypothesis_check",
    "lifted_degree_check",
    "run_pipeline",
]
