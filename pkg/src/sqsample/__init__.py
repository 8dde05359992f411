"""Close-to-uniform point clouds with normals from superellipsoids and superparaboloids."""

from .deform import apply_pipeline, invert_pipeline
from .metrics import cloud_distance, nn_spacing_stats, run_bench, surface_residual
from .normals import attach_normals
from .params import (
    InvalidParams,
    Kind,
    SamplingConfig,
    SuperquadricParams,
    inside_outside,
    inside_outside_se,
    inside_outside_sp,
    validate,
)
from .surface import SampledSurface, naive_sample, sample_surface

__all__ = [
    "InvalidParams",
    "Kind",
    "SampledSurface",
    "SamplingConfig",
    "SuperquadricParams",
    "apply_pipeline",
    "cloud_distance",
    "generate",
    "inside_outside",
    "inside_outside_se",
    "inside_outside_sp",
    "invert_pipeline",
    "naive_sample",
    "nn_spacing_stats",
    "run_bench",
    "sample_surface",
    "surface_residual",
    "validate",
]


def generate(params: SuperquadricParams, config: SamplingConfig | None = None,
             naive: tuple[int, int] | None = None) -> SampledSurface:
    """Validate, sample, attach normals, then deform and pose.

    ``naive=(n_eta, n_omega)`` swaps the adaptive sampler for the uniform
    parameter grid.
    """
    validate(params)
    if naive is not None:
        surface = naive_sample(params, *naive)
    else:
        surface = sample_surface(params, config or SamplingConfig())
    return apply_pipeline(attach_normals(surface))
