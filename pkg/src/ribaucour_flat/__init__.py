"""Flat surfaces in S^3 obtained from the flat torus by Ribaucour transformations.

``core`` holds the closed forms, ``verify`` the numerical oracles, ``mesh``
the sampling/tessellation/export pipeline and ``cli`` the command line.
"""
from .core import (
    EvalRecord,
    Family,
    GeneratorConfig,
    ParamPoint,
    ScalarBundle,
    TorusFrame,
    TorusParams,
    congruence_shift_check,
    eval_generators,
    eval_scalars,
    evaluate,
    metric_coefficients,
    principal_curvatures,
    rotation_rtp,
    singularity_margin,
    sphere_congruence_point,
    torus_frame,
    torus_point,
    transformed_normal,
    transformed_point,
    validate_config,
)
from .grids import GridSpec
from .mesh import ProjectionSpec, SurfaceMesh, build_mesh, export_json, export_obj, project_stereographic

__version__ = "0.1.0"
