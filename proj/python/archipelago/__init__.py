"""Separability thresholds and entanglement-region probabilities."""

import json as _json

from ._core import (
    ArchipelagoError,
    ArityError,
    DegenerateRegion,
    DomainError,
    ModelSpec,
    ShapeError,
    UnknownName,
    UnsupportedDimension,
    UnsupportedModel,
    build_state,
    closed_form,
    closed_form_names,
    derive_thresholds,
    dilog,
    export_cloud,
    find_model,
    grid_probabilities,
    is_physical,
    is_ppt,
    is_psd,
    kron,
    leading_principal_minors,
    mc_probabilities,
    model_names,
    partial_transpose,
    region_names,
    render_2d,
    su_generators,
)


def verify(samples=100000, seed=1, models=(), resolution=1000):
    """Verification report as a dict with 'records' and 'summary'."""
    return _json.loads(_core_verify(samples, seed, list(models), resolution))


from ._core import verify_json as _core_verify  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_")]
