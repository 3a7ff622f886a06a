"""Matrix realization: projections, contexts, spectra, states."""

from .contexts import Context, ContextPoset, context_generate, context_poset, daseinise, relative_rickart_check
from .projections import (
    DEFAULT_TOL,
    MatProjection,
    Tolerances,
    meet_by_iteration,
    ortho_sup,
    proj_join,
    proj_meet,
    proj_order,
    proj_perp,
    rickart_projections,
)
from .spectrum import SpectralOpen, external_spectrum, spectrum_basis
from .states import DensityState, kripke_valuation, measure_valuation_bridge, pairing

__all__ = [
    "Context", "ContextPoset", "context_generate", "context_poset", "daseinise",
    "relative_rickart_check", "DEFAULT_TOL", "MatProjection", "Tolerances",
    "meet_by_iteration", "ortho_sup", "proj_join", "proj_meet", "proj_order",
    "proj_perp", "rickart_projections", "SpectralOpen", "external_spectrum",
    "spectrum_basis", "DensityState", "kripke_valuation",
    "measure_valuation_bridge", "pairing",
]
