"""diffrace: closed diffractive orbits, wave-trace singularities, resonance strips.

Library surface, one module per concern:

- :mod:`diffrace.geometry` -- scene validation and angle primitives
- :mod:`diffrace.orbits` -- closed-orbit enumeration and canonical forms
- :mod:`diffrace.coefficients` -- diffraction factors, windings, holonomy
- :mod:`diffrace.tracesynth` -- singularity amplitudes and trace synthesis
- :mod:`diffrace.resonances` -- strip thresholds and counting bounds
- :mod:`diffrace.oracles` -- independent slow verifiers used by the tests
- :mod:`diffrace.cli` -- the ``diffrace`` command

The hot quadrature kernel is compiled when the extension is available and
falls back to numpy otherwise; ``diffrace.kernels.BACKEND`` names the one
in use.
"""

from . import kernels
from .coefficients import (
    OrbitCoefficient,
    WindingNumber,
    diffraction_coefficient,
    diffraction_coefficient_angles,
    fractional_winding,
    gauge_phase_increment,
    holonomy_factor,
    orbit_coefficient,
)
from .geometry import (
    SolenoidConfig,
    diffraction_angle,
    free_reference_params,
    subtended_angle,
    validate_config,
    wrap_angle,
)
from .orbits import (
    ClosedOrbit,
    EnumerationDiagnostics,
    canonical_rotation,
    enumerate_orbits,
    orbit_geometry,
    reverse_orbit,
)
from .resonances import (
    BestStripReport,
    CountingBound,
    ResonanceStrip,
    best_strip,
    bouncing_strip,
    counting_lower_bound,
    strip_threshold,
)
from .tracesynth import (
    SingularityEntry,
    SmoothingWindow,
    TraceSamples,
    leading_amplitude,
    profile_integral,
    singularity_table,
    synthesize_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BestStripReport",
    "ClosedOrbit",
    "CountingBound",
    "EnumerationDiagnostics",
    "OrbitCoefficient",
    "ResonanceStrip",
    "SingularityEntry",
    "SmoothingWindow",
    "SolenoidConfig",
    "TraceSamples",
    "WindingNumber",
    "best_strip",
    "bouncing_strip",
    "canonical_rotation",
    "counting_lower_bound",
    "diffraction_angle",
    "diffraction_coefficient",
    "diffraction_coefficient_angles",
    "enumerate_orbits",
    "fractional_winding",
    "free_reference_params",
    "gauge_phase_increment",
    "holonomy_factor",
    "kernels",
    "leading_amplitude",
    "orbit_coefficient",
    "orbit_geometry",
    "profile_integral",
    "reverse_orbit",
    "singularity_table",
    "strip_threshold",
    "subtended_angle",
    "synthesize_trace",
    "validate_config",
    "wrap_angle",
]
