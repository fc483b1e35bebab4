"""vortexnet: randomized eigendecomposition of vortical interaction networks.

A vorticity field on a uniform grid induces a dense symmetric network
whose edge weights follow the Biot-Savart interaction between vortical
elements. This package serves that adjacency matrix column-by-column
without ever storing it, approximates its dominant eigenpairs by column
sampling (sketched SVD and the Nystrom method, under uniform or Halton
draws), benchmarks them against deterministic power iteration, and runs
downstream centrality and spectral-clustering analysis.
"""

__version__ = "0.1.0"

from .analysis import (
    ClusterAssignment,
    angle_error,
    eigenvector_centrality,
    kmeans_cluster,
    kmeans_points,
    label_agreement,
    sign_partition,
)
from .bench import (
    BenchmarkRecord,
    SummaryRow,
    run_sweep,
    sample_count,
    summarize,
    write_records_csv,
    write_summary_csv,
)
from .eigensolvers import (
    EigenApproximation,
    PhaseTimes,
    nystrom,
    power_dominant,
    sketch_svd,
)
from .errors import (
    DegenerateSampleError,
    DimensionMismatchError,
    FieldFormatError,
    MemoryCapError,
    NonFiniteValueError,
    PowerIterationError,
    VortexNetError,
)
from .field import (
    GridSpec,
    VorticityField,
    gaussian_vortex_field,
    load_field,
    save_field,
    synth_vortex_field,
    synth_wake_field,
)
from .graph import (
    AdjacencyOperator,
    DenseOperator,
    format_memory,
    memory_estimate,
    memory_estimate_gib,
)
from .render import render_labels, render_values
from .sampling import (
    SampleIndexSet,
    halton_points,
    load_index_set,
    radical_inverse,
    sample_halton,
    sample_uniform,
    save_index_set,
)

__all__ = [
    "AdjacencyOperator",
    "BenchmarkRecord",
    "ClusterAssignment",
    "DegenerateSampleError",
    "DenseOperator",
    "DimensionMismatchError",
    "EigenApproximation",
    "FieldFormatError",
    "GridSpec",
    "MemoryCapError",
    "NonFiniteValueError",
    "PhaseTimes",
    "PowerIterationError",
    "SampleIndexSet",
    "SummaryRow",
    "VortexNetError",
    "VorticityField",
    "angle_error",
    "eigenvector_centrality",
    "format_memory",
    "gaussian_vortex_field",
    "halton_points",
    "kmeans_cluster",
    "kmeans_points",
    "label_agreement",
    "load_field",
    "load_index_set",
    "memory_estimate",
    "memory_estimate_gib",
    "nystrom",
    "power_dominant",
    "radical_inverse",
    "render_labels",
    "render_values",
    "run_sweep",
    "sample_count",
    "sample_halton",
    "sample_uniform",
    "save_field",
    "save_index_set",
    "sign_partition",
    "sketch_svd",
    "summarize",
    "synth_vortex_field",
    "synth_wake_field",
    "write_records_csv",
    "write_summary_csv",
]
