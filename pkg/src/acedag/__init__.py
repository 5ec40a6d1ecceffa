"""Index-set enumeration, dependence classification, recursive product
graphs and evaluators for symmetry-invariant polynomial bases."""

from acedag.dependency import (
    ClassCounts,
    class_counts,
    class_counts_by_degree,
    invariant_splits,
    is_dependent,
    is_dependent_bruteforce,
    proper_splits,
)
from acedag.evaluator import (
    InvarianceReport,
    evaluate_graph,
    evaluate_model,
    invariance_check,
    invert_particles,
    naive_eval,
    one_particle,
    pool,
    random_particles,
    read_coefficients,
    read_particles,
    rotate_particles,
    write_coefficients,
    write_particles,
)
from acedag.graphbuild import (
    EvalGraph,
    GraphFormatError,
    GraphNode,
    GraphStats,
    UnsupportedVersionError,
    build_graph,
    deserialize_graph,
    graph_stats,
    read_graph,
    seed_graph,
    serialize_graph,
    write_graph,
)
from acedag.indexsets import (
    DegreeSpec,
    Group,
    canonical,
    element_degree,
    enumerate_slice,
    enumerate_tuples,
    format_elements,
    iter_tuples,
    one_particle_indices,
    parse_elements,
    satisfies_constraints,
    tuple_degree,
)
from acedag.partitions import (
    catalan,
    count_partitions,
    partition_count_bounds,
    slice_identity_check,
)

__version__ = "1.0.0"
