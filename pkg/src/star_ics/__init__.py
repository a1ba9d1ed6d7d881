"""Star graph 1-ics trees, threads and weight distributions."""

from .distributions import (
    antipode_count,
    class_weight_distribution,
    diameter,
    eset_distribution,
    vertex_weight_distribution,
)
from .gamma import build_gamma, thread_target
from .lambda_tree import (
    class_size,
    class_size_closed,
    generate_pruned,
    generate_unpruned,
    node_attrs,
    path_to_root,
    prune,
    table_T,
)
from .perm import IcsKey, apply_star_generator, ics_key, weight

__version__ = "0.1.0"
