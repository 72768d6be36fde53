"""Exact L-reductions, closures and lattice-free sets for rational polyhedra."""

from .closure import (
    CutBounds,
    CutFamily,
    IterationTrace,
    RemainderMatrix,
    StopReason,
    closure,
    dominates,
    iterate_closure,
    minimal_antichain,
    prune_class,
    remainder_matrix,
    scaled_integrality_check,
)
from .errors import ClosureLabError, PreconditionError, ValidationError
from .lattice import (
    MixedIntegerSpace,
    Split,
    UnimodularMap,
    apply_unimodular,
    chvatal_closure_bounded,
    chvatal_cut,
    enumerate_splits,
    integer_points,
    is_lattice_free,
    is_maximal_lattice_free,
    make_split,
    mixed_integer_hull,
)
from .numeric import INF
from .polyhedra import (
    Polyhedron,
    gauge,
    hausdorff_distance,
    max_facet_width,
    polar,
    recession_cone,
    skeleton_1,
    support,
    volume,
    width,
)
from .reduction import (
    ReducerClass,
    classify_reducer,
    nonclosed_witness,
    reduce,
    reduce_oracle_2d,
    reduction_contains,
)

__all__ = sorted(
    name for name, obj in globals().items() if not name.startswith("_") and type(obj).__name__ != "module"
)
