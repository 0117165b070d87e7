"""Loop space decompositions of highly connected Poincare duality complexes."""

from types import ModuleType as _ModuleType

from .algebra import FieldSpec, GradedGroup, QQ, TorsionSummand, field_reduce, snf
from .catalog import Catalog, build, resolve
from .constructors import (
    DuanSpec,
    GyrationSpec,
    barden,
    connected_sum,
    connected_sum_all,
    duan,
    gyration,
    product,
    sphere_bundle,
)
from .decompose import (
    compute_AB,
    cross_check,
    decompose,
    loop_series_decomposition,
    loop_series_one_relator,
    one_relator,
)
from .errors import HypothesisError, InputError, PDLoopError
from .localize import full_plan, retraction_plan, retraction_primes, skeleton_class_plan, zk_plan
from .momentangle import (
    SimplicialComplex,
    sphere_check,
    subcomplex_homology,
    zk_decompose,
    zk_skeleton,
)
from .pdcomplex import Flags, PDComplex, SkeletonClass, Tri, bottom_degree, class_a_evidence, validate
from .series import IntPoly, RationalFn, TruncatedSeries
from .spacexpr import normalize, parse, pretty, render

__all__ = [name for name, obj in list(globals().items())
           if not name.startswith("_") and not isinstance(obj, _ModuleType)]
