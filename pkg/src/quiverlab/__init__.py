"""quiverlab: a computer-algebra engine for quivers with potentials.

Core surface:

* :mod:`quiverlab.quivers` -- weighted quivers, FZ mutation, canonical forms
* :mod:`quiverlab.potentials` -- potentials, cyclic derivatives, QP mutation
* :mod:`quiverlab.jacobian` -- truncated Jacobian algebras, Cartan data
* :mod:`quiverlab.polytree` -- floriated / polygon-tree quivers
* :mod:`quiverlab.mutclass` -- mutation classes and representation type
* :mod:`quiverlab.singularity` -- the invariant N_{m-3N+d_Q} and the replay
  harnesses behind it
* :mod:`quiverlab.service` -- the HTTP session service
"""

from .quivers import Quiver, canonical_form, fz_mutate, validate
from .potentials import QP, cyclic_derivative, premutate, qp_mutate, reduce_qp
from .jacobian import (
    BasisReport,
    is_schurian,
    jacobian_basis,
    negative_mutation_defined,
    positive_mutation_defined,
    socle_condition,
    vanishing_arrowcount,
)
from .polytree import (
    FloriatedSpec,
    PolygonTreeSpec,
    build_canonical_ct,
    build_floriated,
    build_polygon_tree,
    chordless_cycles,
    d_invariant,
    decompose,
    is_cyclically_oriented,
    is_simple,
    primitive_potential,
)
from .mutclass import (
    ClassReport,
    TypeTag,
    classify_mutation_type,
    explore_class,
    has_E6_class_subquiver,
    representation_type,
)
from .singularity import (
    NakayamaReport,
    ReplayTrace,
    SingularityDescriptor,
    drop_vertex,
    nakayama_model,
    one_point_coextend,
    one_point_extend,
    replay_reduction,
    replay_theorem_chain,
    singularity_invariant,
)

__version__ = "0.1.0"
