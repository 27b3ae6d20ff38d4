"""Inverse systems of finite group actions and the orbit/limit comparison map."""

__version__ = "0.1.0"

from .algebra import (
    FiniteGroup,
    GroupHom,
    GSpace,
    OrbitPartition,
    is_free,
    orbits,
    transporter,
    validate_action,
    validate_group,
    validate_hom,
)
from .commutation import (
    certify_hypotheses,
    orbit_tower,
    psi,
    stabilized_commutation_check,
    unique_transporter_check,
    verify,
    verify_injectivity,
    verify_surjectivity,
)
from .limits import (
    Thread,
    act_on_thread,
    enumerate_threads,
    eventual_image,
    find_thread,
    limit_group_inverse,
    limit_group_multiply,
    mediating_map,
    orbit_equivalent,
)
from .search import SearchParams, random_constant_spec, random_tower, search
from .systems import (
    ConstantTowerSpec,
    DirectedIndex,
    EquivariantTower,
    builtin_negation,
    builtin_solenoid,
    explicit_tower,
    materialize,
    validate_constant_spec,
    validate_equivariant_tower,
    validate_group_tower,
    validate_index,
    validate_space_tower,
)
