from .elements import Affine, Perm
from .group import (
    Group,
    GroupTooLarge,
    NotAPGroup,
    characteristic_subgroups,
    group_closure,
    is_maximal_class,
    order_statistics,
)
from .iso import InconclusiveIsomorphism, IsoResult, are_isomorphic
from .presentation import Presentation, load_presentation, parse_presentation, todd_coxeter
from .presets import PRESET_NAMES, identify, preset_group
