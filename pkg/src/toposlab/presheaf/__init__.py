"""The topos kernel: presheaves, maps, limits, exponentials and Omega."""
from .core import (Presheaf, PresheafError, PresheafMap, SearchTooLarge, compose, compose_all, constant,
                   from_initial, global_element, identity, initial, map_from_function, terminal, to_terminal,
                   yoneda, yoneda_element, yoneda_map)
from .enumerate import enumerate_presheaves, morphism_generators
from .exponential import Exponential, exponential
from .hom import find_iso, hom_count, hom_enumerate, hom_with_flags, is_isomorphic, iter_homs, set_max_enum
from .io import ParseError, load_presheaf, presheaf_from_json
from .limits import (Cone, Diagram, coequalizer, colimit, copairing, coproduct, coproduct_many, diagonal,
                     diagonal_subobject, equalizer, kernel_pair, limit, pairing, product, product_many,
                     product_map, pullback, quotient)
from .omega import OmegaData, classify, negate_sieve, omega, pull_sieve, pullback_top, sieves
from .subobject import Subobject, corestrict, image, preimage
