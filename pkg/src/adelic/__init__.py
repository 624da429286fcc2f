"""Prime splitting in number fields, adelic elementary invariants, and
generalized-product evaluation over finite families.

The package is organized as four layers:

* ``exactpoly`` -- exact integer and modular polynomial arithmetic,
* ``splitting`` -- prime decomposition in a number field,
* ``invariants`` -- splitting spectra, signatures, zeta data, and the
  arithmetic-equivalence / adele-isomorphism verdict pipeline,
* ``fv`` -- evaluation of generalized products over finite index sets.

The ``adelic`` command-line driver exposes all of it; see the README.
"""

from .exactpoly import (
    IntPoly,
    ModPoly,
    parse_int_poly,
    gcd_modp,
    squarefree_decomposition,
    ddf,
    cz_factor,
    factor_modp,
    resultant,
    discriminant,
    sturm_real_roots,
    irreducible_modp,
)
from .splitting import (
    NumberField,
    PrimeDecomposition,
    SplittingType,
    good_prime_test,
    kummer_decompose,
    dedekind_index_test,
    newton_polygon,
    ore_local_decompose,
    decompose,
    splitting_type,
)
from .invariants import (
    SplittingSpectrum,
    Signature,
    ArithEquivVerdict,
    AdeleIsoVerdict,
    spectrum,
    signature,
    degree_via_split_prime,
    aq_distinguisher,
    zeta_local_factor,
    zeta_partial_coefficients,
    arithmetic_equiv,
    keating_bound,
    residue_ring_construct,
    adele_iso_verdict,
)
from .finring import finite_ring_isomorphic

__all__ = [
    "IntPoly",
    "ModPoly",
    "parse_int_poly",
    "gcd_modp",
    "squarefree_decomposition",
    "ddf",
    "cz_factor",
    "factor_modp",
    "resultant",
    "discriminant",
    "sturm_real_roots",
    "irreducible_modp",
    "NumberField",
    "PrimeDecomposition",
    "SplittingType",
    "good_prime_test",
    "kummer_decompose",
    "dedekind_index_test",
    "newton_polygon",
    "ore_local_decompose",
    "decompose",
    "splitting_type",
    "SplittingSpectrum",
    "Signature",
    "ArithEquivVerdict",
    "AdeleIsoVerdict",
    "spectrum",
    "signature",
    "degree_via_split_prime",
    "aq_distinguisher",
    "zeta_local_factor",
    "zeta_partial_coefficients",
    "arithmetic_equiv",
    "keating_bound",
    "residue_ring_construct",
    "finite_ring_isomorphic",
    "adele_iso_verdict",
]

__version__ = "0.1.0"
