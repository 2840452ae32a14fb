"""Exact Gauss sums, epsilon factors and gamma factors for GL_n over finite fields."""

from .ambient_field import AmbientField, FqElem, build_ambient
from .characters import AdditiveChar, FOrbit, FSet, GammaChar, f_set, frobenius_orbit, orbits_of_degree
from .cyclotomic import Cyclotomic, QHalfScalar, qhalf_eq
from .epsilon import (
    degenerate_wedge2_report,
    epsilon0,
    epsilon0_direct_sum,
    epsilon0_generic,
    epsilon0_tensor,
    epsilon0_tensor_cuspidal,
    epsilon0_wedge2,
    epsilon0_wedge2_cuspidal,
    nien_zhang_rhs,
    rs_gamma_via_epsilon,
)
from .gauss import gauss_sum, gauss_sum_fset, gauss_sum_orbit
from .glnq import bessel, class_data, coset_reps, cuspidal_character, enumerate_gl, rs_gamma_bessel
from .multiset import (
    CharMultiset,
    Partition,
    PartitionFn,
    cor27_applies,
    ms_direct_sum,
    ms_sym2,
    ms_tensor,
    ms_wedge2,
    restriction_multiset,
    s_exponent,
)

__all__ = [name for name in dir() if not name.startswith("_")]
