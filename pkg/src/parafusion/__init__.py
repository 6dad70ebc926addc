"""Exact computations for parafermion algebras K(g, k): root and lattice data,
quantum dimensions, module classification and fusion rules."""

from .errors import ConsistencyError, InputError
from .liealg import RootSystem, SimpleType, WeightVec, build_root_system, root_system
from .parafermion import ParaLabel, classify, fusion_para

__all__ = ["ConsistencyError", "InputError", "ParaLabel", "RootSystem", "SimpleType",
           "WeightVec", "build_root_system", "classify", "fusion_para", "root_system"]
