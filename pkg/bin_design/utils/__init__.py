from bin_design.utils.box_dims import BoxDims, Bounds, Order, surface_cost, dominates, is_expanded_of, is_shrunken_of
from bin_design.utils.bin_chain import BinChain, ChainValidation, ChainViolation, validate_chain, INFEASIBLE_COST
from bin_design.utils import errors
