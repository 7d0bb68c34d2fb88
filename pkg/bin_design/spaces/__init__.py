from bin_design.spaces.chain_space import MonotoneChainSpace
