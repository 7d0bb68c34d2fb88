from bin_design.envs.bin_chain_env import BinChainEnv
