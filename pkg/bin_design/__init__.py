from gym.envs.registration import register

from bin_design import baseline, counting, dp, search, utils  # noqa: F401

__version__ = '0.0.1'

register(
    id='bin-chain-v0',
    entry_point='bin_design.envs:BinChainEnv',
)
