"""
Script for watching BinChainEnv.

A random agent proposes moves on a small synthetic instance; every accepted move is printed.
"""

import gym
import bin_design  # noqa: F401
from bin_design.io import generate
from bin_design.search import search_marginal_sets
from bin_design.utils import Bounds

bounds = Bounds(20, 15, 12, 4)
orders = generate(200, seed=0)
orders = [o for o in orders if o.fits_bounds(bounds)]
marginal_sets = search_marginal_sets(orders, bounds).marginal_sets

env = gym.make('bin-chain-v0', marginal_sets=marginal_sets, bounds=bounds, non_improvement_threshold=300)
episode_count = 1

for i in range(episode_count):
    ob, info = env.reset(seed=i)
    env.action_space.seed(i)
    print(env.render())
    terminated = truncated = False
    while not (terminated or truncated):
        ob, reward, terminated, truncated, info = env.step(env.action_space.sample())
        if info['accepted']:
            print(env.render())
    print(f'Episode {i} finished after {info["iteration"]} proposals at cost {info["cost"]}')
env.close()
