from bin_design.baseline.evaluator import ChainEvaluation, ChainEvaluator, evaluate_chain
from bin_design.baseline.initial import quantile_init
from bin_design.baseline.gls import GlsParams, GlsResult, GlsStep, gls_solve
from bin_design.baseline.oracles import brute_force_design, exhaustive_pack_oracle, oracle_marginal_set
