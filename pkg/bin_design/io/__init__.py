from bin_design.io.orders import IngestResult, format_order_line, ingest, parse_order_line, write_orders
from bin_design.io.generator import GeneratorProfile, generate
from bin_design.io.config import RunConfig
from bin_design.io.report import Report, chain_to_dict
from bin_design.io.pipeline import (curve_command, format_curve, gls_command, marginals_command, prepare,
                                    rescale_chain, solve_command)
