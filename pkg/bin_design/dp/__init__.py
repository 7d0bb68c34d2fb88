from bin_design.dp.envelope import (EnvelopeHit, EnvelopeSegment, build_hull, lower_envelope, query_envelope,
                                    sweep_hull)
from bin_design.dp.schedule import AxisBlock, UpdateBlock, axis_schedule, dc_schedule, group_axis_blocks
from bin_design.dp.solver import (FastSolver, NaiveSolver, SolverStats, StagedSolver, StageTable, extract_solution,
                                  refine_strict, solve_fast, solve_naive)
