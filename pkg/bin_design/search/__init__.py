from bin_design.search.placement import CornerCountMap, Placement, item_orientations, is_admissible
from bin_design.search.marginal_search import (MarginalSet, SearchBudget, SearchStats, fits, marginal_search,
                                               pareto_filter, sort_items)
from bin_design.search.batch import (BatchResult, format_marginal_dump, format_marginal_line, parse_marginal_line,
                                     search_marginal_sets)
