from bin_design.counting.count_table import (CountTable, DiffTable, build_count_table, build_diff_table, count_direct,
                                             diff_slice, iter_count_slices, marginal_coordinates, prefix_sum)
