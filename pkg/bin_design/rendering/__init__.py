from bin_design.rendering.plots import plot_cost_curve, plot_type_shares
