import matplotlib as mpl
mpl.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402


def plot_cost_curve(rows, path):
    """
    Total cost against the number of bin types.

    Args:
        rows (list): (K, BinChain) pairs from curve_command
        path (str): image file to write
    """
    ks = [k for k, _ in rows]
    costs = [chain.cost_m2 for _, chain in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, costs, marker='o')
    ax.set_xlabel('Number of bin types K')
    ax.set_ylabel('Total cost (m$^2$)')
    ax.set_xticks(ks)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_type_shares(chain, path):
    """Percentage of orders packed in each bin type, labelled by dimensions."""
    labels = [f'{t.l}x{t.w}x{t.h}' for t in chain.types]
    fig, ax = plt.subplots(figsize=(max(6, 0.8 * len(labels)), 4))
    bars = ax.bar(range(1, chain.k + 1), chain.percentages())
    for bar, dup in zip(bars, chain.collapsed):
        if dup:
            bar.set_hatch('//')
    ax.set_xticks(range(1, chain.k + 1))
    ax.set_xticklabels(labels, rotation=30, ha='right')
    ax.set_xlabel('Bin type')
    ax.set_ylabel('Orders (%)')
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
