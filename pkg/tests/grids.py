"""Shared parameter grids for the distribution tests."""

# (r, m, alphas, gamma, beta, n); r <= 3, n <= 4
GHG_GRID = [
    (1, 2, ("0.5",), 0, 0, 0),
    (1, 2, ("0.5",), 0, 0, 1),
    (1, 2, ("0.3",), 0, 1, 2),
    (1, 2, ("0.6",), "0.5", 1, 4),
    (2, 2, ("0.3", "0.5"), 1, 2, 3),
    (2, 2, ("0.6", "0.4"), 0, 3, 2),
    (2, 2, ("0.2", "0.6"), 2, 0, 1),
    (2, 4, ("0.4", "0.3"), "1.5", "0.5", 4),
    (3, 2, ("0.3", "0.5", "0.6"), 0, 0, 0),
    (3, 2, ("0.2", "0.3", "0.4"), 1, 1, 2),
    (3, 3, ("0.5", "0.4", "0.3"), "0.5", 2, 3),
    (3, 2, ("0.3", "0.3", "0.5"), 2, "0.5", 4),
]


def ghg_params(row, precision=256):
    from hgenocchi.ghg import GHGParams

    r, m, alphas, gamma, beta, n = row
    return GHGParams(r=r, m=m, alphas=alphas, gamma=gamma, beta=beta, n=n, precision=precision)
