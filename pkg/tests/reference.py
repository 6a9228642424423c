"""Frozen reference values used across the suite."""

from fractions import Fraction

# Published approximation ratios, rows beta and columns beta_minus (4 decimals, truncated).
GRID_DECIMALS = {
    (2, 1): "0.5",
    (3, 1): "0.3333", (3, 2): "0.5",
    (4, 1): "0.25", (4, 2): "0.4", (4, 3): "0.625",
    (5, 1): "0.2", (5, 2): "0.3333", (5, 3): "0.4782", (5, 4): "0.6249",
    (6, 1): "0.1666", (6, 2): "0.2857", (6, 3): "0.4117", (6, 4): "0.5", (6, 5): "0.6774",
    (7, 1): "0.1428", (7, 2): "0.25", (7, 3): "0.3617", (7, 4): "0.4444", (7, 5): "0.5604",
    (7, 6): "0.6666",
    (8, 1): "0.125", (8, 2): "0.2222", (8, 3): "0.3225", (8, 4): "0.4", (8, 5): "0.4827",
    (8, 6): "0.5783", (8, 7): "0.6756",
    (9, 1): "0.1111", (9, 2): "0.2", (9, 3): "0.2911", (9, 4): "0.3636", (9, 5): "0.4399",
    (9, 6): "0.5", (9, 7): "0.6097", (9, 8): "0.6666",
    (10, 1): "0.1", (10, 2): "0.1818", (10, 3): "0.2653", (10, 4): "0.3333", (10, 5): "0.4042",
    (10, 6): "0.4615", (10, 7): "0.539", (10, 8): "0.6153", (10, 9): "0.6721",
    (11, 1): "0.0909", (11, 2): "0.1666", (11, 3): "0.2436", (11, 4): "0.3076", (11, 5): "0.3739",
    (11, 6): "0.4285", (11, 7): "0.4862", (11, 8): "0.5569", (11, 9): "0.625", (11, 10): "0.6666",
    (12, 1): "0.0833", (12, 2): "0.1538", (12, 3): "0.2253", (12, 4): "0.2857", (12, 5): "0.3478",
    (12, 6): "0.3999", (12, 7): "0.4545", (12, 8): "0.5", (12, 9): "0.5796", (12, 10): "0.625",
    (12, 11): "0.6703",
}

# Float-mode spot checks for larger beta.
FLOAT_SPOTS = {
    (8, 7): "0.6756", (10, 9): "0.6721", (20, 19): "0.6678", (50, 49): "0.6668",
    (100, 99): "0.6667", (50, 48): "0.6575", (100, 98): "0.6621",
}

# Exact LP optima (= 1 / ratio).  Produced by the rational simplex and
# independently confirmed against HiGHS on the exported LP text to 1e-7.
EXACT_OPTIMA = {k: Fraction(v) for k, v in {
    (2, 1): "2", (3, 1): "3", (3, 2): "2", (4, 1): "4", (4, 2): "5/2", (4, 3): "8/5",
    (5, 1): "5", (5, 2): "3", (5, 3): "23/11", (5, 4): "8/5", (6, 1): "6", (6, 2): "7/2",
    (6, 3): "17/7", (6, 4): "2", (6, 5): "31/21", (7, 1): "7", (7, 2): "4", (7, 3): "47/17",
    (7, 4): "9/4", (7, 5): "91/51", (7, 6): "3/2", (8, 1): "8", (8, 2): "9/2", (8, 3): "31/10",
    (8, 4): "5/2", (8, 5): "29/14", (8, 6): "83/48", (8, 7): "37/25", (9, 1): "9", (9, 2): "5",
    (9, 3): "79/23", (9, 4): "11/4", (9, 5): "25/11", (9, 6): "2", (9, 7): "41/25", (9, 8): "3/2",
    (10, 1): "10", (10, 2): "11/2", (10, 3): "49/13", (10, 4): "3", (10, 5): "47/19",
    (10, 6): "13/6", (10, 7): "410/221", (10, 8): "13/8", (10, 9): "61/41", (11, 1): "11",
    (11, 2): "6", (11, 3): "119/29", (11, 4): "13/4", (11, 5): "115/43", (11, 6): "7/3",
    (11, 7): "109/53", (11, 8): "79/44", (11, 9): "8/5", (11, 10): "3/2", (12, 1): "12",
    (12, 2): "13/2", (12, 3): "71/16", (12, 4): "7/2", (12, 5): "23/8", (12, 6): "5/2",
    (12, 7): "11/5", (12, 8): "2", (12, 9): "157/91", (12, 10): "8/5", (12, 11): "91/61",
}.items()}

# Model sizes (rows, columns) of the default LP.
LP_SIZES = {(2, 1): (29, 64), (6, 5): (133, 764), (12, 11): (289, 3134)}
