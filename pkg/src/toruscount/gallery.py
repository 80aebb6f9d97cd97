"""Built-in example inputs with their known exact invariants.

These are the package's golden regression inputs: small split and non-split
tori whose conductor exponent, component-group lcm, and orbit-counted log
degree are known in closed form.
"""

GL1_STANDARD = {
    "dim": 1,
    "generators": [],
    "coweights": [{"vector": [1], "multiplicity": 1}],
}

GL1_REPEATED_1001 = {
    "dim": 1,
    "generators": [],
    "coweights": [{"vector": [1], "multiplicity": 1001}],
}

GL1_SQUARE_CUBE = {
    "dim": 1,
    "generators": [],
    "coweights": [{"vector": [2], "multiplicity": 1}, {"vector": [3], "multiplicity": 1}],
}

GM_TIMES_GM = {
    "dim": 2,
    "generators": [],
    "coweights": [
        {"vector": [1, 0], "multiplicity": 1},
        {"vector": [0, 1], "multiplicity": 1},
    ],
}

# Norm-one style quotient tori: Z^k with the permutation action of a group on
# k+1 letters written in the basis b_1..b_k, where the last letter maps to
# -(b_1 + ... + b_k).  Coweights are the k+1 coordinate projections.

NORM_QUOTIENT_S3 = {
    "dim": 2,
    "generators": [
        [[0, 1], [1, 0]],       # transposition of the first two letters
        [[0, -1], [1, -1]],     # 3-cycle
    ],
    "coweights": [
        {"vector": [1, 0], "multiplicity": 1},
        {"vector": [0, 1], "multiplicity": 1},
        {"vector": [-1, -1], "multiplicity": 1},
    ],
}

NORM_QUOTIENT_S4 = {
    "dim": 3,
    "generators": [
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],      # transposition of the first two letters
        [[0, 0, -1], [1, 0, -1], [0, 1, -1]],   # 4-cycle
    ],
    "coweights": [
        {"vector": [1, 0, 0], "multiplicity": 1},
        {"vector": [0, 1, 0], "multiplicity": 1},
        {"vector": [0, 0, 1], "multiplicity": 1},
        {"vector": [-1, -1, -1], "multiplicity": 1},
    ],
}

NORM_QUOTIENT_Z4 = {
    "dim": 3,
    "generators": [
        [[0, 0, -1], [1, 0, -1], [0, 1, -1]],   # 4-cycle only
    ],
    "coweights": [
        {"vector": [1, 0, 0], "multiplicity": 1},
        {"vector": [0, 1, 0], "multiplicity": 1},
        {"vector": [0, 0, 1], "multiplicity": 1},
        {"vector": [-1, -1, -1], "multiplicity": 1},
    ],
}

# name -> (input document, expected report fields)
GALLERY = (
    (
        "gl1-standard",
        GL1_STANDARD,
        {"A": "2", "lambda": 1, "sigma_size": 1, "sigma_tilde0_size": 1,
         "orbit_count": 1, "deg_P": 0},
    ),
    (
        "gl1-repeated-1001",
        GL1_REPEATED_1001,
        {"A": "2/1001", "lambda": 1, "sigma_size": 1, "sigma_tilde0_size": 1,
         "orbit_count": 1, "deg_P": 0},
    ),
    (
        "gl1-square-cube",
        GL1_SQUARE_CUBE,
        {"A": "1", "lambda": 6, "sigma_size": 3, "sigma_tilde0_size": 4,
         "orbit_count": 3, "deg_P": 2},
    ),
    (
        "gm-times-gm",
        GM_TIMES_GM,
        {"A": "2", "lambda": 1, "sigma_size": 2, "sigma_tilde0_size": 2,
         "orbit_count": 2, "deg_P": 1},
    ),
    (
        "norm-quotient-s3",
        NORM_QUOTIENT_S3,
        {"A": "1", "lambda": 1, "sigma_size": 7, "sigma_tilde0_size": 4,
         "orbit_count": 2, "deg_P": 1},
    ),
    (
        "norm-quotient-s4",
        NORM_QUOTIENT_S4,
        {"A": "1", "lambda": 1, "sigma_size": 15, "sigma_tilde0_size": 11,
         "orbit_count": 3, "deg_P": 2},
    ),
    (
        "norm-quotient-z4",
        NORM_QUOTIENT_Z4,
        {"A": "1", "lambda": 1, "sigma_size": 15, "sigma_tilde0_size": 11,
         "orbit_count": 4, "deg_P": 3},
    ),
)
