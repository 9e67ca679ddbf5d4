"""Printed tables and values that the computations are checked against."""

ROOTS_P17_N4 = (9, 15, 8, 2)

TILE_T2_5_2_BOX_POINTS = ((3, 4), (4, 3), (5, 0), (0, 5))

EXP1_P5 = (1, 2, 4, 3)

# rows s = 0..3, columns r = 0..4
H1_P5_A0 = (
    (0, 3, 1, 4, 2),
    (0, 1, 2, 3, 4),
    (0, 2, 4, 1, 3),
    (1, 0, 4, 3, 2),
)
H1_P5_A3 = (
    (3, 2, 1, 0, 4),
    (2, 0, 3, 1, 4),
    (4, 0, 1, 2, 3),
    (3, 0, 2, 4, 1),
)

# h_2^0(s; r0, r1): rows r0 = 0..4, columns r1 = 0..4
H2_P5_A0_S3 = (
    (0, 4, 3, 2, 1),
    (0, 4, 3, 2, 1),
    (1, 0, 4, 3, 2),
    (0, 4, 3, 2, 1),
    (1, 0, 4, 3, 2),
)
H2_P5_A0_S2 = (
    (0, 2, 4, 1, 3),
    (2, 4, 1, 3, 0),
    (0, 2, 4, 1, 3),
    (0, 2, 4, 1, 3),
    (0, 2, 4, 1, 3),
)

A1_P5_A0 = (0, 0, 0, 1)
A1_P5_A3 = (3, 1, 1, 1)
S0_P5_A0_J2 = 3

Z1_P5_0_3 = ((3, (1,)),)

THETA_N4_J2 = {
    17: (1, 1, 1, 1),
    41: (3, 0, 0, 3),
    73: (2, 0, 0, 2),
    89: (0, 1, 1, 0),
    97: (3, 0, 0, 3),
    113: (0, 1, 1, 0),
    137: (1, 0, 0, 1),
    193: (2, 0, 0, 2),
    233: (1, 0, 0, 1),
    241: (0, 1, 1, 0),
    257: (1, 1, 1, 1),
    281: (1, 0, 0, 1),
    313: (1, 1, 1, 1),
    337: (1, 1, 1, 1),
    353: (1, 1, 1, 1),
    401: (0, 3, 3, 0),
}

# a2 = (m a1 + 17^3) / q for the component of 9 in T_4(17; 3), a1 in [0, 17^2]
BOUNDING_LINE_P17 = {"p": 17, "n": 4, "j": 3, "x": 9, "m": -23, "q": 47, "a1_range": (0, 17**2)}

P97 = {"p": 97, "g": 5, "n": 4, "a": 12}
P97_LEVEL1_T = (11, 22, 33)  # level-1 solutions, given as Exp_1 of s
P97_LEVEL2_GAP = 3
