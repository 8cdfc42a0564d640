"""Published reference values for the two worked examples (1-based indices)."""

# Example 1: n = 3, m = p = 2, algebraic form given directly.
EX1_L = [3, 4, 1, 2, 3, 4, 3, 4, 2, 1, 4, 3, 4, 3, 4, 3, 5, 6, 5, 6, 7, 8, 5, 6, 6, 5, 6, 5, 8, 7, 6, 5]
EX1_H = [[1, 1, 1, 1, 2, 2, 2, 2], [1, 2, 1, 2, 1, 2, 1, 2]]
# Xi as 4x2 Boolean arrays: rows (j, value) for j = 1, 2; columns k = 1, 2.
EX1_XI = [
    [[1, 0], [0, 1], [1, 0], [0, 1]],
    [[1, 0], [0, 1], [0, 1], [1, 0]],
]
EX1_IO = [[1, 2, 1, 2], [1, 2, 2, 1]]
EX1_CANONICAL = [[1, 1, 2, 2], [1, 2, 2, 1]]
EX1_P = [1, 3, 2, 4, 5, 7, 6, 8]
EX1_P_TAIL = [1, 1, 2, 2, 1, 1, 2, 2]
EX1_F_TAIL = [2, 1, 2, 1, 2, 2, 2, 2, 1, 2, 1, 2, 2, 2, 2, 2,
              1, 1, 1, 1, 2, 1, 2, 1, 1, 1, 1, 1, 2, 1, 2, 1]

# Example 2: n = 4, m = p = 2, given as expressions (fixtures/example2.json).
EX2_L = [3, 8, 3, 8, 8, 3, 8, 3, 4, 14, 4, 14, 14, 4, 14, 4,
         10, 13, 10, 13, 13, 10, 13, 10, 12, 15, 12, 15, 15, 12, 15, 12,
         6, 1, 6, 1, 1, 6, 1, 6, 5, 11, 5, 11, 11, 5, 11, 5,
         15, 12, 15, 12, 12, 15, 12, 15, 9, 9, 9, 9, 9, 9, 9, 9]
EX2_H = [[2, 2, 2, 1, 2, 2, 2, 2, 2, 1, 2, 1, 1, 1, 1, 1],
         [2, 2, 1, 1, 2, 2, 1, 1, 1, 1, 2, 2, 1, 1, 2, 2]]
EX2_GAMMA = {
    (1, 1): [4, 10, 12, 13, 14, 15, 16],
    (1, 2): [1, 2, 3, 5, 6, 7, 8, 9, 11],
    (2, 1): [3, 4, 7, 8, 9, 10, 13, 14],
    (2, 2): [1, 2, 5, 6, 11, 12, 15, 16],
}
# Per-channel auxiliary blocks as delta_2 index lists over the 4 plant inputs.
EX2_KHAT_I = {
    1: ([2, 1, 2, 1], [1, 1, 2, 2]),     # states 1..8, states 9..16
    2: ([1, 1, 2, 2], [1, 2, 2, 1]),
}
# K_hat blocks as delta_4 index lists over eta = 1..4.
EX2_KHAT = ([2, 4, 1, 3], [1, 2, 4, 3])
EX2_LHAT = [10, 13, 10, 13, 13, 10, 13, 10, 4, 14, 4, 14, 14, 4, 14, 4,
            15, 12, 15, 12, 12, 15, 12, 15, 12, 15, 12, 15, 15, 12, 15, 12,
            3, 8, 3, 8, 8, 3, 8, 3, 9, 9, 9, 9, 9, 9, 9, 9,
            6, 1, 6, 1, 1, 6, 1, 6, 5, 11, 5, 11, 11, 5, 11, 5]
EX2_XI_HAT = [[1, 0], [0, 1], [1, 0], [0, 1]]
EX2_IO_HAT = [1, 2, 1, 2]
EX2_CANONICAL_HAT = [1, 1, 2, 2]
EX2_FIBERS = [4, 3, 4, 5]


def khat_indices():
    """K_hat as a flat delta_4 index list over the 16 x 4 columns."""
    return [k for alpha in range(1, 17) for k in EX2_KHAT[alpha > 8]]
