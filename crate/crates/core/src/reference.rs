//! Published values checked by the `tables` verification suite.

/// Channels sorted by average reliability, with the averages to two
/// decimals, for `m = 2, 3, 4`.
pub const AVERAGES: [(usize, &[u64], &[&str]); 3] = [
    (2, &[0, 1, 2, 3], &["0.20", "0.47", "0.53", "0.80"]),
    (
        3,
        &[0, 1, 2, 4, 3, 5, 6, 7],
        &[
            "0.11", "0.29", "0.34", "0.41", "0.59", "0.66", "0.71", "0.89",
        ],
    ),
    (
        4,
        &[0, 1, 2, 4, 8, 3, 5, 6, 9, 10, 12, 7, 11, 13, 14, 15],
        &[
            "0.06", "0.16", "0.20", "0.24", "0.30", "0.38", "0.44", "0.48", "0.52", "0.56", "0.62",
            "0.70", "0.76", "0.80", "0.84", "0.94",
        ],
    ),
];

/// Path counts of `C^u` at `m = 4` for `u = 6` and `u = 9`.
pub const PATH_COUNTS: [(u64, [u64; 17]); 2] = [
    (
        6,
        [
            0, 0, 0, 0, 16, 192, 1008, 3040, 5828, 7456, 6552, 4048, 1788, 560, 120, 16, 1,
        ],
    ),
    (
        9,
        [
            0, 0, 0, 0, 32, 320, 1456, 3984, 7042, 8400, 7000, 4176, 1804, 560, 120, 16, 1,
        ],
    ),
];

/// Pointwise-incomparable pairs at `m = 5`, in the order listed.
pub const INCOMPARABLE_M5: [(u64, u64); 7] = [
    (3, 16),
    (12, 17),
    (7, 20),
    (7, 24),
    (11, 24),
    (14, 19),
    (15, 28),
];

/// Averages quoted for the first incomparable pairs at `m = 5`.
pub const PAIR_VALUES_M5: [(&str, &str); 4] = [
    ("0.221", "0.216"),
    ("0.396", "0.383"),
    ("0.4712", "0.4710"),
    ("0.4712", "0.5288"),
];

/// Listed prefix of the average-reliability ordering at `m = 5`.
pub const ORDER_PREFIX_M5: [u64; 17] = [0, 1, 2, 4, 8, 16, 3, 5, 6, 9, 10, 17, 12, 18, 20, 7, 24];

/// Listed prefix of the average-reliability ordering at `m = 6`.
pub const ORDER_PREFIX_M6: [u64; 36] = [
    0, 1, 2, 4, 8, 16, 3, 5, 32, 6, 9, 10, 17, 12, 18, 33, 20, 7, 34, 24, 11, 36, 13, 19, 14, 40,
    21, 48, 22, 35, 25, 37, 26, 38, 28, 41,
];

/// Channel counts in the buckets `(i/10, (i+1)/10]`, `i < 5`.
pub const DISTRIBUTION: [(usize, [usize; 5]); 7] = [
    (5, [2, 3, 4, 4, 3]),
    (6, [5, 7, 6, 8, 6]),
    (7, [11, 13, 14, 13, 13]),
    (8, [23, 25, 27, 27, 26]),
    (9, [49, 51, 50, 55, 51]),
    (10, [99, 104, 98, 107, 104]),
    (11, [199, 209, 204, 204, 208]),
];

/// Pairs ordered by average reliability but reversed by `β = 1.22`.
pub const BETA_COUNTS: [(usize, usize); 4] = [(6, 2), (7, 10), (8, 36), (9, 99)];

/// `β` values with no such pairs, as `(m, [β…])`.
pub const BETA_CLEAN: [(usize, &[&str]); 2] = [
    (4, &["1.01", "1.1", "1.2", "1.32"]),
    (5, &["1.181", "1.19", "1.2", "1.22"]),
];
