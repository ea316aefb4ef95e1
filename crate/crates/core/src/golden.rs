//! Reference values printed in the published tables, embedded verbatim so
//! that table emitters and acceptance checks can compare against them.

use serde::{Deserialize, Serialize};

/// Marker of one cell of the exceptional table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Marker {
    /// No entry (`f_c(k)` not yet in `J`).
    Absent,
    Ordinary,
    /// Exceptional prime.
    TypeI,
    /// Exceptional `pq`.
    TypeII,
    /// Exceptional prime square.
    TypeIII,
}

impl Marker {
    pub fn label(&self) -> &'static str {
        match self {
            Marker::Absent => "-",
            Marker::Ordinary => "o",
            Marker::TypeI => "I",
            Marker::TypeII => "II",
            Marker::TypeIII => "III",
        }
    }
}

use Marker::{Absent as N, Ordinary as O, TypeI as I, TypeII as II, TypeIII as III};

/// `(m, l0, l̂)` for odd `m` in `[3, 55]`; `l0` is not printed for `m <= 13`.
pub const TABLE1: [(u64, Option<u64>, u64); 27] = [
    (3, None, 1),
    (5, None, 3),
    (7, None, 5),
    (9, None, 7),
    (11, None, 9),
    (13, None, 11),
    (15, Some(5), 7),
    (17, Some(5), 7),
    (19, Some(5), 7),
    (21, Some(7), 7),
    (23, Some(7), 9),
    (25, Some(7), 9),
    (27, Some(7), 7),
    (29, Some(7), 9),
    (31, Some(9), 9),
    (33, Some(9), 9),
    (35, Some(9), 11),
    (37, Some(9), 11),
    (39, Some(9), 9),
    (41, Some(9), 11),
    (43, Some(11), 11),
    (45, Some(11), 11),
    (47, Some(11), 13),
    (49, Some(11), 13),
    (51, Some(11), 11),
    (53, Some(11), 13),
    (55, Some(11), 13),
];

/// `γ1..γ4`, truncated to four decimals as printed.
pub const TABLE2_GAMMA: [f64; 4] = [1.3843, 1.5765, 1.7579, 1.7925];

/// `(c, x̄1(c), γ5(c), x̲2(c))`, truncated to four decimals.
pub const TABLE2_ROWS: [(i32, f64, f64, f64); 6] = [
    (-5, 1.4300, 1.8297, 1.8575),
    (-3, 1.5313, 1.8653, 1.8828),
    (-1, 1.6327, 1.8980, 1.9081),
    (1, 1.7340, 1.9284, 1.9335),
    (3, 1.8353, 1.9570, 1.9588),
    (5, 1.9366, 1.9839, 1.9841),
];

/// Column order of the exceptional table.
pub const TABLE3_COLUMNS: [i32; 6] = [-5, -3, -1, 1, 3, 5];

/// Markers of `f_c(k)` for `k = 4..=50`, columns as in [`TABLE3_COLUMNS`].
pub const TABLE3: [(u128, [Marker; 6]); 47] = [
    (4, [N, O, II, I, O, I]),
    (5, [N, I, III, O, I, II]),
    (6, [N, O, II, I, O, I]),
    (7, [N, O, I, O, O, I]),
    (8, [N, I, I, O, I, I]),
    (9, [N, O, O, I, O, I]),
    (10, [N, O, I, I, O, O]),
    (11, [N, I, O, O, I, I]),
    (12, [N, O, O, O, O, II]),
    (13, [N, O, I, O, O, I]),
    (14, [N, I, O, O, I, I]),
    (15, [N, O, II, O, O, O]),
    (16, [N, O, O, I, O, II]),
    (17, [N, O, I, O, II, I]),
    (18, [N, O, O, O, O, I]),
    (19, [O, O, O, I, O, I]),
    (20, [O, O, I, O, I, O]),
    (21, [I, O, O, I, O, II]),
    (22, [II, O, I, O, O, I]),
    (23, [O, I, I, O, I, O]),
    (24, [I, O, O, II, O, I]),
    (25, [O, O, O, I, O, O]),
    (26, [O, O, O, O, I, I]),
    (27, [I, O, I, O, O, O]),
    (28, [I, O, O, O, O, I]),
    (29, [O, I, O, O, II, I]),
    (30, [O, O, I, I, O, O]),
    (31, [O, O, O, I, O, II]),
    (32, [O, I, O, O, I, II]),
    (33, [I, O, O, O, O, I]),
    (34, [I, O, O, I, O, O]),
    (35, [O, O, I, O, II, O]),
    (36, [I, O, O, O, O, I]),
    (37, [I, O, I, O, O, I]),
    (38, [O, O, II, O, I, O]),
    (39, [II, O, O, O, O, I]),
    (40, [O, O, O, I, O, O]),
    (41, [O, O, O, O, I, II]),
    (42, [O, O, I, O, O, I]),
    (43, [II, O, I, O, O, I]),
    (44, [O, I, O, O, O, I]),
    (45, [O, O, O, I, O, O]),
    (46, [I, O, O, I, O, I]),
    (47, [O, I, O, O, I, II]),
    (48, [I, O, I, O, O, I]),
    (49, [O, O, O, I, O, O]),
    (50, [O, II, I, O, I, O]),
];

/// One printed row of a family margin table: `μ^(i) − RB` for `i = 0, 1, 2`,
/// each to three significant figures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginRow {
    pub y: i64,
    pub p: u128,
    pub q: u128,
    pub margins: [f64; 3],
}

const fn row(y: i64, p: u128, q: u128, margins: [f64; 3]) -> MarginRow {
    MarginRow { y, p, q, margins }
}

/// `(a, c)` of the three margin tables.
pub const TABLE4_PARAMS: (u64, i32) = (1, -5);
pub const TABLE5_PARAMS: (u64, i32) = (1, -7);
pub const TABLE6_PARAMS: (u64, i32) = (64, 5);

pub const TABLE4: [MarginRow; 8] = [
    row(7, 109, 181, [-1.11e-2, -8.21e-2, -2.17e-2]),
    row(17, 1879, 3301, [-7.58e-4, -4.86e-3, -1.09e-3]),
    row(25, 4591, 8101, [-3.11e-4, -1.98e-3, -4.42e-4]),
    row(35, 9601, 16981, [-1.49e-4, -9.50e-4, -2.09e-4]),
    row(40, 12781, 22621, [-1.12e-4, -7.13e-4, -1.57e-4]),
    row(62, 32119, 56941, [-4.46e-5, -2.83e-4, -6.20e-5]),
    row(82, 57259, 101581, [-2.50e-5, -1.59e-4, -3.47e-5]),
    row(104, 93229, 165469, [-1.53e-5, -9.77e-5, -2.12e-5]),
];

pub const TABLE5: [MarginRow; 8] = [
    row(13, 937, 1637, [1.07e-4, -8.13e-3, -6.21e-4]),
    row(43, 14887, 26357, [4.70e-6, -5.11e-4, -3.36e-5]),
    row(60, 29983, 53149, [2.30e-6, -2.54e-4, -1.64e-5]),
    row(81, 55813, 99013, [1.22e-6, -1.36e-4, -8.73e-6]),
    row(158, 218437, 387917, [3.11e-7, -3.48e-5, -2.19e-6]),
    row(211, 392383, 697013, [1.73e-7, -1.93e-5, -1.21e-6]),
    row(225, 446773, 793669, [1.52e-7, -1.70e-5, -1.06e-6]),
    row(249, 548221, 973957, [1.23e-7, -1.38e-5, -8.69e-7]),
];

pub const TABLE6: [MarginRow; 8] = [
    row(39, 103507276549, 407634920449, [-5.79e-11, 2.17e-13, -6.61e-11]),
    row(134, 1223336627269, 4817774691329, [-4.90e-12, 1.84e-14, -5.59e-12]),
    row(165, 1854993585541, 7305381823489, [-3.23e-12, 1.21e-14, -3.69e-12]),
    row(178, 2158870385989, 8502116992001, [-2.77e-12, 1.04e-14, -3.17e-12]),
    row(279, 5304571299589, 20890594526209, [-1.13e-12, 4.25e-15, -1.29e-12]),
    row(433, 12777690072709, 50321416668161, [-4.69e-13, 1.76e-15, -5.35e-13]),
    row(468, 14927014718149, 58785940423681, [-4.02e-13, 1.51e-15, -4.58e-13]),
    row(499, 16970160763909, 66832308978689, [-3.53e-13, 1.32e-15, -4.03e-13]),
];

/// Printed values of the Hardy–Littlewood constants by `c`.
pub const HL_CONSTANTS: [(i32, f64); 6] = [
    (-5, 1.18219),
    (-3, 1.18219),
    (-1, 1.12674),
    (1, 0.927881),
    (3, 0.807233),
    (5, 1.77328),
];

/// First primes `p` with `(c'/p) = −1` for all six `c`.
pub const AVOIDS_J_FIRST: [u64; 5] = [97, 577, 827, 853, 947];

/// `ξ1 = x1²` and `ξ2 = x2²` to the printed four decimals.
pub const XI: (f64, f64) = (2.0451, 3.9365);

/// Exceptional odd orders up to 100: the `ε = 2` entries of the small-order
/// table together with the highlighted entries of the exceptional table.
pub fn exceptional_up_to_100() -> Vec<u128> {
    let mut out: Vec<u128> = TABLE1
        .iter()
        .filter(|&&(_, l0, hat)| l0.is_some_and(|l0| hat == l0 + 2))
        .map(|&(m, _, _)| m as u128)
        .collect();
    for (k, cells) in TABLE3.iter() {
        for (&c, marker) in TABLE3_COLUMNS.iter().zip(cells) {
            let m = (k * k + 5 * k) as i128 + c as i128;
            if matches!(marker, I | II | III) && m <= 100 {
                out.push(m as u128);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether `computed` agrees with a printed three-significant-figure value
/// to within one unit of its last digit.
pub fn matches_printed(computed: f64, printed: f64) -> bool {
    if printed == 0.0 {
        return computed == 0.0;
    }
    let e = printed.abs().log10().floor() as i32;
    (computed - printed).abs() <= 10f64.powi(e - 2) * (1.0 + 1e-9)
}

/// `x` truncated to `d` decimals, compared with a printed truncation.
pub fn matches_truncated(x: f64, printed: f64, d: i32) -> bool {
    let s = 10f64.powi(d);
    ((x * s).floor() - (printed * s).round()).abs() < 0.5
}
