//! Fixed reference data: the curves `F_q`, newform-space counts, the
//! traces of `G` at 7 for `q = 41`, and the known solutions.

/// Exponent bound below which every solution with `n ≥ 7` is listed in
/// [`SMALL_EXPONENT_SOLUTIONS`].
pub const N_BOUND: u64 = 1000;

/// Largest prime factor of `B_f` observed for eliminated classes.
pub const OBSERVED_FACTOR_BOUND: u64 = 300;

pub const AUX_PRIME_RANGE: (u64, u64) = (3, 30);

/// `(q, label, [a1, a2, a3, a4, a6])` of the conductor-`2q` curve `F_q`.
pub const FREY_TARGETS: [(u32, &str, [i64; 5]); 4] = [
    (17, "34a1", [1, 0, 0, -3, 1]),
    (41, "82a1", [1, 0, 1, -2, 0]),
    (89, "178b1", [1, 1, 0, -44, 80]),
    (97, "194a1", [1, -1, 1, -3, -1]),
];

pub fn target_curve(q: u32) -> Option<(&'static str, [i64; 5])> {
    FREY_TARGETS.iter().find(|r| r.0 == q).map(|r| (r.1, r.2))
}

/// Newform-space counts for one `q`, with class sizes as printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceRow {
    pub q: u32,
    pub total_dim: usize,
    pub class_count: usize,
    pub sizes: &'static [(usize, usize)],
}

pub const SPACE_COUNTS: [SpaceRow; 4] = [
    SpaceRow {
        q: 17,
        total_dim: 22,
        class_count: 6,
        sizes: &[(2, 3), (4, 1), (6, 2)],
    },
    SpaceRow {
        q: 41,
        total_dim: 136,
        class_count: 18,
        sizes: &[(2, 4), (4, 5), (6, 2), (4, 8), (16, 1), (24, 2)],
    },
    SpaceRow {
        q: 89,
        total_dim: 652,
        class_count: 26,
        sizes: &[
            (2, 4),
            (4, 2),
            (6, 4),
            (8, 3),
            (12, 2),
            (24, 3),
            (30, 1),
            (40, 2),
            (50, 1),
            (60, 1),
            (80, 1),
            (96, 2),
        ],
    },
    SpaceRow {
        q: 97,
        total_dim: 774,
        class_count: 29,
        sizes: &[
            (2, 4),
            (4, 3),
            (6, 3),
            (8, 4),
            (12, 3),
            (20, 3),
            (24, 1),
            (32, 3),
            (40, 1),
            (48, 1),
            (64, 1),
            (168, 2),
        ],
    },
];

pub fn space_counts(q: u32) -> Option<SpaceRow> {
    SPACE_COUNTS.iter().copied().find(|r| r.q == q)
}

/// Class dimension that is sieved only with the primes above 3 and 11.
pub const LARGE_CLASS_DIM: usize = 168;
pub const LARGE_CLASS_PRIMES: [u64; 2] = [3, 11];

/// Traces of `G_{χ,κ}` at 7 for `q = 41`, `χ = 0, …, 6`.
pub const G_TRACES_AT_7: [i64; 7] = [0, 4, 2, 2, -2, -2, -4];

/// `(q, x, y, k, n)` solutions for `q ∈ {41, 97}`, `x, k ≥ 0`, `n ≥ 3`.
pub const KNOWN_SOLUTIONS: [(u32, i64, i64, u32, u32); 6] = [
    (41, 3, -2, 0, 5),
    (41, 7, 2, 0, 3),
    (41, 13, 2, 0, 7),
    (41, 411, 10, 1, 5),
    (97, 15, 2, 0, 7),
    (97, 77, 18, 0, 3),
];

/// `x² − q = 2ⁿ` with `x ≡ 1 (mod 4)`: `(q, x, y, k, n)`.
pub const POWER_OF_TWO_IDENTITIES: [(u32, i64, i64, u32, u32); 4] = [
    (17, -23, 2, 0, 9),
    (41, 13, 2, 0, 7),
    (89, -91, 2, 0, 13),
    (97, -15, 2, 0, 7),
];

/// Solutions with `7 ≤ n ≤ 1000`, `x ≡ 1 (mod 4)`.
pub const SMALL_EXPONENT_SOLUTIONS: [(u32, i64, i64, u32, u32); 4] = [
    (17, -71, 2, 1, 7),
    (41, 13, 2, 0, 7),
    (89, -91, 2, 0, 13),
    (97, -15, 2, 0, 7),
];

/// The solution blocking elimination for `q`, if any.
pub fn obstructing_solution(q: u32) -> Option<(u32, i64, i64, u32, u32)> {
    match q {
        17 | 89 => POWER_OF_TWO_IDENTITIES.iter().copied().find(|s| s.0 == q),
        _ => None,
    }
}

/// Restricted `E`-trace, survivor traces and divisibilities of the
/// multi-Frey step at 7 for `q = 41`.
pub const MULTI_FREY_CHI: i64 = 6;
pub const MULTI_FREY_F_TRACE: i64 = -4;
pub const MULTI_FREY_E_TRACE: i64 = 6;
pub const MULTI_FREY_SURVIVOR_TRACES: [i64; 2] = [-4, 14];
pub const MULTI_FREY_DIVISIBILITIES: [u64; 2] = [70, 84];

/// What the sieve is expected to find.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedOutcome {
    /// All classes eliminated.
    AllEliminated,
    /// Exactly `survivors` classes with `B_f = 0`, then closed by multi-Frey.
    MultiFrey { survivors: usize },
    /// Exactly one class survives and matches the obstructing solution.
    Obstructed,
}

pub fn expected_outcome(q: u32) -> Option<ExpectedOutcome> {
    match q {
        17 | 89 => Some(ExpectedOutcome::Obstructed),
        41 => Some(ExpectedOutcome::MultiFrey { survivors: 2 }),
        97 => Some(ExpectedOutcome::AllEliminated),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn identities_hold() {
        for (q, x, y, k, n) in KNOWN_SOLUTIONS
            .iter()
            .chain(&POWER_OF_TWO_IDENTITIES)
            .chain(&SMALL_EXPONENT_SOLUTIONS)
        {
            let lhs = BigInt::from(*x).pow(2) - BigInt::from(*q).pow(2 * k + 1);
            assert_eq!(lhs, BigInt::from(*y).pow(*n), "({q}, {x}, {y}, {k}, {n})");
        }
    }

    #[test]
    fn space_count_totals() {
        for row in SPACE_COUNTS {
            let dim: usize = row.sizes.iter().map(|(s, m)| s * m).sum();
            assert_eq!(dim, row.total_dim, "q={}", row.q);
        }
        // the printed q = 41 row lists 22 classes against the stated 18
        let r = space_counts(41).unwrap();
        assert_eq!(r.sizes.iter().map(|(_, m)| m).sum::<usize>(), 22);
    }
}
