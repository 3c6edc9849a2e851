use num_bigint::BigInt;
use proptest::prelude::*;
use qcurve_core::arith::{legendre, primes_between};
use qcurve_core::curve::{invariants, LocalCurve, ReductionType};
use qcurve_core::frey::{qcurve_local, rational_frey_local, Parity, Solution};
use qcurve_core::newform::epsilon;
use qcurve_core::quadfield::{PrimeIdealM, QuadInt, Splitting, SUPPORTED_Q};
use qcurve_core::sieve::{primes_in_range, trace_set, MuRange, TraceOptions};
use qcurve_core::ResidueField;

fn any_q() -> impl Strategy<Value = u64> {
    prop::sample::select(SUPPORTED_Q.map(|q| q as u64).to_vec())
}

fn quad(q: u64) -> impl Strategy<Value = QuadInt> {
    (-10_000i64..10_000, -10_000i64..10_000)
        .prop_map(move |(a, b)| QuadInt::from_ints(q, a, b).unwrap())
}

fn qpair() -> impl Strategy<Value = (QuadInt, QuadInt)> {
    any_q().prop_flat_map(|q| (quad(q), quad(q)))
}

fn aux_prime() -> impl Strategy<Value = (u64, u64)> {
    any_q().prop_flat_map(|q| {
        let ps: Vec<u64> = primes_between(3, 31)
            .into_iter()
            .filter(|&p| p != q)
            .collect();
        (Just(q), prop::sample::select(ps))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative((a, b) in qpair()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
    }

    #[test]
    fn reduction_is_a_ring_map((a, b) in qpair(), pi in 0usize..9) {
        let q = a.q() as u64;
        let p = primes_between(3, 31).into_iter().filter(|&p| p != q).nth(pi).unwrap();
        for prime in PrimeIdealM::above(q, p).unwrap() {
            prop_assert_eq!(prime.reduce(&(&a * &b)), prime.reduce(&a) * prime.reduce(&b));
            prop_assert_eq!(prime.reduce(&(&a + &b)), prime.reduce(&a) + prime.reduce(&b));
        }
    }

    #[test]
    fn valuations_add((a, b) in qpair(), pi in 0usize..4) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let q = a.q() as u64;
        let primes = [
            PrimeIdealM::gamma(q).unwrap(),
            PrimeIdealM::gamma_bar(q).unwrap(),
            PrimeIdealM::sqrt_q(q).unwrap(),
            PrimeIdealM::canonical(q, 3).unwrap(),
        ];
        let pr = &primes[pi];
        prop_assert_eq!(
            pr.valuation(&(&a * &b)).unwrap(),
            pr.valuation(&a).unwrap() + pr.valuation(&b).unwrap()
        );
    }

    #[test]
    fn c4_c6_delta_relation((a2, a4) in qpair()) {
        let (c4, c6, d) = invariants(&a2, &a4);
        let lhs = c4.pow(3) - c6.pow(2);
        prop_assert_eq!(lhs, d * QuadInt::integer(a2.q(), 1728));
    }

    #[test]
    fn qcurve_traces_obey_hasse((q, p) in aux_prime(), chi in 0i64..31, mu in 0u32..30, odd in any::<bool>()) {
        let prime = PrimeIdealM::canonical(q, p).unwrap();
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let e = qcurve_local(chi % p as i64, mu, parity, &prime).unwrap();
        let n = prime.norm() as i64;
        match e.reduction_type() {
            ReductionType::Good => {
                let a = e.reduction_trace().unwrap();
                prop_assert!(a * a <= 4 * n, "a = {a}, N = {n}");
            }
            ReductionType::Multiplicative { .. } => {
                prop_assert_eq!(e.reduction_trace().unwrap().abs(), n + 1);
            }
            ReductionType::Additive => {}
        }
    }

    #[test]
    fn character_sum_matches_point_count((q, p) in aux_prime(), chi in 0i64..31, mu in 0u32..30) {
        let prime = PrimeIdealM::canonical(q, p).unwrap();
        let e = qcurve_local(chi % p as i64, mu, Parity::Even, &prime).unwrap();
        prop_assume!(!e.is_singular());
        let count = e.count_points_naive().unwrap() as i64;
        prop_assert_eq!(e.trace_of_frobenius().unwrap(), prime.norm() as i64 + 1 - count);
    }

    #[test]
    fn trace_over_quadratic_extension((q, p) in aux_prime(), chi in 0i64..31, kappa in 0u32..6) {
        let g = rational_frey_local(chi % p as i64, kappa, q, p).unwrap();
        prop_assume!(!g.is_singular());
        let ap = g.trace_of_frobenius().unwrap();
        let nonres = (2..p).find(|&d| legendre(d as i64, p) == -1).unwrap();
        let f2 = ResidueField::quadratic(p, nonres).unwrap();
        let (a2, a4) = (g.a2.as_prime_field().unwrap(), g.a4.as_prime_field().unwrap());
        let g2 = LocalCurve::new(f2.from_u64(a2), f2.from_u64(a4));
        prop_assert_eq!(g2.trace_of_frobenius().unwrap(), ap * ap - 2 * p as i64);
    }

    #[test]
    fn restriction_shrinks_trace_sets((q, p) in aux_prime(), restrict in prop::collection::vec(0i64..31, 0..4)) {
        let prime = PrimeIdealM::canonical(q, p).unwrap();
        let full = trace_set(&prime, &TraceOptions::default()).unwrap();
        let opts = TraceOptions { chi_restrict: Some(restrict), ..TraceOptions::default() };
        let part = trace_set(&prime, &opts).unwrap();
        prop_assert!(part.values.is_subset(&full.values));
    }
}

#[test]
fn hasse_sweep_up_to_inert_31() {
    // every (χ, μ, parity) class at every canonical prime of norm ≤ 31²
    for q in SUPPORTED_Q {
        for prime in primes_in_range(q as u64, 3, 31).unwrap() {
            let n = prime.norm() as i64;
            let opts = TraceOptions {
                include_additive: true,
                ..TraceOptions::default()
            };
            for v in trace_set(&prime, &opts).unwrap().values {
                assert!(
                    v * v <= 4 * n || v.abs() == n + 1,
                    "q={q} p={} v={v}",
                    prime.p()
                );
            }
        }
    }
}

#[test]
fn mu_ranges_give_equal_sets() {
    for q in SUPPORTED_Q {
        for prime in primes_in_range(q as u64, 3, 31).unwrap() {
            let a = trace_set(&prime, &TraceOptions::default()).unwrap();
            let opts = TraceOptions {
                mu_range: MuRange::Full,
                ..TraceOptions::default()
            };
            assert_eq!(
                a.values,
                trace_set(&prime, &opts).unwrap().values,
                "q={q} p={}",
                prime.p()
            );
        }
    }
}

#[test]
fn conjugate_primes_give_equal_trace_sets() {
    for q in SUPPORTED_Q {
        for p in primes_between(3, 31) {
            if p == q as u64 {
                continue;
            }
            let above = PrimeIdealM::above(q as u64, p).unwrap();
            if above[0].kind() != Splitting::Split {
                continue;
            }
            let a = trace_set(&above[0], &TraceOptions::default()).unwrap();
            let b = trace_set(&above[1], &TraceOptions::default()).unwrap();
            assert_eq!(a.values, b.values, "q={q} p={p}");
        }
    }
}

#[test]
fn epsilon_matches_enumeration() {
    for q in SUPPORTED_Q {
        for p in primes_between(3, 31) {
            if p == q as u64 {
                assert!(epsilon(p, q as u64).is_err());
                continue;
            }
            let has_root = (0..p).any(|x| (x * x) % p == q as u64 % p);
            assert_eq!(
                epsilon(p, q as u64).unwrap() == -1,
                !has_root,
                "q={q} p={p}"
            );
        }
    }
}

#[test]
fn invariants_of_global_models() {
    for &(q, x, y, k, n) in &qcurve_core::reference::POWER_OF_TWO_IDENTITIES {
        let e = Solution::new(q as u64, x, y, k, n).unwrap().qcurve();
        let lhs = e.c4.pow(3) - e.c6.pow(2);
        assert_eq!(lhs, &e.delta * &QuadInt::integer(q, 1728));
        let g = Solution::new(q as u64, x, y, k, n).unwrap().rational_frey();
        let (c4, c6, d) = g.invariants();
        assert_eq!(c4.pow(3) - c6.pow(2), d * BigInt::from(1728));
    }
}
