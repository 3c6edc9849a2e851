use num_bigint::BigInt;
use proptest::prelude::*;
use qcurve::snapshot::JsonInt;

const SAFE: i128 = 1 << 53;

proptest! {
    #[test]
    fn round_trip(v in any::<i128>()) {
        let s = serde_json::to_string(&JsonInt(BigInt::from(v))).unwrap();
        prop_assert_eq!(s.starts_with('"'), v.abs() > SAFE);
        let back: JsonInt = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back.0, BigInt::from(v));
    }

    #[test]
    fn large_bare_numbers_are_rejected(v in (SAFE as i64 + 1)..i64::MAX) {
        prop_assert!(serde_json::from_str::<JsonInt>(&v.to_string()).is_err());
        prop_assert!(serde_json::from_str::<JsonInt>(&(-v).to_string()).is_err());
    }
}
