//! The minimal commutative-ring interface shared by `O_M` elements and
//! residue-field elements, so curve invariants are written once.

pub trait Ring: Clone + PartialEq {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `k · self` for a rational integer `k`.
    fn scale(&self, k: i64) -> Self;
    /// The identity of the ring `self` lives in.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}
