//! Order-independent floating-point summation.
//!
//! Every measure is a sum over focal sets, and focal sets are stored in
//! bitmask order, which changes when the frame is relabeled. Summing the
//! terms in value order instead of storage order makes every measure
//! bit-identical under relabeling (and slightly more accurate, since small
//! magnitudes accumulate first).

/// Sums `terms` after sorting them by `f64::total_cmp`.
pub(crate) fn sorted_sum(terms: &mut [f64]) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_is_order_independent() {
        let mut a = vec![1e-9, 0.3, 1e16, -0.25, 7.5];
        let mut b = vec![7.5, -0.25, 0.3, 1e16, 1e-9];
        assert_eq!(sorted_sum(&mut a).to_bits(), sorted_sum(&mut b).to_bits());
    }

    #[test]
    fn empty_sums_to_zero() {
        assert_eq!(sorted_sum(&mut []), 0.0);
    }
}
