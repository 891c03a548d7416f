//! Plain descriptive statistics over slices.

use crate::scalar::Scalar;

/// Arithmetic mean, summed in slice order. `None` for an empty slice.
pub fn mean<T: Scalar>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let sum = values.iter().fold(T::zero(), |acc, &v| acc + v);
    Some(sum / T::from_count(values.len()))
}

/// Sample standard deviation with divisor `n - 1`. `None` when fewer than two values.
pub fn sample_sd<T: Scalar>(values: &[T]) -> Option<T> {
    if values.len() < 2 {
        return None;
    }
    let m = mean(values)?;
    let ss = values
        .iter()
        .fold(T::zero(), |acc, &v| acc + (v - m) * (v - m));
    Some((ss / T::from_count(values.len() - 1)).sqrt())
}

pub fn min<T: Scalar>(values: &[T]) -> Option<T> {
    values.iter().copied().reduce(T::min)
}

pub fn max<T: Scalar>(values: &[T]) -> Option<T> {
    values.iter().copied().reduce(T::max)
}
