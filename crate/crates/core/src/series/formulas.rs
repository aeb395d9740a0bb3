use num_bigint::BigUint;
use num_integer::binomial;

/// Number of centered ascending polyominoes of size `n`:
/// `(3n - 5) / (n - 1) * C(2n - 5, n - 2)`, with `h(2) = 1` and zero below 2.
pub fn h_formula(n: usize) -> BigUint {
    match n {
        0 | 1 => BigUint::default(),
        2 => BigUint::from(1u32),
        _ => binomial(BigUint::from(2 * n - 5), BigUint::from(n - 2)) * (3 * n - 5) / (n - 1),
    }
}

/// Number of rectangular ascending polyominoes of size `n`: `C(2n - 4, n - 2)`.
pub fn rect_formula(n: usize) -> BigUint {
    if n < 2 {
        return BigUint::default();
    }
    binomial(BigUint::from(2 * n - 4), BigUint::from(n - 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let h: Vec<BigUint> = (2..=10).map(h_formula).collect();
        let want: Vec<BigUint> = [1u32, 2, 7, 25, 91, 336, 1254, 4719, 17875].map(BigUint::from).to_vec();
        assert_eq!(h, want);
        assert_eq!(rect_formula(6), BigUint::from(70u32));
        assert_eq!(rect_formula(2), BigUint::from(1u32));
        assert_eq!(rect_formula(1), BigUint::default());
    }
}
