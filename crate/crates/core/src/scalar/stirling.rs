use num_bigint::BigInt;

/// Signed Stirling number of the first kind `s(i, m)`.
///
/// These are the coefficients of the falling factorial:
/// `k (k-1) ... (k-i+1) = sum_m s(i, m) k^m`. Returns zero for `m > i`.
pub fn stirling_first(i: usize, m: usize) -> BigInt {
    if m > i {
        return BigInt::from(0);
    }
    // row[m] = s(n, m), built with s(n+1, m) = s(n, m-1) - n s(n, m)
    let mut row = vec![BigInt::from(0); i + 1];
    row[0] = BigInt::from(1);
    for n in 0..i {
        for k in (0..=n + 1).rev() {
            let prev = if k > 0 { row[k - 1].clone() } else { BigInt::from(0) };
            row[k] = prev - BigInt::from(n) * &row[k];
        }
    }
    row.swap_remove(m)
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling_second(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut row = vec![BigInt::from(0); n + 1];
    row[0] = BigInt::from(1);
    for j in 0..n {
        for kk in (0..=j + 1).rev() {
            let prev = if kk > 0 { row[kk - 1].clone() } else { BigInt::from(0) };
            row[kk] = prev + BigInt::from(kk) * &row[kk];
        }
    }
    row.swap_remove(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::binomial;
    use num_rational::BigRational;

    #[test]
    fn first_kind_table() {
        assert_eq!(stirling_first(0, 0), BigInt::from(1));
        assert_eq!(stirling_first(1, 1), BigInt::from(1));
        assert_eq!(stirling_first(3, 1), BigInt::from(2));
        assert_eq!(stirling_first(3, 2), BigInt::from(-3));
        assert_eq!(stirling_first(3, 3), BigInt::from(1));
        assert_eq!(stirling_first(4, 1), BigInt::from(-6));
        assert_eq!(stirling_first(2, 5), BigInt::from(0));
    }

    #[test]
    fn first_kind_linear_coefficient() {
        // s(i,1)/i! = (-1)^(i-1)/i
        let mut fact = BigInt::from(1);
        for i in 1..=10usize {
            fact *= BigInt::from(i);
            let lhs = BigRational::new(stirling_first(i, 1), fact.clone());
            let sign = if i % 2 == 1 { 1 } else { -1 };
            assert_eq!(lhs, BigRational::new(BigInt::from(sign), BigInt::from(i)));
        }
    }

    #[test]
    fn binomial_expansion_identity() {
        // sum_m s(i,m)/i! k^m == C(k,i)
        let mut fact = BigInt::from(1);
        for i in 0..=8usize {
            if i > 0 {
                fact *= BigInt::from(i);
            }
            for k in 0..=20i64 {
                let mut sum = BigRational::from_integer(BigInt::from(0));
                for m in 0..=i {
                    let term = BigRational::new(stirling_first(i, m), fact.clone())
                        * BigRational::from_integer(BigInt::from(k).pow(m as u32));
                    sum += term;
                }
                assert_eq!(sum, BigRational::from_integer(binomial(k as u64, i as u64)));
            }
        }
    }

    #[test]
    fn second_kind_table() {
        assert_eq!(stirling_second(4, 2), BigInt::from(7));
        assert_eq!(stirling_second(5, 3), BigInt::from(25));
        assert_eq!(stirling_second(3, 0), BigInt::from(0));
        assert_eq!(stirling_second(0, 0), BigInt::from(1));
    }
}
