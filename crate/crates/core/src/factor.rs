use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Int;

/// Prime factorization of `n ≥ 1` by trial division up to `√n`.
///
/// `factorize(1)` is the empty map.
pub fn factorize<T: Int>(n: &T) -> Result<BTreeMap<T, u32>> {
    if !n.is_positive() {
        return Err(Error::NotPositive(n.to_string()));
    }
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    let two = T::one() + T::one();
    let mut p = two.clone();
    while p.clone() * p.clone() <= n {
        let mut e = 0u32;
        while (n.clone() % p.clone()).is_zero() {
            n = n / p.clone();
            e += 1;
        }
        if e > 0 {
            out.insert(p.clone(), e);
        }
        p = if p == two {
            p + T::one()
        } else {
            p + two.clone()
        };
    }
    if n > T::one() {
        out.insert(n, 1);
    }
    Ok(out)
}
