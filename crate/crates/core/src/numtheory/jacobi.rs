use crate::error::{Error, Result};

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: i128, n: u128) -> Result<i8> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::invalid(format!("Jacobi symbol needs an odd positive modulus, got {n}")));
    }
    let mut a = a.rem_euclid(n as i128) as u128;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}
